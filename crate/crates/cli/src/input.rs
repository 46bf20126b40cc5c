//! Decoding of the loosely typed JSON inputs shared by the subcommands.

use k3cy_core::algebra::{parse_rational, qi, CoverData, Q};
use k3cy_core::lattice::{parse_lattice, IntegralLattice};
use k3cy_core::picard_fuchs::{pf_operator, BranchPoint, PFOperator, PFParams, SingularPoint};
use num_complex::Complex64 as C64;
use serde_json::Value;

use crate::error::{CliError, CliResult};

pub fn field<'a>(v: &'a Value, key: &str) -> CliResult<&'a Value> {
    v.get(key).ok_or_else(|| CliError::usage(format!("missing field {key:?}")))
}

pub fn string<'a>(v: &'a Value, key: &str) -> CliResult<&'a str> {
    field(v, key)?.as_str().ok_or_else(|| CliError::usage(format!("field {key:?} must be a string")))
}

pub fn integer(v: &Value, what: &str) -> CliResult<i64> {
    v.as_i64().ok_or_else(|| CliError::usage(format!("{what} must be an integer, got {v}")))
}

pub fn unsigned(v: &Value, what: &str) -> CliResult<u32> {
    v.as_u64()
        .and_then(|n| u32::try_from(n).ok())
        .ok_or_else(|| CliError::usage(format!("{what} must be a non-negative integer, got {v}")))
}

pub fn int_list(v: &Value, what: &str, len: usize) -> CliResult<Vec<i64>> {
    let arr = v.as_array().ok_or_else(|| CliError::usage(format!("{what} must be an array")))?;
    if arr.len() != len {
        return Err(CliError::usage(format!("{what} must have {len} entries, got {}", arr.len())));
    }
    arr.iter().map(|x| integer(x, what)).collect()
}

/// An exact rational from `"3/4"` or an integer literal.
pub fn rational(v: &Value) -> CliResult<Q> {
    match v {
        Value::String(s) => Ok(parse_rational(s)?),
        Value::Number(n) if n.is_i64() => Ok(qi(n.as_i64().unwrap())),
        other => Err(CliError::usage(format!("expected a rational as a string like \"1/4\", got {other}"))),
    }
}

/// A complex number from a JSON number or a `[re, im]` pair.
pub fn complex(v: &Value) -> CliResult<C64> {
    let bad = || CliError::usage(format!("expected a number or [re, im], got {v}"));
    match v {
        Value::Number(n) => Ok(C64::new(n.as_f64().ok_or_else(bad)?, 0.0)),
        Value::Array(a) if a.len() == 2 => {
            Ok(C64::new(a[0].as_f64().ok_or_else(bad)?, a[1].as_f64().ok_or_else(bad)?))
        }
        _ => Err(bad()),
    }
}

fn label(v: &Value) -> CliResult<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(CliError::usage(format!("expected a point label, got {other}"))),
    }
}

pub fn singular_point(v: &Value) -> CliResult<SingularPoint> {
    Ok(SingularPoint::parse(&label(v)?)?)
}

pub fn branch_point(v: &Value) -> CliResult<BranchPoint> {
    Ok(BranchPoint::parse(&label(v)?)?)
}

/// A lattice from an expression such as `"U(2)^2+<-2>^4"` or a Gram matrix.
pub fn lattice(v: &Value) -> CliResult<IntegralLattice> {
    match v {
        Value::String(s) => Ok(parse_lattice(s)?),
        Value::Array(rows) => {
            let gram = rows
                .iter()
                .map(|r| {
                    r.as_array()
                        .ok_or_else(|| CliError::usage("Gram matrix rows must be arrays"))?
                        .iter()
                        .map(|x| integer(x, "Gram entry"))
                        .collect::<CliResult<Vec<i64>>>()
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(IntegralLattice::new(gram)?)
        }
        other => Err(CliError::usage(format!("expected a lattice expression or Gram matrix, got {other}"))),
    }
}

/// `{"cover": [N, A, B, C], "form": [α, β, γ, l]}`.
pub fn pf_params(v: &Value) -> CliResult<PFParams> {
    let cover = int_list(field(v, "cover")?, "cover", 4)?;
    let form = int_list(field(v, "form")?, "form", 4)?;
    let nonneg = |x: i64| {
        u32::try_from(x).map_err(|_| CliError::domain("Domain", format!("cover data must be non-negative, got {x}")))
    };
    let cover = CoverData::new(nonneg(cover[0])?, nonneg(cover[1])?, nonneg(cover[2])?, nonneg(cover[3])?)?;
    Ok(PFParams::new(cover, form[0], form[1], form[2], form[3])?)
}

/// An operator given by `"abc"` directly or through `"cover"` and `"form"`.
pub fn operator(v: &Value) -> CliResult<(PFOperator, Option<PFParams>)> {
    if let Some(abc) = v.get("abc") {
        let abc = abc.as_array().filter(|a| a.len() == 3).ok_or_else(|| CliError::usage("abc must be [a, b, c]"))?;
        return Ok((PFOperator::from_abc(rational(&abc[0])?, rational(&abc[1])?, rational(&abc[2])?), None));
    }
    let p = pf_params(v)?;
    Ok((pf_operator(&p), Some(p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn rationals_and_points() {
        assert_eq!(rational(&json!("3/4")).unwrap(), k3cy_core::algebra::q(3, 4));
        assert_eq!(rational(&json!(-2)).unwrap(), qi(-2));
        assert!(rational(&json!(0.5)).is_err());
        assert_eq!(singular_point(&json!(0)).unwrap(), SingularPoint::Zero);
        assert_eq!(singular_point(&json!("inf")).unwrap(), SingularPoint::Infinity);
        assert_eq!(branch_point(&json!("lambda")).unwrap(), BranchPoint::Lambda);
        assert_eq!(complex(&json!([0.5, -1])).unwrap(), C64::new(0.5, -1.0));
    }

    #[test]
    fn operators() {
        let (op, p) = operator(&json!({"cover": [2, 1, 1, 1], "form": [0, 0, 0, 1]})).unwrap();
        assert_eq!(op, PFOperator::legendre());
        assert!(p.is_some());
        let (op, p) = operator(&json!({"abc": ["1/2", "1/2", "1/2"]})).unwrap();
        assert_eq!(op, PFOperator::legendre());
        assert!(p.is_none());
        assert!(matches!(operator(&json!({"cover": [4, 1, 2, 2], "form": [0, 0, 0, 0]})), Err(CliError::Domain { .. })));
        assert!(matches!(operator(&json!({"cover": [4, 1, 2]})), Err(CliError::Usage(_))));
    }

    #[test]
    fn lattices() {
        assert_eq!(lattice(&json!("U(2)")).unwrap().gram(), [[0, 2], [2, 0]]);
        assert_eq!(lattice(&json!([[2, 1], [1, 2]])).unwrap().rank(), 2);
        assert!(lattice(&json!(3)).is_err());
    }
}
