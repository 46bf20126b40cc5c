//! Local exponents and log terms of second-order Fuchsian operators.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::operator::PFOperator;
use crate::algebra::{fmt_rational, qi, sqrt_exact, RootOfUnity, UniPoly, Q};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SingularPoint {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "inf")]
    Infinity,
}

impl SingularPoint {
    pub const ALL: [SingularPoint; 3] = [SingularPoint::Zero, SingularPoint::One, SingularPoint::Infinity];

    pub fn label(self) -> &'static str {
        match self {
            SingularPoint::Zero => "0",
            SingularPoint::One => "1",
            SingularPoint::Infinity => "inf",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "0" => Ok(SingularPoint::Zero),
            "1" => Ok(SingularPoint::One),
            "inf" | "infinity" | "∞" => Ok(SingularPoint::Infinity),
            other => Err(Error::Parse(format!("unknown singular point {other:?} (expected 0, 1 or inf)"))),
        }
    }
}

impl fmt::Display for SingularPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MonodromyClass {
    NonUnipotent,
    UnipotentNontrivial,
    Identity,
}

/// Local exponents at a singular point, smaller first, in the local
/// coordinate `λ`, `λ - 1` or `1/λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicialData {
    pub point: SingularPoint,
    pub exponents: [Q; 2],
    /// Whether the Frobenius solution at the smaller exponent needs a
    /// logarithm (always when the exponents coincide).
    pub log_term: bool,
}

impl IndicialData {
    pub fn exponent_difference(&self) -> Q {
        &self.exponents[1] - &self.exponents[0]
    }

    pub fn eigenvalues(&self) -> [RootOfUnity; 2] {
        [RootOfUnity::from_turn(self.exponents[0].clone()), RootOfUnity::from_turn(self.exponents[1].clone())]
    }
}

impl Serialize for IndicialData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("IndicialData", 4)?;
        st.serialize_field("point", &self.point)?;
        st.serialize_field("exponents", &[fmt_rational(&self.exponents[0]), fmt_rational(&self.exponents[1])])?;
        st.serialize_field("logTerm", &self.log_term)?;
        st.serialize_field("eigenvalues", &self.eigenvalues())?;
        st.end()
    }
}

/// The operator near a point as `Σ_j t^j f_j(θ)`, `θ = t d/dt`, each `f_j`
/// a quadratic in `θ`.
pub fn theta_form(op: &PFOperator, point: SingularPoint) -> Result<Vec<UniPoly>> {
    let [p2, p1, p0] = op.coefficients();
    // q2 ∂_t² + q1 ∂_t + q0 in the local coordinate t
    let (q2, q1, q0) = match point {
        SingularPoint::Zero => (p2.clone(), p1.clone(), p0.clone()),
        SingularPoint::One => {
            let shift = UniPoly::new(vec![qi(1), qi(1)]);
            (p2.compose(&shift), p1.compose(&shift), p0.compose(&shift))
        }
        SingularPoint::Infinity => {
            // λ = 1/t: ∂_λ = -t² ∂_t, ∂_λ² = t⁴ ∂_t² + 2t³ ∂_t; clear t^(-d)
            let d = [p2, p1, p0].iter().filter_map(|p| p.degree()).max().unwrap_or(0);
            let (r2, r1, r0) = (p2.reversed(d), p1.reversed(d), p0.reversed(d));
            let t = |k: usize| UniPoly::monomial(qi(1), k);
            let q2 = &r2 * &t(4);
            let q1 = &(&r2 * &t(3)).scale(&qi(2)) - &(&r1 * &t(2));
            (q2, q1, r0)
        }
    };
    let v = q2
        .low_order()
        .ok_or_else(|| Error::domain("leading coefficient of the operator vanishes identically"))?;
    let fuchsian = q1.low_order().is_none_or(|o| o + 1 >= v) && q0.low_order().is_none_or(|o| o + 2 >= v);
    if !fuchsian || v == 0 {
        return Err(Error::domain(format!("{point} is not a regular singular point of the operator")));
    }
    // t^(2-v) L = Q2 (θ² - θ) + Q1 θ + Q0
    let lift = |p: &UniPoly, k: usize| -> UniPoly {
        if k <= v {
            p.shift_down(v - k)
        } else {
            p * &UniPoly::monomial(qi(1), k - v)
        }
    };
    let (big2, big1, big0) = (lift(&q2, 0), lift(&q1, 1), lift(&q0, 2));
    let len = [&big2, &big1, &big0].iter().filter_map(|p| p.degree()).max().unwrap_or(0) + 1;
    Ok((0..len)
        .map(|j| {
            let (a, b, c) = (big2.coeff(j), big1.coeff(j), big0.coeff(j));
            UniPoly::new(vec![c, &b - &a, a])
        })
        .collect())
}

fn quadratic_roots(f: &UniPoly) -> Result<[Q; 2]> {
    let (c, b, a) = (f.coeff(0), f.coeff(1), f.coeff(2));
    if a.is_zero() {
        return Err(Error::domain("indicial polynomial is not quadratic"));
    }
    let disc = &b * &b - qi(4) * &a * &c;
    let s = sqrt_exact(&disc)
        .ok_or_else(|| Error::domain(format!("local exponents are irrational (discriminant {})", fmt_rational(&disc))))?;
    let two_a = qi(2) * &a;
    let (x, y) = ((-&b - &s) / &two_a, (-&b + &s) / &two_a);
    Ok(if x <= y { [x, y] } else { [y, x] })
}

/// Whether the recurrence from the smaller exponent hits a nonzero
/// obstruction at the resonant index.
fn needs_log(theta: &[UniPoly], low: &Q, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    let mut c = vec![Q::one()];
    for n in 1..=k {
        let rhs = (1..theta.len().min(n + 1)).fold(Q::zero(), |acc, j| {
            acc - theta[j].eval(&(low + qi((n - j) as i64))) * &c[n - j]
        });
        let lead = theta[0].eval(&(low + qi(n as i64)));
        if n == k {
            return !rhs.is_zero();
        }
        c.push(rhs / lead);
    }
    unreachable!()
}

pub fn indicial_exponents(op: &PFOperator, point: SingularPoint) -> Result<IndicialData> {
    let theta = theta_form(op, point)?;
    let exponents = quadratic_roots(&theta[0])?;
    let diff = &exponents[1] - &exponents[0];
    let log_term = diff.is_integer() && needs_log(&theta, &exponents[0], diff.to_integer().try_into().unwrap_or(0));
    Ok(IndicialData { point, exponents, log_term })
}

pub fn all_indicial_exponents(op: &PFOperator) -> Result<Vec<IndicialData>> {
    SingularPoint::ALL.iter().map(|&p| indicial_exponents(op, p)).collect()
}

/// Class of the local monodromy read off from the exponents.
pub fn local_monodromy_class(d: &IndicialData) -> MonodromyClass {
    let diff = d.exponent_difference();
    if !diff.is_integer() || !d.exponents[0].is_integer() {
        MonodromyClass::NonUnipotent
    } else if d.log_term {
        MonodromyClass::UnipotentNontrivial
    } else {
        MonodromyClass::Identity
    }
}

/// A point where the local monodromy is a single unipotent Jordan block of
/// full size (2 for a second-order operator).
pub fn is_maximally_unipotent(d: &IndicialData) -> bool {
    local_monodromy_class(d) == MonodromyClass::UnipotentNontrivial && d.exponent_difference().is_zero()
}

/// Sum of all local exponents; Fuchs' relation makes it 1 for three
/// singular points and order 2.
pub fn exponent_sum(data: &[IndicialData]) -> Q {
    data.iter().flat_map(|d| d.exponents.iter()).fold(Q::zero(), |acc, e| acc + e)
}

/// `|exponent difference|` at each point, the local data of a Riemann scheme.
pub fn exponent_differences(data: &[IndicialData]) -> Vec<Q> {
    data.iter().map(|d| d.exponent_difference().abs()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    fn ops() -> [PFOperator; 3] {
        [
            PFOperator::legendre(),
            PFOperator::from_abc(q(1, 4), q(1, 2), q(1, 2)),
            PFOperator::from_abc(q(3, 4), q(1, 2), q(1, 2)),
        ]
    }

    #[test]
    fn exponents_at_zero() {
        let [leg, f, g] = ops();
        assert_eq!(indicial_exponents(&leg, SingularPoint::Zero).unwrap().exponents, [qi(0), qi(0)]);
        assert_eq!(indicial_exponents(&f, SingularPoint::Zero).unwrap().exponents, [qi(0), q(1, 4)]);
        assert_eq!(indicial_exponents(&g, SingularPoint::Zero).unwrap().exponents, [q(-1, 4), qi(0)]);
    }

    #[test]
    fn exponents_match_closed_forms() {
        for op in ops() {
            let (a, b, c) = (&op.a, &op.b, &op.c);
            let sorted = |x: Q, y: Q| if x <= y { [x, y] } else { [y, x] };
            let at = |p| indicial_exponents(&op, p).unwrap().exponents;
            assert_eq!(at(SingularPoint::Zero), sorted(qi(0), qi(1) - a - c));
            assert_eq!(at(SingularPoint::One), sorted(qi(0), qi(1) - b - c));
            assert_eq!(at(SingularPoint::Infinity), sorted(c.clone(), a + b + c - qi(1)));
            assert_eq!(exponent_sum(&all_indicial_exponents(&op).unwrap()), qi(1));
        }
    }

    #[test]
    fn classification() {
        let [leg, f, g] = ops();
        let d = indicial_exponents(&f, SingularPoint::Zero).unwrap();
        assert_eq!(local_monodromy_class(&d), MonodromyClass::NonUnipotent);
        assert_eq!(d.eigenvalues(), [RootOfUnity::one(), RootOfUnity::i()]);
        let d = indicial_exponents(&g, SingularPoint::Zero).unwrap();
        assert_eq!(local_monodromy_class(&d), MonodromyClass::NonUnipotent);
        assert_eq!(d.eigenvalues(), [RootOfUnity::minus_i(), RootOfUnity::one()]);
        let d = indicial_exponents(&leg, SingularPoint::Zero).unwrap();
        assert!(d.log_term);
        assert_eq!(local_monodromy_class(&d), MonodromyClass::UnipotentNontrivial);
        assert!(is_maximally_unipotent(&d));
    }

    #[test]
    fn resonant_exponents_without_log() {
        // λ(1-λ)∂² + (c̃ - (ã+b̃+1)λ)∂ - ãb̃ with c̃ = -1 and ã = 0: the
        // polynomial solution 1 makes the resonance harmless.
        let op = PFOperator::from_abc(qi(-1), q(1, 2), qi(0));
        let d = indicial_exponents(&op, SingularPoint::Zero).unwrap();
        assert_eq!(d.exponents, [qi(0), qi(2)]);
        assert!(!d.log_term);
        assert_eq!(local_monodromy_class(&d), MonodromyClass::Identity);
        // c̃ = 0 with ãb̃ ≠ 0 resonates with a logarithm
        let op = PFOperator::from_abc(q(-1, 2), q(1, 2), q(1, 2));
        let d = indicial_exponents(&op, SingularPoint::Zero).unwrap();
        assert_eq!(d.exponents, [qi(0), qi(1)]);
        assert!(d.log_term);
    }

    #[test]
    fn parse_points() {
        assert_eq!(SingularPoint::parse("inf").unwrap(), SingularPoint::Infinity);
        assert!(SingularPoint::parse("2").is_err());
    }
}
