//! One function per subcommand: JSON in, JSON out.

use std::collections::BTreeMap;

use k3cy_core::algebra::{fmt_rational, parse_mpoly, parse_unipoly, RootOfUnity};
use k3cy_core::curves::{
    automorphism_eigenvalues, holomorphic_form_basis, shioda_inose_quotient, twisted_product_quotient, Branch,
    CyclicCover, MonomialAutomorphism, Place, QuotientProblem, RewriteRule,
};
use k3cy_core::fibration::{classify_fibers, ns_gram, SectionData, WeierstrassJ1728};
use k3cy_core::hodge::{
    chi_fixed_locus, cy_hodge_numbers, hodge_pipeline, intermediate_z_hodge, lefschetz_number,
    lefschetz_number_square, solve_eigenspace_dims, FixedLocusSummary,
};
use k3cy_core::lattice::{
    abs_det, disc_forms_opposite, discriminant_form, k3_complement_check, IntegralLattice,
};
use k3cy_core::picard_fuchs::{
    all_indicial_exponents, eigenvalues_match, exact_certificate, exponent_sum, indicial_exponents,
    local_monodromy_class, numeric_monodromy, period_ode_residual, IndicialData, LoopSpec,
};
use num_complex::Complex64 as C64;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::input::{self, field, string};
use crate::Settings;

/// `{"a": "...", "degree": 8}` with optional `sections` and `transcendental`.
pub fn analyze_fibration(v: &Value) -> CliResult<Value> {
    let degree = match v.get("degree") {
        Some(d) => input::unsigned(d, "degree")?,
        None => 8,
    };
    let a = parse_unipoly(string(v, "a")?, Some("s"))?;
    let report = classify_fibers(&WeierstrassJ1728::new(a, degree))?;
    let mut out = json!(report);
    let geometric: Vec<&str> = report.geometric_fibers().iter().map(|(_, k)| k.label()).collect();
    out["geometricFibers"] = json!(geometric);
    if let Some(sec) = v.get("sections") {
        let data: SectionData = serde_json::from_value(sec.clone())?;
        let ns = ns_gram(&report, &data)?;
        out["ns"] = lattice_summary(&ns.lattice);
        out["ns"]["generators"] = json!(ns.independent.iter().map(|&i| &ns.generators[i]).collect::<Vec<_>>());
        if let Some(t) = v.get("transcendental") {
            out["complement"] = json!(k3_complement_check(&ns.lattice, &input::lattice(t)?)?);
        }
    }
    Ok(out)
}

fn lattice_summary(l: &IntegralLattice) -> Value {
    let sig = l.signature();
    json!({
        "rank": l.rank(),
        "determinant": l.determinant().to_string(),
        "absDeterminant": abs_det(l).to_string(),
        "signature": [sig.positive, sig.negative],
        "even": l.is_even(),
        "gram": l.gram(),
    })
}

/// A lattice, or a fibration (`a`, `sections`) whose Néron-Severi lattice is meant.
fn lattice_or_fibration(v: &Value) -> CliResult<IntegralLattice> {
    if v.is_object() {
        let a = parse_unipoly(string(v, "a")?, Some("s"))?;
        let degree = v.get("degree").map(|d| input::unsigned(d, "degree")).transpose()?.unwrap_or(8);
        let report = classify_fibers(&WeierstrassJ1728::new(a, degree))?;
        let data: SectionData = match v.get("sections") {
            Some(s) => serde_json::from_value(s.clone())?,
            None => SectionData::default(),
        };
        return Ok(ns_gram(&report, &data)?.lattice);
    }
    input::lattice(v)
}

pub fn lattice_discriminant(v: &Value) -> CliResult<Value> {
    let l = input::lattice(field(v, "lattice")?)?;
    let mut out = lattice_summary(&l);
    out["discriminantForm"] = json!(discriminant_form(&l)?.to_json());
    Ok(out)
}

pub fn lattice_opposite(v: &Value) -> CliResult<Value> {
    let l1 = input::lattice(field(v, "l1")?)?;
    let l2 = input::lattice(field(v, "l2")?)?;
    Ok(json!({ "opposite": disc_forms_opposite(&l1, &l2)? }))
}

pub fn lattice_compatible(v: &Value) -> CliResult<Value> {
    let ns = lattice_or_fibration(field(v, "ns")?)?;
    let t = input::lattice(field(v, "t")?)?;
    Ok(json!(k3_complement_check(&ns, &t)?))
}

fn fixed_locus(v: &Value) -> CliResult<FixedLocusSummary> {
    Ok(serde_json::from_value(field(v, "fixedLocus")?.clone())?)
}

fn rank_t(v: &Value) -> CliResult<u32> {
    input::unsigned(field(v, "rankT")?, "rankT")
}

/// `{"fixedLocus": {...}, "square": false}`.
pub fn hodge_chi(v: &Value) -> CliResult<Value> {
    let f = fixed_locus(v)?;
    let square = v.get("square").and_then(Value::as_bool).unwrap_or(false);
    Ok(json!({ "chi": chi_fixed_locus(&f, square), "square": square }))
}

/// `{"chi": 16, "rankT": 4}`.
pub fn hodge_solve(v: &Value) -> CliResult<Value> {
    let chi = input::integer(field(v, "chi")?, "chi")?;
    let e = solve_eigenspace_dims(chi, rank_t(v)?)?;
    Ok(json!({
        "eigenspaces": e,
        "lefschetzNumber": lefschetz_number(&e),
        "lefschetzNumberSquare": lefschetz_number_square(&e),
    }))
}

/// `{"fixedLocus": {...}, "rankT": 4}`, optionally with `dimH11Invariant`.
pub fn hodge_cy(v: &Value) -> CliResult<Value> {
    let f = fixed_locus(v)?;
    let t = rank_t(v)?;
    if let Some(inv) = v.get("dimH11Invariant") {
        let h = cy_hodge_numbers(&f, input::unsigned(inv, "dimH11Invariant")?, t)?;
        return Ok(json!({ "hodge": h, "eulerCharacteristic": h.euler_characteristic() }));
    }
    let p = hodge_pipeline(&f, t)?;
    let z = intermediate_z_hodge(&f, p.eigenspaces.dim_h11_invariant_square(), t)?;
    let mut out = json!(p);
    out["eulerCharacteristic"] = json!(p.hodge.euler_characteristic());
    out["intermediateHodge"] = json!(z);
    out["squareLefschetz"] = json!({
        "lefschetzNumber": lefschetz_number_square(&p.eigenspaces),
        "chiFixed": chi_fixed_locus(&f, true),
    });
    Ok(out)
}

fn root_of_unity(v: &Value, what: &str) -> CliResult<RootOfUnity> {
    let kn = input::int_list(v, what, 2)?;
    if kn[1] <= 0 {
        return Err(CliError::usage(format!("{what} needs a positive order")));
    }
    Ok(RootOfUnity::new(kn[0], kn[1]))
}

/// `{"n": 2, "equation": "r*(r^2-1)*(r^2-4)"}` or
/// `{"n": 4, "branches": [{"place": "t", "multiplicity": 1}, ...]}`, with an
/// optional `"automorphism": {"rScale": [k, n], "zScale": [k, n]}`.
pub fn genus(v: &Value) -> CliResult<Value> {
    let n = input::unsigned(field(v, "n")?, "n")?;
    let cover = if let Some(eq) = v.get("equation") {
        let eq = eq.as_str().ok_or_else(|| CliError::usage("equation must be a string"))?;
        CyclicCover::from_equation(n, &parse_unipoly(eq, None)?)?
    } else {
        let branches = field(v, "branches")?
            .as_array()
            .ok_or_else(|| CliError::usage("branches must be an array"))?
            .iter()
            .map(|b| {
                let m = input::integer(field(b, "multiplicity")?, "multiplicity")?;
                let place = string(b, "place")?;
                Ok(match place.trim() {
                    "inf" | "infinity" => Branch::infinity(m),
                    p => Branch { place: Place::Finite(parse_unipoly(p, None)?), multiplicity: m },
                })
            })
            .collect::<CliResult<Vec<_>>>()?;
        CyclicCover::new(n, &branches)?
    };
    let basis = holomorphic_form_basis(&cover);
    let mut out = json!({
        "genus": cover.genus(),
        "ramification": cover.ramification(),
        "holomorphicForms": basis.iter().map(|f| f.render(&cover)).collect::<Vec<_>>(),
    });
    if let Some(aut) = v.get("automorphism") {
        let r = root_of_unity(field(aut, "rScale")?, "rScale")?;
        let z = root_of_unity(field(aut, "zScale")?, "zScale")?;
        let aut = MonomialAutomorphism::new(&cover, r, z)?;
        out["automorphismOrder"] = json!(aut.order());
        out["eigenvalues"] = json!(automorphism_eigenvalues(&cover, &aut, &basis)?);
    }
    Ok(out)
}

/// `{"map": "shioda-inose"}`, `{"map": "twisted-product", "degree": 2}` or an
/// explicit `{"rules": [...], "substitution": {...}, "target": "..."}`.
pub fn verify_quotient(v: &Value) -> CliResult<Value> {
    let problem = match v.get("map").and_then(Value::as_str) {
        Some("shioda-inose") => shioda_inose_quotient(),
        Some("twisted-product") => {
            twisted_product_quotient(input::unsigned(field(v, "degree")?, "degree")?)
        }
        Some(other) => return Err(CliError::usage(format!("unknown map {other:?}"))),
        None => {
            let rules = field(v, "rules")?
                .as_array()
                .ok_or_else(|| CliError::usage("rules must be an array of strings"))?
                .iter()
                .map(|r| Ok(RewriteRule::parse(r.as_str().ok_or_else(|| CliError::usage("rules must be strings"))?)?))
                .collect::<CliResult<Vec<_>>>()?;
            let substitution = field(v, "substitution")?
                .as_object()
                .ok_or_else(|| CliError::usage("substitution must be an object"))?
                .iter()
                .map(|(k, e)| {
                    let e = e.as_str().ok_or_else(|| CliError::usage("substitution values must be strings"))?;
                    Ok((k.clone(), parse_mpoly(e)?))
                })
                .collect::<CliResult<BTreeMap<_, _>>>()?;
            QuotientProblem { rules, substitution, target: parse_mpoly(string(v, "target")?)? }
        }
    };
    let holds = problem.verify()?;
    let out = json!({ "holds": holds, "target": problem.target.to_string() });
    if holds {
        Ok(out)
    } else {
        Err(CliError::Mismatch(out))
    }
}

/// `{"cover": [N, A, B, C], "form": [α, β, γ, l]}`.
pub fn pf_verify(v: &Value) -> CliResult<Value> {
    let p = input::pf_params(v)?;
    let cert = exact_certificate(&p);
    let op = &cert.operator;
    let out = json!({
        "residualZero": cert.holds(),
        "abc": [fmt_rational(&op.a), fmt_rational(&op.b), fmt_rational(&op.c)],
        "operator": op,
        "display": op.to_string(),
        "h": cert.h.to_string(),
        "residual": cert.residual.to_string(),
    });
    if cert.holds() {
        Ok(out)
    } else {
        Err(CliError::Mismatch(out))
    }
}

fn indicial_json(d: &IndicialData) -> Value {
    let mut out = json!(d);
    out["classification"] = json!(local_monodromy_class(d));
    out
}

/// Operator (`abc` or `cover` + `form`) and an optional `point`.
pub fn pf_exponents(v: &Value) -> CliResult<Value> {
    let (op, _) = input::operator(v)?;
    if let Some(point) = v.get("point") {
        return Ok(indicial_json(&indicial_exponents(&op, input::singular_point(point)?)?));
    }
    let all = all_indicial_exponents(&op)?;
    Ok(json!({
        "points": all.iter().map(indicial_json).collect::<Vec<_>>(),
        "exponentSum": fmt_rational(&exponent_sum(&all)),
    }))
}

/// Operator plus `around` (0, 1 or inf) or an explicit `loop` of points,
/// and an optional `base` (default 1/2).
pub fn pf_monodromy(v: &Value, settings: &Settings) -> CliResult<Value> {
    let (op, _) = input::operator(v)?;
    let base = v.get("base").map(input::complex).transpose()?.unwrap_or(C64::new(0.5, 0.0));
    let (spec, point) = match (v.get("around"), v.get("loop")) {
        (Some(p), None) => {
            let p = input::singular_point(p)?;
            (LoopSpec::Around(p), Some(p))
        }
        (None, Some(l)) => {
            let pts = l
                .as_array()
                .ok_or_else(|| CliError::usage("loop must be an array of points"))?
                .iter()
                .map(input::complex)
                .collect::<CliResult<Vec<_>>>()?;
            (LoopSpec::Waypoints(pts), None)
        }
        _ => return Err(CliError::usage("give exactly one of \"around\" and \"loop\"")),
    };
    let m = numeric_monodromy(&op, base, &spec, &settings.integration())?;
    let mut out = json!(m);
    if let Some(p) = point {
        let exact = indicial_exponents(&op, p)?;
        let want = exact.eigenvalues().map(|e| e.to_complex());
        out["exponents"] = json!(exact.exponents.iter().map(fmt_rational).collect::<Vec<_>>());
        out["expectedEigenvalues"] = json!(exact.eigenvalues());
        out["matchesExponents"] = json!(eigenvalues_match(&m.eigenvalues, &want, settings.tolerance));
    }
    Ok(out)
}

/// `cover` + `form`, `lambda` (number or `[re, im]`), `segment` of two branch
/// points, optional finite-difference `step`.
pub fn pf_period(v: &Value) -> CliResult<Value> {
    let p = input::pf_params(v)?;
    let lambda = input::complex(field(v, "lambda")?)?;
    let seg = field(v, "segment")?
        .as_array()
        .filter(|s| s.len() == 2)
        .ok_or_else(|| CliError::usage("segment must be a pair of branch points"))?;
    let segment = (input::branch_point(&seg[0])?, input::branch_point(&seg[1])?);
    let step = v.get("step").and_then(Value::as_f64).unwrap_or(1e-3);
    if !(step > 0.0) {
        return Err(CliError::usage("step must be positive"));
    }
    let r = period_ode_residual(&p, lambda, segment, step)?;
    if !r.period.iter().all(|x| x.is_finite()) {
        return Err(CliError::Numeric("period quadrature produced a non-finite value".into()));
    }
    Ok(json!({
        "lambda": [lambda.re, lambda.im],
        "segment": [segment.0.label(), segment.1.label()],
        "period": r.period,
        "odeResidual": r.residual,
        "relativeResidual": r.relative_residual,
        "step": r.step,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibration_examples() {
        let out = analyze_fibration(&json!({"a": "s*(s-1)^2*(s-2)^2", "degree": 8})).unwrap();
        assert_eq!(out["geometricFibers"], json!(["III", "I0*", "I0*", "III*"]));
        assert_eq!(out["eulerTotal"], 24);
        assert_eq!(out["trivialLatticeRank"], 18);
        let out = analyze_fibration(&json!({"a": "(s*(s-1)*(s-2)*(s-3))^2"})).unwrap();
        assert_eq!(out["geometricFibers"], json!(["I0*", "I0*", "I0*", "I0*"]));
        let err = analyze_fibration(&json!({"a": "s^4*(s-1)^4", "degree": 8})).unwrap_err();
        assert_eq!((err.exit_code(), err.kind()), (2, "NonMinimalModel"));
    }

    #[test]
    fn fibration_with_sections() {
        let v = json!({
            "a": "s*(s-1)^2*(s-2)^2",
            "sections": {"sections": [{"name": "sigma", "meets": [[0, 1], [1, 1], [2, 1], [3, 6]]}]},
            "transcendental": "U(2)+<2>+<-2>"
        });
        let out = analyze_fibration(&v).unwrap();
        assert_eq!(out["ns"]["absDeterminant"], "16");
        assert_eq!(out["complement"]["compatible"], true);
    }

    #[test]
    fn lattice_commands() {
        let d = lattice_discriminant(&json!({"lattice": "<2>"})).unwrap();
        assert_eq!(d["discriminantForm"]["q"], json!(["1/2"]));
        assert_eq!(lattice_opposite(&json!({"l1": "<2>", "l2": "<-2>"})).unwrap()["opposite"], true);
        assert_eq!(lattice_opposite(&json!({"l1": "<2>", "l2": "<2>"})).unwrap()["opposite"], false);
        let c = lattice_compatible(&json!({"ns": "U", "t": "U(2)^2"})).unwrap();
        assert_eq!(c["compatible"], false);
        let ns = json!({"a": "(s*(s-1)*(s-2)*(s-3))^2", "sections": {"sections": [
            {"name": "s1", "meets": [[0, 1], [1, 1], [2, 1], [3, 1]]},
            {"name": "s2", "meets": [[0, 3], [1, 3], [2, 3], [3, 3]]}]}});
        assert_eq!(lattice_compatible(&json!({"ns": ns, "t": "U(2)^2"})).unwrap()["compatible"], true);
    }

    #[test]
    fn hodge_commands() {
        let f = json!({"isolatedPoints": 10, "fixedCurveGenera": [0, 0, 0], "invariantNotFixedCurves": 5, "switchedCurves": 0});
        assert_eq!(hodge_chi(&json!({"fixedLocus": f})).unwrap()["chi"], 16);
        let s = hodge_solve(&json!({"chi": 8, "rankT": 8})).unwrap();
        assert_eq!(s["eigenspaces"], json!({"d1": 10, "dm1": 4, "di": 4, "dmi": 4}));
        let cy = hodge_cy(&json!({"fixedLocus": f, "rankT": 4})).unwrap();
        assert_eq!(cy["hodge"], json!({"h11": 73, "h21": 1}));
        assert_eq!(cy["intermediateHodge"], json!({"h11": 51, "h21": 3}));
        let bad = json!({"isolatedPoints": 2, "fixedCurveGenera": [2], "invariantNotFixedCurves": 0, "switchedCurves": 0});
        assert_eq!(hodge_cy(&json!({"fixedLocus": bad, "rankT": 4, "dimH11Invariant": 9})).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn genus_command() {
        let out = genus(&json!({"n": 2, "equation": "r*(r-1)*(r+1)*(r-2)*(r+2)",
            "automorphism": {"rScale": [1, 2], "zScale": [1, 4]}}))
        .unwrap();
        assert_eq!(out["genus"], 2);
        assert_eq!(out["eigenvalues"], json!(["i", "-i"]));
        let out = genus(&json!({"n": 4, "branches": [
            {"place": "t", "multiplicity": 1}, {"place": "t-1", "multiplicity": 1},
            {"place": "t-2", "multiplicity": 2}, {"place": "t-3", "multiplicity": 2}, {"place": "t-4", "multiplicity": 2}]}))
        .unwrap();
        assert_eq!(out["genus"], 3);
    }

    #[test]
    fn quotient_command() {
        assert_eq!(verify_quotient(&json!({"map": "shioda-inose"})).unwrap()["holds"], true);
        assert_eq!(verify_quotient(&json!({"map": "twisted-product", "degree": 3})).unwrap()["holds"], true);
        let wrong = json!({"rules": ["v^2 -> u^3 + u", "z^2 -> r"], "substitution": {"x": "u*z^2", "y": "v*z^2", "s": "r^2"},
            "target": "y^2 - x^3 - x*s"});
        assert_eq!(verify_quotient(&wrong).unwrap_err().exit_code(), 4);
    }

    #[test]
    fn pf_commands() {
        assert_eq!(pf_verify(&json!({"cover": [4, 1, 2, 2], "form": [0, 1, 1, 3]})).unwrap()["residualZero"], true);
        let e = pf_exponents(&json!({"abc": ["1/2", "1/2", "1/2"], "point": 0})).unwrap();
        assert_eq!(e["exponents"], json!(["0", "0"]));
        assert_eq!(e["classification"], "UNIPOTENT_NONTRIVIAL");
        let all = pf_exponents(&json!({"cover": [4, 1, 2, 2], "form": [0, 0, 0, 1]})).unwrap();
        assert_eq!(all["exponentSum"], "1");
        let m = pf_monodromy(&json!({"abc": ["1/4", "1/2", "1/2"], "around": 0}), &Settings::default()).unwrap();
        assert_eq!(m["matchesExponents"], true);
        assert_eq!(m["expectedEigenvalues"], json!(["1", "i"]));
    }

    #[test]
    fn period_command() {
        let out = pf_period(&json!({"cover": [2, 1, 1, 1], "form": [0, 0, 0, 1], "lambda": 0.5, "segment": ["1", "inf"]})).unwrap();
        assert!(out["relativeResidual"].as_f64().unwrap() < 1e-6);
        let bad = pf_period(&json!({"cover": [2, 1, 1, 1], "form": [0, 0, 0, 1], "lambda": 0.5, "segment": ["0", "lambda"], "step": -1}));
        assert_eq!(bad.unwrap_err().exit_code(), 1);
    }
}
