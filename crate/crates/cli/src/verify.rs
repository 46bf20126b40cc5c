//! Replays every check of a family scenario: fibration, lattices, Lefschetz
//! bookkeeping, Hodge numbers and the Picard-Fuchs data.

use k3cy_core::algebra::{fmt_rational, parse_unipoly, UniPoly};
use k3cy_core::curves::Place;
use k3cy_core::fibration::{classify_fibers, ns_gram, FiberDatum, FibrationReport, WeierstrassJ1728};
use k3cy_core::hodge::{
    chi_fixed_locus, hodge_pipeline, holomorphic_lefschetz_points, intermediate_z_hodge, lefschetz_number_square,
    moduli_dimension,
};
use k3cy_core::lattice::{abs_det, k3_complement_check, parse_lattice};
use k3cy_core::algebra::CoverData;
use k3cy_core::picard_fuchs::{
    eigenvalues_match, exact_certificate, indicial_exponents, mum_absent_for_cy3, numeric_monodromy, LoopSpec,
    PFParams, SingularPoint,
};
use num_complex::Complex64 as C64;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::scenario::{FibrationInput, Scenario, BUNDLED};
use crate::Settings;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub check: String,
    pub status: &'static str,
    pub computed: Value,
    pub expected: Value,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == "PASS"
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub scenario: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &str, passed: bool, computed: Value, expected: Value) {
        let status = if passed { "PASS" } else { "FAIL" };
        self.0.push(Check { check: name.to_string(), status, computed, expected });
    }

    /// Exact comparison of JSON renderings; skipped when nothing is expected.
    fn exact<T: Serialize, U: Serialize>(&mut self, name: &str, computed: T, expected: &Option<U>) {
        if let Some(e) = expected {
            let (c, e) = (json!(computed), json!(e));
            self.push(name, c == e, c, e);
        }
    }
}

fn fibration_report(input: &FibrationInput) -> CliResult<FibrationReport> {
    Ok(match input {
        FibrationInput::Weierstrass { a, degree } => {
            classify_fibers(&WeierstrassJ1728::new(parse_unipoly(a, Some("s"))?, *degree))?
        }
        FibrationInput::Fibers { fibers } => {
            let place = |k: usize| Place::Finite(UniPoly::linear(k3cy_core::algebra::qi(k as i64)));
            FibrationReport::from_fibers(fibers.iter().enumerate().map(|(k, &t)| FiberDatum::new(place(k), t)).collect())
        }
    })
}

fn pf_params(s: &Scenario) -> CliResult<Option<PFParams>> {
    let Some(pf) = &s.picard_fuchs else { return Ok(None) };
    let [n, a, b, c] = pf.cover;
    let [al, be, ga, l] = pf.form;
    Ok(Some(PFParams::new(CoverData::new(n, a, b, c)?, al, be, ga, l)?))
}

fn complex_json(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn verify_scenario(s: &Scenario, settings: &Settings) -> CliResult<FamilyReport> {
    let e = &s.expected;
    let mut checks = Checks::default();

    let report = fibration_report(&s.fibration)?;
    let labels: Vec<&str> = report.geometric_fibers().iter().map(|(_, k)| k.label()).collect();
    checks.exact("fibers", &labels, &e.fibers);
    checks.exact("eulerTotal", report.euler_total, &e.euler_total);
    checks.exact("trivialLatticeRank", report.trivial_lattice_rank, &e.trivial_lattice_rank);

    let ns = ns_gram(&report, &s.sections)?.lattice;
    checks.exact("nsRank", ns.rank(), &e.ns_rank);
    checks.exact("nsAbsDeterminant", abs_det(&ns).to_u64(), &e.ns_abs_determinant);
    let t = parse_lattice(&s.transcendental)?;
    let complement = k3_complement_check(&ns, &t)?;
    if let Some(expected) = e.transcendental_compatible {
        let detail = json!({ "lattice": s.transcendental, "check": complement });
        checks.push("transcendentalCompatible", complement.compatible == expected, detail, json!(expected));
    }

    let rank_t = t.rank() as u32;
    let pipeline = hodge_pipeline(&s.fixed_locus, rank_t)?;
    let eig = pipeline.eigenspaces;
    checks.exact("chiFixed", pipeline.chi_fixed, &e.chi_fixed);
    checks.exact("eigenspaces", eig.as_tuple(), &e.eigenspaces);
    let square = (lefschetz_number_square(&eig), chi_fixed_locus(&s.fixed_locus, true));
    if let Some(expected) = e.square_lefschetz_consistent {
        let computed = json!({ "lefschetzNumber": square.0, "chiFixed": square.1 });
        checks.push("squareLefschetzConsistent", (square.0 == square.1) == expected, computed, json!(expected));
    }
    let points = holomorphic_lefschetz_points(&s.fixed_locus.fixed_curve_genera);
    if let Some(expected) = e.holomorphic_lefschetz_consistent {
        let computed = json!({ "declaredPoints": s.fixed_locus.isolated_points, "forcedPoints": points });
        let consistent = points == s.fixed_locus.isolated_points as i64;
        checks.push("holomorphicLefschetzConsistent", consistent == expected, computed, json!(expected));
    }
    checks.exact("h11", pipeline.hodge.h11, &e.h11);
    checks.exact("h21", pipeline.hodge.h21, &e.h21);
    if e.intermediate_hodge.is_some() {
        let z = intermediate_z_hodge(&s.fixed_locus, eig.dim_h11_invariant_square(), rank_t)?;
        checks.exact("intermediateHodge", [z.h11, z.h21], &e.intermediate_hodge);
    }
    checks.exact("moduli", moduli_dimension(rank_t, report.trivial_lattice_rank as u32)?, &e.moduli);

    if let Some(p) = pf_params(s)? {
        let cert = exact_certificate(&p);
        checks.exact("certificateHolds", cert.holds(), &e.certificate_holds);
        let at_zero = indicial_exponents(&cert.operator, SingularPoint::Zero)?;
        let exps: Vec<String> = at_zero.exponents.iter().map(fmt_rational).collect();
        checks.exact("exponentsAtZero", &exps, &e.exponents_at_zero);
        if let Some(expected) = e.monodromy_eigenvalues_at_zero {
            let m = numeric_monodromy(
                &cert.operator,
                C64::new(0.5, 0.0),
                &LoopSpec::Around(SingularPoint::Zero),
                &settings.integration(),
            )?;
            let want = expected.map(|[re, im]| C64::new(re, im));
            let ok = eigenvalues_match(&m.eigenvalues, &want, settings.tolerance);
            let computed = json!(m.eigenvalues.iter().map(|&z| complex_json(z)).collect::<Vec<_>>());
            checks.push("monodromyEigenvaluesAtZero", ok, computed, json!(expected));
        }
    }
    if let Some(order) = s.pf_order {
        let verdict = mum_absent_for_cy3(order, pipeline.hodge.h21 as u64);
        checks.exact("mumAbsent", verdict.absent, &e.mum_absent);
        checks.exact("mumReason", verdict.reason, &e.mum_reason);
    }

    let checks = checks.0;
    Ok(FamilyReport {
        scenario: s.name.clone(),
        passed: checks.iter().all(Check::passed),
        checks,
        notes: s.notes.clone(),
    })
}

/// Runs the named scenarios (`all` for every bundled one), in parallel
/// threads when asked.
pub fn verify_family(names: &[String], settings: &Settings) -> CliResult<Value> {
    let names: Vec<String> = if names.iter().any(|n| n == "all") || names.is_empty() {
        BUNDLED.iter().map(|s| s.to_string()).collect()
    } else {
        names.to_vec()
    };
    let scenarios = names.iter().map(|n| Scenario::bundled(n)).collect::<CliResult<Vec<_>>>()?;
    verify_scenarios(&scenarios, settings)
}

pub fn verify_scenarios(scenarios: &[Scenario], settings: &Settings) -> CliResult<Value> {
    let reports: Vec<CliResult<FamilyReport>> = if settings.parallel {
        std::thread::scope(|sc| {
            let handles: Vec<_> = scenarios.iter().map(|s| sc.spawn(move || verify_scenario(s, settings))).collect();
            handles.into_iter().map(|h| h.join().expect("verification thread panicked")).collect()
        })
    } else {
        scenarios.iter().map(|s| verify_scenario(s, settings)).collect()
    };
    let reports = reports.into_iter().collect::<CliResult<Vec<_>>>()?;
    let passed = reports.iter().all(|r| r.passed);
    let out = if reports.len() == 1 {
        json!(reports[0])
    } else {
        json!({ "passed": passed, "families": reports })
    };
    if passed {
        Ok(out)
    } else {
        Err(CliError::Mismatch(out))
    }
}
