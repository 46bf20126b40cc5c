use std::f64::consts::PI;

use k3cy_core::algebra::{q, qi, to_f64, CoverData, Q};
use k3cy_core::picard_fuchs::monodromy::{identity, mat_mul, mat_sub, max_norm};
use k3cy_core::picard_fuchs::{
    all_indicial_exponents, eigenvalues_match, exact_certificate, exponent_sum, indicial_exponents,
    local_monodromy_class, monodromy_triple, numeric_monodromy, pf_operator, series_relative_residual,
    IntegrationOptions, LoopSpec, PFOperator, PFParams, SingularPoint,
};
use num_complex::Complex64 as C64;
use proptest::prelude::*;

fn sorted(mut v: [Q; 2]) -> [Q; 2] {
    v.sort();
    v
}

fn params() -> impl Strategy<Value = PFParams> {
    (2u32..=8)
        .prop_flat_map(|n| (Just(n), 0..n, 0..n, 0..n, -2i64..=2, -2i64..=2, -2i64..=2, 1i64..=2 * n as i64))
        .prop_map(|(n, a, b, c, al, be, ga, l)| {
            PFParams::new(CoverData::new(n, a, b, c).unwrap(), al, be, ga, l).unwrap()
        })
}

/// Rational `(a, b, c)` with small denominators and `a, c > 0`.
fn abc() -> impl Strategy<Value = (Q, Q, Q)> {
    let frac = |lo: i64| (lo..=11i64, 2i64..=6).prop_map(|(n, d)| q(n, d));
    (frac(1), frac(-5), frac(1)).prop_filter("a + c < 3", |(a, _, c)| a + c < qi(3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn fuchs_relation(p in params()) {
        let op = pf_operator(&p);
        let (a, b, c) = (p.a(), p.b(), p.c());
        let data = all_indicial_exponents(&op).unwrap();
        let expected = [
            [qi(0), qi(1) - &a - &c],
            [qi(0), qi(1) - &b - &c],
            [c.clone(), &a + &b + &c - qi(1)],
        ];
        for (d, e) in data.iter().zip(expected) {
            prop_assert_eq!(sorted(d.exponents.clone()), sorted(e));
        }
        prop_assert_eq!(exponent_sum(&data), qi(1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hypergeometric_series_solves_the_operator((a, b, c) in abc(), re in -0.45f64..0.45, im in -0.2f64..0.2) {
        let op = PFOperator::from_abc(a, b, c);
        let lambda = C64::new(re, im);
        prop_assume!(lambda.norm() < 0.5);
        let r = series_relative_residual(&op, lambda, 70).unwrap();
        prop_assert!(r < 1e-10, "residual {r} at {lambda}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn numeric_eigenvalues_follow_exponents((a, b, c) in abc()) {
        let op = PFOperator::from_abc(a, b, c);
        let m = numeric_monodromy(&op, C64::new(0.5, 0.0), &LoopSpec::Around(SingularPoint::Zero), &IntegrationOptions::default())
            .unwrap();
        let d = indicial_exponents(&op, SingularPoint::Zero).unwrap();
        if d.exponent_difference().is_integer() {
            prop_assert_eq!(m.classification, local_monodromy_class(&d));
        } else {
            let want = d.exponents.clone().map(|e| C64::from_polar(1.0, 2.0 * PI * to_f64(&e)));
            prop_assert!(eigenvalues_match(&m.eigenvalues, &want, 1e-6), "{:?} vs {:?}", m.eigenvalues, want);
        }
    }

    #[test]
    fn integer_exponent_difference_classification(k in 1i64..=5, d in 2i64..=6, b in -3i64..=3) {
        // a + c = 1 forces a double exponent 0 at the origin
        let op = PFOperator::from_abc(q(k, d), q(b, 2), qi(1) - q(k, d));
        let m = numeric_monodromy(&op, C64::new(0.5, 0.0), &LoopSpec::Around(SingularPoint::Zero), &IntegrationOptions::default())
            .unwrap();
        let sym = indicial_exponents(&op, SingularPoint::Zero).unwrap();
        prop_assert_eq!(m.classification, local_monodromy_class(&sym));
    }

    #[test]
    fn loop_product_is_identity((a, b, c) in abc()) {
        let op = PFOperator::from_abc(a, b, c);
        let opts = IntegrationOptions { tolerance: 1e-11, ..Default::default() };
        let [m0, m1, mi] = monodromy_triple(&op, C64::new(0.5, 0.0), &opts).unwrap();
        let product = mat_mul(&mat_mul(&m1.matrix, &m0.matrix), &mi.matrix);
        let scale = (max_norm(&m1.matrix) * max_norm(&m0.matrix) * max_norm(&mi.matrix)).max(1.0);
        let defect = max_norm(&mat_sub(&product, &identity()));
        prop_assert!(defect < 1e-6 * scale, "defect {defect} at scale {scale}");
    }
}

#[test]
fn certificate_grid() {
    let mut count = 0;
    for (n, a, b, c) in [(4, 1, 2, 2), (2, 1, 1, 1), (4, 1, 1, 2)] {
        let cover = CoverData::new(n, a, b, c).unwrap();
        for al in 0..=2 {
            for be in 0..=2 {
                for ga in 0..=2 {
                    for l in 1..=3 {
                        let p = PFParams::new(cover, al, be, ga, l).unwrap();
                        let cert = exact_certificate(&p);
                        assert!(cert.holds(), "{p:?}: {}", cert.residual);
                        count += 1;
                    }
                }
            }
        }
    }
    assert_eq!(count, 243);
}
