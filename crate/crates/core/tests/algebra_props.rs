use k3cy_core::algebra::{q, qi, squarefree_decompose, CoverCoeff, CoverData, CoverElement, QLambda, UniPoly};
use proptest::prelude::*;

fn poly(coeffs: &[i64]) -> UniPoly {
    UniPoly::new(coeffs.iter().map(|&c| qi(c)).collect())
}

fn nonzero_poly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-4i64..=4, 1..=5).prop_map(|c| poly(&c)).prop_filter("nonzero", |p| !p.is_zero())
}

fn cover() -> impl Strategy<Value = CoverData> {
    prop::sample::select(vec![(4, 1, 2, 2), (2, 1, 1, 1), (4, 1, 1, 2), (3, 1, 1, 1), (6, 1, 2, 3)])
        .prop_map(|(n, a, b, c)| CoverData::new(n, a, b, c).unwrap())
}

/// `c₀·m₀ + c₁·m₁` for two monomials with a shared z-exponent and scalar
/// coefficients in `Q(λ)`.
fn element(cover: CoverData) -> impl Strategy<Value = CoverElement> {
    let exps = (-2i64..=2, -2i64..=2, -2i64..=2);
    let scalar = (-3i64..=3, 1i64..=3, -2i64..=2);
    (exps.clone(), exps, scalar.clone(), scalar, -3i64..=3).prop_map(move |(e0, e1, s0, s1, l)| {
        let sc = |(a, d, b): (i64, i64, i64)| QLambda::from_poly(UniPoly::new(vec![q(a, d), qi(b)]));
        let m0 = CoverElement::monomial(cover, e0.0, e0.1, e0.2, l).scale(&sc(s0));
        let m1 = CoverElement::monomial(cover, e1.0, e1.1, e1.2, l).scale(&sc(s1));
        &m0 + &m1
    })
}

fn cover_and_pair() -> impl Strategy<Value = (CoverElement, CoverElement)> {
    cover().prop_flat_map(|c| (element(c), element(c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn squarefree_factors_recombine(p in nonzero_poly(), r in nonzero_poly()) {
        let product = &p * &r;
        let factors = squarefree_decompose(&product).unwrap();
        let rebuilt = factors.iter().fold(UniPoly::one(), |acc, (f, m)| &acc * &f.pow(*m));
        prop_assert_eq!(rebuilt.scale(&product.lc()), product);
        for (f, _) in &factors {
            prop_assert_eq!(UniPoly::gcd(f, &f.derivative()).degree(), Some(0));
        }
    }

    #[test]
    fn leibniz_rule((e1, e2) in cover_and_pair()) {
        let lhs = (&e1 * &e2).d_dr();
        let rhs = &(&e1.d_dr() * &e2) + &(&e1 * &e2.d_dr());
        prop_assert!((&lhs - &rhs).is_zero(), "{:?} vs {:?}", lhs, rhs);
    }

    #[test]
    fn mixed_partials_commute(e in cover().prop_flat_map(element)) {
        let a = e.d_dr().d_dlambda();
        let b = e.d_dlambda().d_dr();
        prop_assert!((&a - &b).is_zero());
    }

    #[test]
    fn z_power_n_is_rational((c, scale) in (cover(), 1i64..=5)) {
        let n = c.n as i64;
        let one = CoverCoeff::constant(qi(scale));
        let z_n = CoverElement::new(c, one.clone(), -n);
        let z_minus_n = CoverElement::new(c, one, n);
        let unit = &z_n * &z_minus_n;
        prop_assert!(unit.d_dr().is_zero());
        prop_assert!(unit.d_dlambda().is_zero());
        let rewritten = z_n.rewrite_l(0).unwrap();
        let expected = CoverElement::new(c, c.z_pow_n(), 0).scale(&QLambda::constant(qi(scale)));
        prop_assert!((&rewritten - &expected).is_zero());
        prop_assert!((&rewritten.d_dr() - &z_n.d_dr()).is_zero());
    }
}
