use k3cy_core::algebra::{qi, RootOfUnity, UniPoly, Q};
use k3cy_core::curves::{
    automorphism_eigenvalues, genus, holomorphic_form_basis, Branch, CyclicCover, MonomialAutomorphism,
};
use num_integer::Integer;
use proptest::prelude::*;

/// Riemann-Hurwitz for `z^N = ∏ (r - a_i)^(m_i)` with the multiplicity at
/// infinity implied: `2g - 2 = -2N + Σ (N - gcd(N, m))`.
fn riemann_hurwitz(n: u32, mults: &[u32]) -> i64 {
    let total: u32 = mults.iter().sum();
    let at_inf = (n - total % n) % n;
    let defect: i64 = mults.iter().chain(std::iter::once(&at_inf)).map(|&m| (n - n.gcd(&m)) as i64).sum();
    (defect - 2 * n as i64 + 2) / 2
}

/// Covers branched over distinct integer points with multiplicities in `[1, N)`.
fn linear_cover() -> impl Strategy<Value = (u32, Vec<(i64, u32)>)> {
    (2u32..=6, 1usize..=6).prop_flat_map(|(n, k)| {
        let roots = prop::sample::subsequence((-12i64..=12).collect::<Vec<_>>(), k).prop_shuffle();
        (Just(n), roots, prop::collection::vec(1..n, k))
            .prop_map(|(n, roots, mults)| (n, roots.into_iter().zip(mults).collect()))
    })
}

fn branches(data: &[(Q, u32)]) -> Vec<Branch> {
    data.iter().map(|(a, m)| Branch::finite(UniPoly::linear(a.clone()), *m as i64)).collect()
}

fn rational(data: &[(i64, u32)]) -> Vec<(Q, u32)> {
    data.iter().map(|&(a, m)| (qi(a), m)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn genus_matches_riemann_hurwitz((n, data) in linear_cover()) {
        let mults: Vec<u32> = data.iter().map(|&(_, m)| m).collect();
        match genus(n, &branches(&rational(&data))) {
            Ok(g) => prop_assert_eq!(g as i64, riemann_hurwitz(n, &mults)),
            Err(_) => {
                let total: u32 = mults.iter().sum();
                let g = mults.iter().fold(n, |g, m| g.gcd(m)).gcd(&((n - total % n) % n));
                prop_assert!(g > 1, "rejected a connected cover");
            }
        }
    }

    #[test]
    fn genus_is_mobius_invariant((n, data) in linear_cover(), shift in -5i64..=5, pick in any::<prop::sample::Index>()) {
        let base = rational(&data);
        let Ok(g) = genus(n, &branches(&base)) else { return Ok(()) };
        let translated: Vec<(Q, u32)> = base.iter().map(|(a, m)| (a + qi(shift), *m)).collect();
        prop_assert_eq!(genus(n, &branches(&translated)).unwrap(), g);
        let mut reversed = base.clone();
        reversed.reverse();
        prop_assert_eq!(genus(n, &branches(&reversed)).unwrap(), g);

        // r ↦ 1/(r - a₀) sends a₀ to infinity and infinity to 0
        let (a0, m0) = base[pick.index(base.len())].clone();
        let total: u32 = data.iter().map(|&(_, m)| m).sum();
        let at_inf = (n - total % n) % n;
        let mut moved: Vec<(Q, u32)> =
            base.iter().filter(|(a, _)| *a != a0).map(|(a, m)| (Q::from_integer(1.into()) / (a - &a0), *m)).collect();
        if at_inf != 0 {
            moved.push((qi(0), at_inf));
        }
        let mut bs = branches(&moved);
        bs.push(Branch::infinity(m0 as i64));
        prop_assert_eq!(genus(n, &bs).unwrap(), g);
    }

    #[test]
    fn hyperelliptic_genus(k in 1usize..=12, offset in -6i64..=6) {
        let roots: Vec<(Q, u32)> = (0..k as i64).map(|i| (qi(2 * i + offset), 1)).collect();
        let points = if k % 2 == 0 { k } else { k + 1 };
        let g = genus(2, &branches(&roots)).unwrap();
        prop_assert_eq!(g as usize, points / 2 - 1);
    }

    #[test]
    fn basis_size_is_genus((n, data) in linear_cover()) {
        let Ok(c) = CyclicCover::new(n, &branches(&rational(&data))) else { return Ok(()) };
        prop_assert_eq!(holomorphic_form_basis(&c).len() as u64, c.genus());
    }

    #[test]
    fn automorphism_eigenvalues_are_roots_of_unity_of_its_order(
        n in 2u32..=6, e in 1u32..=5, k in 1u32..=4, j in 0i64..=5,
    ) {
        // z^N = r^e (r^k - 1), with r ↦ ζ_k r and z ↦ ζ_{kN}^(e + kj) z
        let e = e % n;
        prop_assume!(e != 0);
        let mut place = vec![qi(-1)];
        place.extend(std::iter::repeat(qi(0)).take(k as usize - 1));
        place.push(qi(1));
        let Ok(c) = CyclicCover::new(n, &[Branch::at(0, e as i64), Branch::finite(UniPoly::new(place), 1)]) else {
            return Ok(());
        };
        let aut = MonomialAutomorphism::new(
            &c,
            RootOfUnity::new(1, k as i64),
            RootOfUnity::new(e as i64 + k as i64 * j, (k * n) as i64),
        )
        .unwrap();
        let basis = holomorphic_form_basis(&c);
        let eig = automorphism_eigenvalues(&c, &aut, &basis).unwrap();
        prop_assert_eq!(eig.len(), basis.len());
        for v in eig {
            prop_assert_eq!(aut.order() % v.order(), 0, "{:?} of order {} under an automorphism of order {}", v, v.order(), aut.order());
        }
    }
}

#[test]
fn riemann_hurwitz_oracle_spot_values() {
    // z^4 = r(r-1)^2(r-3)^2 is totally ramified over 0 and infinity
    assert_eq!(riemann_hurwitz(2, &[1; 6]), 2);
    assert_eq!(riemann_hurwitz(2, &[1; 5]), 2);
    assert_eq!(riemann_hurwitz(4, &[1, 2, 2]), 2);
    assert_eq!(riemann_hurwitz(2, &[1, 1, 1]), 1);
}
