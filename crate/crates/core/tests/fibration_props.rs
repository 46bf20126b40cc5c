use k3cy_core::algebra::{qi, UniPoly};
use k3cy_core::fibration::{classify_fibers, ns_gram, KodairaType, SectionData, WeierstrassJ1728};
use proptest::prelude::*;

/// A degree-8 binary form, dehomogenised: linear factors at distinct integer
/// roots, optionally one irreducible quadratic `s² + k`, each with
/// multiplicity at most 3, and the rest of the degree at infinity.
#[derive(Clone, Debug)]
struct Form {
    linear: Vec<(i64, u32)>,
    quadratic: Option<(i64, u32)>,
    scale: i64,
}

impl Form {
    fn finite_degree(&self) -> u32 {
        self.linear.iter().map(|&(_, m)| m).sum::<u32>() + self.quadratic.map_or(0, |(_, m)| 2 * m)
    }

    fn poly(&self) -> UniPoly {
        let mut p = UniPoly::constant(qi(self.scale));
        for &(a, m) in &self.linear {
            p = &p * &UniPoly::linear(qi(a)).pow(m);
        }
        if let Some((k, m)) = self.quadratic {
            p = &p * &UniPoly::new(vec![qi(k), qi(0), qi(1)]).pow(m);
        }
        p
    }

    /// Geometric fiber types read off the multiplicities alone.
    fn expected_types(&self) -> Vec<KodairaType> {
        let kind = |m: u32| match m {
            1 => KodairaType::III,
            2 => KodairaType::I0Star,
            _ => KodairaType::IIIStar,
        };
        let mut v: Vec<_> = self.linear.iter().map(|&(_, m)| kind(m)).collect();
        if let Some((_, m)) = self.quadratic {
            v.extend([kind(m); 2]);
        }
        let inf = 8 - self.finite_degree();
        if inf > 0 {
            v.push(kind(inf));
        }
        v.sort();
        v
    }

    fn moved(&self, shift: i64) -> Self {
        Form { linear: self.linear.iter().map(|&(a, m)| (a + shift, m)).collect(), ..self.clone() }
    }
}

fn form() -> impl Strategy<Value = Form> {
    let quadratic = prop::option::of((1i64..=9, 1u32..=3));
    (prop::collection::vec(1u32..=3, 0..=8), quadratic, prop_oneof![-5i64..=-1, 1i64..=5])
        .prop_filter("degree in 5..=8", |(ms, quad, _)| {
            let d = ms.iter().sum::<u32>() + quad.map_or(0, |(_, m)| 2 * m);
            (5..=8).contains(&d)
        })
        .prop_flat_map(|(ms, quad, scale)| {
            let k = ms.len();
            let roots = prop::sample::subsequence((-15i64..=15).collect::<Vec<_>>(), k).prop_shuffle();
            (roots, Just(ms), Just(quad), Just(scale))
        })
        .prop_map(|(roots, ms, quadratic, scale)| Form { linear: roots.into_iter().zip(ms).collect(), quadratic, scale })
}

/// Sorted types of the geometric fibers, a place of degree `d` counting `d` times.
fn types(p: &UniPoly) -> Vec<KodairaType> {
    let report = classify_fibers(&WeierstrassJ1728::new(p.clone(), 8)).unwrap();
    let mut v: Vec<_> = report.geometric_fibers().into_iter().map(|(_, k)| k).collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn euler_number_is_24(f in form()) {
        let report = classify_fibers(&WeierstrassJ1728::new(f.poly(), 8)).unwrap();
        let euler: u32 = report.geometric_fibers().iter().map(|(_, k)| k.euler_number()).sum();
        prop_assert_eq!(euler, 24);
        prop_assert_eq!(report.euler_total, 24);
        prop_assert_eq!(types(&f.poly()), f.expected_types());
    }

    #[test]
    fn inversion_of_the_base_keeps_fibers(f in form()) {
        // s ↦ 1/s: a(s) ↦ s^8 a(1/s)
        let p = f.poly();
        prop_assert_eq!(types(&p.reversed(8)), types(&p));
    }

    #[test]
    fn fibers_ignore_root_positions(f in form(), shift in -4i64..=4) {
        prop_assert_eq!(types(&f.moved(shift).poly()), types(&f.poly()));
    }

    #[test]
    fn trivial_lattice_gram(f in form()) {
        let report = classify_fibers(&WeierstrassJ1728::new(f.poly(), 8)).unwrap();
        let ns = ns_gram(&report, &SectionData::default()).unwrap();
        let g = ns.lattice.gram();
        let n = g.len();
        prop_assert_eq!(n, report.trivial_lattice_rank);
        let components: usize = report.geometric_fibers().iter().map(|(_, k)| k.component_count() - 1).sum();
        prop_assert_eq!(n, 2 + components);
        for i in 0..n {
            prop_assert_eq!(g[i][i] % 2, 0);
            for j in 0..n {
                prop_assert_eq!(g[i][j], g[j][i]);
            }
        }
    }
}

#[test]
fn nonminimal_forms_are_rejected() {
    let quartic = UniPoly::linear(qi(0)).pow(4);
    assert!(classify_fibers(&WeierstrassJ1728::new(quartic, 8)).is_err());
    let low = UniPoly::linear(qi(0)).pow(3);
    assert!(classify_fibers(&WeierstrassJ1728::new(low, 8)).is_err());
}
