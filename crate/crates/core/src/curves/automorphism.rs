use num_integer::Integer;
use num_traits::Zero;

use super::cyclic::CyclicCover;
use super::forms::DifferentialForm;
use crate::algebra::{RootOfUnity, UniPoly};
use crate::error::{Error, Result};

/// `(r, z) ↦ (ρ·r, ζ·z)` with `ρ`, `ζ` roots of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialAutomorphism {
    r_scale: RootOfUnity,
    z_scale: RootOfUnity,
}

/// The common eigenvalue of `p(ρ·r) = ν·p(r)`, if `p` is an eigenvector.
fn scaling_eigenvalue(p: &UniPoly, rho: &RootOfUnity) -> Option<RootOfUnity> {
    let mut nu = None;
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let v = rho.pow(k as i64);
        match &nu {
            None => nu = Some(v),
            Some(w) if *w != v => return None,
            _ => {}
        }
    }
    nu
}

impl MonomialAutomorphism {
    /// Checks that the map preserves `z^N = F(r)`, i.e. `F(ρr) = ζ^N F(r)`.
    pub fn new(cover: &CyclicCover, r_scale: RootOfUnity, z_scale: RootOfUnity) -> Result<Self> {
        let f = cover.equation_rhs();
        let want = z_scale.pow(cover.n() as i64);
        match scaling_eigenvalue(&f, &r_scale) {
            Some(nu) if nu == want => Ok(MonomialAutomorphism { r_scale, z_scale }),
            _ => Err(Error::domain(format!(
                "(r, z) -> ({} r, {} z) does not preserve the cover equation",
                r_scale, z_scale
            ))),
        }
    }

    pub fn identity() -> Self {
        MonomialAutomorphism { r_scale: RootOfUnity::one(), z_scale: RootOfUnity::one() }
    }

    pub fn r_scale(&self) -> &RootOfUnity {
        &self.r_scale
    }

    pub fn z_scale(&self) -> &RootOfUnity {
        &self.z_scale
    }

    /// `lcm(ord ρ, ord ζ)`.
    pub fn order(&self) -> u64 {
        self.r_scale.order().lcm(&self.z_scale.order())
    }

    /// Eigenvalue of the pullback on `P(r) dr / z^l`: `ν·ρ·ζ^(-l)` where
    /// `P(ρr) = ν P(r)`.
    pub fn eigenvalue(&self, cover: &CyclicCover, form: &DifferentialForm) -> Result<RootOfUnity> {
        let p = form.numerator(cover);
        let nu = scaling_eigenvalue(&p, &self.r_scale).ok_or_else(|| {
            Error::domain(format!("{} is not an eigenvector of the automorphism", form.render(cover)))
        })?;
        Ok(&(&nu * &self.r_scale) * &self.z_scale.pow(-(form.l as i64)))
    }
}

pub fn automorphism_eigenvalues(
    cover: &CyclicCover,
    aut: &MonomialAutomorphism,
    basis: &[DifferentialForm],
) -> Result<Vec<RootOfUnity>> {
    basis.iter().map(|f| aut.eigenvalue(cover, f)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_unipoly;
    use crate::curves::cyclic::Branch;
    use crate::curves::forms::holomorphic_form_basis;

    fn c_f(g: i64) -> CyclicCover {
        let mut b = vec![Branch::at(0, 1)];
        for k in 1..=g {
            b.push(Branch::at(k, 1));
            b.push(Branch::at(-k, 1));
        }
        CyclicCover::new(2, &b).unwrap()
    }

    fn alpha(c: &CyclicCover) -> MonomialAutomorphism {
        MonomialAutomorphism::new(c, RootOfUnity::minus_one(), RootOfUnity::i()).unwrap()
    }

    #[test]
    fn eigenvalues_genus_two() {
        let c = c_f(2);
        let ev = automorphism_eigenvalues(&c, &alpha(&c), &holomorphic_form_basis(&c)).unwrap();
        assert_eq!(ev, [RootOfUnity::i(), RootOfUnity::minus_i()]);
    }

    #[test]
    fn eigenvalues_genus_three() {
        let c = c_f(3);
        let ev = automorphism_eigenvalues(&c, &alpha(&c), &holomorphic_form_basis(&c)).unwrap();
        assert_eq!(ev, [RootOfUnity::i(), RootOfUnity::minus_i(), RootOfUnity::i()]);
        assert_eq!(alpha(&c).order(), 4);
    }

    #[test]
    fn identity_acts_trivially() {
        let c = c_f(3);
        let ev = automorphism_eigenvalues(&c, &MonomialAutomorphism::identity(), &holomorphic_form_basis(&c)).unwrap();
        assert!(ev.iter().all(RootOfUnity::is_one));
    }

    #[test]
    fn rejects_incompatible_maps_and_non_eigenvectors() {
        let c = c_f(2);
        assert!(MonomialAutomorphism::new(&c, RootOfUnity::minus_one(), RootOfUnity::one()).is_err());
        let shifted = CyclicCover::from_equation(2, &parse_unipoly("r*(r-1)*(r+1)*(r-2)*(r+3)", None).unwrap()).unwrap();
        assert!(MonomialAutomorphism::new(&shifted, RootOfUnity::minus_one(), RootOfUnity::i()).is_err());
        // (r + 1) dr / z mixes eigenvalues
        let mixed = DifferentialForm { r_power: 0, place_exponents: vec![0, 0, 1, 0, 0], l: 1 };
        assert!(alpha(&c).eigenvalue(&c, &mixed).is_err());
    }
}
