//! Lefschetz bookkeeping for order-4 non-symplectic automorphisms of K3
//! surfaces and Hodge numbers of the crepant resolutions of
//! `(E_i × S) / (α_E³ × α_S)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fixed loci of an order-4 automorphism `α` and of its square.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FixedLocusSummary {
    pub isolated_points: u32,
    /// Genera of the curves fixed pointwise by `α` (`c` of them).
    pub fixed_curve_genera: Vec<u32>,
    /// Curves fixed by `α²`, mapped to themselves by `α` but not fixed (`d`).
    pub invariant_not_fixed_curves: u32,
    /// Curves fixed by `α²` and swapped in pairs by `α` (`a`).
    #[serde(alias = "switchedPairs")]
    pub switched_curves: u32,
}

impl FixedLocusSummary {
    pub fn new(isolated_points: u32, fixed_curve_genera: Vec<u32>, invariant_not_fixed_curves: u32, switched_curves: u32) -> Self {
        FixedLocusSummary { isolated_points, fixed_curve_genera, invariant_not_fixed_curves, switched_curves }
    }

    /// `isolated_points` points and `c` rational curves.
    pub fn rational(isolated_points: u32, c: u32, d: u32, a: u32) -> Self {
        Self::new(isolated_points, vec![0; c as usize], d, a)
    }

    pub fn c(&self) -> u32 {
        self.fixed_curve_genera.len() as u32
    }

    pub fn d(&self) -> u32 {
        self.invariant_not_fixed_curves
    }

    pub fn a(&self) -> u32 {
        self.switched_curves
    }

    /// `c + d + a`.
    pub fn curves_fixed_by_square(&self) -> u32 {
        self.c() + self.d() + self.a()
    }

    fn check_rational(&self) -> Result<()> {
        match self.fixed_curve_genera.iter().find(|&&g| g > 0) {
            Some(&g) => Err(Error::NotCalabiYauAdmissible(g)),
            None => Ok(()),
        }
    }
}

/// Dimensions of the eigenspaces of `α*` on `H²(S, C)` for `1, -1, i, -i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenspaceDims {
    pub d1: u32,
    pub dm1: u32,
    pub di: u32,
    pub dmi: u32,
}

impl EigenspaceDims {
    pub fn new(d1: u32, dm1: u32, di: u32, dmi: u32) -> Result<Self> {
        if d1 + dm1 + di + dmi != 22 {
            return Err(Error::Inconsistent(format!("eigenspace dimensions {d1}+{dm1}+{di}+{dmi} do not sum to 22")));
        }
        if di != dmi {
            return Err(Error::Inconsistent(format!("the i and -i eigenspaces are conjugate, got {di} != {dmi}")));
        }
        Ok(EigenspaceDims { d1, dm1, di, dmi })
    }

    /// `dim H^{1,1}(E_i × S)` invariant under `α_E³ × α_S`.
    pub fn dim_h11_invariant(&self) -> u32 {
        self.d1 + 1
    }

    /// `dim H^{1,1}(E_i × S)` invariant under the square `α_E² × α_S²`.
    pub fn dim_h11_invariant_square(&self) -> u32 {
        self.d1 + self.dm1 + 1
    }

    pub fn as_tuple(&self) -> (u32, u32, u32, u32) {
        (self.d1, self.dm1, self.di, self.dmi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CYHodge {
    pub h11: u32,
    pub h21: u32,
}

impl CYHodge {
    pub fn euler_characteristic(&self) -> i64 {
        2 * (self.h11 as i64 - self.h21 as i64)
    }
}

/// Topological Euler characteristic of the fixed locus of `α` (or of `α²`).
///
/// The isolated points of `α` lie on curves fixed by `α²`, so they do not
/// contribute separately to the square; the `d` and `a` curves are rational.
pub fn chi_fixed_locus(f: &FixedLocusSummary, for_square: bool) -> i64 {
    let curves: i64 = f.fixed_curve_genera.iter().map(|&g| 2 - 2 * g as i64).sum();
    if for_square {
        curves + 2 * (f.d() as i64 + f.a() as i64)
    } else {
        f.isolated_points as i64 + curves
    }
}

/// `Σ (-1)^r tr(α* | H^r)`; the `±i` traces cancel.
pub fn lefschetz_number(e: &EigenspaceDims) -> i64 {
    2 + e.d1 as i64 - e.dm1 as i64
}

/// Lefschetz number of `α²`, acting as `-1` on the `±i` eigenspaces.
pub fn lefschetz_number_square(e: &EigenspaceDims) -> i64 {
    2 + (e.d1 + e.dm1) as i64 - (e.di + e.dmi) as i64
}

/// Eigenspace dimensions from the Euler characteristic of the fixed locus
/// and the rank of the transcendental lattice.
pub fn solve_eigenspace_dims(chi_fix: i64, rank_t: u32) -> Result<EigenspaceDims> {
    if rank_t == 0 || rank_t % 2 == 1 || rank_t > 22 {
        return Err(Error::Inconsistent(format!("rank T = {rank_t} must be even and in 2..=22")));
    }
    let sum = 22 - rank_t as i64;
    let diff = chi_fix - 2;
    if (sum + diff) % 2 != 0 {
        return Err(Error::Inconsistent(format!("chi = {chi_fix} and rank T = {rank_t} have incompatible parity")));
    }
    let d1 = (sum + diff) / 2;
    let dm1 = (sum - diff) / 2;
    if d1 < 0 || dm1 < 0 {
        return Err(Error::Inconsistent(format!(
            "chi = {chi_fix} and rank T = {rank_t} give negative eigenspace dimensions ({d1}, {dm1})"
        )));
    }
    EigenspaceDims::new(d1 as u32, dm1 as u32, rank_t / 2, rank_t / 2)
}

fn check_rank_t(rank_t: u32) -> Result<()> {
    if rank_t < 2 || rank_t % 2 == 1 || rank_t > 22 {
        return Err(Error::Inconsistent(format!("rank T = {rank_t} must be even and in 2..=22")));
    }
    Ok(())
}

/// Hodge numbers of the resolution `Y` of `(E_i × S) / (α_E³ × α_S)`.
pub fn cy_hodge_numbers(f: &FixedLocusSummary, dim_h11_inv: u32, rank_t: u32) -> Result<CYHodge> {
    f.check_rational()?;
    check_rank_t(rank_t)?;
    let (c, d, a) = (f.c(), f.d(), f.a());
    Ok(CYHodge { h11: dim_h11_inv + 3 * (c + d) + 2 * a + 4 * (c + d), h21: rank_t / 2 - 1 })
}

/// Hodge numbers of the intermediate resolution `Z` of
/// `(E_i × S) / (α_E² × α_S²)`.
///
/// `h^{2,1}(Z)` is the `α²`-invariant part of
/// `H^{1,0}(E) ⊗ H^{1,1}(S) ⊕ H^{0,1}(E) ⊗ H^{2,0}(S)`: the `±i` part of
/// `H^{1,1}(S)` (dimension `rank T - 2`) plus the line `H^{0,1} ⊗ H^{2,0}`.
pub fn intermediate_z_hodge(f: &FixedLocusSummary, dim_h11_inv_square: u32, rank_t: u32) -> Result<CYHodge> {
    f.check_rational()?;
    check_rank_t(rank_t)?;
    Ok(CYHodge { h11: dim_h11_inv_square + 4 * f.curves_fixed_by_square(), h21: rank_t - 1 })
}

/// The full pipeline: Euler characteristic, eigenspaces, Hodge numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HodgePipeline {
    pub chi_fixed: i64,
    pub eigenspaces: EigenspaceDims,
    pub hodge: CYHodge,
}

pub fn hodge_pipeline(f: &FixedLocusSummary, rank_t: u32) -> Result<HodgePipeline> {
    let chi_fixed = chi_fixed_locus(f, false);
    let eigenspaces = solve_eigenspace_dims(chi_fixed, rank_t)?;
    let hodge = cy_hodge_numbers(f, eigenspaces.dim_h11_invariant(), rank_t)?;
    Ok(HodgePipeline { chi_fixed, eigenspaces, hodge })
}

/// Holomorphic Lefschetz formula for an order-4 non-symplectic automorphism
/// acting on `H^{2,0}` by `i`: with only points and rational fixed curves it
/// forces `n = 2 Σ(1 - g) + 4`.
pub fn holomorphic_lefschetz_points(fixed_curve_genera: &[u32]) -> i64 {
    2 * fixed_curve_genera.iter().map(|&g| 1 - g as i64).sum::<i64>() + 4
}

/// A family of K3 surfaces with `α` acting by `i` on `H^{2,0}` has
/// `rank T / 2 - 1` moduli; `T` must also fit beside the trivial lattice.
pub fn moduli_dimension(rank_t: u32, trivial_lattice_rank: u32) -> Result<u32> {
    check_rank_t(rank_t)?;
    if rank_t + trivial_lattice_rank > 22 {
        return Err(Error::Inconsistent(format!(
            "rank T = {rank_t} does not fit beside a trivial lattice of rank {trivial_lattice_rank}"
        )));
    }
    Ok(rank_t / 2 - 1)
}
