use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{squarefree_decompose, qi, UniPoly};
use crate::error::{Error, Result};

/// A branch place of a cover of the projective line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    /// The zero set of a monic square-free polynomial (a union of conjugate points).
    Finite(UniPoly),
    Infinity,
}

impl Place {
    pub fn degree(&self) -> u32 {
        match self {
            Place::Finite(p) => p.degree().unwrap_or(0) as u32,
            Place::Infinity => 1,
        }
    }

    pub fn label(&self, var: &str) -> String {
        match self {
            Place::Finite(p) => p.to_expr(var),
            Place::Infinity => "inf".into(),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label("r"))
    }
}

/// One branch datum as handed to [`CyclicCover::new`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub place: Place,
    pub multiplicity: i64,
}

impl Branch {
    pub fn finite(p: UniPoly, m: i64) -> Self {
        Branch { place: Place::Finite(p), multiplicity: m }
    }

    /// The place `r - root`.
    pub fn at(root: i64, m: i64) -> Self {
        Self::finite(UniPoly::linear(qi(root)), m)
    }

    pub fn infinity(m: i64) -> Self {
        Branch { place: Place::Infinity, multiplicity: m }
    }
}

/// The smooth projective model of `z^N = ∏ p_i(r)^(m_i)`.
///
/// Finite places are monic, square-free and pairwise coprime; multiplicities
/// are reduced to `[1, N)`. The place `r` (if present) is kept separate from
/// the other factors so that monomial automorphisms can act cleanly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCover {
    n: u32,
    finite: Vec<(UniPoly, u32)>,
    infinity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RamificationDatum {
    pub place: String,
    pub degree: u32,
    pub multiplicity: u32,
    /// `N / gcd(N, m)`.
    pub ramification_index: u32,
}

fn split_off_r(p: &UniPoly) -> Vec<UniPoly> {
    if p.coeff(0).is_zero() && p.degree() > Some(1) {
        vec![UniPoly::x(), p.shift_down(1)]
    } else {
        vec![p.clone()]
    }
}

impl CyclicCover {
    pub fn new(n: u32, branches: &[Branch]) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("cover degree must be positive"));
        }
        let ni = n as i64;
        let mut finite: Vec<(UniPoly, u32)> = Vec::new();
        let mut declared_inf = None;
        for b in branches {
            let m = b.multiplicity.rem_euclid(ni) as u32;
            match &b.place {
                Place::Infinity => {
                    if declared_inf.replace(m).is_some() {
                        return Err(Error::domain("infinity listed twice"));
                    }
                }
                Place::Finite(p) => {
                    if p.degree().unwrap_or(0) == 0 {
                        return Err(Error::domain(format!("branch place {} is constant", p.to_expr("r"))));
                    }
                    if m == 0 {
                        return Err(Error::domain(format!(
                            "multiplicity {} at {} vanishes mod {n}",
                            b.multiplicity,
                            p.to_expr("r")
                        )));
                    }
                    let p = p.monic();
                    if !UniPoly::gcd(&p, &p.derivative()).is_one() {
                        return Err(Error::domain(format!("branch place {} is not square-free", p.to_expr("r"))));
                    }
                    for piece in split_off_r(&p) {
                        if let Some((q, _)) = finite.iter().find(|(q, _)| !UniPoly::gcd(q, &piece).is_one()) {
                            return Err(Error::domain(format!(
                                "branch places {} and {} share a root",
                                q.to_expr("r"),
                                piece.to_expr("r")
                            )));
                        }
                        finite.push((piece, m));
                    }
                }
            }
        }
        let total: i64 = finite.iter().map(|(p, m)| p.degree().unwrap() as i64 * *m as i64).sum();
        let implied = (-total).rem_euclid(ni) as u32;
        if let Some(d) = declared_inf {
            if d != implied {
                return Err(Error::Inconsistent(format!(
                    "multiplicity at infinity is {d} but the finite data force {implied} (mod {n})"
                )));
            }
        }
        let g = finite.iter().fold(n, |g, (_, m)| g.gcd(m)).gcd(&implied);
        if g != 1 {
            return Err(Error::domain(format!(
                "disconnected cover: N and all multiplicities share the factor {g}"
            )));
        }
        Ok(CyclicCover { n, finite, infinity: implied })
    }

    /// The cover `z^N = F(r)` with branch data read off a square-free
    /// decomposition of `F`. Factors whose multiplicity is divisible by `N`
    /// are not branch places and are dropped.
    pub fn from_equation(n: u32, f: &UniPoly) -> Result<Self> {
        let mut branches = Vec::new();
        for (p, m) in squarefree_decompose(f)? {
            if m % n != 0 {
                for piece in split_off_r(&p) {
                    branches.push(Branch::finite(piece, m as i64));
                }
            }
        }
        Self::new(n, &branches)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn finite_places(&self) -> &[(UniPoly, u32)] {
        &self.finite
    }

    pub fn infinity_multiplicity(&self) -> u32 {
        self.infinity
    }

    /// `Σ deg(p_i)·m_i` with representatives in `[1, N)`.
    pub fn finite_degree(&self) -> u64 {
        self.finite.iter().map(|(p, m)| p.degree().unwrap() as u64 * *m as u64).sum()
    }

    /// `∏ p_i^(m_i)`, the right-hand side with the stored representatives.
    pub fn equation_rhs(&self) -> UniPoly {
        self.finite.iter().fold(UniPoly::one(), |acc, (p, m)| &acc * &p.pow(*m))
    }

    pub fn ramification(&self) -> Vec<RamificationDatum> {
        let mut out: Vec<RamificationDatum> = self
            .finite
            .iter()
            .map(|(p, m)| RamificationDatum {
                place: p.to_expr("r"),
                degree: p.degree().unwrap() as u32,
                multiplicity: *m,
                ramification_index: self.n / self.n.gcd(m),
            })
            .collect();
        if self.infinity != 0 {
            out.push(RamificationDatum {
                place: "inf".into(),
                degree: 1,
                multiplicity: self.infinity,
                ramification_index: self.n / self.n.gcd(&self.infinity),
            });
        }
        out
    }

    /// Riemann–Hurwitz: `2g - 2 = -2N + Σ deg(P)·(N - gcd(N, m_P))`.
    pub fn genus(&self) -> u64 {
        let n = self.n as i64;
        let branch: i64 = self
            .ramification()
            .iter()
            .map(|d| d.degree as i64 * (n - n.gcd(&(d.multiplicity as i64))))
            .sum();
        let two_g_minus_2 = -2 * n + branch;
        debug_assert!(two_g_minus_2 >= -2 && two_g_minus_2 % 2 == 0);
        ((two_g_minus_2 + 2) / 2) as u64
    }
}

/// Genus of a connected cover; fails on disconnected data.
pub fn genus(n: u32, branches: &[Branch]) -> Result<u64> {
    Ok(CyclicCover::new(n, branches)?.genus())
}
