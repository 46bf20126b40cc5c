//! The lattice spanned by a (possibly dependent) family of vectors known only
//! through their pairwise products.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::gram::IntegralLattice;
use super::normal_form::hermite_rows;
use crate::algebra::{qi, Q};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SpannedLattice {
    /// Indices of a maximal independent subfamily (greedy, in input order).
    pub independent: Vec<usize>,
    /// Basis rows, in coordinates of the independent subfamily.
    pub basis: Vec<Vec<Q>>,
    pub lattice: IntegralLattice,
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = qi(1) / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

fn inverse(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut aug: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| r.iter().cloned().chain((0..n).map(|j| if i == j { qi(1) } else { qi(0) })).collect())
        .collect();
    let piv = rref(&mut aug);
    debug_assert_eq!(piv[..n], (0..n).collect::<Vec<_>>()[..]);
    aug.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Gram matrix of `Z v_1 + … + Z v_n` modulo the radical, from `G_ij = v_i·v_j`.
///
/// When no vector depends on the others the standard basis is kept.
pub fn span_of_gram(gram: &[Vec<i64>]) -> Result<SpannedLattice> {
    let rows: Vec<Vec<Q>> = gram.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect();

    // greedy independent rows
    let mut independent = Vec::new();
    let mut echelon: Vec<Vec<Q>> = Vec::new();
    for (j, row) in rows.iter().enumerate() {
        let mut trial = echelon.clone();
        trial.push(row.clone());
        if rref(&mut trial).len() > echelon.len() {
            echelon = trial;
            independent.push(j);
        }
    }
    let r = independent.len();
    if r == 0 {
        return Ok(SpannedLattice { independent, basis: vec![], lattice: IntegralLattice::new(vec![])? });
    }
    let mut sub: Vec<Vec<Q>> = independent.iter().map(|&i| rows[i].clone()).collect();
    let pivots = rref(&mut sub);
    let square: Vec<Vec<Q>> = independent.iter().map(|&i| pivots.iter().map(|&c| rows[i][c].clone()).collect()).collect();
    let inv = inverse(&square);

    // coordinates of every vector in terms of the independent ones
    let coords: Vec<Vec<Q>> = rows
        .iter()
        .map(|row| {
            (0..r)
                .map(|k| pivots.iter().enumerate().fold(qi(0), |acc, (a, &c)| acc + &row[c] * &inv[a][k]))
                .collect()
        })
        .collect();
    let den = coords.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<Vec<BigInt>> =
        coords.iter().map(|c| c.iter().map(|x| (x * Q::from_integer(den.clone())).to_integer()).collect()).collect();
    let hnf = hermite_rows(&scaled);
    let basis: Vec<Vec<Q>> =
        hnf.iter().map(|row| row.iter().map(|x| Q::new(x.clone(), den.clone())).collect()).collect();

    let sub_gram: Vec<Vec<Q>> =
        independent.iter().map(|&i| independent.iter().map(|&j| rows[i][j].clone()).collect()).collect();
    let mut out = vec![vec![0i64; r]; r];
    for a in 0..r {
        for b in 0..r {
            let mut acc = qi(0);
            for i in 0..r {
                if basis[a][i].is_zero() {
                    continue;
                }
                for j in 0..r {
                    acc += &basis[a][i] * &sub_gram[i][j] * &basis[b][j];
                }
            }
            if !acc.is_integer() {
                return Err(Error::Inconsistent(format!("non-integral pairing {acc} in spanned lattice")));
            }
            out[a][b] = acc
                .to_integer()
                .to_i64()
                .ok_or_else(|| Error::Inconsistent("pairing overflows i64".into()))?;
        }
    }
    Ok(SpannedLattice { independent, basis, lattice: IntegralLattice::new(out)? })
}
