//! Smith and Hermite normal forms over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn to_big(m: &[Vec<i64>]) -> IntMatrix {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `U · M · V = D` with `D` diagonal, `d_i | d_(i+1)`, `d_i ≥ 0`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.len().min(self.d.first().map_or(0, Vec::len))).map(|i| self.d[i][i].clone()).collect()
    }
}

fn row_combine(m: &mut IntMatrix, target: usize, src: usize, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    let src_row = m[src].clone();
    for (x, s) in m[target].iter_mut().zip(&src_row) {
        *x -= k * s;
    }
}

fn col_combine(m: &mut IntMatrix, target: usize, src: usize, k: &BigInt) {
    if k.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let s = row[src].clone();
        row[target] -= k * s;
    }
}

fn col_swap(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut d = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !d[i][j].is_zero() && best.map_or(true, |(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            d.swap(t, pi);
            u.swap(t, pi);
            col_swap(&mut d, t, pj);
            col_swap(&mut v, t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                let q = d[i][t].div_floor(&d[t][t]);
                row_combine(&mut d, i, t, &q);
                row_combine(&mut u, i, t, &q);
                dirty |= !d[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = d[t][j].div_floor(&d[t][t]);
                col_combine(&mut d, j, t, &q);
                col_combine(&mut v, j, t, &q);
                dirty |= !d[t][j].is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility: fold an offending row into the pivot row and retry
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[i][j].is_multiple_of(&d[t][t])));
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_combine(&mut d, t, i, &minus_one);
                    row_combine(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    SmithForm { d, u, v }
}

/// Row Hermite normal form; returns only the nonzero rows, which form a
/// basis of the row lattice.
pub fn hermite_rows(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let piv = (r..rows).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].abs());
            let Some(p) = piv else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                let q = a[i][c].div_floor(&a[r][c]);
                row_combine(&mut a, i, r, &q);
                done &= a[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            row_combine(&mut a, i, r, &q);
        }
        r += 1;
    }
    a.truncate(r);
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[&[i64]]) -> IntMatrix {
        m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn check(m: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert_eq!(mat_mul(&mat_mul(&s.u, m), &s.v), s.d);
        assert!(determinant(&s.u).abs().is_one());
        assert!(determinant(&s.v).abs().is_one());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn smith_examples() {
        let two = BigInt::from(2);
        assert_eq!(check(&big(&[&[2, 0], &[0, 2]])).diagonal(), [two.clone(), two.clone()]);
        assert_eq!(check(&big(&[&[0, 2], &[2, 0]])).diagonal(), [two.clone(), two]);
        assert_eq!(check(&identity(3)).d, identity(3));
        assert_eq!(check(&big(&[&[2, 0], &[0, 3]])).diagonal(), [BigInt::one(), BigInt::from(6)]);
        check(&big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        check(&big(&[&[1, 2, 3], &[4, 5, 6]]));
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&big(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&big(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]])), BigInt::from(4));
        assert_eq!(determinant(&big(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn hermite_basis_of_generating_set() {
        let h = hermite_rows(&big(&[&[2, 0], &[0, 2], &[1, 1]]));
        assert_eq!(h, big(&[&[1, 1], &[0, 2]]));
    }
}
