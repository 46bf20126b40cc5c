use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::normal_form::{determinant, to_big};
use crate::algebra::{qi, Q};
use crate::error::{Error, Result};

/// A free abelian group with a symmetric integral bilinear form, given by
/// its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralLattice {
    gram: Vec<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.positive, self.negative)
    }
}

impl IntegralLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::domain("Gram matrix is not square"));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::domain(format!("Gram matrix is not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(IntegralLattice { gram })
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn determinant(&self) -> BigInt {
        determinant(&to_big(&self.gram))
    }

    pub fn is_even(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, r)| r[i] % 2 == 0)
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.determinant().is_zero()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.rank(), other.rank());
        let mut gram = vec![vec![0; a + b]; a + b];
        for i in 0..a {
            gram[i][..a].copy_from_slice(&self.gram[i]);
        }
        for i in 0..b {
            gram[a + i][a..].copy_from_slice(&other.gram[i]);
        }
        IntegralLattice { gram }
    }

    pub fn power(&self, k: usize) -> Self {
        (0..k).fold(IntegralLattice { gram: vec![] }, |acc, _| acc.direct_sum(self))
    }

    /// `L(n)`: the form multiplied by `n`.
    pub fn rescale(&self, n: i64) -> Self {
        IntegralLattice { gram: self.gram.iter().map(|r| r.iter().map(|x| x * n).collect()).collect() }
    }

    /// Signature by exact congruence diagonalisation over `Q`.
    pub fn signature(&self) -> Signature {
        let n = self.rank();
        let mut a: Vec<Vec<Q>> = self.gram.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect();
        let (mut pos, mut neg) = (0, 0);
        let mut k = 0;
        while k < n {
            if a[k][k].is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                    a.swap(k, j);
                    for row in a.iter_mut() {
                        row.swap(k, j);
                    }
                } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                    // e_k += e_j makes the diagonal 2 a_kj
                    for c in 0..n {
                        let v = a[j][c].clone();
                        a[k][c] += v;
                    }
                    for row in a.iter_mut() {
                        let v = row[j].clone();
                        row[k] += v;
                    }
                } else {
                    k += 1;
                    continue;
                }
            }
            let p = a[k][k].clone();
            if p.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in k + 1..n {
                let f = &a[i][k] / &p;
                if f.is_zero() {
                    continue;
                }
                for c in k..n {
                    let v = &f * &a[k][c];
                    a[i][c] -= v;
                }
                for row in a.iter_mut().skip(k) {
                    let v = &f * &row[k];
                    row[i] -= v;
                }
            }
            k += 1;
        }
        Signature { positive: pos, negative: neg, zero: n - pos - neg }
    }

    pub fn det_i64(&self) -> Option<i64> {
        self.determinant().to_i64()
    }
}

fn cartan(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0; n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = -2;
    }
    for &(i, j) in edges {
        g[i][j] = 1;
        g[j][i] = 1;
    }
    g
}

fn chain(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

/// Negative-definite root lattice `A_n`, `D_n` or `E_n`.
pub fn root_lattice(kind: char, n: usize) -> Result<IntegralLattice> {
    let bad = || Error::domain(format!("no root lattice {kind}{n}"));
    let gram = match kind {
        'A' if n >= 1 => cartan(n, &chain(n)),
        'D' if n >= 4 => {
            let mut e = chain(n - 1);
            e.push((n - 3, n - 1));
            cartan(n, &e)
        }
        'E' if (6..=8).contains(&n) => {
            let mut e = chain(n - 1);
            e.push((2, n - 1));
            cartan(n, &e)
        }
        _ => return Err(bad()),
    };
    Ok(IntegralLattice { gram })
}

pub fn hyperbolic_plane() -> IntegralLattice {
    IntegralLattice { gram: vec![vec![0, 1], vec![1, 0]] }
}

pub fn diagonal(n: i64) -> IntegralLattice {
    IntegralLattice { gram: vec![vec![n]] }
}

fn parse_int(s: &str, whole: &str) -> Result<i64> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad integer {s:?} in lattice name {whole:?}")))
}

/// Splits `"(n)rest"` into `(n, rest)`.
fn take_paren<'a>(s: &'a str, whole: &str) -> Result<(i64, &'a str)> {
    let close = s.find(')').ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {whole:?}")))?;
    Ok((parse_int(&s[1..close], whole)?, &s[close + 1..]))
}

/// A single summand: `U`, `U(2)`, `<-2>`, `DIAG(2)`, `A1`, `D4(-1)`, `E8`, each
/// optionally raised to a power with `^k`.
pub fn named_lattice(name: &str) -> Result<IntegralLattice> {
    let cleaned: String = name
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '\u{2212}' => '-',
            '\u{27e8}' => '<',
            '\u{27e9}' => '>',
            c => c,
        })
        .collect();
    let unknown = || Error::Parse(format!("unknown lattice {name:?}"));
    let (base, rest): (IntegralLattice, &str) = if let Some(r) = cleaned.strip_prefix('<') {
        let close = r.find('>').ok_or_else(unknown)?;
        (diagonal(parse_int(&r[..close], name)?), &r[close + 1..])
    } else if let Some(r) = cleaned.strip_prefix("DIAG") {
        if !r.starts_with('(') {
            return Err(unknown());
        }
        let (n, rest) = take_paren(r, name)?;
        (diagonal(n), rest)
    } else if let Some(r) = cleaned.strip_prefix('U') {
        (hyperbolic_plane(), r)
    } else {
        let mut chars = cleaned.chars();
        let kind = chars.next().ok_or_else(unknown)?;
        if !matches!(kind, 'A' | 'D' | 'E') {
            return Err(unknown());
        }
        let r = chars.as_str();
        let digits = r.chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            return Err(unknown());
        }
        (root_lattice(kind, r[..digits].parse().map_err(|_| unknown())?)?, &r[digits..])
    };
    let (scaled, rest) = if rest.starts_with('(') {
        let (n, rest) = take_paren(rest, name)?;
        (base.rescale(n), rest)
    } else {
        (base, rest)
    };
    match rest.strip_prefix('^') {
        Some(k) => Ok(scaled.power(parse_int(k, name)? as usize)),
        None if rest.is_empty() => Ok(scaled),
        None => Err(unknown()),
    }
}

/// Orthogonal sum of summands separated by `+` or `⊕`, e.g. `U(2)^2+<-2>^4`.
pub fn parse_lattice(expr: &str) -> Result<IntegralLattice> {
    let mut out = IntegralLattice { gram: vec![] };
    let mut depth = 0usize;
    let mut start = 0;
    let s = expr.replace('\u{2295}', "+");
    let bytes: Vec<char> = s.chars().collect();
    let mut parts = Vec::new();
    for (i, &c) in bytes.iter().enumerate() {
        match c {
            '(' | '<' | '\u{27e8}' => depth += 1,
            ')' | '>' | '\u{27e9}' => depth = depth.saturating_sub(1),
            '+' if depth == 0 => {
                parts.push(bytes[start..i].iter().collect::<String>());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(bytes[start..].iter().collect());
    for p in parts {
        if p.trim().is_empty() {
            return Err(Error::Parse(format!("empty summand in {expr:?}")));
        }
        out = out.direct_sum(&named_lattice(&p)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_examples() {
        assert_eq!(named_lattice("U(2)").unwrap().gram(), [[0, 2], [2, 0]]);
        assert_eq!(named_lattice("DIAG(-2)").unwrap().gram(), [[-2]]);
        assert_eq!(named_lattice("<2>").unwrap().gram(), [[2]]);
        let e7 = named_lattice("E7").unwrap();
        assert_eq!(e7.determinant().abs(), BigInt::from(2));
        assert_eq!(e7.signature().negative, 7);
        assert_eq!(named_lattice("E8").unwrap().determinant(), BigInt::from(1));
        assert_eq!(named_lattice("D4").unwrap().determinant(), BigInt::from(4));
        assert_eq!(named_lattice("E6").unwrap().determinant().abs(), BigInt::from(3));
        assert_eq!(named_lattice("A1(-1)").unwrap().gram(), [[2]]);
        assert!(named_lattice("F4").is_err());
        assert!(named_lattice("D3").is_err());
        assert!(named_lattice("U(2").is_err());
    }

    #[test]
    fn sums_and_powers() {
        let l = parse_lattice("U(2)^2 + <-2>^4").unwrap();
        assert_eq!(l.rank(), 8);
        assert_eq!(l.determinant(), BigInt::from(256));
        assert_eq!(l.signature(), Signature { positive: 2, negative: 6, zero: 0 });
        let l = parse_lattice("U\u{2295}\u{27e8}\u{2212}2\u{27e9}").unwrap();
        assert_eq!(l.gram(), [[0, 1, 0], [1, 0, 0], [0, 0, -2]]);
        assert!(parse_lattice("U+").is_err());
    }

    #[test]
    fn signature_handles_zero_diagonal() {
        let l = parse_lattice("U^3+E8^2").unwrap();
        assert_eq!(l.signature(), Signature { positive: 3, negative: 19, zero: 0 });
        let degenerate = IntegralLattice::new(vec![vec![0, 0], vec![0, 2]]).unwrap();
        assert_eq!(degenerate.signature(), Signature { positive: 1, negative: 0, zero: 1 });
    }

    #[test]
    fn rejects_asymmetric() {
        assert!(IntegralLattice::new(vec![vec![0, 1], vec![2, 0]]).is_err());
        assert!(IntegralLattice::new(vec![vec![0, 1]]).is_err());
    }
}
