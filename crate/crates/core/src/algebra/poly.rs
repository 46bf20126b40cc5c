//! Dense univariate polynomials over an exact field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{fmt_rational, Field, Q};
use crate::error::{Error, Result};

/// Dense polynomial `c[0] + c[1] x + ... + c[d] x^d`.
///
/// The coefficient vector never has a trailing zero; the zero polynomial is
/// the empty vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

/// Polynomial with rational coefficients.
pub type UniPoly = Poly<Q>;

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial variable `x`.
    pub fn x() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![F::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `x - root`.
    pub fn linear(root: F) -> Self {
        Self::new(vec![-root, F::one()])
    }

    pub fn from_roots(roots: &[F]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, r| acc * Self::linear(r.clone()))
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    /// Multiplicity of zero as a root.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = F::one() / self.lc();
        self.scale(&inv)
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.lc().is_one()
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * F::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    /// `x^d self(1/x)` for `d >= deg(self)`.
    pub fn reversed(&self, d: usize) -> Self {
        assert!(self.degree().map_or(true, |deg| deg <= d));
        let mut coeffs = vec![F::zero(); d + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[d - k] = c.clone();
        }
        Self::new(coeffs)
    }

    /// Divides by `x^k`; the low `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let inv_lc = F::one() / divisor.lc();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() * inv_lc.clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * d.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (quot, rem) = self.div_rem(divisor);
        rem.is_zero().then_some(quot)
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Self::one();
        }
        // monic remainders keep coefficient growth in check over Q(λ)
        let (mut a, mut b) = (a.monic(), b.monic());
        while !b.is_zero() {
            if b.is_constant() {
                return Self::one();
            }
            let (_, r) = a.div_rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.monic() };
        }
        a
    }
}

impl<F: Field> Zero for Poly<F> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<F: Field> One for Poly<F> {
    fn one() -> Self {
        Poly::one()
    }
}

impl<'a, F: Field> Add<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn add(self, other: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }
}

impl<'a, F: Field> Sub<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn sub(self, other: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }
}

impl<'a, F: Field> Mul<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn mul(self, other: &Poly<F>) -> Poly<F> {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr<Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, other: Poly<F>) -> Poly<F> {
                (&self).$m(&other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

/// Square-free decomposition over a field of characteristic zero (Yun).
///
/// Returns pairs `(factor, multiplicity)` with monic, square-free, pairwise
/// coprime factors and strictly increasing multiplicities, such that
/// `p = lc(p) * prod factor^multiplicity`.
pub fn squarefree_decompose<F: Field>(p: &Poly<F>) -> Result<Vec<(Poly<F>, u32)>> {
    if p.is_zero() {
        return Err(Error::domain("square-free decomposition of the zero polynomial"));
    }
    let p = p.monic();
    let mut out = Vec::new();
    if p.is_constant() {
        return Ok(out);
    }
    let dp = p.derivative();
    let a0 = Poly::gcd(&p, &dp);
    let mut b = p.exact_div(&a0).expect("gcd divides");
    let mut c = dp.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut k = 1u32;
    while !b.is_constant() {
        let a = Poly::gcd(&b, &d);
        if !a.is_constant() {
            out.push((a.clone(), k));
        }
        b = b.exact_div(&a).expect("gcd divides");
        c = d.exact_div(&a).expect("gcd divides");
        d = &c - &b.derivative();
        k += 1;
    }
    Ok(out)
}

impl UniPoly {
    /// Renders as an expression in `var`, e.g. `s^2 - 3*s + 2`.
    pub fn to_expr(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Q::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff = fmt_rational(&abs);
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            match (abs.is_one(), k) {
                (_, 0) => out.push_str(&coeff),
                (true, _) => out.push_str(&mono),
                (false, _) => {
                    if abs.is_integer() {
                        out.push_str(&format!("{coeff}*{mono}"));
                    } else {
                        out.push_str(&format!("({coeff})*{mono}"));
                    }
                }
            }
        }
        out
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{q, qi};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| qi(x)).collect())
    }

    #[test]
    fn arithmetic_and_division() {
        let a = p(&[-1, 0, 1]); // x^2 - 1
        let b = p(&[1, 1]); // x + 1
        let (qq, r) = a.div_rem(&b);
        assert_eq!(qq, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(&b * &b, p(&[1, 2, 1]));
        assert_eq!(UniPoly::gcd(&a, &p(&[1, 2, 1])), b);
        assert_eq!(a.derivative(), p(&[0, 2]));
        assert_eq!(a.eval(&qi(3)), qi(8));
        assert_eq!(b.pow(3), p(&[1, 3, 3, 1]));
        assert_eq!(a.compose(&b), p(&[0, 2, 1]));
        assert_eq!(p(&[1, 2, 3]).reversed(2), p(&[3, 2, 1]));
    }

    #[test]
    fn squarefree_of_mixed_multiplicities() {
        // s (s-1)^2 (s-2)^2
        let s = UniPoly::x();
        let poly = &(&s * &p(&[-1, 1]).pow(2)) * &p(&[-2, 1]).pow(2);
        let sf = squarefree_decompose(&poly).unwrap();
        assert_eq!(sf, vec![(s.clone(), 1), (p(&[2, -3, 1]), 2)]);
    }

    #[test]
    fn squarefree_pure_power_and_irreducible() {
        let s = UniPoly::x();
        assert_eq!(squarefree_decompose(&s.pow(3)).unwrap(), vec![(s, 3)]);
        let irr = p(&[1, 0, 1]);
        assert_eq!(squarefree_decompose(&irr).unwrap(), vec![(irr, 1)]);
        assert!(squarefree_decompose(&UniPoly::zero()).is_err());
        assert!(squarefree_decompose(&p(&[5])).unwrap().is_empty());
    }

    #[test]
    fn squarefree_keeps_leading_coefficient_out() {
        let poly = p(&[0, 0, 3]); // 3 x^2
        assert_eq!(squarefree_decompose(&poly).unwrap(), vec![(UniPoly::x(), 2)]);
    }

    #[test]
    fn renders_expressions() {
        assert_eq!(p(&[2, -3, 1]).to_expr("s"), "s^2 - 3*s + 2");
        assert_eq!(p(&[0, -1]).to_expr("t"), "-t");
        let half = UniPoly::new(vec![q(1, 2), q(-3, 4)]);
        assert_eq!(half.to_expr("x"), "-(3/4)*x + 1/2");
    }
}
