//! Coefficients of cover elements: rational functions of `(λ, r)` whose
//! denominators only involve `r`, `r - 1`, `r - λ` and polynomials in `λ`.
//!
//! This class is closed under the ring operations and both partial
//! derivatives, and its reduced form is unique, so equality is structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::UniPoly;
use super::ratfunc::RatFunc;
use super::rational::{fmt_rational, qi, Q};

/// `num(λ, r) / (den(λ) · r^i (r-1)^j (r-λ)^k)` in lowest terms, with `den`
/// monic. `num[m]` is the coefficient of `r^m`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoverCoeff {
    num: Vec<UniPoly>,
    den: UniPoly,
    /// Exponents of `r`, `r - 1` and `r - λ` in the denominator.
    poles: [u32; 3],
}

fn lambda_poly() -> UniPoly {
    UniPoly::x()
}

fn trim(mut p: Vec<UniPoly>) -> Vec<UniPoly> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn rp_add(a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
    let n = a.len().max(b.len());
    let zero = UniPoly::zero();
    trim((0..n).map(|k| a.get(k).unwrap_or(&zero) + b.get(k).unwrap_or(&zero)).collect())
}

fn rp_neg(a: &[UniPoly]) -> Vec<UniPoly> {
    a.iter().map(|c| -c).collect()
}

fn rp_mul(a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![UniPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(out)
}

fn rp_scale(a: &[UniPoly], c: &UniPoly) -> Vec<UniPoly> {
    trim(a.iter().map(|x| x * c).collect())
}

/// The linear factor `r - root`.
fn rp_linear(root: UniPoly) -> Vec<UniPoly> {
    vec![-&root, UniPoly::one()]
}

fn factor(which: usize) -> Vec<UniPoly> {
    match which {
        0 => rp_linear(UniPoly::zero()),
        1 => rp_linear(UniPoly::one()),
        _ => rp_linear(lambda_poly()),
    }
}

fn root(which: usize) -> UniPoly {
    match which {
        0 => UniPoly::zero(),
        1 => UniPoly::one(),
        _ => lambda_poly(),
    }
}

fn rp_mul_factor_pow(a: &[UniPoly], which: usize, e: u32) -> Vec<UniPoly> {
    (0..e).fold(a.to_vec(), |acc, _| rp_mul(&acc, &factor(which)))
}

/// Quotient by `r - root` when it divides exactly.
fn rp_divide_linear(a: &[UniPoly], root: &UniPoly) -> Option<Vec<UniPoly>> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut quot = vec![UniPoly::zero(); n - 1];
    let mut carry = UniPoly::zero();
    for k in (0..n).rev() {
        let c = &a[k] + &(&carry * root);
        if k == 0 {
            return c.is_zero().then_some(quot);
        }
        quot[k - 1] = c.clone();
        carry = c;
    }
    unreachable!()
}

fn rp_d_dr(a: &[UniPoly]) -> Vec<UniPoly> {
    trim(a.iter().enumerate().skip(1).map(|(k, c)| c.scale(&qi(k as i64))).collect())
}

fn rp_d_dlambda(a: &[UniPoly]) -> Vec<UniPoly> {
    trim(a.iter().map(UniPoly::derivative).collect())
}

impl CoverCoeff {
    fn reduced(mut num: Vec<UniPoly>, mut den: UniPoly, mut poles: [u32; 3]) -> Self {
        num = trim(num);
        if num.is_empty() {
            return Self::zero();
        }
        for (which, pole) in poles.iter_mut().enumerate() {
            let r0 = root(which);
            while *pole > 0 {
                match rp_divide_linear(&num, &r0) {
                    Some(q) => {
                        num = q;
                        *pole -= 1;
                    }
                    None => break,
                }
            }
        }
        if !den.is_constant() {
            let g = num.iter().fold(den.clone(), |g, c| if c.is_zero() { g } else { UniPoly::gcd(&g, c) });
            if !g.is_constant() {
                num = num.iter().map(|c| c.exact_div(&g).expect("content divides")).collect();
                den = den.exact_div(&g).expect("gcd divides");
            }
        }
        let lc = den.lc();
        if !lc.is_one() {
            let inv = Q::one() / lc;
            num = rp_scale(&num, &UniPoly::constant(inv.clone()));
            den = den.scale(&inv);
        }
        CoverCoeff { num, den, poles }
    }

    pub fn zero() -> Self {
        CoverCoeff { num: Vec::new(), den: UniPoly::one(), poles: [0; 3] }
    }

    pub fn one() -> Self {
        Self::constant(qi(1))
    }

    pub fn constant(c: Q) -> Self {
        Self::reduced(vec![UniPoly::constant(c)], UniPoly::one(), [0; 3])
    }

    /// An element of `Q(λ)` as an `r`-constant.
    pub fn from_lambda(c: &RatFunc<Q>) -> Self {
        Self::reduced(vec![c.num().clone()], c.den().clone(), [0; 3])
    }

    /// `Σ coeffs[m](λ) r^m`.
    pub fn from_r_poly(coeffs: Vec<UniPoly>) -> Self {
        Self::reduced(coeffs, UniPoly::one(), [0; 3])
    }

    /// `c · r^i (r-1)^j (r-λ)^k` for integer exponents of either sign.
    pub fn factors(c: Q, i: i64, j: i64, k: i64) -> Self {
        let mut num = vec![UniPoly::constant(c)];
        let mut poles = [0u32; 3];
        for (which, e) in [i, j, k].into_iter().enumerate() {
            if e >= 0 {
                num = rp_mul_factor_pow(&num, which, e as u32);
            } else {
                poles[which] = e.unsigned_abs() as u32;
            }
        }
        Self::reduced(num, UniPoly::one(), poles)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_polynomial(&self) -> bool {
        self.poles == [0; 3] && self.den.is_constant()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `∂/∂r` with `λ` held fixed.
    pub fn d_dr(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        // P/Π f_w^e_w  ↦  (P' Π f_w - P Σ e_w Π_{v≠w} f_v) / Π f_w^(e_w+1)
        let all: Vec<usize> = (0..3).filter(|&w| self.poles[w] > 0).collect();
        let prod = |skip: Option<usize>| {
            all.iter().filter(|&&w| Some(w) != skip).fold(vec![UniPoly::one()], |acc, &w| rp_mul(&acc, &factor(w)))
        };
        let mut num = rp_mul(&rp_d_dr(&self.num), &prod(None));
        for &w in &all {
            let term = rp_scale(&rp_mul(&self.num, &prod(Some(w))), &UniPoly::constant(qi(self.poles[w] as i64)));
            num = rp_add(&num, &rp_neg(&term));
        }
        let mut poles = self.poles;
        for &w in &all {
            poles[w] += 1;
        }
        Self::reduced(num, self.den.clone(), poles)
    }

    /// `∂/∂λ` with `r` held fixed.
    pub fn d_dlambda(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        // P/(D·g·(r-λ)^k)  ↦  ((P_λ D - P D')(r-λ) + k P D) / (D²·g·(r-λ)^(k+1))
        let d = &self.den;
        let top = rp_add(&rp_scale(&rp_d_dlambda(&self.num), d), &rp_neg(&rp_scale(&self.num, &d.derivative())));
        let k = self.poles[2];
        let mut poles = self.poles;
        let num = if k == 0 {
            top
        } else {
            poles[2] += 1;
            let shifted = rp_mul(&top, &factor(2));
            rp_add(&shifted, &rp_scale(&self.num, &d.scale(&qi(k as i64))))
        };
        Self::reduced(num, d * d, poles)
    }

    /// The value at rational `(λ, r)`, `None` at a pole.
    pub fn eval(&self, lambda: &Q, r: &Q) -> Option<Q> {
        let den = self.den.eval(lambda)
            * (0..3).fold(Q::one(), |acc, w| {
                let base = r - root(w).eval(lambda);
                (0..self.poles[w]).fold(acc, |a, _| a * base.clone())
            });
        if den.is_zero() {
            return None;
        }
        let num = self.num.iter().rev().fold(Q::zero(), |acc, c| acc * r.clone() + c.eval(lambda));
        Some(num / den)
    }
}

fn rp_expr(p: &[UniPoly]) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (k, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let c = if c.is_constant() { fmt_rational(&c.coeff(0)) } else { format!("({})", c.to_expr("l")) };
        terms.push(match k {
            0 => c,
            1 => format!("{c}*r"),
            _ => format!("{c}*r^{k}"),
        });
    }
    terms.join(" + ")
}

impl fmt::Display for CoverCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut den = Vec::new();
        if !self.den.is_one() {
            den.push(format!("({})", self.den.to_expr("l")));
        }
        for (w, name) in ["r", "(r-1)", "(r-l)"].iter().enumerate() {
            match self.poles[w] {
                0 => {}
                1 => den.push(name.to_string()),
                e => den.push(format!("{name}^{e}")),
            }
        }
        if den.is_empty() {
            write!(f, "{}", rp_expr(&self.num))
        } else {
            write!(f, "[{}] / [{}]", rp_expr(&self.num), den.join("*"))
        }
    }
}

impl fmt::Debug for CoverCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a CoverCoeff> for &'a CoverCoeff {
    type Output = CoverCoeff;
    fn add(self, o: &CoverCoeff) -> CoverCoeff {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let g = UniPoly::gcd(&self.den, &o.den);
        let (ca, cb) = (o.den.exact_div(&g).expect("gcd divides"), self.den.exact_div(&g).expect("gcd divides"));
        let mut a = rp_scale(&self.num, &ca);
        let mut b = rp_scale(&o.num, &cb);
        let mut poles = [0u32; 3];
        for w in 0..3 {
            poles[w] = self.poles[w].max(o.poles[w]);
            a = rp_mul_factor_pow(&a, w, poles[w] - self.poles[w]);
            b = rp_mul_factor_pow(&b, w, poles[w] - o.poles[w]);
        }
        CoverCoeff::reduced(rp_add(&a, &b), &self.den * &ca, poles)
    }
}

impl<'a> Sub<&'a CoverCoeff> for &'a CoverCoeff {
    type Output = CoverCoeff;
    fn sub(self, o: &CoverCoeff) -> CoverCoeff {
        self + &-o
    }
}

impl<'a> Mul<&'a CoverCoeff> for &'a CoverCoeff {
    type Output = CoverCoeff;
    fn mul(self, o: &CoverCoeff) -> CoverCoeff {
        if self.is_zero() || o.is_zero() {
            return CoverCoeff::zero();
        }
        let poles = [0, 1, 2].map(|w| self.poles[w] + o.poles[w]);
        CoverCoeff::reduced(rp_mul(&self.num, &o.num), &self.den * &o.den, poles)
    }
}

impl Neg for &CoverCoeff {
    type Output = CoverCoeff;
    fn neg(self) -> CoverCoeff {
        CoverCoeff { num: rp_neg(&self.num), den: self.den.clone(), poles: self.poles }
    }
}

impl Neg for CoverCoeff {
    type Output = CoverCoeff;
    fn neg(self) -> CoverCoeff {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::q;

    fn lam() -> CoverCoeff {
        CoverCoeff::from_lambda(&RatFunc::x())
    }

    #[test]
    fn reduction_cancels_known_factors() {
        let r = CoverCoeff::factors(qi(1), 1, 0, 0);
        let inv = CoverCoeff::factors(qi(1), -1, 0, 0);
        assert_eq!(&r * &inv, CoverCoeff::one());
        let a = CoverCoeff::factors(q(2, 3), 2, -1, -2);
        let b = CoverCoeff::factors(q(3, 2), -2, 1, 2);
        assert_eq!(&a * &b, CoverCoeff::one());
        // (r - λ) - r + λ = 0
        let diff = &(&CoverCoeff::factors(qi(1), 0, 0, 1) - &r) + &lam();
        assert!(diff.is_zero());
    }

    #[test]
    fn lambda_denominators_cancel() {
        let s = RatFunc::new(UniPoly::one(), &UniPoly::x() * &UniPoly::linear(qi(2)));
        let c = CoverCoeff::from_lambda(&s);
        let back = &c * &CoverCoeff::from_lambda(&RatFunc::from_poly(&UniPoly::x() * &UniPoly::linear(qi(2))));
        assert_eq!(back, CoverCoeff::one());
        let half = &c + &c;
        assert_eq!(half, CoverCoeff::from_lambda(&RatFunc::new(UniPoly::constant(qi(2)), &UniPoly::x() * &UniPoly::linear(qi(2)))));
    }

    #[test]
    fn derivatives_of_factors() {
        // d/dr (r-λ)^-2 = -2 (r-λ)^-3, d/dλ (r-λ)^-2 = 2 (r-λ)^-3
        let f = CoverCoeff::factors(qi(1), 0, 0, -2);
        assert_eq!(f.d_dr(), CoverCoeff::factors(qi(-2), 0, 0, -3));
        assert_eq!(f.d_dlambda(), CoverCoeff::factors(qi(2), 0, 0, -3));
        let g = CoverCoeff::factors(qi(1), 3, -1, 0);
        let expected = &CoverCoeff::factors(qi(3), 2, -1, 0) - &CoverCoeff::factors(qi(1), 3, -2, 0);
        assert_eq!(g.d_dr(), expected);
        assert_eq!(lam().d_dlambda(), CoverCoeff::one());
        assert!(lam().d_dr().is_zero());
    }

    #[test]
    fn evaluation() {
        let f = &CoverCoeff::factors(qi(1), -1, 1, 0) + &lam();
        assert_eq!(f.eval(&qi(3), &qi(2)), Some(q(1, 2) + qi(3)));
        assert_eq!(f.eval(&qi(3), &qi(0)), None);
        let g = CoverCoeff::from_lambda(&RatFunc::new(UniPoly::one(), UniPoly::x()));
        assert_eq!(g.eval(&qi(0), &qi(5)), None);
    }

    #[test]
    fn display() {
        assert_eq!(CoverCoeff::factors(q(1, 2), 1, 0, -1).to_string(), "[1/2*r] / [(r-l)]");
        assert_eq!(CoverCoeff::one().to_string(), "1");
        assert_eq!(lam().to_string(), "(l)");
    }
}
