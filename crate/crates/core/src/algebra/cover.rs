//! Differential algebra on the cyclic cover `z^N = r^A (r-1)^B (r-λ)^C`.
//!
//! Elements are `R(λ, r) · z^(-l)` with `R` a rational function in `r` over
//! the field `Q(λ)`. Derivatives act through the logarithmic derivatives of
//! `z`, so fractional powers never appear.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

pub use super::cover_coeff::CoverCoeff;
use super::ratfunc::RatFunc;
use super::rational::{q, Q};
use crate::error::{Error, Result};

/// The field `Q(λ)`.
pub type QLambda = RatFunc<Q>;

/// Exponent data `(N, A, B, C)` of the cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoverData {
    pub n: u32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl CoverData {
    pub fn new(n: u32, a: u32, b: u32, c: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("cover degree N must be positive"));
        }
        Ok(CoverData { n, a, b, c })
    }

    /// `r^A (r-1)^B (r-λ)^C`, the rational function equal to `z^N`.
    pub fn z_pow_n(&self) -> CoverCoeff {
        CoverCoeff::factors(q(1, 1), self.a as i64, self.b as i64, self.c as i64)
    }

    /// `z_r / z = (1/N)(A/r + B/(r-1) + C/(r-λ))`.
    pub fn log_derivative_r(&self) -> CoverCoeff {
        let n = self.n as i64;
        let t = |k: u32, e: [i64; 3]| CoverCoeff::factors(q(k as i64, n), e[0], e[1], e[2]);
        &(&t(self.a, [-1, 0, 0]) + &t(self.b, [0, -1, 0])) + &t(self.c, [0, 0, -1])
    }

    /// `z_λ / z = -(C/N) / (r-λ)`.
    pub fn log_derivative_lambda(&self) -> CoverCoeff {
        CoverCoeff::factors(q(-(self.c as i64), self.n as i64), 0, 0, -1)
    }
}

impl fmt::Display for CoverData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z^{} = r^{}(r-1)^{}(r-l)^{}", self.n, self.a, self.b, self.c)
    }
}

/// `coeff · z^(-l)` on a fixed cover.
#[derive(Clone, PartialEq)]
pub struct CoverElement {
    cover: CoverData,
    l: i64,
    coeff: CoverCoeff,
}

impl CoverElement {
    pub fn new(cover: CoverData, coeff: CoverCoeff, l: i64) -> Self {
        CoverElement { cover, l, coeff }
    }

    pub fn zero(cover: CoverData, l: i64) -> Self {
        Self::new(cover, CoverCoeff::zero(), l)
    }

    /// `r^α (r-1)^β (r-λ)^γ · z^(-l)`.
    pub fn monomial(cover: CoverData, alpha: i64, beta: i64, gamma: i64, l: i64) -> Self {
        Self::new(cover, CoverCoeff::factors(q(1, 1), alpha, beta, gamma), l)
    }

    pub fn cover(&self) -> CoverData {
        self.cover
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn coeff(&self) -> &CoverCoeff {
        &self.coeff
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// The same element written with z-exponent `-target`, which must differ
    /// from `l` by a multiple of `N`.
    pub fn rewrite_l(&self, target: i64) -> Result<Self> {
        let n = self.cover.n as i64;
        let diff = self.l - target;
        if diff % n != 0 {
            return Err(Error::domain(format!(
                "z-exponents {} and {} differ by a non-multiple of N = {n}",
                self.l, target
            )));
        }
        // z^(-l) = z^(-target) · (z^N)^(-diff/N)
        let k = -diff / n;
        let scale = if k >= 0 {
            self.cover.z_pow_n().pow(k as u32)
        } else {
            let c = self.cover;
            CoverCoeff::factors(q(1, 1), -(c.a as i64) * -k, -(c.b as i64) * -k, -(c.c as i64) * -k)
        };
        let coeff = &self.coeff * &scale;
        Ok(Self::new(self.cover, coeff, target))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.cover != other.cover {
            return Err(Error::domain("adding elements of different covers"));
        }
        let other = if other.l == self.l { other.clone() } else { other.rewrite_l(self.l)? };
        Ok(Self::new(self.cover, &self.coeff + &other.coeff, self.l))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    /// Multiplies by an `r`-independent scalar.
    pub fn scale(&self, c: &QLambda) -> Self {
        Self::new(self.cover, &self.coeff * &CoverCoeff::from_lambda(c), self.l)
    }

    pub fn scale_coeff(&self, c: &CoverCoeff) -> Self {
        Self::new(self.cover, &self.coeff * c, self.l)
    }

    /// `∂/∂r`, keeping `l`.
    pub fn d_dr(&self) -> Self {
        let log = &CoverCoeff::constant(Q::from_integer((-self.l).into())) * &self.cover.log_derivative_r();
        let coeff = &self.coeff.d_dr() + &(&self.coeff * &log);
        Self::new(self.cover, coeff, self.l)
    }

    /// `∂/∂λ`, keeping `l`.
    pub fn d_dlambda(&self) -> Self {
        let log = &CoverCoeff::constant(Q::from_integer((-self.l).into())) * &self.cover.log_derivative_lambda();
        let coeff = &self.coeff.d_dlambda() + &(&self.coeff * &log);
        Self::new(self.cover, coeff, self.l)
    }
}

impl Neg for &CoverElement {
    type Output = CoverElement;
    fn neg(self) -> CoverElement {
        CoverElement::new(self.cover, -&self.coeff, self.l)
    }
}

impl Neg for CoverElement {
    type Output = CoverElement;
    fn neg(self) -> CoverElement {
        -&self
    }
}

/// Panics when the z-exponents are incompatible; use [`CoverElement::checked_add`]
/// for fallible addition.
impl<'a> Add<&'a CoverElement> for &'a CoverElement {
    type Output = CoverElement;
    fn add(self, o: &CoverElement) -> CoverElement {
        self.checked_add(o).expect("incompatible cover elements")
    }
}

impl<'a> Sub<&'a CoverElement> for &'a CoverElement {
    type Output = CoverElement;
    fn sub(self, o: &CoverElement) -> CoverElement {
        self.checked_sub(o).expect("incompatible cover elements")
    }
}

/// Product of two elements; z-exponents add.
impl<'a> Mul<&'a CoverElement> for &'a CoverElement {
    type Output = CoverElement;
    fn mul(self, o: &CoverElement) -> CoverElement {
        assert_eq!(self.cover, o.cover, "multiplying elements of different covers");
        CoverElement::new(self.cover, &self.coeff * &o.coeff, self.l + o.l)
    }
}

impl fmt::Debug for CoverElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}] z^({}) on {}", self.coeff, -self.l, self.cover)
    }
}

impl fmt::Display for CoverElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * z^({})", fmt_cover_coeff(&self.coeff), -self.l)
    }
}

/// Human-readable form of a coefficient, with `l` standing for λ.
pub fn fmt_cover_coeff(f: &CoverCoeff) -> String {
    f.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::qi;

    fn cover(n: u32, a: u32, b: u32, c: u32) -> CoverData {
        CoverData::new(n, a, b, c).unwrap()
    }

    fn f(c: Q, i: i64, j: i64, k: i64) -> CoverCoeff {
        CoverCoeff::factors(c, i, j, k)
    }

    #[test]
    fn d_dr_of_inverse_z_on_legendre_cover() {
        let cv = cover(2, 1, 1, 1);
        let e = CoverElement::monomial(cv, 0, 0, 0, 1);
        let sum = &(&f(qi(1), -1, 0, 0) + &f(qi(1), 0, -1, 0)) + &f(qi(1), 0, 0, -1);
        let expected = &sum * &CoverCoeff::constant(q(-1, 2));
        let got = e.d_dr();
        assert_eq!(got.l(), 1);
        assert_eq!(got.coeff(), &expected);
    }

    #[test]
    fn d_dr_trivial_cases() {
        let cv = cover(3, 1, 1, 1);
        assert!(CoverElement::monomial(cv, 0, 0, 0, 0).d_dr().is_zero());
        let e = CoverElement::monomial(cv, 1, 0, 0, 0).d_dr();
        assert_eq!(e.coeff(), &CoverCoeff::one());
    }

    #[test]
    fn d_dlambda_examples() {
        let cv = cover(4, 1, 2, 2);
        let e = CoverElement::monomial(cv, 0, 0, 0, 1).d_dlambda();
        assert_eq!(e.coeff(), &f(q(1, 2), 0, 0, -1));

        let e = CoverElement::monomial(cv, 3, 1, 0, 0).d_dlambda();
        assert!(e.is_zero());

        let e = CoverElement::monomial(cv, 0, 0, 1, 0).d_dlambda();
        assert_eq!(e.coeff(), &CoverCoeff::constant(qi(-1)));
    }

    #[test]
    fn zero_tests() {
        let cv = cover(4, 1, 2, 2);
        assert!(CoverElement::zero(cv, 3).is_zero());
        let cancel = &(&f(qi(1), 0, 0, 1) - &f(qi(1), 1, 0, 0)) + &CoverCoeff::from_lambda(&QLambda::x());
        assert!(CoverElement::new(cv, cancel, 1).is_zero());
        assert!(!CoverElement::monomial(cv, 0, 0, 0, 1).is_zero());
    }

    #[test]
    fn z_power_n_times_inverse_is_constant() {
        let cv = cover(4, 1, 2, 2);
        let e = CoverElement::new(cv, cv.z_pow_n(), 4);
        assert_eq!(e.rewrite_l(0).unwrap().coeff(), &CoverCoeff::one());
        assert!(e.d_dr().is_zero());
        assert!(e.d_dlambda().is_zero());
        let up = CoverElement::monomial(cv, 0, 0, 0, -4).rewrite_l(0).unwrap();
        assert_eq!(up.coeff(), &cv.z_pow_n());
    }

    #[test]
    fn addition_across_z_rescaling() {
        let cv = cover(2, 1, 1, 1);
        let a = CoverElement::monomial(cv, 0, 0, 0, 1);
        let b = CoverElement::monomial(cv, 1, 1, 1, 3); // = z^-1 after rescaling
        let sum = a.checked_add(&b).unwrap();
        assert_eq!(sum.l(), 1);
        assert_eq!(sum.coeff(), &CoverCoeff::constant(qi(2)));
        assert!(a.checked_add(&CoverElement::monomial(cv, 0, 0, 0, 2)).is_err());
    }

    #[test]
    fn mixed_partials_commute_on_a_monomial() {
        let cv = cover(4, 1, 2, 2);
        let e = CoverElement::monomial(cv, 2, -1, 1, 3);
        assert!((&e.d_dr().d_dlambda() - &e.d_dlambda().d_dr()).is_zero());
    }
}
