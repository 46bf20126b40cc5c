//! Exact rationals and the field abstraction shared by the polynomial types.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Q = BigRational;

/// Shorthand for the rational `num/den`.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer as a rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `"3"`, `"-7/4"` or `" 1 / 2 "` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Q> {
    let cleaned: String = s
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .collect();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (num, den) = match cleaned.split_once('/') {
        Some((n, d)) => (n, d),
        None => (cleaned.as_str(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(num, den))
}

/// Formats a rational as `"n"` or `"n/d"`.
pub fn fmt_rational(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Reduces `x` into the half-open interval `[0, m)`.
pub fn rem_euclid_q(x: &Q, m: &Q) -> Q {
    let k = (x / m).floor();
    x - m * k
}

/// Integral part of a rational if it has one.
pub fn as_integer(x: &Q) -> Option<BigInt> {
    x.is_integer().then(|| x.numer().clone())
}

pub fn to_f64(x: &Q) -> f64 {
    x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN)
}

/// Exact square root of a non-negative rational, when it exists.
pub fn sqrt_exact(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Q::new(n, d))
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// A commutative field with exact equality.
///
/// Implemented by [`Q`] and by rational functions over any field, which is
/// how the two-level tower `Q(λ)(r)` used by the cover algebra is built.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(x: &Q) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&qi(n))
    }
}

impl Field for Q {
    fn from_rational(x: &Q) -> Self {
        x.clone()
    }
}
