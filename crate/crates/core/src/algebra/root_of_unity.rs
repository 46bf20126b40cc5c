//! Exact roots of unity, stored as a fraction of a full turn.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::rational::{fmt_rational, q, qi, rem_euclid_q, to_f64, Q};

/// `exp(2πi · turn)` with `turn` in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity(Q);

impl RootOfUnity {
    pub fn from_turn(turn: Q) -> Self {
        RootOfUnity(rem_euclid_q(&turn, &qi(1)))
    }

    /// `exp(2πi k / n)`.
    pub fn new(k: i64, n: i64) -> Self {
        Self::from_turn(q(k, n))
    }

    pub fn one() -> Self {
        Self::new(0, 1)
    }

    pub fn i() -> Self {
        Self::new(1, 4)
    }

    pub fn minus_one() -> Self {
        Self::new(1, 2)
    }

    pub fn minus_i() -> Self {
        Self::new(3, 4)
    }

    pub fn turn(&self) -> &Q {
        &self.0
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.0.denom().to_u64().unwrap_or(u64::MAX)
    }

    pub fn pow(&self, e: i64) -> Self {
        Self::from_turn(&self.0 * qi(e))
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_zero()
    }

    /// True if this is an `n`-th root of unity.
    pub fn divides_order(&self, n: u64) -> bool {
        n % self.order() == 0
    }

    pub fn to_complex(&self) -> Complex64 {
        let t = to_f64(&self.0);
        // exact values for quarter turns avoid spurious 1e-17 components
        match (self.0.numer().to_i64(), self.0.denom().to_i64()) {
            (Some(0), _) => Complex64::new(1.0, 0.0),
            (Some(1), Some(4)) => Complex64::new(0.0, 1.0),
            (Some(1), Some(2)) => Complex64::new(-1.0, 0.0),
            (Some(3), Some(4)) => Complex64::new(0.0, -1.0),
            _ => Complex64::from_polar(1.0, std::f64::consts::TAU * t),
        }
    }
}

impl Mul for &RootOfUnity {
    type Output = RootOfUnity;
    fn mul(self, o: &RootOfUnity) -> RootOfUnity {
        RootOfUnity::from_turn(&self.0 + &o.0)
    }
}

impl Mul for RootOfUnity {
    type Output = RootOfUnity;
    fn mul(self, o: RootOfUnity) -> RootOfUnity {
        &self * &o
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match fmt_rational(&self.0).as_str() {
            "0" => write!(f, "1"),
            "1/4" => write!(f, "i"),
            "1/2" => write!(f, "-1"),
            "3/4" => write!(f, "-i"),
            t => write!(f, "exp(2*pi*i*{t})"),
        }
    }
}

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_law() {
        let i = RootOfUnity::i();
        assert_eq!(&i * &i, RootOfUnity::minus_one());
        assert_eq!(i.pow(3), RootOfUnity::minus_i());
        assert_eq!(i.inv(), RootOfUnity::minus_i());
        assert!(i.pow(4).is_one());
        assert_eq!(i.order(), 4);
        assert!(RootOfUnity::minus_one().divides_order(4));
    }

    #[test]
    fn display_and_complex() {
        assert_eq!(RootOfUnity::minus_i().to_string(), "-i");
        assert_eq!(RootOfUnity::new(1, 3).to_string(), "exp(2*pi*i*1/3)");
        let z = RootOfUnity::new(1, 8).to_complex();
        assert!((z.norm() - 1.0).abs() < 1e-15);
        assert_eq!(RootOfUnity::i().to_complex(), Complex64::new(0.0, 1.0));
    }
}
