//! Rational functions over an exact field, normalised eagerly.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::{Field, Q};

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    /// Builds and normalises `num / den`. Panics if `den` is zero.
    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::from_poly(Poly::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        let lc = den.lc();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = F::one() / lc;
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The variable of the underlying polynomial ring.
    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The constant value, if this function is constant.
    pub fn as_constant(&self) -> Option<F> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den)
    }

    /// Value at `x`, `None` at a pole.
    pub fn eval(&self, x: &F) -> Option<F> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// Integer power; negative exponents invert. Panics when inverting zero.
    pub fn powi(&self, e: i64) -> Self {
        let p = RatFunc { num: self.num.pow(e.unsigned_abs() as u32), den: self.den.pow(e.unsigned_abs() as u32) };
        if e >= 0 {
            Self::new(p.num, p.den)
        } else {
            Self::new(p.den, p.num)
        }
    }

    pub fn inv(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone())
    }
}

impl<F: Field> Zero for RatFunc<F> {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Field> One for RatFunc<F> {
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
}

impl<'a, F: Field> Add<&'a RatFunc<F>> for &'a RatFunc<F> {
    type Output = RatFunc<F>;
    fn add(self, o: &RatFunc<F>) -> RatFunc<F> {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl<'a, F: Field> Sub<&'a RatFunc<F>> for &'a RatFunc<F> {
    type Output = RatFunc<F>;
    fn sub(self, o: &RatFunc<F>) -> RatFunc<F> {
        self + &(-o)
    }
}

impl<'a, F: Field> Mul<&'a RatFunc<F>> for &'a RatFunc<F> {
    type Output = RatFunc<F>;
    fn mul(self, o: &RatFunc<F>) -> RatFunc<F> {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl<'a, F: Field> Div<&'a RatFunc<F>> for &'a RatFunc<F> {
    type Output = RatFunc<F>;
    fn div(self, o: &RatFunc<F>) -> RatFunc<F> {
        assert!(!o.is_zero(), "division by the zero rational function");
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl<F: Field> Neg for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl<F: Field> Neg for RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr<RatFunc<F>> for RatFunc<F> {
            type Output = RatFunc<F>;
            fn $m(self, o: RatFunc<F>) -> RatFunc<F> {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl<F: Field> Field for RatFunc<F> {
    fn from_rational(x: &Q) -> Self {
        Self::constant(F::from_rational(x))
    }
}

impl<F: Field> fmt::Debug for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

impl RatFunc<Q> {
    pub fn to_expr(&self, var: &str) -> String {
        if self.den.is_one() {
            self.num.to_expr(var)
        } else {
            format!("({})/({})", self.num.to_expr(var), self.den.to_expr(var))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::UniPoly;
    use crate::algebra::rational::{q, qi};

    type R = RatFunc<Q>;

    fn lin(root: i64) -> UniPoly {
        UniPoly::linear(qi(root))
    }

    #[test]
    fn normalises_on_construction() {
        let f = R::new(&lin(1) * &lin(2), (&lin(1) * &lin(3)).scale(&qi(2)));
        assert_eq!(f.num(), &lin(2).scale(&q(1, 2)));
        assert_eq!(f.den(), &lin(3));
        assert!(f.den().is_monic());
    }

    #[test]
    fn field_operations() {
        let x = R::x();
        let one = R::one();
        let a = &one / &(&x - &one);
        let b = &one / &(&x + &one);
        let sum = &a + &b; // 2x / (x^2 - 1)
        assert_eq!(sum, R::new(UniPoly::x().scale(&qi(2)), &lin(1) * &lin(-1)));
        assert!((&(&sum - &a) - &b).is_zero());
        assert_eq!(&(&sum * &R::new(lin(1), UniPoly::one())) / &R::new(lin(1), UniPoly::one()), sum);
        assert_eq!(x.powi(-2), R::new(UniPoly::one(), UniPoly::x().pow(2)));
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dx 1/(x-1) = -1/(x-1)^2
        let f = R::new(UniPoly::one(), lin(1));
        assert_eq!(f.derivative(), R::new(UniPoly::constant(qi(-1)), lin(1).pow(2)));
    }

    #[test]
    fn two_level_tower() {
        // Q(λ)(r): (r - λ) + λ == r
        type RR = RatFunc<R>;
        let lam = R::x();
        let r = RR::x();
        let r_minus_lam = RR::from_poly(Poly::linear(lam.clone()));
        let back = &r_minus_lam + &RR::constant(lam);
        assert_eq!(back, r);
        assert!((&back - &r).is_zero());
    }
}
