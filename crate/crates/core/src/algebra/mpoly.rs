//! Sparse multivariate polynomials over `Q` with named variables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::poly::UniPoly;
use super::rational::{fmt_rational, qi, Q};
use crate::error::{Error, Result};

/// A power product of named variables; absent variables have exponent zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<String, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(name: &str, e: u32) -> Self {
        let mut m = BTreeMap::new();
        if e > 0 {
            m.insert(name.to_string(), e);
        }
        Monomial(m)
    }

    pub fn exponent(&self, var: &str) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn vars(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(k, &e)| (k.as_str(), e))
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (v, e) in &o.0 {
            *m.entry(v.clone()).or_insert(0) += e;
        }
        Monomial(m)
    }

    /// The monomial with `var` removed, together with its exponent.
    fn split(&self, var: &str) -> (Monomial, u32) {
        let mut m = self.0.clone();
        let e = m.remove(var).unwrap_or(0);
        (Monomial(m), e)
    }

    fn with_exponent(&self, var: &str, e: u32) -> Monomial {
        let mut m = self.0.clone();
        if e == 0 {
            m.remove(var);
        } else {
            m.insert(var.to_string(), e);
        }
        Monomial(m)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.0.iter().map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") }).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// `Σ c_m · m` with nonzero coefficients only.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Q>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(qi(1))
    }

    pub fn constant(c: Q) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(name: &str) -> Self {
        Self::term(qi(1), Monomial::var(name, 1))
    }

    pub fn term(c: Q, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    /// The value if this is a constant polynomial.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(qi(0)),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.terms.keys().flat_map(|m| m.0.keys().cloned()).collect()
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(|| qi(0));
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Replaces every occurrence of the listed variables simultaneously.
    pub fn substitute(&self, map: &BTreeMap<String, MPoly>) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(c.clone());
            let mut rest = Monomial::one();
            for (v, e) in m.vars() {
                match map.get(v) {
                    Some(p) => t = &t * &p.pow(e),
                    None => rest = rest.mul(&Monomial::var(v, e)),
                }
            }
            t = &t * &MPoly::term(qi(1), rest);
            out = &out + &t;
        }
        out
    }

    /// Replaces `var^power` by `rhs` once in every term where it divides.
    /// Returns `None` when no term was affected.
    pub fn rewrite_once(&self, var: &str, power: u32, rhs: &MPoly) -> Option<MPoly> {
        let mut changed = false;
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e >= power {
                changed = true;
                let (q, r) = (e / power, e % power);
                let base = MPoly::term(c.clone(), m.with_exponent(var, r));
                out = &out + &(&base * &rhs.pow(q));
            } else {
                out.add_term(m.clone(), c.clone());
            }
        }
        changed.then_some(out)
    }

    /// Univariate view, if at most one variable occurs.
    pub fn to_univariate(&self) -> Result<(Option<String>, UniPoly)> {
        let vars = self.variables();
        if vars.len() > 1 {
            return Err(Error::Parse(format!(
                "expected a polynomial in one variable, found {}",
                vars.into_iter().collect::<Vec<_>>().join(", ")
            )));
        }
        let var = vars.into_iter().next();
        let deg = var.as_deref().map_or(0, |v| self.degree_in(v)) as usize;
        let mut coeffs = vec![qi(0); deg + 1];
        for (m, c) in &self.terms {
            let (_, e) = m.split(var.as_deref().unwrap_or(""));
            coeffs[e as usize] = c.clone();
        }
        Ok((var, UniPoly::new(coeffs)))
    }

    pub fn from_univariate(p: &UniPoly, var: &str) -> Self {
        let mut out = MPoly::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            out.add_term(Monomial::var(var, k as u32), c.clone());
        }
        out
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        self + &(-o)
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let coef = fmt_rational(&a);
            let coef = if coef.contains('/') { format!("({coef})") } else { coef };
            if *m == Monomial::one() {
                write!(f, "{coef}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{coef}*{m}")?;
            }
        }
        Ok(())
    }
}
