use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::algebra::{fmt_rational, q, qi, CoverData, CoverElement, Field, QLambda, UniPoly, Q};
use crate::error::{Error, Result};

/// The form `r^α (r-1)^β (r-λ)^γ dr / z^l` on `z^N = r^A (r-1)^B (r-λ)^C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PFParams {
    pub cover: CoverData,
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub l: i64,
}

impl PFParams {
    pub fn new(cover: CoverData, alpha: i64, beta: i64, gamma: i64, l: i64) -> Result<Self> {
        if l <= 0 {
            return Err(Error::domain(format!("z-exponent l = {l} must be positive")));
        }
        Ok(PFParams { cover, alpha, beta, gamma, l })
    }

    fn shifted(&self, e: i64, m: u32) -> Q {
        q(self.l * m as i64, self.cover.n as i64) - qi(e)
    }

    /// `-α + lA/N`: the form is `r^(-a) (r-1)^(-b) (r-λ)^(-c) dr`.
    pub fn a(&self) -> Q {
        self.shifted(self.alpha, self.cover.a)
    }

    pub fn b(&self) -> Q {
        self.shifted(self.beta, self.cover.b)
    }

    pub fn c(&self) -> Q {
        self.shifted(self.gamma, self.cover.c)
    }

    pub fn form(&self) -> CoverElement {
        CoverElement::monomial(self.cover, self.alpha, self.beta, self.gamma, self.l)
    }

    /// `r^(α+1) (r-1)^(β+1) (r-λ)^(γ-1) z^(-l)`, i.e. `r^(1-a)(r-1)^(1-b)(r-λ)^(-1-c)`.
    pub fn primitive(&self) -> CoverElement {
        CoverElement::monomial(self.cover, self.alpha + 1, self.beta + 1, self.gamma - 1, self.l)
    }
}

/// `p₂ ∂² + p₁ ∂ + p₀` in `∂ = d/dλ`, with
/// `p₂ = λ(1-λ)`, `p₁ = a + c - (a + b + 2c)λ`, `p₀ = -c(a + b + c - 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PFOperator {
    pub a: Q,
    pub b: Q,
    pub c: Q,
    pub p2: UniPoly,
    pub p1: UniPoly,
    pub p0: UniPoly,
}

impl PFOperator {
    pub fn from_abc(a: Q, b: Q, c: Q) -> Self {
        let p2 = UniPoly::new(vec![qi(0), qi(1), qi(-1)]);
        let p1 = UniPoly::new(vec![&a + &c, -(&a + &b + &c + &c)]);
        let p0 = UniPoly::constant(-(&c * (&a + &b + &c - qi(1))));
        PFOperator { a, b, c, p2, p1, p0 }
    }

    /// `λ(1-λ)∂² + (1-2λ)∂ - 1/4`.
    pub fn legendre() -> Self {
        Self::from_abc(q(1, 2), q(1, 2), q(1, 2))
    }

    pub fn order(&self) -> usize {
        2
    }

    /// Gauss parameters `(ã, b̃, c̃)`: the operator is
    /// `λ(1-λ)∂² + (c̃ - (ã+b̃+1)λ)∂ - ãb̃`.
    pub fn gauss_parameters(&self) -> (Q, Q, Q) {
        (self.c.clone(), &self.a + &self.b + &self.c - qi(1), &self.a + &self.c)
    }

    pub fn coefficients(&self) -> [&UniPoly; 3] {
        [&self.p2, &self.p1, &self.p0]
    }

    /// Applies the operator to an element of the cover.
    pub fn apply(&self, w: &CoverElement) -> CoverElement {
        let lift = |p: &UniPoly| QLambda::from_poly(p.clone());
        let d1 = w.d_dlambda();
        let d2 = d1.d_dlambda();
        &(&d2.scale(&lift(&self.p2)) + &d1.scale(&lift(&self.p1))) + &w.scale(&lift(&self.p0))
    }
}

impl fmt::Display for PFOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})*D^2 + ({})*D + ({})",
            self.p2.to_expr("lambda"),
            self.p1.to_expr("lambda"),
            self.p0.to_expr("lambda")
        )
    }
}

impl Serialize for PFOperator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PFOperator", 7)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("a", &fmt_rational(&self.a))?;
        st.serialize_field("b", &fmt_rational(&self.b))?;
        st.serialize_field("c", &fmt_rational(&self.c))?;
        st.serialize_field("p2", &self.p2.to_expr("lambda"))?;
        st.serialize_field("p1", &self.p1.to_expr("lambda"))?;
        st.serialize_field("p0", &self.p0.to_expr("lambda"))?;
        st.end()
    }
}

pub fn pf_operator(p: &PFParams) -> PFOperator {
    PFOperator::from_abc(p.a(), p.b(), p.c())
}

/// `L(ω) = c · d h / dr` with `h` the primitive of [`PFParams::primitive`].
#[derive(Clone, Debug)]
pub struct Certificate {
    pub operator: PFOperator,
    pub h: CoverElement,
    /// `L(ω) - c · ∂h/∂r`, zero when the identity holds.
    pub residual: CoverElement,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

pub fn exact_certificate(p: &PFParams) -> Certificate {
    let operator = pf_operator(p);
    let h = p.primitive();
    let lhs = operator.apply(&p.form());
    let rhs = h.d_dr().scale(&QLambda::from_rational(&p.c()));
    let residual = &lhs - &rhs;
    Certificate { operator, h, residual }
}
