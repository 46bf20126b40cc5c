use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::cyclic::CyclicCover;
use crate::algebra::UniPoly;

/// `r^k · ∏ p_i^(e_i) · dr / z^l`, exponents indexed like the cover's places.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DifferentialForm {
    pub r_power: u32,
    pub place_exponents: Vec<u32>,
    pub l: u32,
}

impl DifferentialForm {
    /// The polynomial in front of `dr / z^l`.
    pub fn numerator(&self, cover: &CyclicCover) -> UniPoly {
        cover
            .finite_places()
            .iter()
            .zip(&self.place_exponents)
            .fold(UniPoly::x().pow(self.r_power), |acc, ((p, _), e)| &acc * &p.pow(*e))
    }

    pub fn render(&self, cover: &CyclicCover) -> String {
        let mut parts = Vec::new();
        match self.r_power {
            0 => {}
            1 => parts.push("r".to_string()),
            k => parts.push(format!("r^{k}")),
        }
        for ((p, _), &e) in cover.finite_places().iter().zip(&self.place_exponents) {
            if e > 0 {
                let base = if p.degree() == Some(1) && p.coeff(0) == num_traits::Zero::zero() {
                    "r".to_string()
                } else {
                    format!("({})", p.to_expr("r"))
                };
                parts.push(if e == 1 { base } else { format!("{base}^{e}") });
            }
        }
        let z = if self.l == 1 { "z".to_string() } else { format!("z^{}", self.l) };
        if parts.is_empty() {
            format!("dr/{z}")
        } else {
            format!("{}*dr/{z}", parts.join("*"))
        }
    }
}

/// Order of vanishing of a form at one place of the smooth model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceValuation {
    pub place: String,
    pub order: i64,
}

impl fmt::Display for PlaceValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ord[{}] = {}", self.place, self.order)
    }
}

/// Orders of `form` at every point lying over each branch place and over
/// infinity (all points over one place share the same order). Over the
/// unbranched finite points the form is regular by construction.
pub fn form_valuations(cover: &CyclicCover, form: &DifferentialForm) -> Vec<PlaceValuation> {
    let n = cover.n() as i64;
    let l = form.l as i64;
    let mut out = Vec::new();
    let mut numerator_degree = form.r_power as i64;
    for ((p, m), &e) in cover.finite_places().iter().zip(&form.place_exponents) {
        let m = *m as i64;
        let ram = n / n.gcd(&m);
        let mut extra = 0;
        if p.degree() == Some(1) && p.coeff(0) == num_traits::Zero::zero() {
            extra = form.r_power as i64;
        }
        // ord(p) = ram, ord(dr) = ram - 1, ord(z) = m·ram / N
        let order = ram * (e as i64 + extra) + ram - 1 - l * m * ram / n;
        out.push(PlaceValuation { place: p.to_expr("r"), order });
        numerator_degree += e as i64 * p.degree().unwrap() as i64;
    }
    let total = cover.finite_degree() as i64;
    let ram = n / n.gcd(&total);
    // ord(r) = -ram, ord(dr) = -ram - 1, ord(z) = -total·ram / N
    let order = -ram * numerator_degree - ram - 1 + l * total * ram / n;
    out.push(PlaceValuation { place: "inf".into(), order });
    out
}

/// Number of basis forms with z-power `l`:
/// `max(0, ceil(l·D/N) - 1 - Σ deg_i·floor(l·m_i/N))`.
fn count_for_l(cover: &CyclicCover, l: u32) -> u64 {
    let n = cover.n() as i64;
    let l = l as i64;
    let total = cover.finite_degree() as i64;
    let used: i64 = cover
        .finite_places()
        .iter()
        .map(|(p, m)| p.degree().unwrap() as i64 * (l * *m as i64 / n))
        .sum();
    (Integer::div_ceil(&(l * total), &n) - 1 - used).max(0) as u64
}

/// A basis of holomorphic 1-forms: for each `l` in `1..N`, the forms
/// `r^k ∏ p_i^floor(l·m_i/N) dr / z^l` for `k` below the bound at infinity.
pub fn holomorphic_form_basis(cover: &CyclicCover) -> Vec<DifferentialForm> {
    let n = cover.n();
    let mut out = Vec::new();
    for l in 1..n {
        let exps: Vec<u32> = cover.finite_places().iter().map(|(_, m)| l * m / n).collect();
        for k in 0..count_for_l(cover, l) {
            out.push(DifferentialForm { r_power: k as u32, place_exponents: exps.clone(), l });
        }
    }
    out
}

/// True if every valuation of `form` is nonnegative.
pub fn is_holomorphic(cover: &CyclicCover, form: &DifferentialForm) -> bool {
    form_valuations(cover, form).iter().all(|v| v.order >= 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::cyclic::Branch;

    fn hyperelliptic(roots: &[i64]) -> CyclicCover {
        CyclicCover::new(2, &roots.iter().map(|&a| Branch::at(a, 1)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn genus_three_basis_is_monomial() {
        let c = hyperelliptic(&[0, 1, -1, 2, -2, 3, -3]);
        let rendered: Vec<String> = holomorphic_form_basis(&c).iter().map(|f| f.render(&c)).collect();
        assert_eq!(rendered, ["dr/z", "r*dr/z", "r^2*dr/z"]);
    }

    #[test]
    fn conic_has_no_forms() {
        assert!(holomorphic_form_basis(&hyperelliptic(&[0, 1])).is_empty());
    }

    #[test]
    fn quartic_cover_basis() {
        let c = CyclicCover::new(4, &[Branch::at(0, 1), Branch::at(1, 2), Branch::at(2, 2)]).unwrap();
        let basis = holomorphic_form_basis(&c);
        assert_eq!(basis.len() as u64, c.genus());
        assert_eq!(basis.iter().map(|f| f.l).collect::<Vec<_>>(), [1, 3]);
        assert!(basis.iter().all(|f| is_holomorphic(&c, f)));
        assert_eq!(basis[1].render(&c), "(r - 1)*(r - 2)*dr/z^3");
    }

    #[test]
    fn next_form_fails_at_infinity() {
        let c = hyperelliptic(&[0, 1, -1, 2, -2]);
        let f = DifferentialForm { r_power: 2, place_exponents: vec![0; 5], l: 1 };
        let v = form_valuations(&c, &f);
        assert!(v.last().unwrap().order < 0);
        assert!(v[..5].iter().all(|p| p.order >= 0));
    }
}
