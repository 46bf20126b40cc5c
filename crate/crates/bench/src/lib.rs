//! Inputs shared by the benchmarks in `benches/`.

use k3cy_core::algebra::{parse_unipoly, CoverData, UniPoly};
use k3cy_core::lattice::{parse_lattice, IntegralLattice};
use k3cy_core::picard_fuchs::PFParams;

/// Weierstrass coefficients `a(s)` of the three named fibrations.
pub const FIBRATIONS: [(&str, &str); 3] = [
    ("g2", "s*(s-1)^2*(s-2)^2"),
    ("g3", "s*(s-1)^2*(s-2)^2*(s-3)^2"),
    ("four_d4", "(s*(s-1)*(s-2)*(s-3))^2"),
];

pub fn coefficient(expr: &str) -> UniPoly {
    parse_unipoly(expr, Some("s")).expect("static polynomial")
}

pub fn lattice(expr: &str) -> IntegralLattice {
    parse_lattice(expr).expect("static lattice")
}

pub fn pf_params(cover: [u32; 4], form: [i64; 4]) -> PFParams {
    let [n, a, b, c] = cover;
    let [al, be, ga, l] = form;
    PFParams::new(CoverData::new(n, a, b, c).expect("valid cover"), al, be, ga, l).expect("valid form")
}
