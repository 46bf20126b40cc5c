//! The holomorphic solution at `λ = 0` as a Gauss hypergeometric series.

use num_complex::Complex64 as C64;
use num_traits::Zero;

use super::operator::PFOperator;
use crate::algebra::{qi, to_f64, UniPoly, Q};
use crate::error::{Error, Result};

/// The first `terms` coefficients of `₂F₁(ã, b̃; c̃; λ)` for the operator's
/// Gauss parameters.
pub fn hypergeometric_coefficients(op: &PFOperator, terms: usize) -> Result<Vec<Q>> {
    let (ga, gb, gc) = op.gauss_parameters();
    let mut out = Vec::with_capacity(terms);
    let mut c = qi(1);
    for n in 0..terms {
        out.push(c.clone());
        let k = qi(n as i64);
        let den = (&gc + &k) * (&k + qi(1));
        if den.is_zero() {
            return Err(Error::domain("c̃ is a non-positive integer: the series at 0 is not defined"));
        }
        c = c * (&ga + &k) * (&gb + &k) / den;
    }
    Ok(out)
}

/// `L` applied to the truncated series; every coefficient below `λ^(terms-1)`
/// vanishes exactly when the series solves the operator.
pub fn truncated_series_residual(op: &PFOperator, terms: usize) -> Result<UniPoly> {
    let f = UniPoly::new(hypergeometric_coefficients(op, terms)?);
    let d1 = f.derivative();
    let d2 = d1.derivative();
    Ok(&(&(&op.p2 * &d2) + &(&op.p1 * &d1)) + &(&op.p0 * &f))
}

/// Value, first and second derivative of the truncated series at `λ`.
pub fn eval_series(coeffs: &[Q], lambda: C64) -> [C64; 3] {
    let mut v = [C64::zero(); 3];
    let mut pow = [C64::new(1.0, 0.0), C64::zero(), C64::zero()];
    for (n, c) in coeffs.iter().enumerate() {
        let c = to_f64(c);
        let nf = n as f64;
        v[0] += pow[0] * c;
        v[1] += pow[1] * (c * nf);
        v[2] += pow[2] * (c * nf * (nf - 1.0));
        // pow[j] tracks λ^(n - j + 1) for the next term
        pow = [pow[0] * lambda, pow[0], pow[1]];
    }
    v
}

/// `|L F| / max term` at `λ` for the series truncated at `terms`.
pub fn series_relative_residual(op: &PFOperator, lambda: C64, terms: usize) -> Result<f64> {
    let coeffs = hypergeometric_coefficients(op, terms)?;
    let [f, d1, d2] = eval_series(&coeffs, lambda);
    let ev = |p: &UniPoly| p.coeffs().iter().rev().fold(C64::zero(), |acc, c| acc * lambda + to_f64(c));
    let parts = [ev(&op.p2) * d2, ev(&op.p1) * d1, ev(&op.p0) * f];
    let scale = parts.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
    Ok((parts[0] + parts[1] + parts[2]).norm() / scale)
}
