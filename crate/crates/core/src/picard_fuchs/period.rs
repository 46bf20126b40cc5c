//! Periods `∫ r^(-a) (r-1)^(-b) (r-λ)^(-c) dr` between branch points, by
//! tanh-sinh quadrature.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::operator::{pf_operator, PFParams};
use crate::algebra::to_f64;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BranchPoint {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "lambda")]
    Lambda,
    #[serde(rename = "inf")]
    Infinity,
}

impl BranchPoint {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "0" => Ok(BranchPoint::Zero),
            "1" => Ok(BranchPoint::One),
            "lambda" | "l" | "λ" => Ok(BranchPoint::Lambda),
            "inf" | "infinity" | "∞" => Ok(BranchPoint::Infinity),
            other => Err(Error::Parse(format!("unknown branch point {other:?} (expected 0, 1, lambda or inf)"))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            BranchPoint::Zero => "0",
            BranchPoint::One => "1",
            BranchPoint::Lambda => "lambda",
            BranchPoint::Infinity => "inf",
        }
    }

    fn position(self, lambda: C64) -> Option<C64> {
        match self {
            BranchPoint::Zero => Some(C64::new(0.0, 0.0)),
            BranchPoint::One => Some(C64::new(1.0, 0.0)),
            BranchPoint::Lambda => Some(lambda),
            BranchPoint::Infinity => None,
        }
    }
}

const FINITE: [BranchPoint; 3] = [BranchPoint::Zero, BranchPoint::One, BranchPoint::Lambda];

/// Distance kept from branch points that are not endpoints.
const CLEARANCE: f64 = 0.2;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureOptions {
    pub tolerance: f64,
    pub max_levels: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions { tolerance: 1e-12, max_levels: 9 }
    }
}

/// A fixed integration contour from a finite branch point `start` to `end`
/// through `interior` waypoints, or out to infinity along `ray`.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodPath {
    pub start: BranchPoint,
    pub end: BranchPoint,
    pub interior: Vec<C64>,
    pub ray: Option<C64>,
    /// `-1` when the segment was given as `(∞, e)` and integrated as `(e, ∞)`.
    pub orientation: f64,
}

fn distance_to_segment(a: C64, b: C64, p: C64) -> (f64, f64) {
    let d = b - a;
    let t = (((p - a) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0);
    ((a + d * t - p).norm(), t)
}

fn distance_to_ray(a: C64, dir: C64, p: C64) -> f64 {
    let t = ((p - a) * dir.conj()).re.max(0.0);
    (a + dir * t - p).norm()
}

impl PeriodPath {
    /// Chooses the contour for the given `λ`: straight where possible,
    /// passing below (to the right of the direction of travel) any branch
    /// point that comes within the clearance of the segment.
    pub fn new(lambda: C64, segment: (BranchPoint, BranchPoint)) -> Result<Self> {
        let (mut s, mut e) = segment;
        if s == e {
            return Err(Error::domain(format!("segment endpoints coincide ({})", s.label())));
        }
        let mut orientation = 1.0;
        if s == BranchPoint::Infinity {
            std::mem::swap(&mut s, &mut e);
            orientation = -1.0;
        }
        let p0 = s.position(lambda).unwrap();
        for b in FINITE {
            for b2 in FINITE {
                if b != b2 && (b.position(lambda).unwrap() - b2.position(lambda).unwrap()).norm() < 1e-9 {
                    return Err(Error::domain(format!("λ = {lambda} collides with a fixed branch point")));
                }
            }
        }
        let others: Vec<C64> =
            FINITE.iter().filter(|&&b| b != s && b != e).map(|b| b.position(lambda).unwrap()).collect();
        if e == BranchPoint::Infinity {
            let dirs = [C64::new(1.0, 0.0), C64::new(-1.0, 0.0), C64::new(0.0, 1.0), C64::new(0.0, -1.0)];
            let ray = dirs
                .into_iter()
                .find(|&d| others.iter().all(|&o| distance_to_ray(p0, d, o) >= CLEARANCE))
                .ok_or_else(|| Error::domain("no axis-parallel ray to infinity avoids the other branch points"))?;
            return Ok(PeriodPath { start: s, end: e, interior: vec![], ray: Some(ray), orientation });
        }
        let p1 = e.position(lambda).unwrap();
        let len = (p1 - p0).norm();
        let dir = (p1 - p0) / len;
        let below = C64::new(0.0, -1.0) * dir;
        let mut obstacles: Vec<(f64, C64)> = others
            .iter()
            .filter_map(|&o| {
                let (d, t) = distance_to_segment(p0, p1, o);
                (d < CLEARANCE && t > 0.0 && t < 1.0).then_some((t * len, o))
            })
            .collect();
        obstacles.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut interior = Vec::new();
        for (along, o) in obstacles {
            let rho = CLEARANCE.min(0.4 * along).min(0.4 * (len - along));
            // how far below the line the obstacle sits
            let depth = ((o - p0) * below.conj()).re.max(0.0) + rho;
            let a = p0 + dir * (along - rho);
            let b = p0 + dir * (along + rho);
            interior.extend([a, a + below * depth, b + below * depth, b]);
        }
        Ok(PeriodPath { start: s, end: e, interior, ray: None, orientation })
    }

    /// Rejects endpoints where the primitive `r^(1-a)(r-1)^(1-b)(r-λ)^(-1-c)`
    /// does not vanish.
    pub fn check_admissible(&self, p: &PFParams) -> Result<()> {
        let (a, b, c) = (to_f64(&p.a()), to_f64(&p.b()), to_f64(&p.c()));
        let ok = |e: BranchPoint| match e {
            BranchPoint::Zero => a < 1.0,
            BranchPoint::One => b < 1.0,
            BranchPoint::Lambda => c < -1.0,
            BranchPoint::Infinity => a + b + c > 1.0,
        };
        let bad: Vec<&str> = [self.start, self.end].into_iter().filter(|&e| !ok(e)).map(|e| e.label()).collect();
        if !bad.is_empty() {
            return Err(Error::domain(format!(
                "the primitive r^(1-a)(r-1)^(1-b)(r-lambda)^(-1-c) does not vanish at endpoint {} (a = {a}, b = {b}, c = {c})",
                bad.join(", ")
            )));
        }
        Ok(())
    }

    pub fn nodes(&self, lambda: C64) -> Vec<C64> {
        let mut v = vec![self.start.position(lambda).unwrap()];
        v.extend(&self.interior);
        if let Some(p) = self.end.position(lambda) {
            v.push(p);
        }
        v
    }
}

/// Tanh-sinh node at `t`: `(x, ln w, ln(1 + x), ln(1 - x))`, all without
/// cancellation or overflow.
fn tanh_sinh_node(t: f64) -> (f64, f64, f64, f64) {
    let u = FRAC_PI_2 * t.sinh();
    let ln_cosh_u = u.abs() + (-2.0 * u.abs()).exp().ln_1p() - std::f64::consts::LN_2;
    let ln_cosh_t = t.abs() + (-2.0 * t.abs()).exp().ln_1p() - std::f64::consts::LN_2;
    (u.tanh(), FRAC_PI_2.ln() + ln_cosh_t - 2.0 * ln_cosh_u, u - ln_cosh_u, -u - ln_cosh_u)
}

fn tanh_sinh_nodes(h: f64, odd_only: bool) -> Vec<(f64, f64, f64, f64)> {
    let kmax = (6.5 / h) as i64;
    (-kmax..=kmax).filter(|k| !odd_only || k % 2 != 0).map(|k| tanh_sinh_node(k as f64 * h)).collect()
}

/// `Log` with imaginary part brought into `(-π, π]`.
fn wrap(z: C64) -> C64 {
    let tau = 2.0 * std::f64::consts::PI;
    let im = z.im - tau * ((z.im + std::f64::consts::PI) / tau).floor();
    C64::new(z.re, if im <= -std::f64::consts::PI { im + tau } else { im })
}

/// Continuous branch of `log(r - e)` anchored at a reference point.
#[derive(Clone, Copy)]
struct LogBranch {
    point: C64,
    reference: C64,
    log_at_reference: C64,
}

impl LogBranch {
    fn principal(point: C64, reference: C64) -> Self {
        LogBranch { point, reference, log_at_reference: (reference - point).ln() }
    }

    fn moved(&self, new_reference: C64) -> Self {
        LogBranch {
            point: self.point,
            reference: new_reference,
            log_at_reference: self.eval((new_reference - self.point).ln()),
        }
    }

    /// `log(r - point)` from any logarithm of `r - point`, for `r` reachable
    /// from the reference along a segment avoiding the point.
    fn eval(&self, ln_diff: C64) -> C64 {
        self.log_at_reference + wrap(ln_diff - (self.reference - self.point).ln())
    }
}

struct Integrand {
    exponents: [f64; 3],
    points: [C64; 3],
}

/// `∫ Π (r - e_k)^(-s_k) dr` along a straight piece `from → to`, or along
/// the ray `from + d·[0, ∞)`; `branches` must be anchored on the piece.
fn integrate_piece(
    f: &Integrand,
    branches: &[LogBranch; 3],
    from: C64,
    to: C64,
    ray: Option<C64>,
    opts: &QuadratureOptions,
) -> Result<C64> {
    let ln2 = std::f64::consts::LN_2;
    let eval_at = |(x, ln_w, ln_p, ln_m): (f64, f64, f64, f64)| -> C64 {
        let mut total = C64::new(ln_w, 0.0);
        match ray {
            None => {
                let r = from + (to - from) * ((1.0 + x) / 2.0);
                total += ((to - from) / 2.0).ln();
                for k in 0..3 {
                    let e = f.points[k];
                    let ln_diff = if e == from {
                        (to - from).ln() + (ln_p - ln2)
                    } else if e == to {
                        (from - to).ln() + (ln_m - ln2)
                    } else {
                        (r - e).ln()
                    };
                    total -= branches[k].eval(ln_diff) * f.exponents[k];
                }
            }
            Some(d) => {
                // r = from + d·(1 + x)/(1 - x)
                let ln_ratio = ln_p - ln_m;
                total += (d * 2.0).ln() - 2.0 * ln_m;
                for k in 0..3 {
                    let e = f.points[k];
                    let ln_diff = if e == from {
                        d.ln() + ln_ratio
                    } else if ln_ratio > 30.0 {
                        d.ln() + ln_ratio + (1.0 + (from - e) / d * (-ln_ratio).exp()).ln()
                    } else {
                        (from + d * ln_ratio.exp() - e).ln()
                    };
                    total -= branches[k].eval(ln_diff) * f.exponents[k];
                }
            }
        }
        if total.re < -745.0 {
            C64::new(0.0, 0.0)
        } else {
            total.exp()
        }
    };
    let mut h = 0.5;
    let mut sum: C64 = tanh_sinh_nodes(h, false).into_iter().map(eval_at).sum();
    let mut estimate = sum * h;
    for _ in 0..opts.max_levels {
        h /= 2.0;
        sum += tanh_sinh_nodes(h, true).into_iter().map(eval_at).sum::<C64>();
        let next = sum * h;
        let delta = (next - estimate).norm();
        estimate = next;
        if !estimate.is_finite() {
            return Err(Error::Integration("quadrature produced a non-finite value".into()));
        }
        if delta <= opts.tolerance * estimate.norm().max(1e-300) {
            return Ok(estimate);
        }
    }
    Err(Error::Integration(format!("tanh-sinh quadrature did not converge between {from} and {to}")))
}

/// The period along a fixed contour, with `λ` free to move slightly.
///
/// Branches are principal at the midpoint of the first piece and continued
/// along the contour.
pub fn period_on_path(p: &PFParams, lambda: C64, path: &PeriodPath, opts: &QuadratureOptions) -> Result<C64> {
    let exponents = [to_f64(&p.a()), to_f64(&p.b()), to_f64(&p.c())];
    let points = [C64::new(0.0, 0.0), C64::new(1.0, 0.0), lambda];
    let f = Integrand { exponents, points };
    let nodes = path.nodes(lambda);
    let first_mid = match path.ray {
        Some(d) if nodes.len() == 1 => nodes[0] + d,
        _ => (nodes[0] + nodes[1]) / 2.0,
    };
    let mut branches = points.map(|e| LogBranch::principal(e, first_mid));
    let mut total = C64::new(0.0, 0.0);
    for w in nodes.windows(2) {
        let mid = (w[0] + w[1]) / 2.0;
        branches = branches.map(|b| b.moved(mid));
        total += integrate_piece(&f, &branches, w[0], w[1], None, opts)?;
        branches = branches.map(|b| b.moved(w[1]));
    }
    if let Some(d) = path.ray {
        let start = *nodes.last().unwrap();
        let mid = start + d;
        branches = branches.map(|b| b.moved(mid));
        total += integrate_piece(&f, &branches, start, start, Some(d), opts)?;
    }
    Ok(total * path.orientation)
}

/// Period of the form between two branch points.
pub fn numeric_period(p: &PFParams, lambda: C64, segment: (BranchPoint, BranchPoint)) -> Result<C64> {
    let path = PeriodPath::new(lambda, segment)?;
    path.check_admissible(p)?;
    period_on_path(p, lambda, &path, &QuadratureOptions::default())
}

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PeriodResidual {
    pub period: [f64; 2],
    pub residual: f64,
    pub relative_residual: f64,
    pub step: f64,
}

/// `|L(P)(λ)| / |P(λ)|` with derivatives from five-point stencils along the
/// real direction, on a contour fixed at the centre `λ`.
pub fn period_ode_residual(
    p: &PFParams,
    lambda: C64,
    segment: (BranchPoint, BranchPoint),
    step: f64,
) -> Result<PeriodResidual> {
    let path = PeriodPath::new(lambda, segment)?;
    path.check_admissible(p)?;
    let opts = QuadratureOptions::default();
    let mut vals = [C64::new(0.0, 0.0); 5];
    for (i, k) in (-2i32..=2).enumerate() {
        vals[i] = period_on_path(p, lambda + step * k as f64, &path, &opts)?;
    }
    let d1 = (vals[0] - vals[1] * 8.0 + vals[3] * 8.0 - vals[4]) / (12.0 * step);
    let d2 = (-vals[0] + vals[1] * 16.0 - vals[2] * 30.0 + vals[3] * 16.0 - vals[4]) / (12.0 * step * step);
    let op = pf_operator(p);
    let ev = |poly: &crate::algebra::UniPoly| {
        poly.coeffs().iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * lambda + to_f64(c))
    };
    let l = ev(&op.p2) * d2 + ev(&op.p1) * d1 + ev(&op.p0) * vals[2];
    let scale = (ev(&op.p2) * d2).norm().max((ev(&op.p1) * d1).norm()).max((ev(&op.p0) * vals[2]).norm());
    Ok(PeriodResidual {
        period: [vals[2].re, vals[2].im],
        residual: l.norm(),
        relative_residual: l.norm() / scale.max(1e-300),
        step,
    })
}

/// Complete elliptic integral of the first kind `K(m)`, parameter `m = k²`,
/// via the arithmetic-geometric mean.
pub fn elliptic_k(m: C64) -> C64 {
    let mut a = C64::new(1.0, 0.0);
    let mut b = (C64::new(1.0, 0.0) - m).sqrt();
    for _ in 0..60 {
        let next = ((a + b) / 2.0, (a * b).sqrt());
        if (next.0 - a).norm() < 1e-16 * a.norm() {
            break;
        }
        // keep the right square root: Re(b/a) > 0
        let (na, mut nb) = next;
        if (nb / na).re < 0.0 {
            nb = -nb;
        }
        a = na;
        b = nb;
    }
    C64::new(FRAC_PI_2, 0.0) / a
}
