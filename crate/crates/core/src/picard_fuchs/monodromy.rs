//! Numeric analytic continuation of solutions of `p₂ y'' + p₁ y' + p₀ y = 0`
//! along polygonal loops in the `λ`-plane.

use num_complex::Complex64 as C64;
use serde::Serialize;

use super::frobenius::{MonodromyClass, SingularPoint};
use super::operator::PFOperator;
use crate::algebra::{to_f64, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegrationOptions {
    /// Local error tolerance per step (absolute and relative).
    pub tolerance: f64,
    /// Step size below which integration is abandoned.
    pub min_step: f64,
    pub max_steps: usize,
    /// Number of sides of the polygon approximating each circle.
    pub polygon_sides: usize,
}

impl Default for IntegrationOptions {
    fn default() -> Self {
        IntegrationOptions { tolerance: 1e-8, min_step: 1e-12, max_steps: 200_000, polygon_sides: 32 }
    }
}

/// Which loop to transport around, starting and ending at the base point.
#[derive(Clone, Debug, PartialEq)]
pub enum LoopSpec {
    /// Counterclockwise circle about the point through the base point.
    Around(SingularPoint),
    /// Explicit closed polygon; the base point is prepended and appended.
    Waypoints(Vec<C64>),
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MonodromyResult {
    #[serde(serialize_with = "ser_c")]
    pub base_point: C64,
    #[serde(serialize_with = "ser_cs")]
    pub waypoints: Vec<C64>,
    /// Columns are the continuations of the basis with `Y(base) = I`.
    #[serde(serialize_with = "ser_m")]
    pub matrix: [[C64; 2]; 2],
    #[serde(serialize_with = "ser_cs2")]
    pub eigenvalues: [C64; 2],
    #[serde(serialize_with = "ser_c")]
    pub determinant: C64,
    /// `exp(-∮ p₁/p₂ dλ)`, transported alongside.
    #[serde(serialize_with = "ser_c")]
    pub abel_determinant: C64,
    /// `‖(M - I)²‖` (max norm).
    pub nilpotency_defect: f64,
    pub classification: MonodromyClass,
    pub steps: usize,
}

fn ser_c<S: serde::Serializer>(z: &C64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

fn ser_cs<S: serde::Serializer>(z: &[C64], s: S) -> std::result::Result<S::Ok, S::Error> {
    z.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>().serialize(s)
}

fn ser_cs2<S: serde::Serializer>(z: &[C64; 2], s: S) -> std::result::Result<S::Ok, S::Error> {
    ser_cs(z, s)
}

fn ser_m<S: serde::Serializer>(m: &[[C64; 2]; 2], s: S) -> std::result::Result<S::Ok, S::Error> {
    m.iter().map(|r| r.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()).collect::<Vec<_>>().serialize(s)
}

pub type Mat2 = [[C64; 2]; 2];

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut m = [[C64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    m
}

pub fn identity() -> Mat2 {
    [[C64::new(1.0, 0.0), C64::new(0.0, 0.0)], [C64::new(0.0, 0.0), C64::new(1.0, 0.0)]]
}

pub fn max_norm(m: &Mat2) -> f64 {
    m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn mat_sub(a: &Mat2, b: &Mat2) -> Mat2 {
    [[a[0][0] - b[0][0], a[0][1] - b[0][1]], [a[1][0] - b[1][0], a[1][1] - b[1][1]]]
}

pub fn eigenvalues(m: &Mat2) -> [C64; 2] {
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let s = (tr * tr - 4.0 * det).sqrt();
    let (x, y) = ((tr + s) / 2.0, (tr - s) / 2.0);
    // the smaller root via det/x avoids cancellation
    if x.norm() >= y.norm() && x.norm() > 0.0 {
        [x, det / x]
    } else if y.norm() > 0.0 {
        [det / y, y]
    } else {
        [x, y]
    }
}

struct NumericOperator {
    p2: Vec<C64>,
    p1: Vec<C64>,
    p0: Vec<C64>,
}

fn to_complex(p: &UniPoly) -> Vec<C64> {
    p.coeffs().iter().map(|c| C64::new(to_f64(c), 0.0)).collect()
}

fn horner(p: &[C64], x: C64) -> C64 {
    p.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * x + c)
}

/// State: the 2×2 fundamental matrix `[[y₁, y₂], [y₁', y₂']]` and the
/// Abel determinant.
type State = [C64; 5];

impl NumericOperator {
    fn new(op: &PFOperator) -> Self {
        NumericOperator { p2: to_complex(&op.p2), p1: to_complex(&op.p1), p0: to_complex(&op.p0) }
    }

    fn singular(&self, x: C64) -> bool {
        horner(&self.p2, x).norm() < 1e-300
    }

    /// `d/ds` of the state along `λ = start + s·dir`.
    fn rhs(&self, x: C64, dir: C64, y: &State) -> State {
        let p2 = horner(&self.p2, x);
        let q1 = horner(&self.p1, x) / p2;
        let q0 = horner(&self.p0, x) / p2;
        [
            dir * y[2],
            dir * y[3],
            dir * (-q1 * y[2] - q0 * y[0]),
            dir * (-q1 * y[3] - q0 * y[1]),
            dir * (-q1 * y[4]),
        ]
    }
}

// Dormand–Prince 5(4) tableau
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] =
    [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

fn axpy(y: &State, h: f64, ks: &[State], coeffs: &[f64]) -> State {
    let mut out = *y;
    for (k, &c) in ks.iter().zip(coeffs) {
        if c != 0.0 {
            for i in 0..5 {
                out[i] += k[i] * (h * c);
            }
        }
    }
    out
}

/// Integrates along the straight segment `from → to`, counting steps.
fn integrate_segment(
    op: &NumericOperator,
    from: C64,
    to: C64,
    y: &mut State,
    opts: &IntegrationOptions,
    steps: &mut usize,
) -> Result<()> {
    let dir = to - from;
    let mut s = 0.0f64;
    let mut h = 0.05f64;
    while 1.0 - s > 1e-14 {
        if *steps >= opts.max_steps {
            return Err(Error::Integration(format!("exceeded {} steps near λ = {}", opts.max_steps, from + dir * s)));
        }
        h = h.min(1.0 - s);
        let mut ks: Vec<State> = Vec::with_capacity(7);
        for stage in 0..7 {
            let yi = axpy(y, h, &ks, &A[stage][..stage]);
            ks.push(op.rhs(from + dir * (s + C[stage] * h), dir, &yi));
        }
        let y5 = axpy(y, h, &ks, &B5);
        let y4 = axpy(y, h, &ks, &B4);
        let err = (0..5)
            .map(|i| (y5[i] - y4[i]).norm() / (opts.tolerance * (1.0 + y[i].norm().max(y5[i].norm()))))
            .fold(0.0, f64::max);
        *steps += 1;
        let accepted = err <= 1.0;
        if accepted {
            s += h;
            *y = y5;
        }
        h *= match err {
            e if !e.is_finite() => 0.2,
            e if e == 0.0 => 5.0,
            e => (0.9 * e.powf(-0.2)).clamp(0.2, 5.0),
        };
        if !accepted && h * dir.norm() < opts.min_step {
            return Err(Error::Integration(format!(
                "step size underflow at λ = {} (step {:e}, error ratio {err:e})",
                from + dir * s,
                h * dir.norm()
            )));
        }
    }
    Ok(())
}

fn segment_distance(a: C64, b: C64, p: C64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (a + d * t - p).norm()
}

fn circle(center: C64, start: C64, sides: usize, clockwise: bool) -> Vec<C64> {
    let r = start - center;
    let sign = if clockwise { -1.0 } else { 1.0 };
    (1..=sides)
        .map(|k| center + r * C64::from_polar(1.0, sign * 2.0 * std::f64::consts::PI * k as f64 / sides as f64))
        .collect()
}

/// Polygon for a loop about a singular point, starting at `base`. The loop
/// about infinity is clockwise in `λ`, i.e. counterclockwise in `1/λ`, and
/// reaches the circle `|λ - 1/2| = 3/2` from its top point.
pub fn loop_waypoints(base: C64, spec: &LoopSpec, sides: usize) -> Vec<C64> {
    match spec {
        LoopSpec::Around(SingularPoint::Zero) => circle(C64::new(0.0, 0.0), base, sides, false),
        LoopSpec::Around(SingularPoint::One) => circle(C64::new(1.0, 0.0), base, sides, false),
        LoopSpec::Around(SingularPoint::Infinity) => {
            let top = C64::new(0.5, 1.5);
            let mut pts = vec![top];
            pts.extend(circle(C64::new(0.5, 0.0), top, sides, true));
            pts.push(base);
            pts
        }
        LoopSpec::Waypoints(w) => {
            let mut pts = w.clone();
            pts.push(base);
            pts
        }
    }
}

/// Transports the fundamental solution with `Y(base) = I` around the loop.
pub fn numeric_monodromy(
    op: &PFOperator,
    base: C64,
    spec: &LoopSpec,
    opts: &IntegrationOptions,
) -> Result<MonodromyResult> {
    let nop = NumericOperator::new(op);
    let singular = [C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
    if nop.singular(base) || singular.iter().any(|&s| (s - base).norm() < 1e-9) {
        return Err(Error::domain(format!("base point {base} is a singular point")));
    }
    let waypoints = loop_waypoints(base, spec, opts.polygon_sides);
    // quarter of the distance between the finite singular points
    let margin = 0.25 * 0.25;
    let mut prev = base;
    for &w in &waypoints {
        for &s in &singular {
            let d = segment_distance(prev, w, s);
            if d < margin {
                return Err(Error::domain(format!(
                    "loop segment {prev} -> {w} passes within {d:.3e} of the singular point {s}"
                )));
            }
        }
        prev = w;
    }

    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let mut y: State = [one, zero, zero, one, one];
    let mut steps = 0;
    let mut prev = base;
    for &w in &waypoints {
        integrate_segment(&nop, prev, w, &mut y, opts, &mut steps)?;
        prev = w;
    }
    let matrix = [[y[0], y[1]], [y[2], y[3]]];
    Ok(finish(base, waypoints, matrix, y[4], steps, opts))
}

fn finish(base: C64, waypoints: Vec<C64>, matrix: Mat2, abel: C64, steps: usize, opts: &IntegrationOptions) -> MonodromyResult {
    let report = 1e-6f64.max(opts.tolerance * 100.0);
    let eig = eigenvalues(&matrix);
    let determinant = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0];
    let n = mat_sub(&matrix, &identity());
    let nilpotency_defect = max_norm(&mat_mul(&n, &n));
    let one = C64::new(1.0, 0.0);
    let classification = if eig.iter().any(|e| (e - one).norm() > report.sqrt().max(1e-4)) {
        MonodromyClass::NonUnipotent
    } else if max_norm(&n) < report {
        MonodromyClass::Identity
    } else {
        MonodromyClass::UnipotentNontrivial
    };
    MonodromyResult {
        base_point: base,
        waypoints,
        matrix,
        eigenvalues: eig,
        determinant,
        abel_determinant: abel,
        nilpotency_defect,
        classification,
        steps,
    }
}

/// Whether the two eigenvalue pairs agree as multisets within `tol`.
///
/// Compares the sum and product (trace and determinant), which stay stable
/// when the numeric matrix is a perturbed Jordan block.
pub fn eigenvalues_match(numeric: &[C64; 2], expected: &[C64; 2], tol: f64) -> bool {
    let sum = (numeric[0] + numeric[1] - expected[0] - expected[1]).norm();
    let product = (numeric[0] * numeric[1] - expected[0] * expected[1]).norm();
    sum < tol && product < tol
}

/// Monodromies about `0`, `1` and `∞` from a common base point; with the
/// loops of [`loop_waypoints`] they satisfy `M₁ · M₀ · M∞ = I`.
pub fn monodromy_triple(op: &PFOperator, base: C64, opts: &IntegrationOptions) -> Result<[MonodromyResult; 3]> {
    let m0 = numeric_monodromy(op, base, &LoopSpec::Around(SingularPoint::Zero), opts)?;
    let m1 = numeric_monodromy(op, base, &LoopSpec::Around(SingularPoint::One), opts)?;
    let mi = numeric_monodromy(op, base, &LoopSpec::Around(SingularPoint::Infinity), opts)?;
    Ok([m0, m1, mi])
}
