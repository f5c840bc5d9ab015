//! Double-exponential quadrature.
//!
//! [`tanh_sinh`] integrates over a finite interval and tolerates integrable
//! endpoint singularities; the integrand receives the distances to both
//! endpoints computed without cancellation. [`exp_sinh`] covers `(0, ∞)`.
//! Both refine by halving the step (reusing earlier nodes) until two
//! successive estimates agree.

use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

/// Refinement controls shared by all quadrature routines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadSettings {
    /// Stop when successive estimates differ by less than this fraction of
    /// the estimate.
    pub rel_tol: f64,
    /// Absolute floor for the same test (useful for values near zero).
    pub abs_tol: f64,
    /// Nodes at the coarsest level.
    pub initial_nodes: usize,
    /// Node budget; exceeding it reports non-convergence.
    pub max_nodes: usize,
}

impl Default for QuadSettings {
    fn default() -> Self {
        QuadSettings {
            rel_tol: 1e-10,
            abs_tol: 0.0,
            initial_nodes: 200,
            max_nodes: 200 << 8,
        }
    }
}

impl QuadSettings {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }
}

/// Scalar quadrature outcome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    /// Difference between the last two refinement levels.
    pub est_error: f64,
    pub nodes: usize,
    pub converged: bool,
}

/// Outcome of a vector-valued quadrature; convergence is judged on the
/// largest component change relative to the largest component.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadVecResult {
    pub values: Vec<f64>,
    pub est_error: f64,
    pub nodes: usize,
    pub converged: bool,
}

/// Half-width of the truncated `t` range. Beyond it the transformed
/// weights are below `e^{-60}` for every integrand we use.
const T_MAX: f64 = 4.5;

/// Evaluate `f(x, x-a, b-x)` weighted on `(a, b)`.
pub fn tanh_sinh<F>(mut f: F, a: f64, b: f64, settings: &QuadSettings) -> QuadResult
where
    F: FnMut(f64, f64, f64) -> f64,
{
    let r = tanh_sinh_vec(|x, xa, bx, out| out[0] = f(x, xa, bx), 1, a, b, settings);
    scalar(r)
}

/// Vector version of [`tanh_sinh`]: `f` fills `out` (length `dim`) at each node.
pub fn tanh_sinh_vec<F>(
    mut f: F,
    dim: usize,
    a: f64,
    b: f64,
    settings: &QuadSettings,
) -> QuadVecResult
where
    F: FnMut(f64, f64, f64, &mut [f64]),
{
    let hw = 0.5 * (b - a);
    refine(dim, settings, |t, out| {
        let u = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * u.abs()).exp();
        let near = hw * 2.0 * e / (1.0 + e);
        let far = hw * 2.0 / (1.0 + e);
        let weight = hw * FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
        if weight == 0.0 || near == 0.0 {
            return 0.0;
        }
        let (x, xa, bx) = if u >= 0.0 {
            (b - near, far, near)
        } else {
            (a + near, near, far)
        };
        f(x, xa, bx, out);
        weight
    })
}

/// Evaluate `∫₀^∞ f(x) dx`.
pub fn exp_sinh<F>(mut f: F, settings: &QuadSettings) -> QuadResult
where
    F: FnMut(f64) -> f64,
{
    let r = exp_sinh_vec(|x, out| out[0] = f(x), 1, settings);
    scalar(r)
}

/// Vector version of [`exp_sinh`].
pub fn exp_sinh_vec<F>(mut f: F, dim: usize, settings: &QuadSettings) -> QuadVecResult
where
    F: FnMut(f64, &mut [f64]),
{
    refine(dim, settings, |t, out| {
        let x = (FRAC_PI_2 * t.sinh()).exp();
        let weight = FRAC_PI_2 * t.cosh() * x;
        if x == 0.0 || !weight.is_finite() {
            return 0.0;
        }
        f(x, out);
        weight
    })
}

fn scalar(r: QuadVecResult) -> QuadResult {
    QuadResult {
        value: r.values[0],
        est_error: r.est_error,
        nodes: r.nodes,
        converged: r.converged,
    }
}

/// Trapezoid sums in `t` with step halving. `node(t, out)` fills the
/// integrand values and returns the transformation weight; a zero weight
/// marks a node that contributes nothing.
fn refine<N>(dim: usize, settings: &QuadSettings, mut node: N) -> QuadVecResult
where
    N: FnMut(f64, &mut [f64]) -> f64,
{
    let half = (settings.initial_nodes / 2).max(2);
    let mut h = T_MAX / half as f64;
    let mut sums = vec![0.0; dim];
    let mut buf = vec![0.0; dim];
    let mut accumulate = |t: f64, sums: &mut [f64]| {
        buf.iter_mut().for_each(|v| *v = 0.0);
        let w = node(t, &mut buf);
        if w != 0.0 {
            for (s, v) in sums.iter_mut().zip(&buf) {
                *s += w * v;
            }
        }
    };
    let mut nodes = 0usize;
    for k in -(half as i64)..=(half as i64) {
        accumulate(k as f64 * h, &mut sums);
        nodes += 1;
    }
    let mut estimate: Vec<f64> = sums.iter().map(|s| s * h).collect();
    let mut points = half as i64;
    loop {
        // Halve the step: only the odd multiples of the new step are new.
        h *= 0.5;
        points *= 2;
        if nodes + points as usize > settings.max_nodes {
            return QuadVecResult {
                est_error: f64::INFINITY,
                values: estimate,
                nodes,
                converged: false,
            };
        }
        let mut k = -points + 1;
        while k < points {
            accumulate(k as f64 * h, &mut sums);
            nodes += 1;
            k += 2;
        }
        let next: Vec<f64> = sums.iter().map(|s| s * h).collect();
        let diff = next
            .iter()
            .zip(&estimate)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let scale = next.iter().map(|v| v.abs()).fold(0.0, f64::max);
        estimate = next;
        if !diff.is_finite() || !scale.is_finite() {
            return QuadVecResult {
                values: estimate,
                est_error: f64::INFINITY,
                nodes,
                converged: false,
            };
        }
        if diff <= settings.rel_tol * scale || diff <= settings.abs_tol {
            return QuadVecResult {
                values: estimate,
                est_error: diff,
                nodes,
                converged: true,
            };
        }
    }
}
