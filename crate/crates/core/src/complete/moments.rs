//! Power moments of the weight functions against their closed-form values.

use std::f64::consts::PI;

use serde::Serialize;

use super::weights::{h1m_split, h_closed, log_hmum_from_root};
use super::WeightFunction;
use crate::error::Result;
use crate::specfun::log_factorial;
use crate::specfun::quad::{exp_sinh, tanh_sinh, QuadResult, QuadSettings};

/// One moment comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentReport {
    pub k: u32,
    /// Quadrature value.
    pub lhs: f64,
    /// Closed-form value.
    pub rhs: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub nodes_used: usize,
    pub converged: bool,
}

/// Closed-form `k`-th moment.
///
/// Squeezed families: `∫₀¹ yᵏ h(y) dy = [(2k)!!]² / (π (m'+2k)!)` with
/// `m' = m` (vacuum) or `m + 1` (one-photon). Circle family:
/// `∫ |z|^{2k} h(|z|²/λ^λ) d²z = ((kλ+μ)!)² / (kλ+m+μ)!`.
pub fn moment_reference(family: &WeightFunction, k: u32) -> Result<f64> {
    family.validate()?;
    let k64 = k as u64;
    let log = match *family {
        WeightFunction::Pasvs { m } | WeightFunction::Pasops { m } => {
            let mm = match family {
                WeightFunction::Pasvs { .. } => m as u64,
                _ => m as u64 + 1,
            };
            // (2k)!! = 2^k k!
            2.0 * (k as f64 * 2f64.ln() + log_factorial(k64))
                - PI.ln()
                - log_factorial(mm + 2 * k64)
        }
        WeightFunction::Pacsc { lambda, mu, m } => {
            let base = k64 * lambda as u64 + mu as u64;
            2.0 * log_factorial(base) - log_factorial(base + m as u64)
        }
    };
    Ok(log.exp())
}

/// Compare quadrature moments `k = 0..=k_max` with [`moment_reference`].
///
/// Every `k` produces a report; a quadrature that exhausts its node budget
/// (or whose integrand fails) is flagged with `converged = false`.
pub fn moment_check(
    family: &WeightFunction,
    k_max: u32,
    quad: &QuadSettings,
) -> Result<Vec<MomentReport>> {
    family.validate()?;
    (0..=k_max)
        .map(|k| {
            let rhs = moment_reference(family, k)?;
            let q = moment_quadrature(family, k, quad);
            let abs_err = (q.value - rhs).abs();
            Ok(MomentReport {
                k,
                lhs: q.value,
                rhs,
                abs_err,
                rel_err: abs_err / rhs.abs(),
                nodes_used: q.nodes,
                converged: q.converged && q.value.is_finite(),
            })
        })
        .collect()
}

fn moment_quadrature(family: &WeightFunction, k: u32, quad: &QuadSettings) -> QuadResult {
    let kf = k as f64;
    match *family {
        WeightFunction::Pasvs { m } => {
            tanh_sinh(|y, _, gap| y.powf(kf) * h_closed(m, y, gap), 0.0, 1.0, quad)
        }
        WeightFunction::Pasops { m } => tanh_sinh(
            |y, _, gap| y.powf(kf) * h1m_split(m, y, gap),
            0.0,
            1.0,
            quad,
        ),
        WeightFunction::Pacsc { lambda, mu, m } => {
            // |z|² = λ^λ r^λ, so d²z → (π/2)·2·λ^{λ+1} r^{λ-1} dr after the
            // angular integral.
            let l = lambda as f64;
            let log_scale = PI.ln() + (l * kf + l + 1.0) * l.ln();
            let power = l * kf + l - 1.0;
            let mut failed = false;
            let mut r = exp_sinh(
                |r| match log_hmum_from_root(lambda, mu, m, r) {
                    Ok(lh) => (log_scale + power * r.ln() + lh).exp(),
                    Err(_) => {
                        failed = true;
                        0.0
                    }
                },
                quad,
            );
            if failed {
                r.converged = false;
            }
            r
        }
    }
}
