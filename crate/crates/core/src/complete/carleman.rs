//! Carleman's uniqueness test for the squeezed-vacuum moment problem.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::log_factorial;

/// `ln a_k` and its ratio to `ln k`, where
/// `a_k = ([(2k)!!]² / (π (m+2k)!))^{-1/(2k)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CarlemanPoint {
    pub k: u64,
    pub ln_a_k: f64,
    pub ratio: f64,
}

/// Evaluate the sequence at each `k` (all `k ≥ 2`) for index `m`.
pub fn carleman_sequence(m: u32, k_list: &[u64]) -> Result<Vec<CarlemanPoint>> {
    k_list
        .iter()
        .map(|&k| {
            if k < 2 {
                return Err(Error::domain(
                    "carleman_sequence",
                    format!("k = {k} must be at least 2"),
                ));
            }
            let kf = k as f64;
            // ln (2k)!! = k ln 2 + ln k!
            let log_dfact = kf * 2f64.ln() + log_factorial(k);
            let ln_a_k =
                -(2.0 * log_dfact - PI.ln() - log_factorial(m as u64 + 2 * k)) / (2.0 * kf);
            Ok(CarlemanPoint {
                k,
                ln_a_k,
                ratio: ln_a_k / kf.ln(),
            })
        })
        .collect()
}
