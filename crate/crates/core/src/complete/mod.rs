//! Completeness of the photon-added families: weight functions, moment
//! checks, truncated resolution-of-unity matrices, the discrete
//! double-sum identity, and the Carleman sequence.

mod basis;
mod carleman;
mod discrete;
mod moments;
mod unity;
mod weights;

pub use basis::{pasvs_sns_matrix, sns_pasvs_matrix, MAX_BASIS_DIM};
pub use carleman::{carleman_sequence, CarlemanPoint};
pub use discrete::{
    discrete_completeness, discrete_completeness_matrix, DiscreteCompleteness, MAX_DISCRETE_CUTOFF,
    MAX_DISCRETE_MODULUS,
};
pub use moments::{moment_check, moment_reference, MomentReport};
pub use unity::unity_resolution_matrix;
pub use weights::{weight_h, weight_h1m, weight_hmum, WeightForm};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// A state family together with the parameters fixing its measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum WeightFunction {
    /// Photon-added squeezed vacua, `m ≥ 1`.
    Pasvs { m: u32 },
    /// Photon-added squeezed one-photon states, `m ≥ 0`.
    Pasops { m: u32 },
    /// Photon-added circle states, `0 ≤ μ < λ`.
    Pacsc { lambda: u32, mu: u32, m: u32 },
}

impl WeightFunction {
    pub fn pasvs(m: u32) -> Result<Self> {
        let w = WeightFunction::Pasvs { m };
        w.validate()?;
        Ok(w)
    }

    pub fn pasops(m: u32) -> Result<Self> {
        Ok(WeightFunction::Pasops { m })
    }

    pub fn pacsc(lambda: u32, mu: u32, m: u32) -> Result<Self> {
        let w = WeightFunction::Pacsc { lambda, mu, m };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            WeightFunction::Pasvs { m: 0 } => Err(Error::domain(
                "WeightFunction",
                "the squeezed-vacuum measure needs m >= 1",
            )),
            WeightFunction::Pacsc { lambda, mu, .. } if lambda == 0 || mu >= lambda => {
                Err(Error::domain(
                    "WeightFunction",
                    format!("need 0 <= mu < lambda, got mu={mu}, lambda={lambda}"),
                ))
            }
            _ => Ok(()),
        }
    }

    /// Lowest photon number of the subspace the family resolves.
    pub fn offset(&self) -> usize {
        match *self {
            WeightFunction::Pasvs { m } => m as usize,
            WeightFunction::Pasops { m } => m as usize + 1,
            WeightFunction::Pacsc { mu, m, .. } => (m + mu) as usize,
        }
    }

    /// Spacing of photon numbers in that subspace.
    pub fn stride(&self) -> usize {
        match *self {
            WeightFunction::Pasvs { .. } | WeightFunction::Pasops { .. } => 2,
            WeightFunction::Pacsc { lambda, .. } => lambda as usize,
        }
    }

    /// Weight `h(y)` of the family.
    pub fn eval(&self, y: f64) -> Result<f64> {
        self.validate()?;
        match *self {
            WeightFunction::Pasvs { m } => weight_h(m, y, WeightForm::Closed),
            WeightFunction::Pasops { m } => weight_h1m(m, y),
            WeightFunction::Pacsc { lambda, mu, m } => weight_hmum(lambda, mu, m, y),
        }
    }
}

/// Matrix of an operator in the basis `|offset + k·stride⟩`, `k < dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub basis_offset: usize,
    pub basis_stride: usize,
    pub entries: DMatrix<Complex64>,
}

impl OperatorMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Photon number labelling row/column `k`.
    pub fn photon_number(&self, k: usize) -> usize {
        self.basis_offset + k * self.basis_stride
    }

    /// `max |A - I|` over all entries.
    pub fn max_deviation_from_identity(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((self.entries[(i, j)] - target).norm());
            }
        }
        worst
    }

    /// `max |A_kk - 1|`.
    pub fn max_diagonal_deviation(&self) -> f64 {
        (0..self.dim())
            .map(|k| (self.entries[(k, k)] - 1.0).norm())
            .fold(0.0, f64::max)
    }

    /// `max |A_kl|`, `k ≠ l`.
    pub fn max_off_diagonal(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    worst = worst.max(self.entries[(i, j)].norm());
                }
            }
        }
        worst
    }

    /// `max |A - A†|`.
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.entries[(i, j)] - self.entries[(j, i)].conj()).norm());
            }
        }
        worst
    }
}
