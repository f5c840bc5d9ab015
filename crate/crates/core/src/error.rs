use thiserror::Error;

/// Errors produced by the numerical kernels and state constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the documented domain of a function.
    #[error("{func}: argument outside domain ({detail})")]
    Domain { func: &'static str, detail: String },

    /// A series or quadrature exhausted its budget before meeting its tolerance.
    #[error("{func}: no convergence after {work} steps (last error estimate {estimate:e})")]
    NoConvergence {
        func: &'static str,
        work: usize,
        estimate: f64,
    },

    /// A constructed state failed the closed-form normalization cross-check.
    #[error("{state}: squared norm {norm_sqr} plus tail bound {tail:e} is not 1")]
    Normalization {
        state: &'static str,
        norm_sqr: f64,
        tail: f64,
    },

    /// Equivalent closed forms disagree beyond tolerance; usually a branch choice.
    #[error("{func}: closed forms disagree by {spread:e} (branch issue)")]
    BranchMismatch { func: &'static str, spread: f64 },

    /// Two Fock vectors live on incompatible strided subspaces.
    #[error("incompatible Fock subspaces: offset {0}/stride {1} vs offset {2}/stride {3}")]
    Subspace(usize, usize, usize, usize),
}

impl Error {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            func,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
