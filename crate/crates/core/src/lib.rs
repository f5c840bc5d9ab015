//! Photon-added squeezed vacuum, squeezed one-photon, and circle coherent
//! states as truncated Fock-space vectors, together with their closed-form
//! overlaps and normalizations, the positive weight functions that resolve
//! the identity on each family's Fock subspace, and numerical certificates
//! for those resolutions (power moments, truncated identity matrices, the
//! discrete double-sum identity, and Carleman's uniqueness test).
//!
//! The crate is organised bottom-up:
//!
//! - [`specfun`]: Legendre, hypergeometric, Laguerre, Kummer-U and
//!   hyperbolic-order functions, plus double-exponential quadrature.
//! - [`fockstate`]: state constructors and exact ladder-operator actions.
//! - [`overlap`]: normalization coefficients and overlaps in every
//!   equivalent closed form, each paired with a brute-force series oracle.
//! - [`complete`]: weight functions, moment checks, resolution matrices,
//!   basis-change matrices and the Carleman sequence.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x < b)` also rejects NaN

pub mod complete;
pub mod error;
pub mod fockstate;
pub mod overlap;
mod ser;
pub mod specfun;

pub use complete::{MomentReport, OperatorMatrix, WeightFunction};
pub use error::{Error, Result};
pub use fockstate::{CircleParam, FockVector, SqueezeParam};
pub use overlap::OverlapResult;
pub use specfun::quad::QuadSettings;
pub use specfun::EvalResult;

pub use num_complex::Complex64;
