//! Special functions needed by the state expansions, overlaps and weight
//! functions, evaluated in double precision.
//!
//! Factorial-heavy quantities are assembled in log space. Series use a
//! common stopping rule ([`SeriesStop`]): a sum is accepted once three
//! consecutive terms fall below `1e-17` of the running partial sum.

mod factorial;
mod hyperbolic;
mod hypergeometric;
mod kummer;
mod laguerre;
mod legendre;
pub mod quad;

pub use factorial::{double_factorial, factorial, log_double_factorial, log_factorial};
pub use hyperbolic::hyperbolic_order;
pub use hypergeometric::{gauss_2f1, generalized_pfq};
pub use kummer::{kummer_u_int, kummer_u_int_with};
pub use laguerre::{laguerre, laguerre_complex};
pub use legendre::{
    legendre_p, legendre_p_assoc, legendre_p_assoc_branch, legendre_p_complex,
    legendre_p_homogeneous, legendre_q, legendre_q_xm1,
};

use serde::Serialize;

/// Value of a special-function evaluation together with bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult<T> {
    pub value: T,
    /// Heuristic bound on the absolute error (truncation plus rounding).
    pub est_abs_error: f64,
    /// Number of series terms or quadrature nodes consumed.
    pub terms_used: usize,
}

const SERIES_REL_TINY: f64 = 1e-17;
const SERIES_TINY_RUN: u32 = 3;

/// Stopping rule for power series: three consecutive terms below
/// `1e-17 · |partial sum|`. A single small term is not enough since
/// alternating or complex series can pass near zero mid-way.
#[derive(Debug, Default)]
pub(crate) struct SeriesStop {
    run: u32,
}

impl SeriesStop {
    pub(crate) fn done(&mut self, term_abs: f64, sum_abs: f64) -> bool {
        if term_abs <= SERIES_REL_TINY * sum_abs {
            self.run += 1;
        } else {
            self.run = 0;
        }
        self.run >= SERIES_TINY_RUN
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `ln(exp(a) + exp(b))` without overflow.
pub(crate) fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}
