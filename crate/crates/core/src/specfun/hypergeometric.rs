//! Gauss and generalized hypergeometric series.

use num_complex::Complex64;

use super::{CompensatedSum, SeriesStop};
use crate::error::{Error, Result};

/// Largest |z| accepted by [`gauss_2f1`]; closer to the unit circle the
/// series needs thousands of terms and loses digits.
pub const GAUSS_Z_MAX: f64 = 0.95;

const MAX_TERMS: usize = 200_000;

fn is_nonpositive_integer(v: f64) -> bool {
    v <= 0.0 && v.fract() == 0.0
}

/// `₂F₁(a, b; c; z)` by direct summation for `|z| ≤ 0.95`.
///
/// If `a` or `b` is a nonpositive integer the series is a polynomial and is
/// summed exactly to its last term. A nonpositive integer `c` is only
/// accepted when such a termination happens strictly before the pole.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: Complex64) -> Result<Complex64> {
    if !(z.norm() <= GAUSS_Z_MAX) {
        return Err(Error::domain(
            "gauss_2f1",
            format!("|z| = {} exceeds {GAUSS_Z_MAX}", z.norm()),
        ));
    }
    let mut re = CompensatedSum::default();
    let mut im = CompensatedSum::default();
    let mut term = Complex64::new(1.0, 0.0);
    re.add(1.0);
    let mut stop = SeriesStop::default();
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        if a + kf == 0.0 || b + kf == 0.0 {
            return Ok(Complex64::new(re.value(), im.value()));
        }
        if c + kf == 0.0 {
            return Err(Error::domain(
                "gauss_2f1",
                format!("c = {c} is a nonpositive integer"),
            ));
        }
        term *= z * ((a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)));
        re.add(term.re);
        im.add(term.im);
        let sum = Complex64::new(re.value(), im.value());
        if stop.done(term.norm(), sum.norm()) {
            return Ok(sum);
        }
    }
    Err(Error::NoConvergence {
        func: "gauss_2f1",
        work: MAX_TERMS,
        estimate: term.norm(),
    })
}

/// `ₚF_q(a; b; z)` for real parameters and argument.
///
/// The series is summed with compensation, which keeps full accuracy for
/// the positive arguments used by the circle-state normalizations
/// (all terms positive there). Divergent cases (`p > q + 1`, or
/// `p = q + 1` with `|z| ≥ 1`) are rejected unless an upper parameter
/// terminates the series.
pub fn generalized_pfq(a: &[f64], b: &[f64], z: f64) -> Result<f64> {
    if let Some(bad) = b.iter().find(|v| is_nonpositive_integer(**v)) {
        return Err(Error::domain(
            "generalized_pfq",
            format!("lower parameter {bad} is a nonpositive integer"),
        ));
    }
    let terminating = a.iter().any(|v| is_nonpositive_integer(*v));
    if !terminating && z != 0.0 {
        let p = a.len();
        let q = b.len();
        if p > q + 1 || (p == q + 1 && z.abs() >= 1.0) {
            return Err(Error::domain(
                "generalized_pfq",
                format!("{p}F{q} series diverges at z = {z}"),
            ));
        }
    }
    let mut sum = CompensatedSum::default();
    sum.add(1.0);
    if z == 0.0 {
        return Ok(1.0);
    }
    let mut term = 1.0;
    let mut stop = SeriesStop::default();
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let num: f64 = a.iter().map(|v| v + kf).product();
        if num == 0.0 {
            return Ok(sum.value());
        }
        let den: f64 = b.iter().map(|v| v + kf).product();
        term *= num / den * z / (kf + 1.0);
        sum.add(term);
        if stop.done(term.abs(), sum.value().abs()) {
            return Ok(sum.value());
        }
    }
    Err(Error::NoConvergence {
        func: "generalized_pfq",
        work: MAX_TERMS,
        estimate: term.abs(),
    })
}
