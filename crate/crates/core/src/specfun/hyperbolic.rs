//! Hyperbolic functions of higher order.

use num_complex::Complex64;
use std::f64::consts::TAU;

use super::{log_factorial, CompensatedSum, SeriesStop};

/// `h_i(x, n) = Σ_{k≥0} x^{nk+i-1} / (nk+i-1)!`, `1 ≤ i ≤ n`.
///
/// The `n` functions split the exponential series by residue class, so
/// `h_1(x,2) = cosh x`, `h_2(x,2) = sinh x` and `Σ_i h_i = eˣ`.
/// Negative arguments use parity when `n` is even and a roots-of-unity
/// filter of `exp` otherwise.
///
/// # Panics
/// If `i` is not in `1..=n`.
pub fn hyperbolic_order(i: u32, n: u32, x: f64) -> f64 {
    assert!(
        i >= 1 && i <= n,
        "hyperbolic_order: need 1 <= i <= n, got i={i}, n={n}"
    );
    if x >= 0.0 {
        return positive_series(i, n, x);
    }
    if n.is_multiple_of(2) {
        let v = positive_series(i, n, -x);
        return if (i - 1).is_multiple_of(2) { v } else { -v };
    }
    // h_i(x,n) = (1/n) Σ_j ε^{-j(i-1)} exp(ε^j x), ε = e^{2πi/n}
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let theta = TAU * j as f64 / n as f64;
        let w = Complex64::from_polar(x, theta).exp();
        sum += w * Complex64::from_polar(1.0, -theta * (i - 1) as f64);
    }
    sum.re / n as f64
}

fn positive_series(i: u32, n: u32, x: f64) -> f64 {
    let first = (i - 1) as u64;
    if x == 0.0 {
        return if first == 0 { 1.0 } else { 0.0 };
    }
    let lx = x.ln();
    let mut term = (first as f64 * lx - log_factorial(first)).exp();
    let mut sum = CompensatedSum::default();
    sum.add(term);
    let mut stop = SeriesStop::default();
    let mut power = first;
    loop {
        for _ in 0..n {
            power += 1;
            term *= x / power as f64;
        }
        sum.add(term);
        if stop.done(term, sum.value()) || term == 0.0 {
            return sum.value();
        }
    }
}
