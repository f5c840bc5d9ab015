//! Weight functions of the continuous resolutions of unity.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::quad::{tanh_sinh, QuadSettings};
use crate::specfun::{double_factorial, gauss_2f1, kummer_u_int, legendre_q_xm1, log_factorial};
use num_complex::Complex64;

/// Equivalent evaluations of the squeezed-family weight `h_m(y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WeightForm {
    /// Legendre function of the second kind (elementary for each `m`).
    Closed,
    /// Gauss series in `1 - y`; needs `1 - y ≤ 0.95`.
    Hypergeometric,
    /// Numerical quadrature of the Mellin-convolution integral (`m ≥ 2`).
    Integral,
}

fn check_unit_interval(func: &'static str, y: f64) -> Result<()> {
    if !(y > 0.0 && y < 1.0) {
        return Err(Error::domain(func, format!("y = {y} outside (0, 1)")));
    }
    Ok(())
}

/// `h_m(y)` for `m ≥ 1`, `0 < y < 1`.
///
/// `h_1 = (2π)^{-1}(1-y)^{-1/2}` and, for `m ≥ 2`,
/// `h_m = [2π(m-2)!]^{-1} (1-y)^{(m-2)/2} Q_{m-2}((1-y)^{-1/2})`.
pub fn weight_h(m: u32, y: f64, form: WeightForm) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain("weight_h", "m must be at least 1"));
    }
    check_unit_interval("weight_h", y)?;
    match form {
        WeightForm::Closed => Ok(h_closed(m, y, 1.0 - y)),
        WeightForm::Hypergeometric => h_hypergeometric(m, y),
        WeightForm::Integral => h_integral(m, y),
    }
}

/// Closed form with `y` and `1 - y` supplied separately, so quadrature
/// nodes next to either endpoint keep full relative precision.
pub(crate) fn h_closed(m: u32, y: f64, one_minus_y: f64) -> f64 {
    let s = one_minus_y.sqrt();
    if m == 1 {
        return 1.0 / (2.0 * PI * s);
    }
    q_weight(m - 2, y, one_minus_y)
}

/// `[2π n!]^{-1} (1-y)^{n/2} Q_n((1-y)^{-1/2})`, the common shape of both
/// squeezed-family weights.
fn q_weight(n: u32, y: f64, one_minus_y: f64) -> f64 {
    let s = one_minus_y.sqrt();
    // x - 1 = 1/s - 1 = y / ((1+s) s)
    let xm1 = y / ((1.0 + s) * s);
    let q = legendre_q_xm1(n, xm1).expect("x - 1 is positive inside (0, 1)");
    (n as f64 * s.ln() + q.ln() - log_factorial(n as u64)).exp() / (2.0 * PI)
}

fn h_hypergeometric(m: u32, y: f64) -> Result<f64> {
    let mf = m as f64;
    let f = gauss_2f1(
        mf / 2.0,
        (mf - 1.0) / 2.0,
        mf - 0.5,
        Complex64::new(1.0 - y, 0.0),
    )?;
    Ok((1.0 - y).powf(mf - 1.5) * f.re / (2.0 * PI * double_factorial(2 * m as i32 - 3)))
}

fn h_integral(m: u32, y: f64) -> Result<f64> {
    if m < 2 {
        return Err(Error::domain("weight_h", "integral form needs m >= 2"));
    }
    let mf = m as f64;
    let settings = QuadSettings::default().with_rel_tol(1e-12);
    let r = tanh_sinh(
        |t, t_minus_y, one_minus_t| {
            (-0.5 * mf * t.ln()
                + 0.5 * (mf - 2.0) * t_minus_y.ln()
                + 0.5 * (mf - 3.0) * one_minus_t.ln())
            .exp()
        },
        y,
        1.0,
        &settings,
    );
    if !r.converged {
        return Err(Error::NoConvergence {
            func: "weight_h",
            work: r.nodes,
            estimate: r.est_error,
        });
    }
    Ok(r.value / (4.0 * PI * log_factorial(m as u64 - 2).exp()))
}

/// Weight `h_{1m}(y)` of the photon-added squeezed one-photon states:
/// `[2π(m-1)!]^{-1} (1-y)^{(m-1)/2} Q_{m-1}((1-y)^{-1/2})` for `m ≥ 1`.
/// For `m = 0` (where that expression is undefined) the states coincide
/// with the `m = 1` photon-added vacua and `h_1` is returned.
pub fn weight_h1m(m: u32, y: f64) -> Result<f64> {
    check_unit_interval("weight_h1m", y)?;
    Ok(h1m_split(m, y, 1.0 - y))
}

pub(crate) fn h1m_split(m: u32, y: f64, one_minus_y: f64) -> f64 {
    if m == 0 {
        return h_closed(1, y, one_minus_y);
    }
    q_weight(m - 1, y, one_minus_y)
}

/// Weight `h_{μm}(y)` of the photon-added circle states:
/// `[πλ^{λ-μ}]^{-1} y^{(μ+1-λ)/λ} e^{-λy^{1/λ}} U(m, 1, λy^{1/λ})`.
pub fn weight_hmum(lambda: u32, mu: u32, m: u32, y: f64) -> Result<f64> {
    if lambda == 0 || mu >= lambda {
        return Err(Error::domain(
            "weight_hmum",
            format!("need 0 <= mu < lambda, got mu={mu}, lambda={lambda}"),
        ));
    }
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::domain(
            "weight_hmum",
            format!("y = {y} must be positive"),
        ));
    }
    Ok(log_hmum_from_root(lambda, mu, m, y.powf(1.0 / lambda as f64))?.exp())
}

/// `ln h_{μm}` written in terms of `r = y^{1/λ}`.
pub(crate) fn log_hmum_from_root(lambda: u32, mu: u32, m: u32, r: f64) -> Result<f64> {
    let l = lambda as f64;
    let u = kummer_u_int(m, l * r)?;
    Ok(-PI.ln() - (l - mu as f64) * l.ln() + (mu as f64 + 1.0 - l) * r.ln() - l * r + u.ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h1_limits() {
        let v = weight_h(1, 1e-12, WeightForm::Closed).unwrap();
        assert!((v - 1.0 / (2.0 * PI)).abs() < 1e-12);
        assert!((1.0 / (2.0 * PI) - 0.159_154_943_1).abs() < 1e-10);
        assert!(weight_h(1, 0.0, WeightForm::Closed).is_err());
        assert!(weight_h(1, 1.0, WeightForm::Closed).is_err());
        assert!(weight_h(0, 0.5, WeightForm::Closed).is_err());
    }

    #[test]
    fn h2_elementary() {
        for &y in &[0.01f64, 0.3, 0.75, 0.99] {
            let s = (1.0 - y).sqrt();
            let want = ((1.0 + s) / (1.0 - s)).ln() / (4.0 * PI);
            let got = weight_h(2, y, WeightForm::Closed).unwrap();
            assert!((got - want).abs() < 1e-13 * want);
        }
        let got = weight_h(2, 0.75, WeightForm::Closed).unwrap();
        assert!((got - 3f64.ln() / (4.0 * PI)).abs() < 1e-15);
        assert!((got - 0.087_424_788_1).abs() < 1e-10);
    }

    #[test]
    fn h5_elementary() {
        // [3(2+3y) ln((1+s)/(1-s)) - 2(11+4y) s] / (144π)
        let y: f64 = 0.5;
        let s = (1.0 - y).sqrt();
        let want = (3.0 * (2.0 + 3.0 * y) * ((1.0 + s) / (1.0 - s)).ln()
            - 2.0 * (11.0 + 4.0 * y) * s)
            / (144.0 * PI);
        let got = weight_h(5, y, WeightForm::Closed).unwrap();
        assert!((got - want).abs() < 1e-13 * want);
    }

    #[test]
    fn three_forms_agree() {
        for m in 2..=8 {
            for i in 1..=9 {
                let y = i as f64 / 10.0;
                let a = weight_h(m, y, WeightForm::Closed).unwrap();
                let b = weight_h(m, y, WeightForm::Hypergeometric).unwrap();
                let c = weight_h(m, y, WeightForm::Integral).unwrap();
                assert!((a - b).abs() < 1e-8 * a, "m={m} y={y}: {a} {b}");
                assert!((a - c).abs() < 1e-8 * a, "m={m} y={y}: {a} {c}");
            }
        }
    }

    #[test]
    fn boundary_behaviour() {
        for m in 2..=5 {
            assert!(weight_h(m, 1.0 - 1e-6, WeightForm::Closed).unwrap() < 1e-3);
            // logarithmic growth toward y = 0: dh_m/d ln(1/y) → 1/(4π(m-2)!)
            let step = weight_h(m, 1e-13, WeightForm::Closed).unwrap()
                - weight_h(m, 1e-12, WeightForm::Closed).unwrap();
            let want = 10f64.ln() / (4.0 * PI * log_factorial(m as u64 - 2).exp());
            assert!((step - want).abs() < 1e-6 * want, "m={m}");
            let mut prev = f64::INFINITY;
            for e in 1..=12 {
                let h = weight_h(m, 10f64.powi(-e), WeightForm::Closed).unwrap();
                assert!(h > 0.0);
                if e > 1 {
                    assert!(h > prev);
                }
                prev = h;
            }
        }
    }

    #[test]
    fn h1_increasing_h2_decreasing() {
        let mut last1 = 0.0;
        let mut last2 = f64::INFINITY;
        for i in 1..100 {
            let y = i as f64 / 100.0;
            let h1 = weight_h(1, y, WeightForm::Closed).unwrap();
            let h2 = weight_h(2, y, WeightForm::Closed).unwrap();
            assert!(h1 > last1 && h2 < last2);
            last1 = h1;
            last2 = h2;
        }
    }

    #[test]
    fn one_photon_weights() {
        let v = weight_h1m(0, 0.5).unwrap();
        assert!((v - 2f64.sqrt() / (2.0 * PI)).abs() < 1e-15);
        assert!((v - 0.225_079_079_0).abs() < 1e-10);
        for m in 1..=6 {
            for &y in &[0.1, 0.25, 0.6, 0.95] {
                let a = weight_h1m(m, y).unwrap();
                let b = weight_h(m + 1, y, WeightForm::Closed).unwrap();
                assert!((a - b).abs() <= 1e-12 * b);
            }
        }
        assert!(weight_h1m(3, 0.25).unwrap() > 0.0);
    }

    /// E₁(x) = -γ - ln x - Σ_{k≥1} (-x)^k/(k·k!)
    fn e1_series(x: f64) -> f64 {
        const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..60 {
            term *= -x / k as f64;
            sum += term / k as f64;
        }
        -EULER_GAMMA - x.ln() - sum
    }

    #[test]
    fn circle_weights() {
        for &y in &[0.1f64, 1.0, 4.0] {
            let v = weight_hmum(1, 0, 0, y).unwrap();
            assert!((v - (-y).exp() / PI).abs() < 1e-15);
            let v = weight_hmum(2, 1, 0, y).unwrap();
            assert!((v - (-2.0 * y.sqrt()).exp() / (2.0 * PI)).abs() < 1e-15);
        }
        let v = weight_hmum(1, 0, 1, 1.0).unwrap();
        let want = e1_series(1.0) / PI;
        assert!((v - want).abs() < 1e-12 * want);
        assert!((v - 0.069_832_1).abs() < 1e-7);
        assert!(weight_hmum(2, 2, 0, 1.0).is_err());
        assert!(weight_hmum(2, 1, 0, 0.0).is_err());
    }

    #[test]
    fn positivity_grid() {
        for m in 1..=8 {
            for i in 1..50 {
                let y = i as f64 / 50.0;
                assert!(weight_h(m, y, WeightForm::Closed).unwrap() > 0.0);
                assert!(weight_h1m(m - 1, y).unwrap() > 0.0);
            }
        }
        for lambda in 1..=4 {
            for mu in 0..lambda {
                for m in 0..=8 {
                    for &y in &[1e-3, 0.1, 1.0, 10.0] {
                        assert!(weight_hmum(lambda, mu, m, y).unwrap() > 0.0);
                    }
                }
            }
        }
    }
}
