//! Confluent hypergeometric function of the second kind at `b = 1`.

use super::log_factorial;
use super::quad::{exp_sinh, QuadSettings};
use super::{EvalResult, SeriesStop};
use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Below `SERIES_REACH / m` the logarithmic power series is used.
const SERIES_REACH: f64 = 0.1;

fn default_settings() -> QuadSettings {
    QuadSettings::default().with_rel_tol(1e-12)
}

/// `U(m, 1, x)` for integer `m ≥ 0` and `x > 0`.
pub fn kummer_u_int(m: u32, x: f64) -> Result<f64> {
    kummer_u_int_with(m, x, &default_settings()).map(|r| r.value)
}

/// `U(m, 1, x)` with explicit quadrature settings.
///
/// Uses `U(m,1,x) = Γ(m)^{-1} ∫₀^∞ e^{-u} u^{m-1} (x+u)^{-m} du`
/// (the standard integral with `t = u/x`), evaluated in log space so large
/// `m` neither overflows nor underflows. For `x < 0.1/m` the logarithmic
/// power series is summed instead. `U(0,1,x) = 1`.
pub fn kummer_u_int_with(m: u32, x: f64, settings: &QuadSettings) -> Result<EvalResult<f64>> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "kummer_u_int",
            format!("x = {x} must be positive"),
        ));
    }
    if m == 0 {
        return Ok(EvalResult {
            value: 1.0,
            est_abs_error: 0.0,
            terms_used: 0,
        });
    }
    if x * (m as f64) < SERIES_REACH {
        return Ok(series(m, x));
    }
    let mf = m as f64;
    let lg = log_factorial(m as u64 - 1);
    let r = exp_sinh(
        |u| (-u + (mf - 1.0) * u.ln() - mf * (x + u).ln() - lg).exp(),
        settings,
    );
    if !r.converged {
        return Err(Error::NoConvergence {
            func: "kummer_u_int",
            work: r.nodes,
            estimate: r.est_error,
        });
    }
    Ok(EvalResult {
        value: r.value,
        est_abs_error: r.est_error,
        terms_used: r.nodes,
    })
}

/// `U(m,1,x) = -Γ(m)^{-1} Σ_k (m)_k x^k/(k!)² [ln x + ψ(m+k) - 2ψ(k+1)]`.
fn series(m: u32, x: f64) -> EvalResult<f64> {
    let ln_x = x.ln();
    // ψ(n) = -γ + H_{n-1}
    let mut psi_mk = -EULER_GAMMA + (1..m).map(|j| 1.0 / j as f64).sum::<f64>();
    let mut psi_k1 = -EULER_GAMMA;
    let mut coeff = 1.0;
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut stop = SeriesStop::default();
    let mut k = 0u32;
    loop {
        let term = coeff * (ln_x + psi_mk - 2.0 * psi_k1);
        sum += term;
        abs_sum += term.abs();
        if stop.done(term.abs(), sum.abs()) {
            break;
        }
        let kf = k as f64;
        coeff *= (m as f64 + kf) * x / ((kf + 1.0) * (kf + 1.0));
        psi_mk += 1.0 / (m as f64 + kf);
        psi_k1 += 1.0 / (kf + 1.0);
        k += 1;
    }
    let scale = (-log_factorial(m as u64 - 1)).exp();
    EvalResult {
        value: -sum * scale,
        est_abs_error: 4.0 * f64::EPSILON * abs_sum * scale,
        terms_used: k as usize + 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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

    /// Composite Simpson on t = s/(1-s) of Γ(m)^{-1}∫ e^{-xt} t^{m-1}(1+t)^{-m} dt.
    fn simpson_oracle(m: u32, x: f64, panels: usize) -> f64 {
        let lg = log_factorial(m as u64 - 1);
        let g = |s: f64| -> f64 {
            if s <= 0.0 || s >= 1.0 {
                return 0.0;
            }
            let t = s / (1.0 - s);
            // (1+t)^{-m} dt = (1-s)^m ds/(1-s)^2
            (-x * t + (m as f64 - 1.0) * t.ln() + m as f64 * (1.0 - s).ln()
                - 2.0 * (1.0 - s).ln()
                - lg)
                .exp()
        };
        let h = 1.0 / panels as f64;
        let mut acc = g(0.0) + g(1.0);
        for i in 1..panels {
            acc += g(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        acc * h / 3.0
    }

    #[test]
    fn trivial_order() {
        for &x in &[1e-4, 0.3, 50.0] {
            assert_eq!(kummer_u_int(0, x).unwrap(), 1.0);
        }
        assert!(kummer_u_int(1, 0.0).is_err());
        assert!(kummer_u_int(1, -1.0).is_err());
    }

    #[test]
    fn order_one_is_scaled_exponential_integral() {
        let want = 1f64.exp() * e1_series(1.0);
        let got = kummer_u_int(1, 1.0).unwrap();
        assert!((got - want).abs() < 1e-12 * want, "{got} vs {want}");
        assert!((got - 0.596_347_362_4).abs() < 1e-10);
        for &x in &[1e-4f64, 0.1, 2.0, 5.0] {
            let want = x.exp() * e1_series(x);
            let got = kummer_u_int(1, x).unwrap();
            assert!((got - want).abs() < 1e-10 * want, "x={x}");
        }
    }

    #[test]
    fn order_two_matches_brute_force() {
        let coarse = simpson_oracle(2, 0.5, 2000);
        let fine = simpson_oracle(2, 0.5, 4000);
        assert!((coarse - fine).abs() < 1e-11);
        let got = kummer_u_int(2, 0.5).unwrap();
        assert!((got - fine).abs() < 1e-10 * fine, "{got} vs {fine}");
        assert!((got - 0.384_365_948_725_595_7).abs() < 1e-12);
    }

    #[test]
    fn recurrence_at_b_one() {
        // U(a-1,1,z) + (1-2a-z)U(a,1,z) + a²U(a+1,1,z) = 0
        for &z in &[0.5, 2.0, 10.0] {
            for a in 1..=20u32 {
                let af = a as f64;
                let t0 = kummer_u_int(a - 1, z).unwrap();
                let t1 = (1.0 - 2.0 * af - z) * kummer_u_int(a, z).unwrap();
                let t2 = af * af * kummer_u_int(a + 1, z).unwrap();
                let scale = t0.abs().max(t1.abs()).max(t2.abs());
                assert!((t0 + t1 + t2).abs() <= 1e-8 * scale, "a={a} z={z}");
            }
        }
    }

    #[test]
    fn large_argument_asymptotics() {
        // U(m,1,x) ~ x^{-m}(1 - m²/x + ...)
        let x = 100.0f64;
        for m in [1u32, 2, 3] {
            let mf = m as f64;
            let approx = x.powf(-mf)
                * (1.0 - mf * mf / x + mf * mf * (mf + 1.0) * (mf + 1.0) / (2.0 * x * x));
            let got = kummer_u_int(m, x).unwrap();
            assert!((got / approx - 1.0).abs() < 0.05, "m={m}");
        }
    }

    #[test]
    fn series_and_integral_agree() {
        // just beyond the series reach, where the integral is used
        let settings = default_settings();
        for m in 1..=30u32 {
            for &c in &[0.11, 0.2, 0.5] {
                let x = c / m as f64;
                let integral = kummer_u_int_with(m, x, &settings).unwrap();
                assert!(integral.terms_used > 100);
                let s = series(m, x).value;
                assert!((s - integral.value).abs() < 1e-11 * s, "m={m} x={x}");
            }
        }
    }

    #[test]
    fn tiny_argument_logarithm() {
        // U(m,1,x) = -(ln x + ψ(m) + 2γ)/(m-1)! + O(x ln x)
        for m in 1..=4u32 {
            for &x in &[1e-40f64, 1e-200] {
                let psi = -EULER_GAMMA + (1..m).map(|j| 1.0 / j as f64).sum::<f64>();
                let want = -(x.ln() + psi + 2.0 * EULER_GAMMA) / log_factorial(m as u64 - 1).exp();
                let got = kummer_u_int(m, x).unwrap();
                assert!((got - want).abs() < 1e-14 * want);
            }
        }
    }

    #[test]
    fn full_range_converges() {
        for m in [1u32, 10, 30, 50] {
            for &x in &[1e-4, 1e-2, 1.0, 30.0, 100.0] {
                let r = kummer_u_int_with(m, x, &default_settings()).unwrap();
                assert!(r.value > 0.0 && r.value.is_finite());
            }
        }
    }
}
