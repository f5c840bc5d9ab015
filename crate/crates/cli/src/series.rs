//! Brute-force number-basis sums for the normalizations, used as
//! references by the `norm` command and the `norms` suite.

use fockres::specfun::log_factorial;
use fockres::CircleParam;

/// Sum of positive terms `exp(log_term(k))`, k = 0, 1, …, stopped once
/// three consecutive terms fall below `1e-18` of the running sum.
fn positive_series(log_term: impl Fn(u64) -> f64) -> f64 {
    let mut sum = 0.0;
    let mut small = 0;
    for k in 0..10_000_000u64 {
        let t = log_term(k).exp();
        sum += t;
        if t < 1e-18 * sum {
            small += 1;
            if small == 3 {
                break;
            }
        } else {
            small = 0;
        }
    }
    sum
}

/// `(1-y)^{p} Σ_k (2k+j)!/(4^k k!²) y^k`.
fn squeezed_series(y: f64, j: u64, p: f64) -> f64 {
    if y == 0.0 {
        return log_factorial(j).exp();
    }
    let ly = y.ln();
    let s = positive_series(|k| {
        log_factorial(2 * k + j) - k as f64 * 4f64.ln() - 2.0 * log_factorial(k) + k as f64 * ly
    });
    (1.0 - y).powf(p) * s
}

/// Squared norm of `(a†)^m S(ζ)|0⟩` summed over photon numbers.
pub fn pasvs_norm_series(y: f64, m: u32) -> f64 {
    squeezed_series(y, m as u64, 0.5)
}

/// Squared norm of `(a†)^m S(ζ)|1⟩` summed over photon numbers.
pub fn pasops_norm_series(y: f64, m: u32) -> f64 {
    squeezed_series(y, m as u64 + 1, 1.5)
}

/// `N_μ = Σ_k μ!/(kλ+μ)! |z|^{2k}`.
pub fn csc_norm_series(p: &CircleParam) -> f64 {
    let (l, mu) = (p.lambda() as u64, p.mu() as u64);
    let r2 = p.z().norm_sqr();
    if r2 == 0.0 {
        return 1.0;
    }
    let lr = r2.ln();
    positive_series(|k| log_factorial(mu) - log_factorial(k * l + mu) + k as f64 * lr)
}

/// `N_{μm} = μ!/N_μ Σ_k |z|^{2k} (kλ+μ+m)!/((kλ+μ)!)²`.
pub fn pacsc_norm_series(p: &CircleParam, m: u32) -> f64 {
    let (l, mu, m) = (p.lambda() as u64, p.mu() as u64, m as u64);
    let r2 = p.z().norm_sqr();
    if r2 == 0.0 {
        return (log_factorial(mu + m) - log_factorial(mu)).exp();
    }
    let lr = r2.ln();
    let s = positive_series(|k| {
        k as f64 * lr + log_factorial(k * l + mu + m) - 2.0 * log_factorial(k * l + mu)
    });
    log_factorial(mu).exp() / csc_norm_series(p) * s
}
