//! Legendre functions off the cut (argument ≥ 1), integer degree and order.

use num_complex::Complex64;

use super::factorial::log_factorial;
use crate::error::{Error, Result};

/// `P_n(x)` by the three-term recurrence.
pub fn legendre_p(n: u32, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = x;
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `P_n(w)` at a complex argument.
pub fn legendre_p_complex(n: u32, w: Complex64) -> Complex64 {
    let mut prev = Complex64::new(1.0, 0.0);
    if n == 0 {
        return prev;
    }
    let mut cur = w;
    for k in 1..n {
        let k = k as f64;
        let next = (w * cur * (2.0 * k + 1.0) - prev * k) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `sⁿ · P_n(1/s)`, the Legendre polynomial with its growth at large
/// argument factored out. With `s = √(1-|ζ|²)` this is the combination
/// `(1-|ζ|²)^{n/2} P_n((1-|ζ|²)^{-1/2})` that appears in every squeezed-state
/// normalization, and it stays bounded as `s → 0`.
pub fn legendre_p_homogeneous(n: u32, s: f64) -> f64 {
    let s2 = s * s;
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0;
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0) * cur - k * s2 * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Upward recurrence in the degree for `P^μ_ν(w)`, `μ ≥ 0`, seeded with
/// `P^μ_μ = (2μ-1)!! · root^μ` where `root` is the chosen branch of
/// `(w²-1)^{1/2}` (no Condon–Shortley phase; this is the off-cut function).
fn assoc_positive(order: u32, degree: u32, w: Complex64, root: Complex64) -> Complex64 {
    let mu = order as f64;
    let mut seed = Complex64::new(1.0, 0.0);
    for j in 0..order {
        seed *= root * (2.0 * j as f64 + 1.0);
    }
    if degree == order {
        return seed;
    }
    let mut prev = seed;
    let mut cur = w * seed * (2.0 * mu + 1.0);
    for nu in (order + 1)..degree {
        let nu = nu as f64;
        let next = (w * cur * (2.0 * nu + 1.0) - prev * (nu + mu)) / (nu - mu + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

fn check_order(order: i32, degree: u32) -> Result<()> {
    if order.unsigned_abs() > degree {
        return Err(Error::domain(
            "legendre_p_assoc",
            format!("|order| = {} exceeds degree {degree}", order.unsigned_abs()),
        ));
    }
    Ok(())
}

fn negative_order_ratio(order: u32, degree: u32) -> f64 {
    (log_factorial((degree - order) as u64) - log_factorial((degree + order) as u64)).exp()
}

/// Associated Legendre function `P^{order}_{degree}(x)` for real `x ≥ 1`.
///
/// Negative orders come from the positive ones through
/// `P^{-μ}_ν = Γ(ν-μ+1)/Γ(ν+μ+1) · P^μ_ν`. At `x = 1` the limit is returned
/// (zero for nonzero order).
pub fn legendre_p_assoc(order: i32, degree: u32, x: f64) -> Result<f64> {
    check_order(order, degree)?;
    if !(x >= 1.0) || !x.is_finite() {
        return Err(Error::domain("legendre_p_assoc", format!("x = {x} < 1")));
    }
    let root = ((x - 1.0) * (x + 1.0)).sqrt();
    let mu = order.unsigned_abs();
    let pos = assoc_positive(
        mu,
        degree,
        Complex64::new(x, 0.0),
        Complex64::new(root, 0.0),
    )
    .re;
    Ok(if order < 0 {
        pos * negative_order_ratio(mu, degree)
    } else {
        pos
    })
}

/// `P^{order}_{degree}(w)` at complex `w`, with the branch of `(w²-1)^{1/2}`
/// supplied by the caller as `root`.
///
/// For integer order the function is `root^μ` times a polynomial in `w`, so
/// the branch choice is the only ambiguity; callers that build `w` from
/// other complex quantities know which branch keeps their formula
/// single-valued.
pub fn legendre_p_assoc_branch(
    order: i32,
    degree: u32,
    w: Complex64,
    root: Complex64,
) -> Result<Complex64> {
    check_order(order, degree)?;
    let mu = order.unsigned_abs();
    let pos = assoc_positive(mu, degree, w, root);
    Ok(if order < 0 {
        pos * negative_order_ratio(mu, degree)
    } else {
        pos
    })
}

/// Legendre function of the second kind `Q_n(x)`, `x > 1`.
pub fn legendre_q(n: u32, x: f64) -> Result<f64> {
    if !(x > 1.0) {
        return Err(Error::domain(
            "legendre_q",
            format!("x = {x} must exceed 1"),
        ));
    }
    legendre_q_xm1(n, x - 1.0)
}

/// Cancellation allowed in the logarithmic closed form before switching to
/// the ratio recurrence (about three digits).
const CLOSED_FORM_GROWTH: f64 = 1e3;

/// `Q_n(1 + xm1)` with `xm1 = x - 1 > 0` given directly, so that arguments
/// close to the logarithmic singularity keep full relative precision.
///
/// Near `x = 1` the closed form `½ P_n(x) ln((x+1)/(x-1)) - W_{n-1}(x)` is
/// used. Away from it the two terms cancel (Q_n decays like `ρ^{-n-1}` while
/// `P_n` grows like `ρ^n`, `ρ = x + √(x²-1)`), so the ratios `Q_k/Q_{k-1}`
/// are taken from the backward recurrence instead and multiplied onto `Q_0`.
pub fn legendre_q_xm1(n: u32, xm1: f64) -> Result<f64> {
    if !(xm1 > 0.0) || !xm1.is_finite() {
        return Err(Error::domain(
            "legendre_q",
            format!("x - 1 = {xm1} must be positive and finite"),
        ));
    }
    let q0 = 0.5 * (2.0 / xm1).ln_1p();
    if n == 0 {
        return Ok(q0);
    }
    let ln_rho = (xm1 + xm1.sqrt() * (2.0 + xm1).sqrt()).ln_1p();
    if (2 * n + 1) as f64 * ln_rho <= CLOSED_FORM_GROWTH.ln() {
        Ok(q_closed_form(n, xm1))
    } else {
        Ok(q_backward_ratios(n, xm1, q0, ln_rho))
    }
}

pub(crate) fn q_closed_form(n: u32, xm1: f64) -> f64 {
    let x = 1.0 + xm1;
    let mut p = Vec::with_capacity(n as usize + 1);
    p.push(1.0);
    p.push(x);
    for k in 1..n as usize {
        let kf = k as f64;
        p.push(((2.0 * kf + 1.0) * x * p[k] - kf * p[k - 1]) / (kf + 1.0));
    }
    let log_term = 0.5 * p[n as usize] * (2.0 / xm1).ln_1p();
    let nf = n as f64;
    let mut w = 0.0;
    for k in 0..=((n - 1) / 2) {
        let kf = k as f64;
        w += (2.0 * nf - 4.0 * kf - 1.0) / ((nf - kf) * (2.0 * kf + 1.0))
            * p[(n - 2 * k - 1) as usize];
    }
    log_term - w
}

pub(crate) fn q_backward_ratios(n: u32, xm1: f64, q0: f64, ln_rho: f64) -> f64 {
    let x = 1.0 + xm1;
    // Starting the recurrence at depth N leaves a relative error of order
    // ρ^{-2(N-n)} in Q_n/Q_{n-1}.
    let depth = n + (22.5 / ln_rho).ceil() as u32 + 8;
    let mut ratios = vec![0.0; n as usize + 1];
    let mut r = 0.0;
    for k in (1..=depth).rev() {
        let kf = k as f64;
        r = kf / ((2.0 * kf + 1.0) * x - (kf + 1.0) * r);
        if k <= n {
            ratios[k as usize] = r;
        }
    }
    ratios[1..].iter().fold(q0, |acc, r| acc * r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::quad::{tanh_sinh, QuadSettings};

    /// P_n(x) = Σ_k C(n,k)² ((x-1)/2)^{n-k} ((x+1)/2)^k: positive terms for x > 1.
    fn p_binomial(n: u32, x: f64) -> f64 {
        let a = (x - 1.0) / 2.0;
        let b = (x + 1.0) / 2.0;
        (0..=n)
            .map(|k| {
                let lc = log_factorial(n as u64)
                    - log_factorial(k as u64)
                    - log_factorial((n - k) as u64);
                (2.0 * lc).exp() * a.powi((n - k) as i32) * b.powi(k as i32)
            })
            .sum()
    }

    /// Coefficients of P_n in the monomial basis (exact rationals fit f64 for small n).
    fn p_monomial(n: usize) -> Vec<f64> {
        let mut prev = vec![1.0];
        if n == 0 {
            return prev;
        }
        let mut cur = vec![0.0, 1.0];
        for k in 1..n {
            let kf = k as f64;
            let mut next = vec![0.0; k + 2];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] += (2.0 * kf + 1.0) * c / (kf + 1.0);
            }
            for (i, c) in prev.iter().enumerate() {
                next[i] -= kf * c / (kf + 1.0);
            }
            prev = cur;
            cur = next;
        }
        cur
    }

    fn poly_derivative_at(coeffs: &[f64], order: usize, x: f64) -> f64 {
        let mut c = coeffs.to_vec();
        for _ in 0..order {
            c = c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, v)| v * i as f64)
                .collect();
        }
        c.iter().rev().fold(0.0, |acc, v| acc * x + v)
    }

    #[test]
    fn p_low_degree_values() {
        assert_eq!(legendre_p(0, 3.7), 1.0);
        assert_eq!(legendre_p(1, 2.0), 2.0);
        assert!((legendre_p(2, 2.0) - 5.5).abs() < 1e-15);
    }

    #[test]
    fn p_matches_binomial_sum() {
        for &x in &[1.0, 1.01, 1.3, 2.0, 5.0, 10.0] {
            for n in 0..=200 {
                let want = p_binomial(n, x);
                let got = legendre_p(n, x);
                assert!(
                    (got - want).abs() <= 1e-12 * want.abs(),
                    "n={n} x={x}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn p_recurrence_consistency() {
        for &x in &[1.01, 2.0, 5.0] {
            for n in 1..100 {
                let nf = n as f64;
                let lhs = (nf + 1.0) * legendre_p(n + 1, x);
                let rhs = (2.0 * nf + 1.0) * x * legendre_p(n, x) - nf * legendre_p(n - 1, x);
                assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs());
            }
        }
    }

    #[test]
    fn homogeneous_form_matches_scaled_polynomial() {
        for &s in &[1.0f64, 0.9, 0.5, 0.1] {
            for n in 0..40 {
                let want = s.powi(n as i32) * legendre_p(n, 1.0 / s);
                let got = legendre_p_homogeneous(n, s);
                assert!((got - want).abs() <= 1e-12 * want.abs());
            }
        }
        // s → 0 limit is the leading coefficient (2n)!/(2^n (n!)^2)
        let lead = (log_factorial(12) - 6.0 * 2f64.ln() - 2.0 * log_factorial(6)).exp();
        assert!((legendre_p_homogeneous(6, 0.0) - lead).abs() < 1e-13 * lead);
    }

    #[test]
    fn complex_p_agrees_on_real_axis() {
        for n in 0..20 {
            let z = legendre_p_complex(n, Complex64::new(1.7, 0.0));
            assert!((z.re - legendre_p(n, 1.7)).abs() <= 1e-13 * z.re.abs());
            assert_eq!(z.im, 0.0);
        }
    }

    #[test]
    fn assoc_reductions_and_small_cases() {
        for n in 0..10 {
            let x = 1.37;
            assert!(
                (legendre_p_assoc(0, n, x).unwrap() - legendre_p(n, x)).abs()
                    < 1e-14 * legendre_p(n, x)
            );
        }
        assert_eq!(legendre_p_assoc(0, 0, 1.25).unwrap(), 1.0);
        // P^{-1}_1(x) = √(x²-1)/2
        assert!((legendre_p_assoc(-1, 1, 1.25).unwrap() - 0.375).abs() < 1e-15);
        assert!(legendre_p_assoc(3, 2, 1.5).is_err());
        assert!(legendre_p_assoc(-3, 2, 1.5).is_err());
        assert!(legendre_p_assoc(1, 2, 0.5).is_err());
        assert_eq!(legendre_p_assoc(2, 4, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn assoc_matches_derivative_definition() {
        for degree in 0..=12usize {
            let c = p_monomial(degree);
            for order in 0..=degree {
                for &x in &[1.05f64, 1.6, 3.0] {
                    let want =
                        (x * x - 1.0).powf(order as f64 / 2.0) * poly_derivative_at(&c, order, x);
                    let got = legendre_p_assoc(order as i32, degree as u32, x).unwrap();
                    assert!(
                        (got - want).abs() <= 1e-11 * want.abs().max(1e-300),
                        "{order} {degree} {x}"
                    );
                    let neg = legendre_p_assoc(-(order as i32), degree as u32, x).unwrap();
                    let ratio = (log_factorial((degree - order) as u64)
                        - log_factorial((degree + order) as u64))
                    .exp();
                    assert!((neg - ratio * want).abs() <= 1e-11 * (ratio * want).abs().max(1e-300));
                }
            }
        }
    }

    #[test]
    fn branch_variant_reproduces_real_values() {
        let x = 1.8f64;
        let root = Complex64::new((x * x - 1.0).sqrt(), 0.0);
        for degree in 0..8 {
            for order in -(degree as i32)..=(degree as i32) {
                let c =
                    legendre_p_assoc_branch(order, degree, Complex64::new(x, 0.0), root).unwrap();
                let r = legendre_p_assoc(order, degree, x).unwrap();
                assert!((c.re - r).abs() <= 1e-14 * r.abs().max(1.0));
            }
        }
        // flipping the branch flips odd orders only
        let a = legendre_p_assoc_branch(-3, 5, Complex64::new(x, 0.0), root).unwrap();
        let b = legendre_p_assoc_branch(-3, 5, Complex64::new(x, 0.0), -root).unwrap();
        assert!((a + b).norm() < 1e-15 * a.norm());
    }

    #[test]
    fn q_closed_values() {
        assert!((legendre_q(0, 2.0).unwrap() - 0.5 * 3f64.ln()).abs() < 1e-15);
        assert!((legendre_q(0, 2.0).unwrap() - 0.549_306_144_3).abs() < 1e-10);
        assert!((legendre_q(1, 2.0).unwrap() - (3f64.ln() - 1.0)).abs() < 1e-15);
        assert!((legendre_q(1, 2.0).unwrap() - 0.098_612_288_7).abs() < 1e-10);
        assert!(legendre_q(3, 1.0).is_err());
        assert!(legendre_q(3, 0.5).is_err());
        assert!(legendre_q_xm1(2, 0.0).is_err());
    }

    /// Neumann's integral Q_n(x) = ½ ∫_{-1}^{1} P_n(t)/(x - t) dt.
    fn q_neumann(n: u32, xm1: f64) -> f64 {
        let settings = QuadSettings {
            rel_tol: 1e-14,
            ..QuadSettings::default()
        };
        let r = tanh_sinh(
            |t, _left, right| legendre_p(n, t) / (xm1 + right),
            -1.0,
            1.0,
            &settings,
        );
        assert!(
            r.converged,
            "n={n} xm1={xm1} err={} nodes={}",
            r.est_error, r.nodes
        );
        0.5 * r.value
    }

    #[test]
    fn q_near_singular_endpoint_matches_quadrature() {
        let got = legendre_q_xm1(2, 1e-6).unwrap();
        let want = q_neumann(2, 1e-6);
        assert!((got - want).abs() <= 1e-11 * want.abs(), "{got} vs {want}");
        assert!(got > 5.5); // ~ ½ P_2 ln(2/1e-6) - 3x/2
        for &(n, xm1) in &[(0u32, 0.5), (3, 0.01), (5, 0.3), (7, 0.2), (10, 1e-8)] {
            let got = legendre_q_xm1(n, xm1).unwrap();
            let want = q_neumann(n, xm1);
            assert!(
                (got - want).abs() <= 1e-11 * want.abs(),
                "n={n} xm1={xm1}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn q_paths_agree_where_both_are_accurate() {
        for n in 1..12u32 {
            for &xm1 in &[0.02f64, 0.05, 0.1] {
                let x = 1.0 + xm1;
                let ln_rho = (x + (x * x - 1.0).sqrt()).ln();
                let q0 = 0.5 * (2.0 / xm1).ln_1p();
                let a = q_closed_form(n, xm1);
                let b = q_backward_ratios(n, xm1, q0, ln_rho);
                assert!(
                    (a - b).abs() <= 1e-11 * b.abs(),
                    "n={n} xm1={xm1}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn q_large_argument_asymptotics() {
        // Q_n(x) ~ n!/(2n+1)!! x^{-n-1} (1 + O(x^-2))
        let x = 1e6f64;
        for n in 0..6u32 {
            let lead = (log_factorial(n as u64)
                - super::super::log_double_factorial(2 * n as i32 + 1))
            .exp()
                * x.powi(-(n as i32) - 1);
            let got = legendre_q(n, x).unwrap();
            assert!((got - lead).abs() <= 1e-10 * lead, "n={n}");
        }
    }

    #[test]
    fn wronskian_identity() {
        for &x in &[1.0 + 1e-8, 1.001, 1.1, 1.5, 2.0, 5.0, 10.0] {
            for n in 1..=50u32 {
                let w = legendre_p(n, x) * legendre_q(n - 1, x).unwrap()
                    - legendre_p(n - 1, x) * legendre_q(n, x).unwrap();
                let want = 1.0 / n as f64;
                assert!((w - want).abs() <= 1e-9 * want, "x={x} n={n}: {w}");
            }
        }
    }

    #[test]
    fn q_recurrence_holds_across_the_path_switch() {
        for &x in &[1.01, 1.2, 3.0, 10.0] {
            for n in 1..=100u32 {
                let nf = n as f64;
                let lhs = (nf + 1.0) * legendre_q(n + 1, x).unwrap();
                let rhs = (2.0 * nf + 1.0) * x * legendre_q(n, x).unwrap()
                    - nf * legendre_q(n - 1, x).unwrap();
                let scale = (2.0 * nf + 1.0) * x * legendre_q(n, x).unwrap();
                assert!((lhs - rhs).abs() <= 1e-10 * scale.abs(), "x={x} n={n}");
            }
        }
    }
}
