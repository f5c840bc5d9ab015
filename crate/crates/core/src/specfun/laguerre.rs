//! Laguerre polynomials.

use num_complex::Complex64;

/// `L_m(x)` by the three-term recurrence.
pub fn laguerre(m: u32, x: f64) -> f64 {
    let mut prev = 1.0;
    if m == 0 {
        return prev;
    }
    let mut cur = 1.0 - x;
    for k in 1..m {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `L_m(w)` at complex argument.
pub fn laguerre_complex(m: u32, w: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let mut prev = one;
    if m == 0 {
        return prev;
    }
    let mut cur = one - w;
    for k in 1..m {
        let k = k as f64;
        let next = (cur * (-w + (2.0 * k + 1.0)) - prev * k) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::log_factorial;

    /// L_m(x) = Σ_k C(m,k) (-x)^k / k!, all terms positive for x < 0.
    fn explicit_negative(m: u32, x: f64) -> f64 {
        let lx = (-x).ln();
        (0..=m)
            .map(|k| {
                let k64 = k as u64;
                (log_factorial(m as u64) - log_factorial(k64) - log_factorial((m - k) as u64)
                    + k as f64 * lx
                    - log_factorial(k64))
                .exp()
            })
            .sum()
    }

    #[test]
    fn small_values() {
        assert_eq!(laguerre(0, 12.0), 1.0);
        assert_eq!(laguerre(1, -1.0), 2.0);
        assert!((laguerre(2, -1.0) - 3.5).abs() < 1e-15);
        // L_3(x) = (-x³ + 9x² - 18x + 6)/6 at x = 2
        assert!((laguerre(3, 2.0) - (-8.0 + 36.0 - 36.0 + 6.0) / 6.0).abs() < 1e-15);
    }

    #[test]
    fn negative_axis_matches_explicit_sum() {
        for &x in &[-1e-3, -0.5, -5.0, -40.0, -100.0] {
            for m in (0..=200).step_by(7) {
                let want = explicit_negative(m, x);
                let got = laguerre(m, x);
                assert!(
                    (got - want).abs() <= 1e-12 * want,
                    "m={m} x={x}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn complex_agrees_with_real() {
        for m in 0..30 {
            for &x in &[-3.0, 0.7, 4.0] {
                let c = laguerre_complex(m, Complex64::new(x, 0.0));
                let r = laguerre(m, x);
                assert!((c.re - r).abs() <= 1e-13 * r.abs().max(1.0));
                assert_eq!(c.im, 0.0);
            }
        }
        // conjugate symmetry
        let w = Complex64::new(-1.2, 2.5);
        assert!((laguerre_complex(9, w.conj()) - laguerre_complex(9, w).conj()).norm() < 1e-12);
    }
}
