use std::f64::consts::PI;
use std::sync::OnceLock;

const TABLE_LEN: usize = 171;

fn table() -> &'static [f64; TABLE_LEN] {
    static LN_FACT: OnceLock<[f64; TABLE_LEN]> = OnceLock::new();
    LN_FACT.get_or_init(|| {
        // n! is finite in f64 up to 170; the running product carries at most
        // ~n roundings, which is far below 1e-14 once the log is taken.
        let mut out = [0.0; TABLE_LEN];
        let mut prod = 1.0f64;
        for (n, slot) in out.iter_mut().enumerate().skip(1) {
            prod *= n as f64;
            *slot = prod.ln();
        }
        out
    })
}

/// Stirling series for ln Γ(x), accurate to double precision for x ≥ 100.
fn ln_gamma_stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series =
        inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0))));
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + series
}

/// `ln(n!)`.
pub fn log_factorial(n: u64) -> f64 {
    if (n as usize) < TABLE_LEN {
        table()[n as usize]
    } else {
        ln_gamma_stirling(n as f64 + 1.0)
    }
}

/// `n!` as a float; `inf` beyond 170.
pub fn factorial(n: u32) -> f64 {
    if (n as usize) < TABLE_LEN {
        (1..=n).fold(1.0, |acc, k| acc * k as f64)
    } else {
        f64::INFINITY
    }
}

/// `n!!` with the convention `(-1)!! = 0!! = 1`. Exact for `n ≤ 30`.
///
/// # Panics
/// If `n < -1`.
pub fn double_factorial(n: i32) -> f64 {
    assert!(n >= -1, "double_factorial: n = {n} < -1");
    let mut acc = 1.0;
    let mut k = n;
    while k > 1 {
        acc *= k as f64;
        k -= 2;
    }
    acc
}

/// `ln(n!!)`, valid for any `n ≥ -1`.
///
/// Uses `(2k)!! = 2^k k!` and `(2k-1)!! = (2k)! / (2^k k!)`.
pub fn log_double_factorial(n: i32) -> f64 {
    assert!(n >= -1, "log_double_factorial: n = {n} < -1");
    if n <= 0 {
        return 0.0;
    }
    let n = n as u64;
    if n.is_multiple_of(2) {
        let k = n / 2;
        k as f64 * std::f64::consts::LN_2 + log_factorial(k)
    } else {
        let k = n.div_ceil(2);
        log_factorial(2 * k) - k as f64 * std::f64::consts::LN_2 - log_factorial(k)
    }
}
