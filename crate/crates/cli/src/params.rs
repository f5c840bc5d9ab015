//! Parsing of command-line values.

use num_complex::Complex64;

/// Parse `r` (real) or `r@θ` (modulus `r`, phase `θ` in radians).
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let s = s.trim();
    let (modulus, phase) = match s.split_once('@') {
        Some((r, t)) => (parse_real(r)?, parse_real(t)?),
        None => return Ok(Complex64::new(parse_real(s)?, 0.0)),
    };
    if modulus < 0.0 {
        return Err(format!("modulus in '{s}' must be nonnegative"));
    }
    Ok(Complex64::from_polar(modulus, phase))
}

fn parse_real(s: &str) -> Result<f64, String> {
    let x: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("'{s}' is not a number"))?;
    if !x.is_finite() {
        return Err(format!("'{s}' is not finite"));
    }
    Ok(x)
}

/// Parse a tolerance: positive and finite.
pub fn parse_tol(s: &str) -> Result<f64, String> {
    let x = parse_real(s)?;
    if x <= 0.0 {
        return Err(format!("tolerance '{s}' must be positive"));
    }
    Ok(x)
}
