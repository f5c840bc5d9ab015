//! Change of basis between photon-added squeezed vacua `|ζ,m⟩` and
//! squeezed number states `|m,ζ⟩ = S(ζ)|m⟩`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::fockstate::{sns_expansion_coeff, SqueezeParam};
use crate::specfun::{legendre_p_homogeneous, log_double_factorial, log_factorial};

/// Largest basis handled by the matrix builders.
pub const MAX_BASIS_DIM: usize = 64;

/// `A[m][k]`, the coefficient of `|k,ζ⟩` in `|ζ,m⟩`:
/// `[sᵐP_m(1/s)]^{-1/2} √m! ζ̄^{(m-k)/2} / ((m-k)!! √k!)` for `m - k`
/// even and nonnegative.
///
/// # Panics
/// If `dim` exceeds [`MAX_BASIS_DIM`].
pub fn pasvs_sns_matrix(p: &SqueezeParam, dim: usize) -> DMatrix<Complex64> {
    assert!(dim <= MAX_BASIS_DIM, "dim = {dim} exceeds {MAX_BASIS_DIM}");
    let zbar = p.zeta().conj();
    DMatrix::from_fn(dim, dim, |m, k| {
        if k > m || (m - k) % 2 != 0 {
            return Complex64::new(0.0, 0.0);
        }
        let mag = (0.5 * (log_factorial(m as u64) - log_factorial(k as u64))
            - log_double_factorial((m - k) as i32))
        .exp()
            / legendre_p_homogeneous(m as u32, p.s()).sqrt();
        zbar.powu(((m - k) / 2) as u32) * mag
    })
}

/// `B[m][k]`, the coefficient of `|ζ,k⟩` in `|m,ζ⟩`; the inverse of
/// [`pasvs_sns_matrix`].
///
/// # Panics
/// If `dim` exceeds [`MAX_BASIS_DIM`].
pub fn sns_pasvs_matrix(p: &SqueezeParam, dim: usize) -> DMatrix<Complex64> {
    assert!(dim <= MAX_BASIS_DIM, "dim = {dim} exceeds {MAX_BASIS_DIM}");
    DMatrix::from_fn(dim, dim, |m, k| sns_expansion_coeff(p, m, k))
}
