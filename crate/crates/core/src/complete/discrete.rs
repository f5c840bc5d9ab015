//! Discrete completeness of the photon-added squeezed vacua: the identity
//! written as a double sum `Σ_{m,n} G_{mn} |ζ,m⟩⟨ζ,n|` over a
//! nonorthogonal family.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::OperatorMatrix;
use crate::error::{Error, Result};
use crate::fockstate::{pasvs, SqueezeParam};
use crate::specfun::{
    legendre_p_assoc, legendre_p_homogeneous, log_double_factorial, log_factorial, SeriesStop,
};

/// Largest `|ζ|` accepted.
pub const MAX_DISCRETE_MODULUS: f64 = 0.5;
/// Largest summation cutoff accepted.
pub const MAX_DISCRETE_CUTOFF: usize = 80;

/// Truncation threshold for the state vectors entering the sum.
const STATE_EPS: f64 = 1e-26;
/// Cap on the reference sum over squeezed number states.
const MAX_REFERENCE_TERMS: usize = 100_000;

/// Truncated double sum at one cutoff, in two independent assemblies.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteCompleteness {
    pub m_cutoff: usize,
    /// Entries `⟨i|A|j⟩` for `j < basis_dim` and every photon number `i`
    /// reached by the truncated states.
    pub column_block: DMatrix<Complex64>,
    /// Same block assembled from squeezed number states.
    pub reference_block: DMatrix<Complex64>,
    /// `max |A - I|` over the column block.
    pub column_deviation: f64,
    /// `max |A - A_ref|` over the column block.
    pub reference_difference: f64,
}

impl DiscreteCompleteness {
    /// Square `basis_dim × basis_dim` corner of the column block.
    pub fn square(&self) -> OperatorMatrix {
        let d = self.column_block.ncols();
        OperatorMatrix {
            basis_offset: 0,
            basis_stride: 1,
            entries: self.column_block.rows(0, d).into_owned(),
        }
    }
}

fn validate(p: &SqueezeParam, m_cutoff: usize, basis_dim: usize) -> Result<()> {
    if p.modulus() > MAX_DISCRETE_MODULUS {
        return Err(Error::domain(
            "discrete_completeness",
            format!("|zeta| = {} exceeds {MAX_DISCRETE_MODULUS}", p.modulus()),
        ));
    }
    if m_cutoff > MAX_DISCRETE_CUTOFF {
        return Err(Error::domain(
            "discrete_completeness",
            format!("m_cutoff = {m_cutoff} exceeds {MAX_DISCRETE_CUTOFF}"),
        ));
    }
    if basis_dim == 0 {
        return Err(Error::domain(
            "discrete_completeness",
            "basis_dim must be positive",
        ));
    }
    Ok(())
}

/// The truncated sum restricted to the first `basis_dim` Fock states.
pub fn discrete_completeness_matrix(
    p: &SqueezeParam,
    m_cutoff: usize,
    basis_dim: usize,
) -> Result<OperatorMatrix> {
    Ok(discrete_completeness(p, m_cutoff, basis_dim)?.square())
}

/// Assemble the sum over `m ≤ n ≤ m_cutoff` (`n - m` even) from the closed
/// coefficients
/// `G_{mn} = (1-y)^{-1/2} [(n!/m!) P_m(x) P_n(x)]^{1/2} P^{(m-n)/2}_{(m+n)/2}(x) (-e^{-iφ})^{(n-m)/2}`,
/// `x = (1-y)^{-1/2}`, `G_{nm} = conj(G_{mn})`, and compare it with the
/// expansion `Σ_j |j,ζ⟩⟨j,ζ|` of squeezed number states in the same
/// vectors.
pub fn discrete_completeness(
    p: &SqueezeParam,
    m_cutoff: usize,
    basis_dim: usize,
) -> Result<DiscreteCompleteness> {
    validate(p, m_cutoff, basis_dim)?;
    let states = (0..=m_cutoff)
        .map(|m| pasvs(p, m, STATE_EPS))
        .collect::<Result<Vec<_>>>()?;
    let rows = states
        .iter()
        .filter_map(|v| v.top())
        .max()
        .unwrap_or(0)
        .max(basis_dim - 1)
        + 1;
    let n_states = m_cutoff + 1;
    let vecs = DMatrix::from_fn(rows, n_states, |i, m| states[m].get(i));
    let top_rows = vecs.rows(0, basis_dim.min(rows)).adjoint();

    let literal = coefficient_matrix(n_states, |m, n| literal_coefficient(p, m, n))?;
    let reference = coefficient_matrix(n_states, |m, n| Ok(reference_coefficient(p, m, n)))?;
    let column_block = &vecs * &literal * &top_rows;
    let reference_block = &vecs * &reference * &top_rows;

    let mut column_deviation: f64 = 0.0;
    let mut reference_difference: f64 = 0.0;
    for i in 0..rows {
        for j in 0..basis_dim {
            let target = if i == j { 1.0 } else { 0.0 };
            column_deviation = column_deviation.max((column_block[(i, j)] - target).norm());
            reference_difference =
                reference_difference.max((column_block[(i, j)] - reference_block[(i, j)]).norm());
        }
    }
    Ok(DiscreteCompleteness {
        m_cutoff,
        column_block,
        reference_block,
        column_deviation,
        reference_difference,
    })
}

/// Hermitian matrix with `f(m, n)` on and above the diagonal for `n - m`
/// even, zero for odd differences.
fn coefficient_matrix<F>(n: usize, mut f: F) -> Result<DMatrix<Complex64>>
where
    F: FnMut(usize, usize) -> Result<Complex64>,
{
    let mut g = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for m in 0..n {
        for k in (m..n).step_by(2) {
            let v = f(m, k)?;
            g[(m, k)] = v;
            g[(k, m)] = v.conj();
        }
    }
    Ok(g)
}

fn literal_coefficient(p: &SqueezeParam, m: usize, n: usize) -> Result<Complex64> {
    let s = p.s();
    let d = (n - m) / 2;
    // P_k(1/s) = s^{-k} p_k(s)
    let log_pm = legendre_p_homogeneous(m as u32, s).ln() - m as f64 * s.ln();
    let log_pn = legendre_p_homogeneous(n as u32, s).ln() - n as f64 * s.ln();
    let assoc = legendre_p_assoc(-(d as i32), ((m + n) / 2) as u32, 1.0 / s)?;
    let mag = (-s.ln()
        + 0.5 * (log_factorial(n as u64) - log_factorial(m as u64) + log_pm + log_pn))
        .exp()
        * assoc;
    let phase = Complex64::from_polar(1.0, -p.phi()) * -1.0;
    Ok(phase.powu(d as u32) * mag)
}

/// `Σ_j B_{jm} conj(B_{jn})`, `B_{jk}` the coefficient of `|ζ,k⟩` in
/// `S(ζ)|j⟩`, summed until the terms are negligible.
fn reference_coefficient(p: &SqueezeParam, m: usize, n: usize) -> Complex64 {
    let log_r = p.modulus().ln();
    let unit = if p.modulus() > 0.0 {
        -p.zeta().conj() / p.modulus()
    } else {
        Complex64::new(-1.0, 0.0)
    };
    let log_b = |j: usize, k: usize| {
        0.5 * (log_factorial(j as u64) - log_factorial(k as u64))
            + 0.5 * legendre_p_homogeneous(k as u32, p.s()).ln()
            - log_double_factorial((j - k) as i32)
    };
    let mut sum = Complex64::new(0.0, 0.0);
    let mut stop = SeriesStop::default();
    for j in (n..n + 2 * MAX_REFERENCE_TERMS).step_by(2) {
        let (a, b) = ((j - m) / 2, (j - n) / 2);
        let log_mag = log_b(j, m) + log_b(j, n) + (a + b) as f64 * log_r;
        let term = if log_mag.is_finite() {
            unit.powu(a as u32) * unit.conj().powu(b as u32) * log_mag.exp()
        } else if a + b == 0 {
            // ζ = 0 and j = m = n
            unit.powu(0) * (log_b(j, m) + log_b(j, n)).exp()
        } else {
            Complex64::new(0.0, 0.0)
        };
        sum += term;
        if p.modulus() == 0.0 || stop.done(term.norm(), sum.norm()) {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_squeeze_is_identity() {
        let p = SqueezeParam::real(0.0).unwrap();
        let d = discrete_completeness(&p, 10, 8).unwrap();
        assert!(d.column_deviation < 1e-15);
        assert!(d.reference_difference < 1e-15);
    }

    #[test]
    fn literal_matches_reference() {
        for &(r, phi) in &[(0.3, 0.0), (0.3, 1.1), (0.5, -2.5), (0.1, 3.0)] {
            let p = SqueezeParam::from_polar(r, phi).unwrap();
            let d = discrete_completeness(&p, 20, 8).unwrap();
            assert!(
                d.reference_difference < 1e-9,
                "r={r} phi={phi}: {}",
                d.reference_difference
            );
            assert!(d.square().hermiticity_error() < 1e-12);
        }
    }

    #[test]
    fn converges_with_cutoff() {
        let p = SqueezeParam::from_polar(0.3, 0.7).unwrap();
        let devs: Vec<f64> = [10, 20, 40]
            .iter()
            .map(|&c| discrete_completeness(&p, c, 8).unwrap().column_deviation)
            .collect();
        assert!(devs[0] > devs[1] && devs[1] > devs[2], "{devs:?}");
        assert!(devs[2] < 1e-3);
    }

    #[test]
    fn square_block_exact_once_basis_covered() {
        let p = SqueezeParam::from_polar(0.4, 0.2).unwrap();
        let m = discrete_completeness_matrix(&p, 12, 8).unwrap();
        assert!(m.max_deviation_from_identity() < 1e-10);
    }

    #[test]
    fn domain() {
        let p = SqueezeParam::real(0.6).unwrap();
        assert!(discrete_completeness(&p, 10, 4).is_err());
        let p = SqueezeParam::real(0.3).unwrap();
        assert!(discrete_completeness(&p, 81, 4).is_err());
        assert!(discrete_completeness(&p, 10, 0).is_err());
    }
}
