//! Truncated resolution-of-unity matrices `∫ dρ |ψ⟩⟨ψ|`.
//!
//! Coefficients of every family carry the phase `e^{ikφ}` on their `k`-th
//! basis state, so the angular integral factorizes off the radial one.
//! The radial integrals are done by double-exponential quadrature for all
//! index pairs at once; the angular factor is the trapezoid rule on enough
//! equally spaced nodes to be exact for every frequency present.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::basis::MAX_BASIS_DIM;
use super::weights::{h1m_split, h_closed, log_hmum_from_root};
use super::{OperatorMatrix, WeightFunction};
use crate::error::{Error, Result};
use crate::overlap::{log_pasops_norm_gap, log_pasvs_norm_gap};
use crate::specfun::quad::{exp_sinh_vec, tanh_sinh_vec, QuadSettings, QuadVecResult};
use crate::specfun::{log_add_exp, log_factorial};

/// `∫ dρ |ψ⟩⟨ψ|` for the family's states, restricted to the first
/// `basis_dim` states `|offset + k·stride⟩` of the subspace they span.
///
/// The measure is the family's normalized-state density (norm times weight
/// function), so an exact resolution gives the identity matrix.
pub fn unity_resolution_matrix(
    family: &WeightFunction,
    basis_dim: usize,
    quad: &QuadSettings,
) -> Result<OperatorMatrix> {
    family.validate()?;
    if basis_dim == 0 || basis_dim > MAX_BASIS_DIM {
        return Err(Error::domain(
            "unity_resolution_matrix",
            format!("basis_dim = {basis_dim} outside 1..={MAX_BASIS_DIM}"),
        ));
    }
    let pairs: Vec<(usize, usize)> = (0..basis_dim)
        .flat_map(|k| (k..basis_dim).map(move |l| (k, l)))
        .collect();
    let radial = radial_integrals(family, basis_dim, &pairs, quad)?;
    if !radial.converged {
        return Err(Error::NoConvergence {
            func: "unity_resolution_matrix",
            work: radial.nodes,
            estimate: radial.est_error,
        });
    }
    let angular = angular_factors(basis_dim, family.stride());
    let mut entries = DMatrix::from_element(basis_dim, basis_dim, Complex64::new(0.0, 0.0));
    for (&(k, l), &r) in pairs.iter().zip(&radial.values) {
        // d²ζ = ½ dy dφ
        let v = angular[l - k].conj() * (0.5 * r);
        entries[(k, l)] = v;
        entries[(l, k)] = v.conj();
    }
    Ok(OperatorMatrix {
        basis_offset: family.offset(),
        basis_stride: family.stride(),
        entries,
    })
}

/// `A_d = Σ_j e^{i d φ_j} · 2π/M` on `M = 2·dim·stride + 1` nodes.
fn angular_factors(dim: usize, stride: usize) -> Vec<Complex64> {
    let nodes = 2 * dim * stride + 1;
    let w = 2.0 * PI / nodes as f64;
    (0..dim)
        .map(|d| {
            let (mut re, mut im) = (0.0, 0.0);
            for j in 0..nodes {
                let phi = w * j as f64 * d as f64;
                re += phi.cos();
                im += phi.sin();
            }
            Complex64::new(re * w, im * w)
        })
        .collect()
}

fn radial_integrals(
    family: &WeightFunction,
    dim: usize,
    pairs: &[(usize, usize)],
    quad: &QuadSettings,
) -> Result<QuadVecResult> {
    let mut log_c = vec![0.0; dim];
    let fill = |log_density: f64, log_c: &[f64], out: &mut [f64]| {
        for (o, &(k, l)) in out.iter_mut().zip(pairs) {
            *o = (log_density + log_c[k] + log_c[l]).exp();
        }
    };
    match *family {
        WeightFunction::Pasvs { m } | WeightFunction::Pasops { m } => {
            let one_photon = matches!(family, WeightFunction::Pasops { .. });
            Ok(tanh_sinh_vec(
                |y, _, gap, out| {
                    let (log_norm, h, top, gap_power) = if one_photon {
                        (
                            log_pasops_norm_gap(m, gap),
                            h1m_split(m, y, gap),
                            m as u64 + 1,
                            1.5,
                        )
                    } else {
                        (
                            log_pasvs_norm_gap(m, gap),
                            h_closed(m, y, gap),
                            m as u64,
                            0.5,
                        )
                    };
                    let log_density = log_norm - gap_power * gap.ln() + h.ln();
                    squeezed_log_coeffs(log_norm, top, gap_power, y, gap, &mut log_c);
                    fill(log_density, &log_c, out);
                },
                pairs.len(),
                0.0,
                1.0,
                quad,
            ))
        }
        WeightFunction::Pacsc { lambda, mu, m } => {
            let l = lambda as f64;
            let reach = 4.0 * (l * (dim as f64 + 1.0) + (m + mu) as f64) + 800.0;
            let mut failure = None;
            let r = exp_sinh_vec(
                |r, out| {
                    if l * r > reach {
                        out.fill(0.0);
                        return;
                    }
                    let log_h = match log_hmum_from_root(lambda, mu, m, r) {
                        Ok(v) => v,
                        Err(e) => {
                            failure.get_or_insert(e);
                            out.fill(0.0);
                            return;
                        }
                    };
                    // |z|² = λ^λ r^λ; d|z|² = λ^{λ+1} r^{λ-1} dr
                    let log_x = l * (l.ln() + r.ln());
                    let log_jacobian = (l + 1.0) * l.ln() + (l - 1.0) * r.ln();
                    let log_s = circle_log_sum(lambda, mu, m, log_x);
                    for (k, c) in log_c.iter_mut().enumerate() {
                        let n = k as u64 * lambda as u64 + mu as u64;
                        *c = 0.5 * k as f64 * log_x + 0.5 * log_factorial(n + m as u64)
                            - log_factorial(n)
                            - 0.5 * log_s;
                    }
                    fill(log_s + log_h + log_jacobian, &log_c, out);
                },
                pairs.len(),
                quad,
            );
            match failure {
                Some(e) => Err(e),
                None => Ok(r),
            }
        }
    }
}

/// `ln|c_k|` for a normalized squeezed-family state of modulus² `y`:
/// `|c_k| = [top!/N]^{1/2} (1-y)^{p/2} (√y/2)^k Π_{j<k} √((2j+top+1)(2j+top+2))/(j+1)`
/// with `p = ½` (vacuum, `top = m`) or `3/2` (one photon, `top = m + 1`).
fn squeezed_log_coeffs(log_norm: f64, top: u64, gap_power: f64, y: f64, gap: f64, out: &mut [f64]) {
    let t = top as f64;
    let mut c = -0.5 * log_norm + 0.5 * gap_power * gap.ln() + 0.5 * log_factorial(top);
    let step = 0.5 * y.ln() - 2f64.ln();
    for (k, o) in out.iter_mut().enumerate() {
        *o = c;
        let kf = k as f64;
        c += step + 0.5 * ((2.0 * kf + t + 1.0) * (2.0 * kf + t + 2.0)).ln() - (kf + 1.0).ln();
    }
}

/// `ln Σ_j |z|^{2j} (jλ+μ+m)! / ((jλ+μ)!)²`, the squared norm of the
/// unnormalized photon-added circle state (equal to `N_{μm} N_μ / μ!`).
fn circle_log_sum(lambda: u32, mu: u32, m: u32, log_x: f64) -> f64 {
    let mut total = f64::NEG_INFINITY;
    let mut prev = f64::NEG_INFINITY;
    for j in 0u64.. {
        let n = j * lambda as u64 + mu as u64;
        let t = j as f64 * log_x + log_factorial(n + m as u64) - 2.0 * log_factorial(n);
        total = log_add_exp(total, t);
        if t < prev && t < total - 40.0 {
            break;
        }
        prev = t;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockstate::{pacsc, pasops, pasvs, CircleParam, SqueezeParam, DEFAULT_EPS};
    use crate::overlap::{csc_norm, pacsc_norm};

    #[test]
    fn squeezed_coefficients_match_states() {
        let p = SqueezeParam::from_polar(0.6, 0.3).unwrap();
        let (y, g) = (p.y(), p.one_minus_y());
        let mut log_c = vec![0.0; 6];
        for m in 0..4u32 {
            let v = pasvs(&p, m as usize, DEFAULT_EPS).unwrap();
            squeezed_log_coeffs(log_pasvs_norm_gap(m, g), m as u64, 0.5, y, g, &mut log_c);
            for (k, &lc) in log_c.iter().enumerate() {
                let want = v.coeffs()[k].norm().ln();
                assert!((lc - want).abs() < 1e-12, "m={m} k={k}");
            }
            let v = pasops(&p, m as usize, DEFAULT_EPS).unwrap();
            squeezed_log_coeffs(
                log_pasops_norm_gap(m, g),
                m as u64 + 1,
                1.5,
                y,
                g,
                &mut log_c,
            );
            for (k, &lc) in log_c.iter().enumerate() {
                assert!((lc - v.coeffs()[k].norm().ln()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn circle_sum_matches_norms() {
        for &(lambda, mu, m) in &[(1u32, 0u32, 1u32), (2, 1, 2), (3, 2, 2), (2, 0, 0)] {
            for &z in &[0.3f64, 1.5, 6.0] {
                let p = CircleParam::new(Complex64::new(z, 0.0), lambda, mu).unwrap();
                let want = pacsc_norm(&p, m).unwrap().ln() + csc_norm(&p).unwrap().ln()
                    - log_factorial(mu as u64);
                let got = circle_log_sum(lambda, mu, m, 2.0 * z.ln());
                assert!((got - want).abs() < 1e-12 * want.abs().max(1.0));
                let v = pacsc(&p, m as usize, DEFAULT_EPS).unwrap();
                let n = mu as u64;
                let c0 = 0.5 * log_factorial(n + m as u64) - log_factorial(n) - 0.5 * got;
                assert!((c0 - v.coeffs()[0].norm().ln()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn angular_factors_select_diagonal() {
        let a = angular_factors(12, 3);
        assert!((a[0].re - 2.0 * PI).abs() < 1e-13);
        for d in a.iter().skip(1) {
            assert!(d.norm() < 1e-12);
        }
    }

    fn check(family: WeightFunction, dim: usize) {
        let u = unity_resolution_matrix(&family, dim, &QuadSettings::default()).unwrap();
        assert!(
            u.max_diagonal_deviation() < 1e-6,
            "{family:?} {}",
            u.max_diagonal_deviation()
        );
        assert!(
            u.max_off_diagonal() < 1e-10,
            "{family:?} {}",
            u.max_off_diagonal()
        );
        assert!(u.hermiticity_error() < 1e-12);
        assert_eq!(u.basis_offset, family.offset());
    }

    #[test]
    fn squeezed_resolutions() {
        for m in 1..=4 {
            check(WeightFunction::pasvs(m).unwrap(), 12);
        }
        for m in 0..=3 {
            check(WeightFunction::pasops(m).unwrap(), 12);
        }
    }

    #[test]
    fn circle_resolutions() {
        for &(lambda, mu, m) in &[(1, 0, 1), (2, 0, 2), (2, 1, 1), (3, 2, 2), (2, 1, 2)] {
            check(WeightFunction::pacsc(lambda, mu, m).unwrap(), 12);
        }
    }

    #[test]
    fn rejects_large_basis() {
        let w = WeightFunction::pasvs(1).unwrap();
        assert!(unity_resolution_matrix(&w, 65, &QuadSettings::default()).is_err());
        assert!(unity_resolution_matrix(&w, 0, &QuadSettings::default()).is_err());
    }
}
