//! Truncated number-basis expansions of the squeezed and circle families.
//!
//! Every state lives on a strided subspace `{|offset + k·stride⟩}`. The
//! constructors keep coefficients `c_0..c_K` and bound the discarded squared
//! norm geometrically: the coefficient ratios of every family are known in
//! closed form and monotone in `k`, so `|c_{K+1+j}|² ≤ |c_{K+1}|² ρ^j` with
//! `ρ` the larger of the next ratio and its limit.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::overlap;
use crate::specfun::{double_factorial, legendre_p_homogeneous, log_factorial};

/// Default bound on the discarded squared norm.
pub const DEFAULT_EPS: f64 = 1e-14;

/// Constructors refuse `|ζ|` this close to the unit circle.
pub const MAX_SQUEEZE: f64 = 1.0 - 1e-12;

/// Tolerance of the normalization cross-check performed by constructors.
pub const NORM_CHECK_TOL: f64 = 1e-9;

const MAX_TERMS: usize = 1 << 20;

/// Squeezing label `ζ = tanh(r) e^{iφ}` inside the unit disc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SqueezeParam {
    #[serde(serialize_with = "crate::ser::complex")]
    zeta: Complex64,
}

impl SqueezeParam {
    pub fn new(zeta: Complex64) -> Result<Self> {
        let r = zeta.norm();
        if !(r < 1.0) || !r.is_finite() {
            return Err(Error::domain(
                "SqueezeParam",
                format!("|zeta| = {r} is not below 1"),
            ));
        }
        Ok(SqueezeParam { zeta })
    }

    pub fn real(zeta: f64) -> Result<Self> {
        Self::new(Complex64::new(zeta, 0.0))
    }

    pub fn from_polar(modulus: f64, phase: f64) -> Result<Self> {
        Self::new(Complex64::from_polar(modulus, phase))
    }

    /// From the squeeze-operator argument `z = r e^{iφ}`, `ζ = tanh(r) e^{iφ}`.
    pub fn from_squeeze(z: Complex64) -> Result<Self> {
        Self::from_polar(z.norm().tanh(), z.arg())
    }

    pub fn zeta(&self) -> Complex64 {
        self.zeta
    }

    pub fn modulus(&self) -> f64 {
        self.zeta.norm()
    }

    /// `y = |ζ|²`.
    pub fn y(&self) -> f64 {
        self.zeta.norm_sqr()
    }

    /// `1 - |ζ|²` without cancellation near the unit circle.
    pub fn one_minus_y(&self) -> f64 {
        let r = self.modulus();
        (1.0 - r) * (1.0 + r)
    }

    /// `s = √(1 - |ζ|²)`.
    pub fn s(&self) -> f64 {
        self.one_minus_y().sqrt()
    }

    pub fn phi(&self) -> f64 {
        self.zeta.arg()
    }

    /// `r = atanh|ζ|`.
    pub fn rapidity(&self) -> f64 {
        self.modulus().atanh()
    }
}

/// Label of the circle states: eigenvalue `z` of `a^λ` and residue class `μ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircleParam {
    #[serde(serialize_with = "crate::ser::complex")]
    z: Complex64,
    lambda: u32,
    mu: u32,
}

impl CircleParam {
    pub fn new(z: Complex64, lambda: u32, mu: u32) -> Result<Self> {
        if lambda == 0 {
            return Err(Error::domain("CircleParam", "lambda must be at least 1"));
        }
        if mu >= lambda {
            return Err(Error::domain(
                "CircleParam",
                format!("mu = {mu} must be below lambda = {lambda}"),
            ));
        }
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::domain("CircleParam", "z must be finite"));
        }
        Ok(CircleParam { z, lambda, mu })
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    pub fn mu(&self) -> u32 {
        self.mu
    }

    /// Principal λ-th root `t = |z|^{1/λ} e^{i arg(z)/λ}`.
    pub fn t(&self) -> Complex64 {
        Complex64::from_polar(
            self.z.norm().powf(1.0 / self.lambda as f64),
            self.z.arg() / self.lambda as f64,
        )
    }

    /// `|t|² = |z|^{2/λ}`.
    pub fn t_abs_sqr(&self) -> f64 {
        self.z.norm().powf(2.0 / self.lambda as f64)
    }

    /// `y = |z|²/λ^λ`.
    pub fn y(&self) -> f64 {
        let l = self.lambda as f64;
        (2.0 * self.z.norm().ln() - l * l.ln()).exp()
    }
}

/// Amplitudes `c_k` on `|offset + k·stride⟩`, `k < len`, plus a bound on
/// what was cut off.
///
/// The tail is described by a head `B` and ratio `ρ` with
/// `|c_{len+j}|² ≤ B ρ^j`; [`FockVector::tail_bound`] is `B/(1-ρ)`.
/// Vectors with `B = 0` are exact.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    offset: usize,
    stride: usize,
    coeffs: Vec<Complex64>,
    tail_head: f64,
    tail_ratio: f64,
}

impl FockVector {
    /// Exact vector from explicit amplitudes.
    pub fn from_coeffs(offset: usize, stride: usize, coeffs: Vec<Complex64>) -> Self {
        assert!(stride >= 1, "stride must be positive");
        FockVector {
            offset,
            stride,
            coeffs,
            tail_head: 0.0,
            tail_ratio: 0.0,
        }
    }

    /// The number state `|n⟩`, viewed on the subspace of the given stride.
    pub fn number_state(n: usize, stride: usize) -> Self {
        Self::from_coeffs(n, stride, vec![Complex64::new(1.0, 0.0)])
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Photon number carried by coefficient `k`.
    pub fn photon_number(&self, k: usize) -> usize {
        self.offset + k * self.stride
    }

    /// Highest stored photon number.
    pub fn top(&self) -> Option<usize> {
        self.coeffs
            .len()
            .checked_sub(1)
            .map(|k| self.photon_number(k))
    }

    /// Largest photon number up to which every amplitude is known exactly.
    pub fn known_through(&self) -> usize {
        if self.is_exact() {
            usize::MAX
        } else {
            // first unknown amplitude sits at offset + len·stride
            (self.offset + self.coeffs.len() * self.stride).saturating_sub(1)
        }
    }

    pub fn is_exact(&self) -> bool {
        self.tail_head == 0.0
    }

    /// Upper bound on the squared norm of the discarded amplitudes.
    pub fn tail_bound(&self) -> f64 {
        if self.tail_head == 0.0 {
            0.0
        } else if self.tail_ratio < 1.0 {
            self.tail_head / (1.0 - self.tail_ratio)
        } else {
            f64::INFINITY
        }
    }

    pub fn tail_ratio(&self) -> f64 {
        self.tail_ratio
    }

    /// Amplitude on `|n⟩` (zero off the support or beyond the truncation).
    pub fn get(&self, n: usize) -> Complex64 {
        if n < self.offset || !(n - self.offset).is_multiple_of(self.stride) {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs
            .get((n - self.offset) / self.stride)
            .copied()
            .unwrap_or_default()
    }

    /// `Σ|c_k|²` over stored amplitudes.
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        FockVector {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
            tail_head: self.tail_head * factor.norm_sqr(),
            ..self.clone()
        }
    }

    /// `Σ aᵢ vᵢ` for vectors on the same strided subspace whose truncations
    /// end at the same photon number (or are exact).
    pub fn lincomb(terms: &[(Complex64, &FockVector)]) -> Result<FockVector> {
        let Some(&(_, first)) = terms.first() else {
            return Err(Error::domain("lincomb", "no terms"));
        };
        let stride = first.stride;
        let class = first.offset % stride;
        let mut top: Option<usize> = None;
        for (_, v) in terms {
            if v.stride != stride || v.offset % stride != class {
                return Err(Error::Subspace(first.offset, stride, v.offset, v.stride));
            }
            if !v.is_exact() {
                let t = v.top().unwrap_or(v.offset);
                if top.is_some_and(|old| old != t) {
                    return Err(Error::domain(
                        "lincomb",
                        "truncations end at different photon numbers",
                    ));
                }
                top = Some(t);
            }
        }
        let offset = terms.iter().map(|(_, v)| v.offset).min().unwrap_or(class);
        let top = top.unwrap_or_else(|| {
            terms
                .iter()
                .filter_map(|(_, v)| v.top())
                .max()
                .unwrap_or(offset)
        });
        let len = if top >= offset {
            (top - offset) / stride + 1
        } else {
            0
        };
        let mut coeffs = vec![Complex64::new(0.0, 0.0); len];
        let mut head_root = 0.0;
        let mut ratio: f64 = 0.0;
        for (a, v) in terms {
            for (k, c) in v.coeffs.iter().enumerate() {
                let idx = (v.photon_number(k) - offset) / stride;
                if idx < len {
                    coeffs[idx] += a * c;
                }
            }
            head_root += a.norm() * v.tail_head.sqrt();
            ratio = ratio.max(v.tail_ratio);
        }
        Ok(FockVector {
            offset,
            stride,
            coeffs,
            tail_head: head_root * head_root,
            tail_ratio: ratio,
        })
    }

    /// `a† v`, not renormalized.
    pub fn apply_raising(&self) -> FockVector {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * ((self.photon_number(k) + 1) as f64).sqrt())
            .collect();
        let next = (self.offset + self.coeffs.len() * self.stride) as f64;
        let s = self.stride as f64;
        FockVector {
            offset: self.offset + 1,
            stride: self.stride,
            coeffs,
            tail_head: self.tail_head * (next + 1.0),
            tail_ratio: if self.is_exact() {
                0.0
            } else {
                self.tail_ratio * (next + 1.0 + s) / (next + 1.0)
            },
        }
    }

    /// `a v`, not renormalized.
    pub fn apply_lowering(&self) -> FockVector {
        let (offset, skip) = if self.offset == 0 {
            (self.stride - 1, 1)
        } else {
            (self.offset - 1, 0)
        };
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(skip)
            .map(|(k, c)| c * (self.photon_number(k) as f64).sqrt())
            .collect();
        let next = (self.offset + self.coeffs.len() * self.stride) as f64;
        let s = self.stride as f64;
        FockVector {
            offset,
            stride: self.stride,
            coeffs,
            tail_head: self.tail_head * next,
            tail_ratio: if self.is_exact() {
                0.0
            } else {
                self.tail_ratio * (next + s) / next
            },
        }
    }

    fn check_norm(self, state: &'static str) -> Result<Self> {
        let norm_sqr = self.norm_sqr();
        let tail = self.tail_bound();
        if !((norm_sqr + tail - 1.0).abs() <= NORM_CHECK_TOL) {
            return Err(Error::Normalization {
                state,
                norm_sqr,
                tail,
            });
        }
        Ok(self)
    }
}

/// `Σ ū_n v_n` over photon numbers stored in both vectors.
pub fn inner(u: &FockVector, v: &FockVector) -> Complex64 {
    let (small, large, conj_small) = if u.len() <= v.len() {
        (u, v, true)
    } else {
        (v, u, false)
    };
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, c) in small.coeffs.iter().enumerate() {
        let d = large.get(small.photon_number(k));
        acc += if conj_small {
            c.conj() * d
        } else {
            d.conj() * c
        };
    }
    acc
}

/// Coefficient recursion `c_{k+1} = c_k · factor(k) · step` shared by all
/// families.
struct Series<F: Fn(usize) -> f64> {
    offset: usize,
    stride: usize,
    c0: Complex64,
    step: Complex64,
    factor: F,
    /// Limit of `|c_{k+1}/c_k|²`.
    limit_ratio: f64,
}

impl<F: Fn(usize) -> f64> Series<F> {
    fn ratio(&self, k: usize) -> f64 {
        let f = (self.factor)(k);
        f * f * self.step.norm_sqr()
    }

    /// Number of coefficients needed for a tail below `eps`.
    fn required_len(&self, eps: f64) -> Result<usize> {
        let mut c = self.c0.norm_sqr();
        for k in 0..MAX_TERMS {
            let next = c * self.ratio(k);
            let rho = self.ratio(k + 1).max(self.limit_ratio);
            if rho < 1.0 && next / (1.0 - rho) < eps {
                return Ok(k + 1);
            }
            c = next;
        }
        Err(Error::NoConvergence {
            func: "fock truncation",
            work: MAX_TERMS,
            estimate: c,
        })
    }

    fn build(&self, len: usize) -> FockVector {
        let mut coeffs = Vec::with_capacity(len);
        let mut c = self.c0;
        for k in 0..len {
            coeffs.push(c);
            c *= self.step * (self.factor)(k);
        }
        FockVector {
            offset: self.offset,
            stride: self.stride,
            coeffs,
            tail_head: c.norm_sqr(),
            tail_ratio: self.ratio(len).max(self.limit_ratio),
        }
    }

    fn build_eps(&self, eps: f64) -> Result<FockVector> {
        Ok(self.build(self.required_len(eps)?))
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0) {
        return Err(Error::domain(
            "truncation",
            format!("eps = {eps} must be positive"),
        ));
    }
    Ok(())
}

fn check_squeeze(p: &SqueezeParam) -> Result<()> {
    if p.modulus() >= MAX_SQUEEZE {
        return Err(Error::domain(
            "squeezed state",
            format!(
                "|zeta| = {} too close to 1 for a finite expansion",
                p.modulus()
            ),
        ));
    }
    Ok(())
}

fn pasvs_series(p: &SqueezeParam, m: usize) -> Series<impl Fn(usize) -> f64> {
    let mf = m as f64;
    let log_c0 = -0.5 * overlap::log_pasvs_norm(p, m as u32)
        + 0.25 * p.one_minus_y().ln()
        + 0.5 * log_factorial(m as u64);
    Series {
        offset: m,
        stride: 2,
        c0: Complex64::new(log_c0.exp(), 0.0),
        step: p.zeta() * 0.5,
        factor: move |k| {
            let kf = k as f64;
            ((2.0 * kf + mf + 1.0) * (2.0 * kf + mf + 2.0)).sqrt() / (kf + 1.0)
        },
        limit_ratio: p.y(),
    }
}

fn pasops_series(p: &SqueezeParam, m: usize) -> Series<impl Fn(usize) -> f64> {
    let mf = m as f64;
    let log_c0 = -0.5 * overlap::log_pasops_norm(p, m as u32)
        + 0.75 * p.one_minus_y().ln()
        + 0.5 * log_factorial(m as u64 + 1);
    Series {
        offset: m + 1,
        stride: 2,
        c0: Complex64::new(log_c0.exp(), 0.0),
        step: p.zeta() * 0.5,
        factor: move |k| {
            let kf = k as f64;
            ((2.0 * kf + mf + 2.0) * (2.0 * kf + mf + 3.0)).sqrt() / (kf + 1.0)
        },
        limit_ratio: p.y(),
    }
}

/// Photon-added squeezed vacuum `|ζ, m⟩ ∝ (a†)^m S(ζ)|0⟩`, normalized with
/// the closed-form `N_m`.
pub fn pasvs(p: &SqueezeParam, m: usize, eps: f64) -> Result<FockVector> {
    check_eps(eps)?;
    check_squeeze(p)?;
    if p.zeta() == Complex64::new(0.0, 0.0) {
        return Ok(FockVector::number_state(m, 2));
    }
    pasvs_series(p, m).build_eps(eps)?.check_norm("pasvs")
}

/// Photon-added squeezed one-photon state `∝ (a†)^m S(ζ)|1⟩`.
pub fn pasops(p: &SqueezeParam, m: usize, eps: f64) -> Result<FockVector> {
    check_eps(eps)?;
    check_squeeze(p)?;
    if p.zeta() == Complex64::new(0.0, 0.0) {
        return Ok(FockVector::number_state(m + 1, 2));
    }
    pasops_series(p, m).build_eps(eps)?.check_norm("pasops")
}

/// Coefficient of `|ζ, k⟩` (normalized PASVS) in the squeezed number state
/// `S(ζ)|m⟩`: `√m! · [sᵏP_k(1/s)]^{1/2} (-ζ̄)^{(m-k)/2} / ((m-k)!! √k!)`
/// for `m - k` even and nonnegative, zero otherwise.
pub fn sns_expansion_coeff(p: &SqueezeParam, m: usize, k: usize) -> Complex64 {
    if k > m || !(m - k).is_multiple_of(2) {
        return Complex64::new(0.0, 0.0);
    }
    let j = (m - k) / 2;
    let mag = (0.5 * (log_factorial(m as u64) - log_factorial(k as u64))).exp()
        * legendre_p_homogeneous(k as u32, p.s()).sqrt()
        / double_factorial((m - k) as i32);
    (-p.zeta().conj()).powu(j as u32) * mag
}

/// Squeezed number state `S(ζ)|m⟩`, assembled as a finite combination of
/// photon-added squeezed vacua.
pub fn sns(p: &SqueezeParam, m: usize, eps: f64) -> Result<FockVector> {
    check_eps(eps)?;
    check_squeeze(p)?;
    if p.zeta() == Complex64::new(0.0, 0.0) {
        return Ok(FockVector::number_state(m, 2));
    }
    let ks: Vec<usize> = (m % 2..=m).step_by(2).collect();
    // Truncate every component at the same photon number so the sum has a
    // clean tail bound.
    let mut top = 0;
    for &k in &ks {
        let len = pasvs_series(p, k).required_len(eps)?;
        top = top.max(k + 2 * (len - 1));
    }
    let parts: Vec<FockVector> = ks
        .iter()
        .map(|&k| {
            pasvs_series(p, k)
                .build((top - k) / 2 + 1)
                .check_norm("pasvs")
        })
        .collect::<Result<_>>()?;
    let terms: Vec<(Complex64, &FockVector)> = ks
        .iter()
        .zip(&parts)
        .map(|(&k, v)| (sns_expansion_coeff(p, m, k), v))
        .collect();
    FockVector::lincomb(&terms)?.check_norm("sns")
}

fn circle_factor(lambda: usize, mu: usize) -> impl Fn(usize) -> f64 {
    // √((kλ+μ)!/((k+1)λ+μ)!)
    move |k| {
        let base = k * lambda + mu;
        (1..=lambda)
            .map(|j| 1.0 / ((base + j) as f64).sqrt())
            .product()
    }
}

/// Circle state: eigenvector of `a^λ` with eigenvalue `z` supported on
/// photon numbers `≡ μ (mod λ)`.
pub fn csc(p: &CircleParam, eps: f64) -> Result<FockVector> {
    check_eps(eps)?;
    let (lambda, mu) = (p.lambda() as usize, p.mu() as usize);
    if p.z() == Complex64::new(0.0, 0.0) {
        return Ok(FockVector::number_state(mu, lambda));
    }
    let norm = overlap::csc_norm(p)?;
    Series {
        offset: mu,
        stride: lambda,
        c0: Complex64::new(norm.sqrt().recip(), 0.0),
        step: p.z(),
        factor: circle_factor(lambda, mu),
        limit_ratio: 0.0,
    }
    .build_eps(eps)?
    .check_norm("csc")
}

/// Photon-added circle state `∝ (a†)^m |z, μ⟩`.
pub fn pacsc(p: &CircleParam, m: usize, eps: f64) -> Result<FockVector> {
    check_eps(eps)?;
    let (lambda, mu) = (p.lambda() as usize, p.mu() as usize);
    if p.z() == Complex64::new(0.0, 0.0) {
        return Ok(FockVector::number_state(m + mu, lambda));
    }
    let log_norm = overlap::pacsc_norm(p, m as u32)?.ln() + overlap::csc_norm(p)?.ln();
    let log_c0 =
        -0.5 * log_norm + 0.5 * (log_factorial((m + mu) as u64) - log_factorial(mu as u64));
    Series {
        offset: m + mu,
        stride: lambda,
        c0: Complex64::new(log_c0.exp(), 0.0),
        step: p.z(),
        factor: move |k| {
            let base = k * lambda + mu;
            (1..=lambda)
                .map(|j| ((base + m + j) as f64).sqrt() / (base + j) as f64)
                .product()
        },
        limit_ratio: 0.0,
    }
    .build_eps(eps)?
    .check_norm("pacsc")
}

/// Build a squeezed-family vector with exactly `len` coefficients,
/// normalized by the closed form but without the norm check.
#[cfg(test)]
pub(crate) fn pasvs_with_len(p: &SqueezeParam, m: usize, len: usize) -> FockVector {
    pasvs_series(p, m).build(len)
}
