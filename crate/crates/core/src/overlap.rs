//! Normalization coefficients and overlaps in closed form.
//!
//! Each overlap is available in several algebraically equivalent forms and
//! as a brute-force inner product of truncated number-basis expansions. The
//! combined entry points evaluate all of them and report how far apart they
//! are, so a branch or convention slip cannot go unnoticed.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fockstate::{self, CircleParam, FockVector, SqueezeParam};
use crate::specfun::{
    gauss_2f1, generalized_pfq, hyperbolic_order, laguerre_complex, legendre_p_assoc_branch,
    legendre_p_homogeneous, log_factorial,
};

/// Largest `|ξ̄ζ|` accepted by the closed forms.
pub const MAX_CROSS_MODULUS: f64 = 0.9;

/// Closed forms disagreeing (with each other or the series) by more than
/// this are reported as [`Error::BranchMismatch`].
pub const BRANCH_TOL: f64 = 1e-8;

/// Truncation used by the series oracle; far below double-precision
/// relevance so the oracle error is pure rounding.
const ORACLE_EPS: f64 = 1e-24;

/// An overlap together with its internal consistency measures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OverlapResult {
    #[serde(serialize_with = "crate::ser::complex")]
    pub value: Complex64,
    /// Largest pairwise deviation among the closed forms.
    pub form_spread: f64,
    /// Largest deviation of a closed form from the series inner product.
    pub oracle_error: f64,
}

/// ⟨ξ|ζ⟩ for squeezed vacua.
pub fn sv_overlap(xi: &SqueezeParam, zeta: &SqueezeParam) -> Complex64 {
    let q = xi.zeta().conj() * zeta.zeta();
    let one = Complex64::new(1.0, 0.0);
    (one - q).powf(-0.5) * (zeta.one_minus_y() * xi.one_minus_y()).powf(0.25)
}

/// ⟨1,ξ|1,ζ⟩ for squeezed one-photon states.
pub fn sops_overlap(xi: &SqueezeParam, zeta: &SqueezeParam) -> Complex64 {
    let q = xi.zeta().conj() * zeta.zeta();
    let one = Complex64::new(1.0, 0.0);
    (one - q).powf(-1.5) * (zeta.one_minus_y() * xi.one_minus_y()).powf(0.75)
}

/// `ln N_m = ln m! - m ln(1-y) + ln(sᵐ P_m(1/s))`, `s = √(1-y)`.
pub fn log_pasvs_norm(p: &SqueezeParam, m: u32) -> f64 {
    log_pasvs_norm_gap(m, p.one_minus_y())
}

/// [`log_pasvs_norm`] as a function of `1 - y` alone.
pub(crate) fn log_pasvs_norm_gap(m: u32, one_minus_y: f64) -> f64 {
    log_factorial(m as u64) - m as f64 * one_minus_y.ln()
        + legendre_p_homogeneous(m, one_minus_y.sqrt()).ln()
}

/// Squared norm `N_m` of `(a†)^m S(ζ)|0⟩`:
/// `m! (1-y)^{-m/2} P_m((1-y)^{-1/2})`.
pub fn pasvs_norm(p: &SqueezeParam, m: u32) -> f64 {
    log_pasvs_norm(p, m).exp()
}

/// `ln N_{1m}`, with `N_{1m} = (m+1)! (1-y)^{-m} (s^{m+1} P_{m+1}(1/s))`.
pub fn log_pasops_norm(p: &SqueezeParam, m: u32) -> f64 {
    log_pasops_norm_gap(m, p.one_minus_y())
}

/// [`log_pasops_norm`] as a function of `1 - y` alone.
pub(crate) fn log_pasops_norm_gap(m: u32, one_minus_y: f64) -> f64 {
    log_factorial(m as u64 + 1) - m as f64 * one_minus_y.ln()
        + legendre_p_homogeneous(m + 1, one_minus_y.sqrt()).ln()
}

/// Squared norm `N_{1m}` of `(a†)^m S(ζ)|1⟩`:
/// `(m+1)! (1-y)^{-(m-1)/2} P_{m+1}((1-y)^{-1/2})`.
pub fn pasops_norm(p: &SqueezeParam, m: u32) -> f64 {
    log_pasops_norm(p, m).exp()
}

/// The three closed forms of the photon-added squeezed vacuum overlap, plus
/// the number-basis inner product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OverlapForm {
    /// `₂F₁((n+1)/2, (n+2)/2; (n-m)/2+1; ξ̄ζ)`, integer powers only.
    Hypergeometric,
    /// Terminating `₂F₁(-(m-1)/2, -m/2; (n-m)/2+1; ξ̄ζ)` after an Euler transformation.
    Terminating,
    /// Associated Legendre function of argument `(1-ξ̄ζ)^{-1/2}`.
    Legendre,
    /// Inner product of truncated expansions.
    Series,
}

impl OverlapForm {
    pub const CLOSED: [OverlapForm; 3] = [
        OverlapForm::Hypergeometric,
        OverlapForm::Terminating,
        OverlapForm::Legendre,
    ];
}

/// Phases and moduli of `ξ̄`, `ζ`, `q = ξ̄ζ` and `1-q`, with
/// `arg q = arg ξ̄ + arg ζ` kept unwrapped so that fractional powers of the
/// factors combine consistently.
struct CrossArgs {
    q: Complex64,
    abs_xi: f64,
    abs_zeta: f64,
    arg_xi_bar: f64,
    arg_zeta: f64,
    abs_one_minus_q: f64,
    arg_one_minus_q: f64,
}

impl CrossArgs {
    fn new(xi: &SqueezeParam, zeta: &SqueezeParam) -> Self {
        let q = xi.zeta().conj() * zeta.zeta();
        let omq = Complex64::new(1.0, 0.0) - q;
        CrossArgs {
            q,
            abs_xi: xi.modulus(),
            abs_zeta: zeta.modulus(),
            arg_xi_bar: xi.zeta().conj().arg(),
            arg_zeta: zeta.zeta().arg(),
            abs_one_minus_q: omq.norm(),
            arg_one_minus_q: omq.arg(),
        }
    }

    /// `(1-q)^{power}` on the principal branch.
    fn one_minus_q_pow(&self, power: f64) -> Complex64 {
        Complex64::from_polar(
            self.abs_one_minus_q.powf(power),
            self.arg_one_minus_q * power,
        )
    }

    /// `w = (1-q)^{-1/2}` and the matching branch of `(w²-1)^{1/2}`.
    fn legendre_argument(&self) -> (Complex64, Complex64) {
        let w = self.one_minus_q_pow(-0.5);
        let arg_q = self.arg_xi_bar + self.arg_zeta;
        let root = Complex64::from_polar(
            (self.q.norm() / self.abs_one_minus_q).sqrt(),
            0.5 * (arg_q - self.arg_one_minus_q),
        );
        (w, root)
    }

    /// `ξ̄^{-d/2} ζ^{d/2}` with the phases taken from the unwrapped arguments.
    fn quarter_prefactor(&self, d: u32) -> Complex64 {
        let half = d as f64 / 2.0;
        Complex64::from_polar(
            self.abs_xi.powf(-half) * self.abs_zeta.powf(half),
            half * (self.arg_zeta - self.arg_xi_bar),
        )
    }
}

fn check_cross(xi: &SqueezeParam, zeta: &SqueezeParam, func: &'static str) -> Result<()> {
    let q = xi.modulus() * zeta.modulus();
    if q > MAX_CROSS_MODULUS {
        return Err(Error::domain(
            func,
            format!("|conj(xi) zeta| = {q} exceeds {MAX_CROSS_MODULUS}"),
        ));
    }
    Ok(())
}

/// ⟨ξ,n|ζ,m⟩ in the requested form.
///
/// The closed forms are written for `n - m ≥ 0` even; `n < m` is obtained
/// from Hermiticity and odd `n - m` gives zero. The Legendre form is
/// undefined when `ξ̄ζ = 0` and returns a domain error there.
pub fn pasvs_overlap_form(
    xi: &SqueezeParam,
    n: u32,
    zeta: &SqueezeParam,
    m: u32,
    form: OverlapForm,
) -> Result<Complex64> {
    check_cross(xi, zeta, "pasvs_overlap")?;
    if (n + m) % 2 == 1 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if form == OverlapForm::Series {
        return series_overlap(
            fockstate::pasvs(xi, n as usize, ORACLE_EPS)?,
            fockstate::pasvs(zeta, m as usize, ORACLE_EPS)?,
        );
    }
    if n < m {
        return pasvs_overlap_form(zeta, m, xi, n, form).map(|v| v.conj());
    }
    let d = (n - m) / 2;
    let cross = CrossArgs::new(xi, zeta);
    let norm = (-0.5 * (log_pasvs_norm(zeta, m) + log_pasvs_norm(xi, n))).exp();
    let q = cross.q;
    let (nf, mf, df) = (n as f64, m as f64, d as f64);
    match form {
        OverlapForm::Hypergeometric => {
            let pre = norm
                * (zeta.one_minus_y() * xi.one_minus_y()).powf(0.25)
                * (log_factorial(n as u64) - log_factorial(d as u64)).exp();
            let f = gauss_2f1((nf + 1.0) / 2.0, (nf + 2.0) / 2.0, df + 1.0, q)?;
            Ok((zeta.zeta() * 0.5).powu(d) * f * pre)
        }
        OverlapForm::Terminating => {
            let pre = norm * (log_factorial(n as u64) - log_factorial(d as u64)).exp();
            let f = gauss_2f1(-(mf - 1.0) / 2.0, -mf / 2.0, df + 1.0, q)?;
            let euler = (Complex64::new(1.0, 0.0) - q).powi(-((n + m) as i32 / 2));
            Ok(sv_overlap(xi, zeta) * (zeta.zeta() * 0.5).powu(d) * euler * f * pre)
        }
        OverlapForm::Legendre => {
            if q == Complex64::new(0.0, 0.0) {
                return Err(Error::domain(
                    "pasvs_overlap",
                    "Legendre form undefined at conj(xi) zeta = 0",
                ));
            }
            let (w, root) = cross.legendre_argument();
            let p = legendre_p_assoc_branch(-(d as i32), (n + m) / 2, w, root)?;
            let pre = norm * log_factorial(n as u64).exp();
            Ok(sv_overlap(xi, zeta)
                * cross.quarter_prefactor(d)
                * cross.one_minus_q_pow(-(nf + mf) / 4.0)
                * p
                * pre)
        }
        OverlapForm::Series => unreachable!(),
    }
}

/// Inner product of two truncated expansions, renormalized by their own
/// computed norms so the result does not lean on the closed-form `N`.
fn series_overlap(u: FockVector, v: FockVector) -> Result<Complex64> {
    let nu = u.norm_sqr();
    let nv = v.norm_sqr();
    Ok(fockstate::inner(&u, &v) / (nu * nv).sqrt())
}

fn combine(values: &[Complex64], series: Complex64, func: &'static str) -> Result<OverlapResult> {
    let mut spread: f64 = 0.0;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            spread = spread.max((a - b).norm());
        }
    }
    let oracle = values
        .iter()
        .map(|v| (v - series).norm())
        .fold(0.0, f64::max);
    if !(spread <= BRANCH_TOL) || !(oracle <= BRANCH_TOL) {
        return Err(Error::BranchMismatch {
            func,
            spread: spread.max(oracle),
        });
    }
    Ok(OverlapResult {
        value: values[0],
        form_spread: spread,
        oracle_error: oracle,
    })
}

/// ⟨ξ,n|ζ,m⟩ from every available form, cross-checked.
///
/// The value reported is the hypergeometric form. Disagreement above
/// [`BRANCH_TOL`] among forms or with the series is an error.
pub fn pasvs_overlap(
    xi: &SqueezeParam,
    n: u32,
    zeta: &SqueezeParam,
    m: u32,
) -> Result<OverlapResult> {
    let mut values = Vec::with_capacity(3);
    for form in OverlapForm::CLOSED {
        match pasvs_overlap_form(xi, n, zeta, m, form) {
            Ok(v) => values.push(v),
            Err(Error::Domain { .. }) if form == OverlapForm::Legendre => {}
            Err(e) => return Err(e),
        }
    }
    let series = pasvs_overlap_form(xi, n, zeta, m, OverlapForm::Series)?;
    combine(&values, series, "pasvs_overlap")
}

/// Forms of the photon-added squeezed one-photon overlap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PasopsForm {
    /// Associated Legendre closed form.
    Legendre,
    /// Through `|1,ζ,m⟩ = |ζ,m+1⟩` and the hypergeometric PASVS form.
    Bridge,
    Series,
}

/// ⟨1,ξ,n|1,ζ,m⟩ in the requested form.
pub fn pasops_overlap_form(
    xi: &SqueezeParam,
    n: u32,
    zeta: &SqueezeParam,
    m: u32,
    form: PasopsForm,
) -> Result<Complex64> {
    check_cross(xi, zeta, "pasops_overlap")?;
    if (n + m) % 2 == 1 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    match form {
        PasopsForm::Series => series_overlap(
            fockstate::pasops(xi, n as usize, ORACLE_EPS)?,
            fockstate::pasops(zeta, m as usize, ORACLE_EPS)?,
        ),
        PasopsForm::Bridge => {
            pasvs_overlap_form(xi, n + 1, zeta, m + 1, OverlapForm::Hypergeometric)
        }
        PasopsForm::Legendre => {
            if n < m {
                return pasops_overlap_form(zeta, m, xi, n, form).map(|v| v.conj());
            }
            let cross = CrossArgs::new(xi, zeta);
            if cross.q == Complex64::new(0.0, 0.0) {
                return Err(Error::domain(
                    "pasops_overlap",
                    "Legendre form undefined at conj(xi) zeta = 0",
                ));
            }
            let d = (n - m) / 2;
            let (w, root) = cross.legendre_argument();
            let p = legendre_p_assoc_branch(-(d as i32), (n + m + 2) / 2, w, root)?;
            let pre = (-0.5 * (log_pasops_norm(zeta, m) + log_pasops_norm(xi, n))
                + log_factorial(n as u64 + 1))
            .exp();
            Ok(sops_overlap(xi, zeta)
                * cross.quarter_prefactor(d)
                * cross.one_minus_q_pow(-((n + m) as f64 - 2.0) / 4.0)
                * p
                * pre)
        }
    }
}

/// ⟨1,ξ,n|1,ζ,m⟩ from both closed forms, cross-checked against the series.
pub fn pasops_overlap(
    xi: &SqueezeParam,
    n: u32,
    zeta: &SqueezeParam,
    m: u32,
) -> Result<OverlapResult> {
    let mut values = Vec::with_capacity(2);
    for form in [PasopsForm::Legendre, PasopsForm::Bridge] {
        match pasops_overlap_form(xi, n, zeta, m, form) {
            Ok(v) => values.push(v),
            Err(Error::Domain { .. }) if form == PasopsForm::Legendre => {}
            Err(e) => return Err(e),
        }
    }
    let series = pasops_overlap_form(xi, n, zeta, m, PasopsForm::Series)?;
    combine(&values, series, "pasops_overlap")
}

/// Closed forms of the circle-state normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CscNormForm {
    /// `₀F_{λ-1}(; b; |z|²/λ^λ)`.
    Hypergeometric,
    /// `μ! |t|^{-2μ} h_{μ+1}(|t|², λ)`.
    Hyperbolic,
}

/// Lower parameters `{1/λ+1, …, μ/λ+1, (μ+1)/λ, …, (λ-1)/λ}`.
fn circle_lower_params(lambda: u32, mu: u32) -> Vec<f64> {
    let l = lambda as f64;
    (1..lambda)
        .map(|i| {
            if i <= mu {
                i as f64 / l + 1.0
            } else {
                i as f64 / l
            }
        })
        .collect()
}

/// `N_μ(|z|) = Σ_k μ!/(kλ+μ)! |z|^{2k}` in the requested form.
pub fn csc_norm_form(p: &CircleParam, form: CscNormForm) -> Result<f64> {
    if p.z() == Complex64::new(0.0, 0.0) {
        return Ok(1.0);
    }
    let (lambda, mu) = (p.lambda(), p.mu());
    match form {
        CscNormForm::Hypergeometric => {
            generalized_pfq(&[], &circle_lower_params(lambda, mu), p.y())
        }
        CscNormForm::Hyperbolic => {
            let x = p.t_abs_sqr();
            let h = hyperbolic_order(mu + 1, lambda, x);
            Ok((log_factorial(mu as u64) - mu as f64 * x.ln() + h.ln()).exp())
        }
    }
}

/// `N_μ(|z|)`, hypergeometric form.
pub fn csc_norm(p: &CircleParam) -> Result<f64> {
    csc_norm_form(p, CscNormForm::Hypergeometric)
}

/// Closed forms of the photon-added circle-state normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PacscNormForm {
    /// `(m+μ)!/(μ! N_μ) · _λF_{2λ-1}(…; y)`.
    Hypergeometric,
    /// `[λN_μ]^{-1} μ! m! |t|^{-2μ} Σ_ν ε^{-μν} e^{|t|²ε^ν} L_m(-|t|²ε^ν)`.
    Laguerre,
}

/// Relative size of the imaginary part tolerated in the Laguerre form.
pub const LAGUERRE_IMAG_TOL: f64 = 1e-10;

/// `N_{μm}(|z|)` in the requested form.
pub fn pacsc_norm_form(p: &CircleParam, m: u32, form: PacscNormForm) -> Result<f64> {
    let (lambda, mu) = (p.lambda(), p.mu());
    let lead = (log_factorial((m + mu) as u64) - log_factorial(mu as u64)).exp();
    if p.z() == Complex64::new(0.0, 0.0) {
        return Ok(lead);
    }
    let n_mu = csc_norm(p)?;
    match form {
        PacscNormForm::Hypergeometric => {
            let l = lambda as f64;
            let upper: Vec<f64> = (1..=lambda).map(|r| (m + mu + r) as f64 / l).collect();
            let b = circle_lower_params(lambda, mu);
            let mut lower = Vec::with_capacity(2 * b.len() + 1);
            lower.push(1.0);
            lower.extend_from_slice(&b);
            lower.extend_from_slice(&b);
            Ok(lead / n_mu * generalized_pfq(&upper, &lower, p.y())?)
        }
        PacscNormForm::Laguerre => {
            let x = p.t_abs_sqr();
            let mut sum = Complex64::new(0.0, 0.0);
            for nu in 0..lambda {
                let theta = std::f64::consts::TAU * nu as f64 / lambda as f64;
                let e = Complex64::from_polar(1.0, theta);
                let arg = e * x;
                sum += Complex64::from_polar(1.0, -theta * mu as f64)
                    * arg.exp()
                    * laguerre_complex(m, -arg);
            }
            if !(sum.im.abs() <= LAGUERRE_IMAG_TOL * sum.re.abs()) {
                return Err(Error::BranchMismatch {
                    func: "pacsc_norm",
                    spread: sum.im.abs() / sum.re.abs(),
                });
            }
            let pre =
                (log_factorial(mu as u64) + log_factorial(m as u64) - mu as f64 * x.ln()).exp();
            Ok(pre * sum.re / (lambda as f64 * n_mu))
        }
    }
}

/// `N_{μm}(|z|)`, hypergeometric form.
pub fn pacsc_norm(p: &CircleParam, m: u32) -> Result<f64> {
    pacsc_norm_form(p, m, PacscNormForm::Hypergeometric)
}
