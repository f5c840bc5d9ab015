//! Verification suites. Each runs a grid of checks and returns an
//! envelope whose verdict compares the worst error with a tolerance.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_4;

use fockres::complete::{
    carleman_sequence, discrete_completeness, moment_check, pasvs_sns_matrix, sns_pasvs_matrix,
    unity_resolution_matrix, weight_h, WeightForm, WeightFunction,
};
use fockres::fockstate::{csc, inner, pasvs, sns, DEFAULT_EPS};
use fockres::overlap::{
    csc_norm_form, pacsc_norm_form, pasops_norm, pasops_overlap_form, pasvs_norm,
    pasvs_overlap_form, CscNormForm, OverlapForm, PacscNormForm, PasopsForm,
};
use fockres::{CircleParam, Complex64, FockVector, QuadSettings, SqueezeParam};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::{json_f64, Cell, ReportEnvelope, Table};
use crate::series::{csc_norm_series, pacsc_norm_series, pasops_norm_series, pasvs_norm_series};
use crate::CliError;

/// An envelope plus the column holding each row's error, used to name the
/// worst entry when a suite fails.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub envelope: ReportEnvelope,
    pub error_column: &'static str,
}

impl Outcome {
    /// `column=value` description of the row with the largest error.
    pub fn worst_entry(&self) -> Option<String> {
        let t = &self.envelope.results;
        let col = t.column(self.error_column)?;
        let key = |row: &Vec<Cell>| match row[col] {
            Cell::Float(x) if x.is_nan() => f64::INFINITY,
            Cell::Float(x) => x,
            _ => f64::NEG_INFINITY,
        };
        let row = t.rows.iter().max_by(|a, b| key(a).total_cmp(&key(b)))?;
        Some(
            t.columns
                .iter()
                .zip(row)
                .map(|(c, v)| match v {
                    Cell::Float(x) => format!("{c}={x:e}"),
                    Cell::Int(i) => format!("{c}={i}"),
                    Cell::Text(s) => format!("{c}={s}"),
                    Cell::Bool(b) => format!("{c}={b}"),
                })
                .collect::<Vec<_>>()
                .join(" "),
        )
    }
}

/// `max` that treats NaN as infinitely bad.
fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values
        .into_iter()
        .map(|x| if x.is_nan() { f64::INFINITY } else { x })
        .fold(0.0, f64::max)
}

fn family_cells(w: &WeightFunction) -> Vec<Cell> {
    match *w {
        WeightFunction::Pasvs { m } => vec!["pasvs".into(), m.into(), Cell::Int(0), Cell::Int(0)],
        WeightFunction::Pasops { m } => vec!["pasops".into(), m.into(), Cell::Int(0), Cell::Int(0)],
        WeightFunction::Pacsc { lambda, mu, m } => {
            vec!["pacsc".into(), m.into(), mu.into(), lambda.into()]
        }
    }
}

fn family_json(ws: &[WeightFunction]) -> Value {
    serde_json::to_value(ws).expect("families serialize")
}

// ---------------------------------------------------------------- moments

/// Moment identities for a set of families.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentsParams {
    /// Each family with its largest moment index.
    pub families: Vec<(WeightFunction, u32)>,
}

impl Default for MomentsParams {
    fn default() -> Self {
        let mut families = Vec::new();
        for m in 1..=6 {
            families.push((WeightFunction::Pasvs { m }, 10));
        }
        for m in 0..=5 {
            families.push((WeightFunction::Pasops { m }, 10));
        }
        for (lambda, mu) in [(1, 0), (2, 0), (2, 1), (3, 2)] {
            for m in 0..=4 {
                families.push((WeightFunction::Pacsc { lambda, mu, m }, 8));
            }
        }
        MomentsParams { families }
    }
}

pub const MOMENTS_TOL: f64 = 1e-8;

pub fn moments(p: &MomentsParams, tol: Option<f64>) -> Result<Outcome, CliError> {
    let tol = tol.unwrap_or(MOMENTS_TOL);
    for (w, _) in &p.families {
        w.validate()?;
    }
    let quad = QuadSettings::default();
    let reports = p
        .families
        .par_iter()
        .map(|(w, kmax)| moment_check(w, *kmax, &quad).map(|r| (w, r)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&[
        "family",
        "m",
        "mu",
        "lambda",
        "k",
        "lhs",
        "rhs",
        "abs_err",
        "rel_err",
        "nodes",
        "converged",
    ]);
    let mut all_converged = true;
    for (w, rs) in &reports {
        for r in rs {
            all_converged &= r.converged;
            let mut row = family_cells(w);
            row.extend([
                r.k.into(),
                r.lhs.into(),
                r.rhs.into(),
                r.abs_err.into(),
                r.rel_err.into(),
                r.nodes_used.into(),
                r.converged.into(),
            ]);
            t.push(row);
        }
    }
    let max_error = worst(
        reports
            .iter()
            .flat_map(|(_, rs)| rs.iter().map(|r| r.rel_err)),
    );
    let mut params = BTreeMap::new();
    let fams: Vec<WeightFunction> = p.families.iter().map(|(w, _)| *w).collect();
    params.insert("families".into(), family_json(&fams));
    params.insert(
        "kmax".into(),
        json!(p.families.iter().map(|(_, k)| *k).collect::<Vec<_>>()),
    );
    Ok(Outcome {
        envelope: ReportEnvelope::new("verify moments", params, t, max_error, tol, all_converged),
        error_column: "rel_err",
    })
}

// ---------------------------------------------------------------- weights

/// Agreement of the three forms of `h_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightsParams {
    pub ms: Vec<u32>,
    pub ys: Vec<f64>,
}

impl Default for WeightsParams {
    fn default() -> Self {
        WeightsParams {
            ms: (2..=8).collect(),
            ys: (1..=9).map(|i| i as f64 / 10.0).collect(),
        }
    }
}

pub const WEIGHTS_TOL: f64 = 1e-8;

pub fn weights(p: &WeightsParams, tol: Option<f64>) -> Result<Outcome, CliError> {
    let tol = tol.unwrap_or(WEIGHTS_TOL);
    if p.ms.iter().any(|&m| m < 2) {
        return Err(CliError::Usage(
            "weight form comparison needs m >= 2".into(),
        ));
    }
    let points: Vec<(u32, f64)> =
        p.ms.iter()
            .flat_map(|&m| p.ys.iter().map(move |&y| (m, y)))
            .collect();
    let rows = points
        .par_iter()
        .map(|&(m, y)| -> Result<(u32, f64, [f64; 3]), CliError> {
            Ok((
                m,
                y,
                [
                    weight_h(m, y, WeightForm::Closed)?,
                    weight_h(m, y, WeightForm::Hypergeometric)?,
                    weight_h(m, y, WeightForm::Integral)?,
                ],
            ))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&[
        "m",
        "y",
        "closed",
        "hypergeometric",
        "integral",
        "rel_spread",
    ]);
    let mut spreads = Vec::new();
    for (m, y, v) in rows {
        let spread = worst([
            (v[0] - v[1]).abs(),
            (v[0] - v[2]).abs(),
            (v[1] - v[2]).abs(),
        ]) / v[0];
        spreads.push(spread);
        t.push(vec![
            m.into(),
            y.into(),
            v[0].into(),
            v[1].into(),
            v[2].into(),
            spread.into(),
        ]);
    }
    let mut params = BTreeMap::new();
    params.insert("m".into(), json!(p.ms));
    params.insert("y".into(), json!(p.ys));
    Ok(Outcome {
        envelope: ReportEnvelope::new("verify weights", params, t, worst(spreads), tol, true),
        error_column: "rel_spread",
    })
}

// ---------------------------------------------------------------- unity

/// Truncated resolution-of-unity matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct UnityParams {
    pub families: Vec<WeightFunction>,
    pub dim: usize,
}

impl Default for UnityParams {
    fn default() -> Self {
        let mut families: Vec<WeightFunction> =
            (1..=4).map(|m| WeightFunction::Pasvs { m }).collect();
        families.extend((0..=3).map(|m| WeightFunction::Pasops { m }));
        for (lambda, mu, m) in [(1, 0, 1), (2, 0, 2), (2, 1, 1), (3, 2, 2)] {
            families.push(WeightFunction::Pacsc { lambda, mu, m });
        }
        UnityParams { families, dim: 12 }
    }
}

pub const UNITY_TOL: f64 = 1e-6;
/// Bound on off-diagonal entries, fixed by the exactness of the angular rule.
pub const UNITY_OFFDIAG_TOL: f64 = 1e-10;
/// Bound on `max |A - A†|`.
pub const HERMITICITY_TOL: f64 = 1e-12;

pub fn unity(p: &UnityParams, tol: Option<f64>) -> Result<Outcome, CliError> {
    let tol = tol.unwrap_or(UNITY_TOL);
    for w in &p.families {
        w.validate()?;
    }
    let quad = QuadSettings::default();
    let mats = p
        .families
        .par_iter()
        .map(|w| unity_resolution_matrix(w, p.dim, &quad))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&[
        "family",
        "m",
        "mu",
        "lambda",
        "dim",
        "max_deviation",
        "max_diagonal_deviation",
        "max_off_diagonal",
        "hermiticity_error",
    ]);
    let mut ok = true;
    let mut devs = Vec::new();
    for (w, a) in p.families.iter().zip(&mats) {
        let (dev, off, herm) = (
            a.max_deviation_from_identity(),
            a.max_off_diagonal(),
            a.hermiticity_error(),
        );
        ok &= off < UNITY_OFFDIAG_TOL && herm < HERMITICITY_TOL;
        devs.push(dev);
        let mut row = family_cells(w);
        row.extend([
            p.dim.into(),
            dev.into(),
            a.max_diagonal_deviation().into(),
            off.into(),
            herm.into(),
        ]);
        t.push(row);
    }
    let mut params = BTreeMap::new();
    params.insert("families".into(), family_json(&p.families));
    params.insert("dim".into(), json!(p.dim));
    params.insert("offdiag_tol".into(), json_f64(UNITY_OFFDIAG_TOL));
    params.insert("hermiticity_tol".into(), json_f64(HERMITICITY_TOL));
    Ok(Outcome {
        envelope: ReportEnvelope::new("verify unity", params, t, worst(devs), tol, ok),
        error_column: "max_deviation",
    })
}

// ---------------------------------------------------------------- discrete

/// Discrete double-sum identity at increasing cutoffs.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteParams {
    pub zeta: Complex64,
    pub cutoffs: Vec<usize>,
    pub dim: usize,
}

impl Default for DiscreteParams {
    fn default() -> Self {
        DiscreteParams {
            zeta: Complex64::new(0.3, 0.0),
            cutoffs: vec![10, 20, 40],
            dim: 8,
        }
    }
}

pub const DISCRETE_TOL: f64 = 1e-9;

pub fn discrete(p: &DiscreteParams, tol: Option<f64>) -> Result<Outcome, CliError> {
    let tol = tol.unwrap_or(DISCRETE_TOL);
    let sp = SqueezeParam::new(p.zeta)?;
    let runs = p
        .cutoffs
        .par_iter()
        .map(|&c| discrete_completeness(&sp, c, p.dim))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&[
        "m_cutoff",
        "column_deviation",
        "square_deviation",
        "reference_difference",
        "decreasing",
    ]);
    let mut all_decreasing = true;
    for (i, r) in runs.iter().enumerate() {
        let decreasing = i == 0 || r.column_deviation < runs[i - 1].column_deviation;
        all_decreasing &= decreasing;
        t.push(vec![
            r.m_cutoff.into(),
            r.column_deviation.into(),
            r.square().max_deviation_from_identity().into(),
            r.reference_difference.into(),
            decreasing.into(),
        ]);
    }
    let max_error = worst(runs.iter().map(|r| r.reference_difference));
    let mut params = BTreeMap::new();
    params.insert(
        "zeta".into(),
        json!([json_f64(p.zeta.re), json_f64(p.zeta.im)]),
    );
    params.insert("cutoffs".into(), json!(p.cutoffs));
    params.insert("dim".into(), json!(p.dim));
    Ok(Outcome {
        envelope: ReportEnvelope::new("verify discrete", params, t, max_error, tol, all_decreasing),
        error_column: "reference_difference",
    })
}

// ---------------------------------------------------------------- carleman

/// The logarithmic test `ln a_k / ln k → 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CarlemanParams {
    pub ms: Vec<u32>,
    pub ks: Vec<u64>,
    /// The verdict uses rows with `k` at or above this value (or the
    /// largest `k` given, if smaller).
    pub check_k: u64,
}

impl Default for CarlemanParams {
    fn default() -> Self {
        CarlemanParams {
            ms: (1..=4).collect(),
            ks: vec![10, 100, 1000, 10_000],
            check_k: 1000,
        }
    }
}

pub const CARLEMAN_TOL: f64 = 0.01;

pub fn carleman(p: &CarlemanParams, tol: Option<f64>) -> Result<Outcome, CliError> {
    let tol = tol.unwrap_or(CARLEMAN_TOL);
    if p.ks.is_empty() || p.ms.is_empty() {
        return Err(CliError::Usage(
            "carleman needs at least one m and one k".into(),
        ));
    }
    let mut ks = p.ks.clone();
    ks.sort_unstable();
    ks.dedup();
    let threshold = p.check_k.min(*ks.last().expect("nonempty"));
    let mut t = Table::new(&["m", "k", "ln_a_k", "ratio", "checked"]);
    let mut shrinking = true;
    let mut checked = Vec::new();
    for &m in &p.ms {
        let seq = carleman_sequence(m, &ks)?;
        shrinking &= seq.windows(2).all(|w| w[1].ratio.abs() < w[0].ratio.abs());
        for c in seq {
            let is_checked = c.k >= threshold;
            if is_checked {
                checked.push(c.ratio.abs());
            }
            t.push(vec![
                m.into(),
                c.k.into(),
                c.ln_a_k.into(),
                c.ratio.into(),
                is_checked.into(),
            ]);
        }
    }
    let mut params = BTreeMap::new();
    params.insert("m".into(), json!(p.ms));
    params.insert("k".into(), json!(ks));
    params.insert("check_k".into(), json!(threshold));
    Ok(Outcome {
        envelope: ReportEnvelope::new("verify carleman", params, t, worst(checked), tol, shrinking),
        error_column: "ratio",
    })
}

// ---------------------------------------------------------------- overlaps

/// Pairwise agreement of every overlap form with each other and the series.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapsParams {
    pub max_index: u32,
    pub moduli: Vec<f64>,
    /// `(arg ξ, arg ζ)` pairs.
    pub phases: Vec<(f64, f64)>,
}

impl Default for OverlapsParams {
    fn default() -> Self {
        OverlapsParams {
            max_index: 8,
            moduli: vec![0.2, 0.4, 0.6],
            phases: vec![
                (0.0, 0.0),
                (0.3, 1.2),
                (2.5, -2.5),
                (-3.0, 3.0),
                (1.0, -2.0),
                (3.1, -3.1),
                (2.0, 2.9),
                (-2.8, 0.5),
            ],
        }
    }
}

pub const OVERLAPS_TOL: f64 = 1e-9;

fn pairwise_spread(values: &[Complex64]) -> f64 {
    let mut s: f64 = 0.0;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            s = s.max((a - b).norm());
        }
    }
    if values
        .iter()
        .any(|v| !v.re.is_finite() || !v.im.is_finite())
    {
        f64::NAN
    } else {
        s
    }
}

pub fn overlaps(p: &OverlapsParams, tol: Option<f64>) -> Result<Outcome, CliError> {
    let tol = tol.unwrap_or(OVERLAPS_TOL);
    let mut points = Vec::new();
    for family in ["pasvs", "pasops"] {
        for &(px, pz) in &p.phases {
            for &rx in &p.moduli {
                for &rz in &p.moduli {
                    for n in 0..=p.max_index {
                        for m in (n % 2..=p.max_index).step_by(2) {
                            points.push((family, rx, px, rz, pz, n, m));
                        }
                    }
                }
            }
        }
    }
    let rows = points
        .par_iter()
        .map(
            |&(family, rx, px, rz, pz, n, m)| -> Result<(Complex64, f64), CliError> {
                let xi = SqueezeParam::from_polar(rx, px)?;
                let zeta = SqueezeParam::from_polar(rz, pz)?;
                let values: Vec<Complex64> = if family == "pasvs" {
                    [
                        OverlapForm::Hypergeometric,
                        OverlapForm::Terminating,
                        OverlapForm::Legendre,
                        OverlapForm::Series,
                    ]
                    .iter()
                    .map(|&f| {
                        pasvs_overlap_form(&xi, n, &zeta, m, f)
                            .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
                    })
                    .collect()
                } else {
                    [PasopsForm::Legendre, PasopsForm::Bridge, PasopsForm::Series]
                        .iter()
                        .map(|&f| {
                            pasops_overlap_form(&xi, n, &zeta, m, f)
                                .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
                        })
                        .collect()
                };
                Ok((values[0], pairwise_spread(&values)))
            },
        )
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&[
        "family",
        "n",
        "m",
        "xi_abs",
        "xi_arg",
        "zeta_abs",
        "zeta_arg",
        "re",
        "im",
        "max_pairwise",
    ]);
    for (&(family, rx, px, rz, pz, n, m), &(v, spread)) in points.iter().zip(&rows) {
        t.push(vec![
            family.into(),
            n.into(),
            m.into(),
            rx.into(),
            px.into(),
            rz.into(),
            pz.into(),
            v.re.into(),
            v.im.into(),
            spread.into(),
        ]);
    }
    let max_error = worst(rows.iter().map(|r| r.1));
    let mut params = BTreeMap::new();
    params.insert("max_index".into(), json!(p.max_index));
    params.insert("moduli".into(), json!(p.moduli));
    params.insert("phases".into(), json!(p.phases));
    Ok(Outcome {
        envelope: ReportEnvelope::new("verify overlaps", params, t, max_error, tol, true),
        error_column: "max_pairwise",
    })
}

// ---------------------------------------------------------------- norms

/// Closed-form normalizations against brute-force number-basis sums.
#[derive(Debug, Clone, PartialEq)]
pub struct NormsParams {
    pub squeeze_moduli: Vec<f64>,
    pub max_m: u32,
    pub circle_moduli: Vec<f64>,
    pub max_lambda: u32,
    pub max_circle_m: u32,
}

impl Default for NormsParams {
    fn default() -> Self {
        NormsParams {
            squeeze_moduli: vec![0.2, 0.4, 0.6],
            max_m: 8,
            circle_moduli: vec![0.5, 1.0, 2.0, 4.0],
            max_lambda: 4,
            max_circle_m: 4,
        }
    }
}

pub const NORMS_TOL: f64 = 1e-9;

/// One row of the norm comparison.
pub struct NormRow {
    pub family: &'static str,
    pub lambda: u32,
    pub mu: u32,
    pub m: u32,
    pub modulus: f64,
    pub form: &'static str,
    pub value: f64,
    pub reference: f64,
}

impl NormRow {
    pub fn rel_err(&self) -> f64 {
        (self.value - self.reference).abs() / self.reference.abs()
    }
}

/// Norm rows for one squeezed point.
pub fn squeezed_norm_rows(family: &'static str, p: &SqueezeParam, m: u32) -> Vec<NormRow> {
    let (value, reference) = if family == "pasvs" {
        (pasvs_norm(p, m), pasvs_norm_series(p.y(), m))
    } else {
        (pasops_norm(p, m), pasops_norm_series(p.y(), m))
    };
    vec![NormRow {
        family,
        lambda: 0,
        mu: 0,
        m,
        modulus: p.modulus(),
        form: "closed",
        value,
        reference,
    }]
}

/// Norm rows for one circle point: both forms of `N_μ` (when `m` is
/// `None`) or of `N_{μm}`, each against the series, plus their mutual
/// agreement.
pub fn circle_norm_rows(p: &CircleParam, m: Option<u32>) -> Result<Vec<NormRow>, CliError> {
    let (lambda, mu) = (p.lambda(), p.mu());
    let (family, mm, a, b, series, labels) = match m {
        None => (
            "csc",
            0,
            csc_norm_form(p, CscNormForm::Hypergeometric)?,
            csc_norm_form(p, CscNormForm::Hyperbolic)?,
            csc_norm_series(p),
            ["hypergeometric", "hyperbolic"],
        ),
        Some(m) => (
            "pacsc",
            m,
            pacsc_norm_form(p, m, PacscNormForm::Hypergeometric)?,
            pacsc_norm_form(p, m, PacscNormForm::Laguerre)?,
            pacsc_norm_series(p, m),
            ["hypergeometric", "laguerre"],
        ),
    };
    let row = |form, value, reference| NormRow {
        family,
        lambda,
        mu,
        m: mm,
        modulus: p.z().norm(),
        form,
        value,
        reference,
    };
    Ok(vec![
        row(labels[0], a, series),
        row(labels[1], b, series),
        row("mutual", a, b),
    ])
}

pub fn norm_table(rows: &[NormRow]) -> Table {
    let mut t = Table::new(&[
        "family",
        "lambda",
        "mu",
        "m",
        "modulus",
        "form",
        "value",
        "reference",
        "rel_err",
    ]);
    for r in rows {
        t.push(vec![
            r.family.into(),
            r.lambda.into(),
            r.mu.into(),
            r.m.into(),
            r.modulus.into(),
            r.form.into(),
            r.value.into(),
            r.reference.into(),
            r.rel_err().into(),
        ]);
    }
    t
}

pub fn norms(p: &NormsParams, tol: Option<f64>) -> Result<Outcome, CliError> {
    let tol = tol.unwrap_or(NORMS_TOL);
    let mut rows = Vec::new();
    for family in ["pasvs", "pasops"] {
        for &r in &p.squeeze_moduli {
            let sp = SqueezeParam::from_polar(r, 0.9)?;
            for m in 0..=p.max_m {
                rows.extend(squeezed_norm_rows(family, &sp, m));
            }
        }
    }
    let mut circle_points = Vec::new();
    for lambda in 1..=p.max_lambda {
        for mu in 0..lambda {
            for &r in &p.circle_moduli {
                circle_points.push((lambda, mu, r, None));
                for m in 0..=p.max_circle_m {
                    circle_points.push((lambda, mu, r, Some(m)));
                }
            }
        }
    }
    let circle = circle_points
        .par_iter()
        .map(|&(lambda, mu, r, m)| {
            let cp = CircleParam::new(Complex64::from_polar(r, 0.7), lambda, mu)?;
            circle_norm_rows(&cp, m)
        })
        .collect::<Result<Vec<_>, _>>()?;
    rows.extend(circle.into_iter().flatten());
    let max_error = worst(rows.iter().map(NormRow::rel_err));
    let mut params = BTreeMap::new();
    params.insert("squeeze_moduli".into(), json!(p.squeeze_moduli));
    params.insert("max_m".into(), json!(p.max_m));
    params.insert("circle_moduli".into(), json!(p.circle_moduli));
    params.insert("max_lambda".into(), json!(p.max_lambda));
    params.insert("max_circle_m".into(), json!(p.max_circle_m));
    Ok(Outcome {
        envelope: ReportEnvelope::new(
            "verify norms",
            params,
            norm_table(&rows),
            max_error,
            tol,
            true,
        ),
        error_column: "rel_err",
    })
}

// ---------------------------------------------------------------- ladder

/// Structural identities of the state families.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LadderParams;

pub const LADDER_TOL: f64 = 1e-10;
/// Stricter bound for the circle-state eigenvalue relation.
pub const EIGEN_TOL: f64 = 1e-11;
/// Truncation for the structure checks; inner products of truncated
/// vectors are only good to about `√eps`.
const STRUCTURE_EPS: f64 = 1e-26;

/// `max_n |a_n - b_n - c_n|` over photon numbers known in all three.
fn residual(a: &FockVector, b: &FockVector, c: Option<&FockVector>) -> f64 {
    let mut upto = a.known_through().min(b.known_through());
    if let Some(c) = c {
        upto = upto.min(c.known_through());
    }
    (0..=upto)
        .map(|n| (a.get(n) - b.get(n) - c.map_or(Complex64::new(0.0, 0.0), |c| c.get(n))).norm())
        .fold(0.0, f64::max)
}

fn structure_checks() -> Result<Vec<(String, String, f64, f64)>, CliError> {
    let c = |x: f64| Complex64::new(x, 0.0);
    let mut out = Vec::new();

    // (a - ζ a†)|ζ⟩ = 0
    for &(r, phi) in &[(0.2, 0.3), (0.6, -1.0), (0.9, 2.5)] {
        let p = SqueezeParam::from_polar(r, phi)?;
        let v = pasvs(&p, 0, STRUCTURE_EPS)?;
        let e = residual(
            &v.apply_lowering(),
            &v.apply_raising().scaled(p.zeta()),
            None,
        );
        out.push((
            "vacuum_annihilation".into(),
            format!("r={r} phi={phi}"),
            e,
            LADDER_TOL,
        ));
    }

    // a (a†)^m|ζ⟩ = m (a†)^{m-1}|ζ⟩ + ζ (a†)^{m+1}|ζ⟩, relative to ‖(a†)^{m+1}|ζ⟩‖
    for &(r, phi) in &[(0.3, 0.0), (0.6, 1.3)] {
        let p = SqueezeParam::from_polar(r, phi)?;
        let raw = |m: usize| -> Result<FockVector, CliError> {
            Ok(pasvs(&p, m, STRUCTURE_EPS)?.scaled(c(pasvs_norm(&p, m as u32).sqrt())))
        };
        for m in 1..=10usize {
            let scale = pasvs_norm(&p, m as u32 + 1).sqrt();
            let e = residual(
                &raw(m)?.apply_lowering(),
                &raw(m - 1)?.scaled(c(m as f64)),
                Some(&raw(m + 1)?.scaled(p.zeta())),
            ) / scale;
            out.push((
                "photon_added_lowering".into(),
                format!("r={r} phi={phi} m={m}"),
                e,
                LADDER_TOL,
            ));
        }
    }

    // (cosh r a - e^{iφ} sinh r a†) S|m⟩ = √m S|m-1⟩
    let p = SqueezeParam::from_polar(0.5, 0.8)?;
    let (ch, sh) = (p.rapidity().cosh(), p.rapidity().sinh());
    let states: Vec<FockVector> = (0..=12)
        .map(|m| sns(&p, m, STRUCTURE_EPS))
        .collect::<Result<_, _>>()?;
    for m in 1..=10usize {
        let v = &states[m];
        let e = residual(
            &v.apply_lowering().scaled(c(ch)),
            &v.apply_raising().scaled(Complex64::from_polar(sh, p.phi())),
            Some(&states[m - 1].scaled(c((m as f64).sqrt()))),
        );
        out.push((
            "squeezed_number_ladder".into(),
            format!("r=0.5 phi=0.8 m={m}"),
            e,
            LADDER_TOL,
        ));
    }

    // ⟨k,ζ|m,ζ⟩ = δ
    let mut e: f64 = 0.0;
    for (i, u) in states.iter().enumerate() {
        for (j, v) in states.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            e = e.max((inner(u, v) - want).norm());
        }
    }
    out.push((
        "squeezed_number_orthonormality".into(),
        "r=0.5 phi=0.8 m<=12".into(),
        e,
        LADDER_TOL,
    ));

    // a^λ |z,μ⟩ = z |z,μ⟩
    for &(lambda, mu) in &[(1u32, 0u32), (2, 0), (2, 1), (3, 0), (3, 2), (4, 3)] {
        let z = Complex64::new(0.9, -0.7);
        let cp = CircleParam::new(z, lambda, mu)?;
        let v = csc(&cp, DEFAULT_EPS)?;
        let mut w = v.clone();
        for _ in 0..lambda {
            w = w.apply_lowering();
        }
        let e = residual(&w, &v.scaled(z), None);
        out.push((
            "circle_eigenvalue".into(),
            format!("lambda={lambda} mu={mu} z=0.9-0.7i"),
            e,
            EIGEN_TOL,
        ));
    }

    // basis-change matrices are mutual inverses
    let p = SqueezeParam::from_polar(0.5, FRAC_PI_4)?;
    let prod = pasvs_sns_matrix(&p, 12) * sns_pasvs_matrix(&p, 12);
    let mut e: f64 = 0.0;
    for i in 0..12 {
        for j in 0..12 {
            let want = if i == j { 1.0 } else { 0.0 };
            e = e.max((prod[(i, j)] - want).norm());
        }
    }
    out.push((
        "basis_inverse".into(),
        "r=0.5 phi=pi/4 dim=12".into(),
        e,
        LADDER_TOL,
    ));
    Ok(out)
}

pub fn ladder(_p: &LadderParams, tol: Option<f64>) -> Result<Outcome, CliError> {
    let tol = tol.unwrap_or(LADDER_TOL);
    let checks = structure_checks()?;
    let mut t = Table::new(&["identity", "parameters", "error", "bound", "pass"]);
    let mut ok = true;
    for (name, params, e, bound) in &checks {
        let bound = bound.min(tol);
        let pass = *e < bound;
        ok &= pass;
        t.push(vec![
            name.clone().into(),
            params.clone().into(),
            (*e).into(),
            bound.into(),
            pass.into(),
        ]);
    }
    let max_error = worst(checks.iter().map(|c| c.2));
    let mut params = BTreeMap::new();
    params.insert("eigen_tol".into(), json_f64(EIGEN_TOL));
    Ok(Outcome {
        envelope: ReportEnvelope::new("verify ladder", params, t, max_error, tol, ok),
        error_column: "error",
    })
}

// ---------------------------------------------------------------- all

/// Every suite at its default parameters. The summary error is the worst
/// ratio of a suite's error to its tolerance, so the verdict threshold is 1.
pub fn all() -> Result<Outcome, CliError> {
    type Runner = fn() -> Result<Outcome, CliError>;
    let suites: [(&str, Runner); 8] = [
        ("moments", || moments(&MomentsParams::default(), None)),
        ("weights", || weights(&WeightsParams::default(), None)),
        ("unity", || unity(&UnityParams::default(), None)),
        ("discrete", || discrete(&DiscreteParams::default(), None)),
        ("carleman", || carleman(&CarlemanParams::default(), None)),
        ("overlaps", || overlaps(&OverlapsParams::default(), None)),
        ("norms", || norms(&NormsParams::default(), None)),
        ("ladder", || ladder(&LadderParams, None)),
    ];
    let outcomes = suites
        .par_iter()
        .map(|(name, run)| run().map(|o| (*name, o)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&["suite", "rows", "max_error", "tol", "error_ratio", "pass"]);
    let mut ok = true;
    let mut ratios = Vec::new();
    for (name, o) in &outcomes {
        let env = &o.envelope;
        let tol = env.parameters["tol"].as_f64().expect("tol recorded");
        let ratio = env.max_error / tol;
        ok &= env.pass;
        ratios.push(ratio);
        t.push(vec![
            (*name).into(),
            env.results.rows.len().into(),
            env.max_error.into(),
            tol.into(),
            ratio.into(),
            env.pass.into(),
        ]);
    }
    Ok(Outcome {
        envelope: ReportEnvelope::new("verify all", BTreeMap::new(), t, worst(ratios), 1.0, ok),
        error_column: "error_ratio",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nan_counts_as_worst() {
        assert_eq!(worst([1e-3, f64::NAN, 2.0]), f64::INFINITY);
        assert_eq!(worst([1e-3, 2e-3]), 2e-3);
        assert_eq!(worst([]), 0.0);
    }

    #[test]
    fn worst_entry_names_the_row() {
        let o = carleman(
            &CarlemanParams {
                ms: vec![1, 3],
                ks: vec![10],
                check_k: 10,
            },
            None,
        )
        .unwrap();
        assert!(!o.envelope.pass);
        let w = o.worst_entry().unwrap();
        assert!(w.starts_with("m=3 k=10 "), "{w}");
    }

    #[test]
    fn spread_flags_non_finite_values() {
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(pairwise_spread(&[one, one * 1.5, one]), 0.5);
        assert!(pairwise_spread(&[one, Complex64::new(f64::NAN, 0.0)]).is_nan());
    }

    #[test]
    fn norm_rows_for_coherent_state() {
        let p = CircleParam::new(Complex64::new(1.0, 0.0), 1, 0).unwrap();
        let rows = circle_norm_rows(&p, None).unwrap();
        assert_eq!(rows.len(), 3);
        assert!((rows[0].reference - 1f64.exp()).abs() < 1e-14);
        assert!(rows.iter().all(|r| r.rel_err() < 1e-12));
    }
}
