//! The `state`, `overlap`, `norm` and `weights` commands.

use std::collections::BTreeMap;

use fockres::complete::WeightFunction;
use fockres::fockstate::{csc, pacsc, pasops, pasvs, sns, NORM_CHECK_TOL};
use fockres::overlap::{pasops_overlap_form, pasvs_overlap_form, OverlapForm, PasopsForm};
use fockres::{CircleParam, Complex64, Error, FockVector, SqueezeParam};
use serde_json::{json, Value};

use crate::report::{json_f64, ReportEnvelope, Table};
use crate::suites::{circle_norm_rows, norm_table, squeezed_norm_rows, NormRow, Outcome};
use crate::CliError;

/// State families accepted by `state`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum StateFamily {
    Pasvs,
    Pasops,
    Sns,
    Csc,
    Pacsc,
}

/// Families with a squeeze parameter and closed-form overlaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SqueezedFamily {
    Pasvs,
    Pasops,
}

/// Families with a normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum NormFamily {
    Pasvs,
    Pasops,
    Csc,
    Pacsc,
}

/// Families with a weight function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum WeightFamily {
    Pasvs,
    Pasops,
    Pacsc,
}

fn zeta_json(z: Complex64) -> Value {
    json!([json_f64(z.re), json_f64(z.im)])
}

/// Inputs shared by the state-like commands.
#[derive(Debug, Clone, PartialEq)]
pub struct StateInput {
    pub zeta: Complex64,
    pub z: Complex64,
    pub lambda: u32,
    pub mu: u32,
    pub m: u32,
    pub eps: f64,
}

/// Coefficient table of one state, with a final `tail` row carrying the
/// bound on the omitted squared norm. The error is `|1 - Σ|c_n|²|`.
pub fn state(family: StateFamily, s: &StateInput, tol: Option<f64>) -> Result<Outcome, CliError> {
    let tol = tol.unwrap_or(NORM_CHECK_TOL);
    if !(s.eps > 0.0 && s.eps < 1.0) {
        return Err(CliError::Usage("--eps must lie in (0, 1)".into()));
    }
    let m = s.m as usize;
    let mut params = BTreeMap::new();
    params.insert("family".into(), json!(format!("{family:?}").to_lowercase()));
    params.insert("eps".into(), json_f64(s.eps));
    let v: FockVector = match family {
        StateFamily::Pasvs | StateFamily::Pasops | StateFamily::Sns => {
            let p = SqueezeParam::new(s.zeta)?;
            params.insert("zeta".into(), zeta_json(s.zeta));
            params.insert("m".into(), json!(s.m));
            match family {
                StateFamily::Pasvs => pasvs(&p, m, s.eps)?,
                StateFamily::Pasops => pasops(&p, m, s.eps)?,
                _ => sns(&p, m, s.eps)?,
            }
        }
        StateFamily::Csc | StateFamily::Pacsc => {
            let p = CircleParam::new(s.z, s.lambda, s.mu)?;
            params.insert("z".into(), zeta_json(s.z));
            params.insert("lambda".into(), json!(s.lambda));
            params.insert("mu".into(), json!(s.mu));
            if family == StateFamily::Csc {
                csc(&p, s.eps)?
            } else {
                params.insert("m".into(), json!(s.m));
                pacsc(&p, m, s.eps)?
            }
        }
    };
    let mut t = Table::new(&["n", "re", "im", "abs2"]);
    for (k, c) in v.coeffs().iter().enumerate() {
        t.push(vec![
            v.photon_number(k).into(),
            c.re.into(),
            c.im.into(),
            c.norm_sqr().into(),
        ]);
    }
    let tail = v.tail_bound();
    t.push(vec!["tail".into(), 0.0.into(), 0.0.into(), tail.into()]);
    let max_error = (1.0 - v.norm_sqr()).abs();
    Ok(Outcome {
        envelope: ReportEnvelope::new("state", params, t, max_error, tol, true),
        error_column: "abs2",
    })
}

/// Overlap `⟨ξ, n|ζ, m⟩` in every form. The error is the largest pairwise
/// difference. Forms undefined at the given point (the Legendre form at
/// `ξ̄ζ = 0`) are left out.
pub fn overlap(
    family: SqueezedFamily,
    xi: Complex64,
    n: u32,
    zeta: Complex64,
    m: u32,
    tol: Option<f64>,
) -> Result<Outcome, CliError> {
    let tol = tol.unwrap_or(1e-9);
    let (px, pz) = (SqueezeParam::new(xi)?, SqueezeParam::new(zeta)?);
    let results: Vec<(&str, fockres::Result<Complex64>)> = match family {
        SqueezedFamily::Pasvs => [
            ("hypergeometric", OverlapForm::Hypergeometric),
            ("terminating", OverlapForm::Terminating),
            ("legendre", OverlapForm::Legendre),
            ("series", OverlapForm::Series),
        ]
        .into_iter()
        .map(|(name, f)| (name, pasvs_overlap_form(&px, n, &pz, m, f)))
        .collect(),
        SqueezedFamily::Pasops => [
            ("legendre", PasopsForm::Legendre),
            ("bridge", PasopsForm::Bridge),
            ("series", PasopsForm::Series),
        ]
        .into_iter()
        .map(|(name, f)| (name, pasops_overlap_form(&px, n, &pz, m, f)))
        .collect(),
    };
    let mut values = Vec::new();
    for (name, r) in results {
        match r {
            Ok(v) => values.push((name, v)),
            Err(Error::Domain { .. }) if name == "legendre" => {}
            Err(e) => return Err(e.into()),
        }
    }
    let series = values
        .iter()
        .find(|(n, _)| *n == "series")
        .expect("series always defined")
        .1;
    let mut t = Table::new(&["form", "re", "im", "abs_diff_series"]);
    let mut max_error: f64 = 0.0;
    for (i, (name, v)) in values.iter().enumerate() {
        for (_, w) in &values[i + 1..] {
            max_error = max_error.max((v - w).norm());
        }
        t.push(vec![
            (*name).into(),
            v.re.into(),
            v.im.into(),
            (v - series).norm().into(),
        ]);
    }
    let mut params = BTreeMap::new();
    params.insert("family".into(), json!(format!("{family:?}").to_lowercase()));
    params.insert("xi".into(), zeta_json(xi));
    params.insert("zeta".into(), zeta_json(zeta));
    params.insert("n".into(), json!(n));
    params.insert("m".into(), json!(m));
    Ok(Outcome {
        envelope: ReportEnvelope::new("overlap", params, t, max_error, tol, true),
        error_column: "abs_diff_series",
    })
}

/// Normalization in each closed form against the number-basis sum.
pub fn norm(family: NormFamily, s: &StateInput, tol: Option<f64>) -> Result<Outcome, CliError> {
    let tol = tol.unwrap_or(1e-9);
    let mut params = BTreeMap::new();
    params.insert("family".into(), json!(format!("{family:?}").to_lowercase()));
    let rows: Vec<NormRow> = match family {
        NormFamily::Pasvs | NormFamily::Pasops => {
            let p = SqueezeParam::new(s.zeta)?;
            params.insert("zeta".into(), zeta_json(s.zeta));
            params.insert("m".into(), json!(s.m));
            let name = if family == NormFamily::Pasvs {
                "pasvs"
            } else {
                "pasops"
            };
            squeezed_norm_rows(name, &p, s.m)
        }
        NormFamily::Csc | NormFamily::Pacsc => {
            let p = CircleParam::new(s.z, s.lambda, s.mu)?;
            params.insert("z".into(), zeta_json(s.z));
            params.insert("lambda".into(), json!(s.lambda));
            params.insert("mu".into(), json!(s.mu));
            let m = (family == NormFamily::Pacsc).then_some(s.m);
            if let Some(m) = m {
                params.insert("m".into(), json!(m));
            }
            circle_norm_rows(&p, m)?
        }
    };
    let max_error = rows.iter().map(NormRow::rel_err).fold(0.0, f64::max);
    Ok(Outcome {
        envelope: ReportEnvelope::new("norm", params, norm_table(&rows), max_error, tol, true),
        error_column: "rel_err",
    })
}

/// Inputs of the `weights` command.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightsInput {
    pub ms: Vec<u32>,
    pub lambda: u32,
    pub mu: u32,
    pub grid: usize,
    pub ymin: f64,
    pub ymax: f64,
}

/// Weight functions on an evenly spaced grid, one column per `m`. The
/// verdict requires every value to be finite and positive; the error is
/// the number of values that are not.
pub fn weights(
    family: WeightFamily,
    w: &WeightsInput,
    tol: Option<f64>,
) -> Result<Outcome, CliError> {
    let tol = tol.unwrap_or(0.5);
    if w.grid < 2 {
        return Err(CliError::Usage("--grid must be at least 2".into()));
    }
    if w.ms.is_empty() {
        return Err(CliError::Usage("--m needs at least one value".into()));
    }
    if !(w.ymin.is_finite() && w.ymax.is_finite() && 0.0 < w.ymin && w.ymin < w.ymax) {
        return Err(CliError::Usage("need 0 < ymin < ymax".into()));
    }
    let (prefix, funcs): (&str, Vec<WeightFunction>) = match family {
        WeightFamily::Pasvs => (
            "h_",
            w.ms.iter()
                .map(|&m| WeightFunction::pasvs(m))
                .collect::<Result<_, _>>()?,
        ),
        WeightFamily::Pasops => (
            "h1_",
            w.ms.iter()
                .map(|&m| WeightFunction::pasops(m))
                .collect::<Result<_, _>>()?,
        ),
        WeightFamily::Pacsc => (
            "h_",
            w.ms.iter()
                .map(|&m| WeightFunction::pacsc(w.lambda, w.mu, m))
                .collect::<Result<_, _>>()?,
        ),
    };
    if family != WeightFamily::Pacsc && w.ymax >= 1.0 {
        return Err(CliError::Usage("squeezed weights need ymax < 1".into()));
    }
    let mut columns = vec!["y".to_string()];
    columns.extend(w.ms.iter().map(|m| format!("{prefix}{m}")));
    let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut t = Table::new(&column_refs);
    let mut bad = 0usize;
    for i in 0..w.grid {
        let y = w.ymin + (w.ymax - w.ymin) * i as f64 / (w.grid - 1) as f64;
        let mut row = vec![y.into()];
        for f in &funcs {
            let h = f.eval(y)?;
            if !(h.is_finite() && h > 0.0) {
                bad += 1;
            }
            row.push(h.into());
        }
        t.push(row);
    }
    let mut params = BTreeMap::new();
    params.insert("family".into(), json!(format!("{family:?}").to_lowercase()));
    params.insert("m".into(), json!(w.ms));
    if family == WeightFamily::Pacsc {
        params.insert("lambda".into(), json!(w.lambda));
        params.insert("mu".into(), json!(w.mu));
    }
    params.insert("grid".into(), json!(w.grid));
    params.insert("ymin".into(), json_f64(w.ymin));
    params.insert("ymax".into(), json_f64(w.ymax));
    Ok(Outcome {
        envelope: ReportEnvelope::new("weights", params, t, bad as f64, tol, true),
        error_column: "y",
    })
}
