//! Report envelopes and their CSV/JSON renderings.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::CliError;

/// Version string embedded in every report.
pub const TOOL_VERSION: &str = concat!("fockres ", env!("CARGO_PKG_VERSION"));

/// A single table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn to_csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format_float(*x),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Int(i) => s.serialize_i64(*i),
            Cell::Float(x) => json_f64(*x).serialize(s),
            Cell::Text(t) => s.serialize_str(t),
            Cell::Bool(b) => s.serialize_bool(*b),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

/// Seventeen significant digits in scientific notation; enough to
/// round-trip any `f64`.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// Column-named rows.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// RFC 4180: CRLF line ends, fields quoted only when needed.
    pub fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::CRLF)
            .quote_style(csv::QuoteStyle::Necessary)
            .from_writer(Vec::new());
        w.write_record(&self.columns).map_err(csv_error)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::to_csv))
                .map_err(csv_error)?;
        }
        w.into_inner().map_err(|e| CliError::Io(e.into_error()))
    }

    /// Index of a column by name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}

/// The result of one command: inputs, a results table, and a verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportEnvelope {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub results: Table,
    pub max_error: f64,
    pub pass: bool,
    pub tool_version: String,
}

impl ReportEnvelope {
    /// Build an envelope whose verdict is `max_error < tol`, with `tol`
    /// recorded among the parameters. Further conditions can be folded in
    /// with `extra_ok`.
    pub fn new(
        command: &str,
        mut parameters: BTreeMap<String, Value>,
        results: Table,
        max_error: f64,
        tol: f64,
        extra_ok: bool,
    ) -> Self {
        parameters.insert("tol".to_string(), json_f64(tol));
        ReportEnvelope {
            command: command.to_string(),
            parameters,
            results,
            max_error,
            pass: extra_ok && max_error < tol,
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    pub fn to_json(&self) -> Result<Vec<u8>, CliError> {
        let mut out = serde_json::to_vec_pretty(self).map_err(|e| CliError::Io(e.into()))?;
        out.push(b'\n');
        Ok(out)
    }
}

/// JSON number, or a string for non-finite values (which JSON cannot hold).
pub fn json_f64(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or_else(|| Value::String(format_float(x)))
}

/// Write `bytes` to `path` through a temporary file in the same directory,
/// so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(CliError::Io)?;
    tmp.write_all(bytes).map_err(CliError::Io)?;
    tmp.as_file().sync_all().map_err(CliError::Io)?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}
