//! Command-line reports for `fockres`: state coefficient tables, overlaps,
//! normalizations, weight-function grids and verification suites, written
//! as RFC 4180 CSV or JSON envelopes.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x < b)` also rejects NaN

use std::fmt;

pub mod app;
pub mod commands;
pub mod params;
pub mod report;
pub mod series;
pub mod suites;

/// Failure of a command, mapped onto the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Invalid arguments or parameters outside a function's domain.
    Usage(String),
    /// A numerical kernel failed (non-convergence, branch mismatch, ...).
    Numeric(String),
    /// Writing the report failed.
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Numeric(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "invalid parameters: {s}"),
            CliError::Numeric(s) => write!(f, "numerical failure: {s}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<fockres::Error> for CliError {
    fn from(e: fockres::Error) -> Self {
        match e {
            fockres::Error::Domain { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}
