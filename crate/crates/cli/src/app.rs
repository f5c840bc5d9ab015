//! Argument definitions and dispatch.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fockres::complete::WeightFunction;
use fockres::fockstate::DEFAULT_EPS;
use fockres::Complex64;

use crate::commands::{
    self, NormFamily, SqueezedFamily, StateFamily, StateInput, WeightFamily, WeightsInput,
};
use crate::params::{parse_complex, parse_tol};
use crate::report::write_atomic;
use crate::suites::{self, Outcome};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "fockres",
    version,
    about = "Photon-added squeezed and circle states: reports and completeness checks"
)]
pub struct Cli {
    /// Write the report to this file (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format; `verify` defaults to json, everything else to csv.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Tolerance for the pass/fail verdict (each command has a default).
    #[arg(long, global = true, value_parser = parse_tol)]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number-basis coefficients of a state.
    State {
        #[arg(value_enum)]
        family: StateFamily,
        #[command(flatten)]
        state: StateArgs,
    },
    /// Overlap of two squeezed states in every closed form.
    Overlap {
        #[arg(value_enum)]
        family: SqueezedFamily,
        #[arg(long, value_parser = parse_complex, default_value = "0")]
        xi: Complex64,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long, value_parser = parse_complex, default_value = "0")]
        zeta: Complex64,
        #[arg(long, default_value_t = 0)]
        m: u32,
    },
    /// Normalization in every closed form against the number-basis sum.
    Norm {
        #[arg(value_enum)]
        family: NormFamily,
        #[command(flatten)]
        state: StateArgs,
    },
    /// Weight functions on a grid of y.
    Weights(WeightsArgs),
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// Squeeze parameter, `r` or `r@theta`.
    #[arg(long, value_parser = parse_complex, default_value = "0")]
    pub zeta: Complex64,
    /// Circle-state eigenvalue, `r` or `r@theta`.
    #[arg(long, value_parser = parse_complex, default_value = "0")]
    pub z: Complex64,
    #[arg(long, default_value_t = 1)]
    pub lambda: u32,
    #[arg(long, default_value_t = 0)]
    pub mu: u32,
    /// Number of added photons (or the number-state index for `sns`).
    #[arg(long, default_value_t = 0)]
    pub m: u32,
    /// Truncation: omitted squared norm below this.
    #[arg(long, default_value_t = DEFAULT_EPS)]
    pub eps: f64,
}

impl StateArgs {
    fn input(&self) -> StateInput {
        StateInput {
            zeta: self.zeta,
            z: self.z,
            lambda: self.lambda,
            mu: self.mu,
            m: self.m,
            eps: self.eps,
        }
    }
}

#[derive(Debug, Args)]
pub struct WeightsArgs {
    #[arg(value_enum, default_value = "pasvs")]
    pub family: WeightFamily,
    /// Photon numbers, comma separated (default 1..5, or 0..4 for pasops and pacsc).
    #[arg(long, value_delimiter = ',')]
    pub m: Option<Vec<u32>>,
    #[arg(long, default_value_t = 1)]
    pub lambda: u32,
    #[arg(long, default_value_t = 0)]
    pub mu: u32,
    /// Number of grid points.
    #[arg(long, default_value_t = 100)]
    pub grid: usize,
    /// Lower end of the grid (default 1e-4, or 0.01 for pacsc).
    #[arg(long)]
    pub ymin: Option<f64>,
    /// Upper end of the grid (default 1 - 1e-4, or 10 for pacsc).
    #[arg(long)]
    pub ymax: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Suite {
    /// Power moments of the weight functions.
    Moments(FamilyArgs),
    /// Agreement of the three forms of h_m.
    Weights {
        #[arg(long, value_delimiter = ',', default_values_t = [2u32, 3, 4, 5, 6, 7, 8])]
        m: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9])]
        y: Vec<f64>,
    },
    /// Truncated resolution-of-unity matrices.
    Unity {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 12)]
        dim: usize,
    },
    /// Discrete double-sum identity at increasing cutoffs.
    Discrete {
        #[arg(long, value_parser = parse_complex, default_value = "0.3")]
        zeta: Complex64,
        #[arg(long, value_delimiter = ',', default_values_t = [10usize, 20, 40])]
        cutoffs: Vec<usize>,
        #[arg(long, default_value_t = 8)]
        dim: usize,
    },
    /// Carleman's test on the moment sequence.
    Carleman {
        #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2, 3, 4])]
        m: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_values_t = [10u64, 100, 1000, 10000])]
        k: Vec<u64>,
        /// Rows with k at or above this value decide the verdict.
        #[arg(long, default_value_t = 1000)]
        check_k: u64,
    },
    /// Every overlap form against the others and the series.
    Overlaps {
        #[arg(long, default_value_t = 8)]
        max_index: u32,
    },
    /// Closed-form normalizations against number-basis sums.
    Norms,
    /// Ladder-operator and orthonormality identities.
    Ladder,
    /// Every suite at default parameters.
    All,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Restrict to one family (default: the full built-in grid).
    #[arg(long, value_enum)]
    pub family: Option<WeightFamily>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub lambda: u32,
    #[arg(long, default_value_t = 0)]
    pub mu: u32,
    /// Largest moment index (default 10, or 8 for pacsc).
    #[arg(long)]
    pub kmax: Option<u32>,
}

impl FamilyArgs {
    /// The selected family, or `None` for the default grid.
    fn family(&self) -> Result<Option<WeightFunction>, CliError> {
        let Some(f) = self.family else {
            return Ok(None);
        };
        let w = match f {
            WeightFamily::Pasvs => WeightFunction::pasvs(self.m.unwrap_or(1))?,
            WeightFamily::Pasops => WeightFunction::pasops(self.m.unwrap_or(0))?,
            WeightFamily::Pacsc => {
                WeightFunction::pacsc(self.lambda, self.mu, self.m.unwrap_or(0))?
            }
        };
        Ok(Some(w))
    }

    fn kmax(&self, w: &WeightFunction) -> u32 {
        self.kmax.unwrap_or(match w {
            WeightFunction::Pacsc { .. } => 8,
            _ => 10,
        })
    }
}

/// Run the parsed command.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let tol = cli.tol;
    match &cli.command {
        Command::State { family, state } => commands::state(*family, &state.input(), tol),
        Command::Overlap {
            family,
            xi,
            n,
            zeta,
            m,
        } => commands::overlap(*family, *xi, *n, *zeta, *m, tol),
        Command::Norm { family, state } => commands::norm(*family, &state.input(), tol),
        Command::Weights(w) => {
            let circle = w.family == WeightFamily::Pacsc;
            let ms = w.m.clone().unwrap_or_else(|| {
                if w.family == WeightFamily::Pasvs {
                    (1..=5).collect()
                } else {
                    (0..=4).collect()
                }
            });
            let input = WeightsInput {
                ms,
                lambda: w.lambda,
                mu: w.mu,
                grid: w.grid,
                ymin: w.ymin.unwrap_or(if circle { 0.01 } else { 1e-4 }),
                ymax: w.ymax.unwrap_or(if circle { 10.0 } else { 1.0 - 1e-4 }),
            };
            commands::weights(w.family, &input, tol)
        }
        Command::Verify { suite } => match suite {
            Suite::Moments(f) => {
                let p = match f.family()? {
                    Some(w) => suites::MomentsParams {
                        families: vec![(w, f.kmax(&w))],
                    },
                    None => suites::MomentsParams::default(),
                };
                suites::moments(&p, tol)
            }
            Suite::Weights { m, y } => suites::weights(
                &suites::WeightsParams {
                    ms: m.clone(),
                    ys: y.clone(),
                },
                tol,
            ),
            Suite::Unity { family, dim } => {
                let families = match family.family()? {
                    Some(w) => vec![w],
                    None => suites::UnityParams::default().families,
                };
                suites::unity(
                    &suites::UnityParams {
                        families,
                        dim: *dim,
                    },
                    tol,
                )
            }
            Suite::Discrete { zeta, cutoffs, dim } => suites::discrete(
                &suites::DiscreteParams {
                    zeta: *zeta,
                    cutoffs: cutoffs.clone(),
                    dim: *dim,
                },
                tol,
            ),
            Suite::Carleman { m, k, check_k } => suites::carleman(
                &suites::CarlemanParams {
                    ms: m.clone(),
                    ks: k.clone(),
                    check_k: *check_k,
                },
                tol,
            ),
            Suite::Overlaps { max_index } => suites::overlaps(
                &suites::OverlapsParams {
                    max_index: *max_index,
                    ..Default::default()
                },
                tol,
            ),
            Suite::Norms => suites::norms(&suites::NormsParams::default(), tol),
            Suite::Ladder => suites::ladder(&suites::LadderParams, tol),
            Suite::All => {
                if tol.is_some() {
                    return Err(CliError::Usage(
                        "verify all uses each suite's own tolerance; drop --tol".into(),
                    ));
                }
                suites::all()
            }
        },
    }
}

/// Render the outcome in the requested (or the command's default) format.
pub fn render(cli: &Cli, outcome: &Outcome) -> Result<Vec<u8>, CliError> {
    let default = match cli.command {
        Command::Verify { .. } => Format::Json,
        _ => Format::Csv,
    };
    match cli.format.unwrap_or(default) {
        Format::Csv => outcome.envelope.results.to_csv(),
        Format::Json => outcome.envelope.to_json(),
    }
}

/// Run, write the report, and return the exit code.
pub fn execute(cli: &Cli) -> Result<u8, CliError> {
    let outcome = run(cli)?;
    let bytes = render(cli, &outcome)?;
    match &cli.out {
        Some(path) => write_atomic(path, &bytes)?,
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(&bytes).and_then(|()| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    return Err(CliError::Io(e))
                }
                _ => {}
            }
        }
    }
    let env = &outcome.envelope;
    if env.pass {
        Ok(0)
    } else {
        eprintln!(
            "{}: verification failed (max_error {:e}, tol {}); worst entry: {}",
            env.command,
            env.max_error,
            env.parameters["tol"],
            outcome.worst_entry().unwrap_or_else(|| "none".into())
        );
        Ok(1)
    }
}
