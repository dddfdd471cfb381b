//! Commands behind the `qfisher` binary.
//!
//! Each command produces its output as a `String` so it can be tested without
//! spawning a process; `main.rs` only parses arguments, writes the output and
//! maps errors to exit codes.

use std::fmt;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qfisher::systems::{BoundState, SystemKind};
use qfisher::verify::{run_suite, Fault, VerifyOptions, VerifyReport};
use qfisher::{build_report, fourier_transform_numeric, hydrogen_phi, QuadratureConfig};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Exact header of the Fisher table in CSV form.
pub const TABLE_HEADER: &str =
    "n,energy,i_rho_numeric,i_rho_closed,i_gamma_numeric,i_gamma_closed,product,discrepancy,converged";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad arguments or configuration; exit status 2.
    #[error("{0}")]
    Config(String),
    /// A computation failed outright; exit status 1.
    #[error(transparent)]
    Numeric(#[from] qfisher::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}

/// Output of a command: the text to emit and whether everything succeeded.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub body: String,
    pub success: bool,
    /// Names of failed items, reported on stderr.
    pub failures: Vec<String>,
}

#[derive(Debug, Parser)]
#[command(
    name = "qfisher",
    version,
    about = "Fisher information of the quasi-1D hydrogen atom and the infinite well"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fisher information table, one row per quantum index.
    Table(TableArgs),
    /// Wavefunction samples for plotting.
    Figure(FigureArgs),
    /// Run the full verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemArg {
    Hydrogen,
    Well,
}

impl From<SystemArg> for SystemKind {
    fn from(s: SystemArg) -> Self {
        match s {
            SystemArg::Hydrogen => SystemKind::HydrogenHalfLine,
            SystemArg::Well => SystemKind::InfiniteWell,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    Position,
    Momentum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FaultArg {
    /// Replace the momentum waveform by its modulus (demonstration only).
    RealPhi,
}

#[derive(Debug, Clone, Args)]
pub struct Tolerances {
    /// Absolute quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub abs_tol: f64,
    /// Relative quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,
}

impl Tolerances {
    pub fn config(&self) -> Result<QuadratureConfig, CliError> {
        let cfg = QuadratureConfig::with_tolerances(self.abs_tol, self.rel_tol);
        cfg.validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(long, value_enum, default_value_t = SystemArg::Hydrogen)]
    pub system: SystemArg,
    #[arg(long, default_value_t = 1)]
    pub n_min: u32,
    #[arg(long, default_value_t = 4)]
    pub n_max: u32,
    /// Well width in Coulomb length units.
    #[arg(long, default_value_t = 1.0)]
    pub width: f64,
    #[command(flatten)]
    pub tolerances: Tolerances,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<std::path::PathBuf>,
}

/// `MIN:MAX:POINTS`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        let step = (self.max - self.min) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.max
                } else {
                    self.min + step * i as f64
                }
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, points] = parts[..] else {
            return Err(format!("expected MIN:MAX:POINTS, got {s:?}"));
        };
        let min: f64 = min.trim().parse().map_err(|e| format!("bad MIN: {e}"))?;
        let max: f64 = max.trim().parse().map_err(|e| format!("bad MAX: {e}"))?;
        let points: usize = points
            .trim()
            .parse()
            .map_err(|e| format!("bad POINTS: {e}"))?;
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(format!("grid needs finite MIN < MAX, got {min}:{max}"));
        }
        if points < 2 {
            return Err(format!("grid needs at least 2 points, got {points}"));
        }
        Ok(Grid { min, max, points })
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.min, self.max, self.points)
    }
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    #[arg(long, value_enum)]
    pub which: Which,
    #[arg(long, value_enum, default_value_t = SystemArg::Hydrogen)]
    pub system: SystemArg,
    /// Comma-separated quantum indices.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4")]
    pub n_list: Vec<u32>,
    /// Sample grid `MIN:MAX:POINTS`; defaults to `0:20:401` in position space and `0:3:301` in
    /// momentum space.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<Grid>,
    #[arg(long, default_value_t = 1.0)]
    pub width: f64,
    #[command(flatten)]
    pub tolerances: Tolerances,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Largest quantum index used by the state sweeps.
    #[arg(long, default_value_t = 8)]
    pub n_max: u32,
    /// Inject a deliberate defect; the suite is expected to fail.
    #[arg(long, value_enum)]
    pub fault: Option<FaultArg>,
    /// Emit the report as JSON.
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub tolerances: Tolerances,
    #[arg(long)]
    pub output: Option<std::path::PathBuf>,
}

/// One row of the Fisher table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: u32,
    pub energy: f64,
    pub i_rho_numeric: f64,
    pub i_rho_closed: Option<f64>,
    pub i_gamma_numeric: f64,
    pub i_gamma_closed: Option<f64>,
    pub product: f64,
    pub discrepancy: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableDocument {
    pub system: SystemArg,
    pub width: Option<f64>,
    pub config: QuadratureConfig,
    pub rows: Vec<TableRow>,
}

pub fn table_rows(args: &TableArgs) -> Result<TableDocument, CliError> {
    let config = args.tolerances.config()?;
    if args.n_min == 0 || args.n_min > args.n_max {
        return Err(CliError::Config(format!(
            "need 1 <= n-min <= n-max, got {}..{}",
            args.n_min, args.n_max
        )));
    }
    let width = match args.system {
        SystemArg::Hydrogen => None,
        SystemArg::Well => Some(args.width),
    };
    let states = (args.n_min..=args.n_max)
        .map(|n| match args.system {
            SystemArg::Hydrogen => BoundState::hydrogen(n),
            SystemArg::Well => BoundState::well(n, args.width),
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let rows = states
        .par_iter()
        .map(|state| {
            let r = build_report(state, &config)?;
            Ok(TableRow {
                n: state.n,
                energy: state.energy(),
                i_rho_numeric: r.i_rho_numeric,
                i_rho_closed: r.i_rho_closed,
                i_gamma_numeric: r.i_gamma_numeric,
                i_gamma_closed: r.i_gamma_closed,
                product: r.product,
                discrepancy: r.max_abs_discrepancy,
                converged: r.converged,
            })
        })
        .collect::<Result<Vec<_>, qfisher::Error>>()?;
    Ok(TableDocument {
        system: args.system,
        width,
        config,
        rows,
    })
}

pub fn cmd_table(args: &TableArgs) -> Result<CommandOutput, CliError> {
    let doc = table_rows(args)?;
    let body = match args.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &doc.rows {
                w.serialize(row)?;
            }
            if doc.rows.is_empty() {
                w.write_record(TABLE_HEADER.split(','))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| e.into_error())?)
                .expect("csv output is utf-8")
        }
        Format::Json => serde_json::to_string_pretty(&doc)? + "\n",
    };
    let failures: Vec<String> = doc
        .rows
        .iter()
        .filter(|r| !r.converged)
        .map(|r| format!("n={} did not converge", r.n))
        .collect();
    Ok(CommandOutput {
        body,
        success: failures.is_empty(),
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureDocument {
    pub which: Which,
    pub system: SystemArg,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

pub fn figure_data(args: &FigureArgs) -> Result<FigureDocument, CliError> {
    let config = args.tolerances.config()?;
    let grid = args.grid.unwrap_or(match args.which {
        Which::Position => Grid {
            min: 0.0,
            max: 20.0,
            points: 401,
        },
        Which::Momentum => Grid {
            min: 0.0,
            max: 3.0,
            points: 301,
        },
    });
    if args.n_list.is_empty() {
        return Err(CliError::Config("n-list is empty".into()));
    }
    let states = args
        .n_list
        .iter()
        .map(|&n| match args.system {
            SystemArg::Hydrogen => BoundState::hydrogen(n),
            SystemArg::Well => BoundState::well(n, args.width),
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Config(e.to_string()))?;

    match args.which {
        Which::Position => match args.system {
            SystemArg::Hydrogen if grid.min < 0.0 => {
                return Err(CliError::Config(format!(
                    "hydrogen wavefunctions live on x >= 0, grid starts at {}",
                    grid.min
                )))
            }
            SystemArg::Well if grid.min < -0.5 * args.width || grid.max > 0.5 * args.width => {
                return Err(CliError::Config(format!(
                    "grid {grid} leaves the well [{}, {}]",
                    -0.5 * args.width,
                    0.5 * args.width
                )))
            }
            _ => {}
        },
        Which::Momentum if grid.min < 0.0 => {
            return Err(CliError::Config(format!(
                "momentum figures cover p >= 0 only, grid starts at {}",
                grid.min
            )))
        }
        Which::Momentum => {}
    }

    let mut columns = Vec::new();
    match args.which {
        Which::Position => {
            columns.push("x".to_owned());
            columns.extend(states.iter().map(|s| format!("psi_{}", s.n)));
        }
        Which::Momentum => {
            columns.push("p".to_owned());
            for s in &states {
                columns.push(format!("re_phi_{}", s.n));
                columns.push(format!("im_phi_{}", s.n));
            }
        }
    }

    let rows = grid
        .values()
        .into_par_iter()
        .map(|t| {
            let mut row = vec![t];
            for s in &states {
                match args.which {
                    Which::Position => row.push(s.psi(t)),
                    Which::Momentum => {
                        let phi = match s.system {
                            SystemKind::HydrogenHalfLine => hydrogen_phi(s.n, t)?,
                            SystemKind::InfiniteWell => {
                                fourier_transform_numeric(
                                    |x| s.psi(x),
                                    t,
                                    s.position_domain(),
                                    &config,
                                )?
                                .amplitude
                            }
                        };
                        row.push(phi.re);
                        row.push(phi.im);
                    }
                }
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>, qfisher::Error>>()?;
    Ok(FigureDocument {
        which: args.which,
        system: args.system,
        columns,
        rows,
    })
}

pub fn cmd_figure(args: &FigureArgs) -> Result<CommandOutput, CliError> {
    let doc = figure_data(args)?;
    let body = match args.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&doc.columns)?;
            for row in &doc.rows {
                w.serialize(row)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| e.into_error())?)
                .expect("csv output is utf-8")
        }
        Format::Json => serde_json::to_string_pretty(&doc)? + "\n",
    };
    Ok(CommandOutput {
        body,
        success: true,
        failures: Vec::new(),
    })
}

pub fn verify_report(args: &VerifyArgs) -> Result<VerifyReport, CliError> {
    let config = args.tolerances.config()?;
    if args.n_max == 0 {
        return Err(CliError::Config("n-max must be >= 1".into()));
    }
    let opts = VerifyOptions {
        n_max: args.n_max,
        fault: args.fault.map(|f| match f {
            FaultArg::RealPhi => Fault::RealPhi,
        }),
        config,
    };
    Ok(run_suite(&opts)?)
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<CommandOutput, CliError> {
    let report = verify_report(args)?;
    let body = if args.json {
        serde_json::to_string_pretty(&report)? + "\n"
    } else {
        let mut out = String::new();
        if let Some(fault) = report.fault {
            out.push_str(&format!("fault injected: {fault:?}\n"));
        }
        for c in &report.checks {
            let op = match c.comparison {
                qfisher::verify::Comparison::AtMost => "<=",
                qfisher::verify::Comparison::Above => ">",
            };
            out.push_str(&format!(
                "{} {:<24} {:>12.3e} {op} {:.1e}{}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.measured,
                c.tolerance,
                if c.converged {
                    ""
                } else {
                    "  (quadrature did not converge)"
                },
            ));
        }
        out
    };
    Ok(CommandOutput {
        body,
        success: report.passed,
        failures: report.failures().map(|c| c.name.clone()).collect(),
    })
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<(CommandOutput, Option<std::path::PathBuf>), CliError> {
    Ok(match &cli.command {
        Command::Table(a) => (cmd_table(a)?, a.output.clone()),
        Command::Figure(a) => (cmd_figure(a)?, a.output.clone()),
        Command::Verify(a) => (cmd_verify(a)?, a.output.clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g: Grid = "0:2:5".parse().unwrap();
        assert_eq!(g.values(), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        assert!("0:2".parse::<Grid>().is_err());
        assert!("2:0:5".parse::<Grid>().is_err());
        assert!("0:2:1".parse::<Grid>().is_err());
        assert!("a:2:3".parse::<Grid>().is_err());
    }

    #[test]
    fn header_matches_row_fields() {
        let args = TableArgs {
            system: SystemArg::Hydrogen,
            n_min: 1,
            n_max: 1,
            width: 1.0,
            tolerances: Tolerances {
                abs_tol: 1e-10,
                rel_tol: 1e-10,
            },
            format: Format::Csv,
            output: None,
        };
        let out = cmd_table(&args).unwrap();
        assert_eq!(out.body.lines().next(), Some(TABLE_HEADER));
    }
}
