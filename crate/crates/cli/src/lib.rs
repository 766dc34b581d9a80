//! Command-line front end: verification table, per-basis fidelity tables,
//! trade-off sweeps, cloning of user states and the entropic check.

mod commands;
pub mod input;
pub mod numfmt;
mod verify;

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use qclone::families::FamilyKind;

pub use verify::{claims, Claim};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Recompute the published values and compare.
    Verify,
    /// Fidelity and disturbances in every mutually unbiased basis.
    Table,
    /// Sample the optimal trade-off curve of a family.
    Tradeoff,
    /// Clone a given state and report both outputs.
    Clone,
    /// Entropies of the cloner's error distributions.
    Entropy,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Table => "table",
            Command::Tradeoff => "tradeoff",
            Command::Clone => "clone",
            Command::Entropy => "entropy",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Parser)]
#[command(name = "qclone", version, about = "Asymmetric qubit and qutrit cloners")]
pub struct Args {
    #[arg(long, value_enum)]
    pub command: Command,

    /// two_basis, three_basis_sym, three_basis_asym, universal or qubit_phase_cov.
    /// For table, clone and entropy this selects the family's symmetric optimum.
    #[arg(long, value_parser = parse_family)]
    pub family: Option<FamilyKind>,

    /// Cloner as inline JSON or a file path: an amplitude matrix
    /// `{"dim": N, "a": [[[re, im], ...], ...]}` or family parameters
    /// `{"family": name, "params": {...}}`.
    #[arg(long)]
    pub matrix: Option<String>,

    /// Input state as inline JSON or a file path: `[[re, im], ...]`.
    #[arg(long)]
    pub state: Option<String>,

    /// Number of points on a trade-off curve.
    #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u32).range(2..))]
    pub grid: u32,

    /// Dimension for the universal family.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(2..))]
    pub dim: u32,

    /// Output file. Defaults to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Directory for `<command>.<format>` when --out is not given.
    #[arg(long, env = "QCLONE_OUT_DIR")]
    pub out_dir: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Absolute tolerance for every verify row, replacing the defaults.
    #[arg(long)]
    pub tolerance: Option<f64>,

    /// Run only the verify rows whose name contains this text.
    #[arg(long)]
    pub only: Option<String>,
}

fn parse_family(s: &str) -> Result<FamilyKind, String> {
    s.parse().map_err(|e: qclone::Error| e.to_string())
}

impl Args {
    /// Where the report goes; `None` means stdout.
    pub fn destination(&self) -> Option<PathBuf> {
        self.out.clone().or_else(|| {
            self.out_dir
                .as_ref()
                .map(|dir| dir.join(format!("{}.{}", self.command.name(), self.format.extension())))
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] qclone::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

/// Result of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub body: String,
    pub success: bool,
    pub warnings: Vec<String>,
}

pub fn run(args: &Args) -> Result<Report, CliError> {
    if let Some(tol) = args.tolerance {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(CliError::Usage(format!("--tolerance must be positive, got {tol}")));
        }
    }
    match args.command {
        Command::Verify => verify::run(args),
        Command::Table => commands::table(args),
        Command::Tradeoff => commands::tradeoff(args),
        Command::Clone => commands::clone(args),
        Command::Entropy => commands::entropy(args),
    }
}
