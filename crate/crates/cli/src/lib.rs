//! Command implementations behind the `fpeval` binary.
//!
//! Every command renders into a `String` so output is byte-stable and easy
//! to test; `main` only prints it and maps errors to exit codes.

mod bench;
mod cost;
mod eval;
mod verify;

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fpeval::{CountMode, PrimeModulus};

pub use bench::NRange;

/// Largest decomposition tree a command will build, in leaves.
pub const MAX_LEAVES: u64 = 1 << 26;

#[derive(Debug, Parser)]
#[command(name = "fpeval", version, about = "Frobenius-decomposition polynomial evaluation with multiplication accounting")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check fast evaluation against the naive oracle and the cost contract
    /// on random inputs.
    Verify(VerifyArgs),
    /// Tabulate predicted and implemented counts for every depth.
    Cost(CostArgs),
    /// Evaluate one polynomial file at one point file.
    Eval(EvalArgs),
    /// Sweep n and compare direct, optimal and measured counts.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountModeArg {
    Structural,
    #[value(alias = "value_aware")]
    ValueAware,
}

impl From<CountModeArg> for CountMode {
    fn from(m: CountModeArg) -> Self {
        match m {
            CountModeArg::Structural => CountMode::Structural,
            CountModeArg::ValueAware => CountMode::ValueAware,
        }
    }
}

/// `auto` or a fixed depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DepthArg {
    Auto,
    Fixed(usize),
}

impl FromStr for DepthArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Self::Auto);
        }
        s.parse()
            .map(Self::Fixed)
            .map_err(|_| format!("expected `auto` or a nonnegative integer, got `{s}`"))
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub p: u64,
    /// Coefficient field degree; s > 1 also checks extension evaluation.
    #[arg(long, default_value_t = 1)]
    pub s: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub n: usize,
    /// Degree of the field holding the evaluation point.
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct CostArgs {
    #[arg(long)]
    pub p: u64,
    /// Number of base-field components sharing one table (shared column).
    #[arg(long, default_value_t = 1)]
    pub s: usize,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Polynomial JSON file.
    #[arg(long)]
    pub input: PathBuf,
    /// Point JSON file.
    #[arg(long)]
    pub point: PathBuf,
    #[arg(long = "L", default_value = "auto")]
    pub depth: DepthArg,
    #[arg(long, value_enum, default_value_t = CountModeArg::Structural)]
    pub count_mode: CountModeArg,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub r: usize,
    /// Degree of the field holding the evaluation point.
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    /// `lo:hi[:step]`, inclusive.
    #[arg(long)]
    pub n_range: NRange,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = CountModeArg::Structural)]
    pub count_mode: CountModeArg,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] fpeval::Error),
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: fpeval::Error },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Core(fpeval::Error::Overflow(_)) => 3,
            _ => 2,
        }
    }
}

/// Rendered output plus whether every verification check passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub output: String,
    pub success: bool,
}

impl Report {
    fn ok(output: String) -> Self {
        Self {
            output,
            success: true,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.success {
            0
        } else {
            1
        }
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Verify(args) => verify::run(args),
        Command::Cost(args) => cost::run(args),
        Command::Eval(args) => eval::run(args),
        Command::Bench(args) => bench::run(args),
    }
}

fn prime(p: u64) -> Result<PrimeModulus, CliError> {
    Ok(PrimeModulus::new(p)?)
}

fn positive(value: usize, name: &str) -> Result<(), CliError> {
    if value == 0 {
        return Err(CliError::Usage(format!("--{name} must be at least 1")));
    }
    Ok(())
}

/// Rejects depths whose tree exceeds [`MAX_LEAVES`].
fn check_tree(p: PrimeModulus, r: usize, depth: usize) -> Result<(), CliError> {
    let leaves = u64::from(p.get()).checked_pow((r * depth) as u32);
    if leaves.map_or(true, |l| l > MAX_LEAVES) {
        return Err(CliError::Usage(format!(
            "depth {depth} needs {p}^{} leaves, above the ceiling of 2^26",
            r * depth
        )));
    }
    Ok(())
}

fn to_json(value: &impl serde::Serialize) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report types serialize");
    out.push('\n');
    out
}
