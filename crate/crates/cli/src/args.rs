use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "sicwitness",
    version,
    about = "Entanglement witnesses from symmetric informationally complete POVMs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify a SIC or GSIC POVM.
    CheckPovm(CheckPovmArgs),
    /// Evaluate the witness on a state.
    Eval(EvalArgs),
    /// Witness values along a state family, as CSV.
    Scan(ScanArgs),
    /// Choose the rotation that minimizes the witness value for a state.
    Optimize(OptimizeArgs),
    /// Reproduce one of the worked examples.
    Demo(DemoArgs),
    /// Witness, optimized witness, G criterion and PPT side by side.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct PovmChoice {
    /// Built-in SIC of this dimension.
    #[arg(long, value_name = "D")]
    pub builtin_sic: Option<usize>,
    /// GSIC of this dimension (needs --a).
    #[arg(long, value_name = "D", requires = "a")]
    pub gsic: Option<usize>,
    /// POVM file.
    #[arg(long, value_name = "PATH")]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckPovmArgs {
    #[command(flatten)]
    pub source: PovmChoice,
    /// GSIC purity parameter.
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

/// Options shared by every command that evaluates a witness on a state.
#[derive(Debug, Args)]
pub struct Common {
    /// Local dimension d.
    #[arg(long)]
    pub d: usize,
    /// builtin | gsic:a=<a> | file:<path>
    #[arg(long, default_value = "builtin")]
    pub povm: String,
    /// Repair rounded inputs (nearest density matrix, nearest rotation).
    #[arg(long, action = ArgAction::Count)]
    pub repair: u8,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Validation tolerance for state files.
    #[arg(long, default_value_t = 1e-9)]
    pub state_tol: f64,
    /// Validation tolerance for rotation files.
    #[arg(long, default_value_t = 1e-10)]
    pub rotation_tol: f64,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub common: Common,
    /// identity | random:<seed> | file:<path> | appendix | optimize
    #[arg(long, default_value = "identity")]
    pub rotation: String,
    /// maxent | maxmixed | isotropic:alpha=<x> | bell-diagonal:p=<x> | example3 | file:<path>
    #[arg(long)]
    pub state: String,
    /// Also write the witness operator to this file.
    #[arg(long, value_name = "PATH")]
    pub write_witness: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Isotropic,
    BellDiagonal,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub d: usize,
    /// Use GSIC(a) instead of the built-in SIC.
    #[arg(long)]
    pub a: Option<f64>,
    /// Grid for the isotropic family, start:end:step (inclusive).
    #[arg(long)]
    pub alpha: Option<String>,
    /// Grid for the Bell-diagonal family, start:end:step (inclusive).
    #[arg(long)]
    pub p: Option<String>,
    /// identity | random:<seed> | file:<path> | appendix
    #[arg(long, default_value = "identity")]
    pub rotation: String,
    #[arg(long, action = ArgAction::Count)]
    pub repair: u8,
    #[arg(long, default_value_t = 1e-10)]
    pub rotation_tol: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Write the CSV here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub state: String,
    /// Write the optimal rotation here.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    /// Example number.
    #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
    pub example: u8,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    Plain,
    Conjugated,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value = "identity")]
    pub rotation: String,
    #[arg(long)]
    pub state: String,
    /// Pairing used by the G criterion.
    #[arg(long, value_enum, default_value_t = Convention::Conjugated)]
    pub convention: Convention,
    /// Emit CSV instead of `name value threshold verdict` lines.
    #[arg(long)]
    pub csv: bool,
}
