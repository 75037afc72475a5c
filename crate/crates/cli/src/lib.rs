//! Library side of the `rmcode` binary: argument definitions, command
//! handlers and output records.

pub mod commands;
pub mod error;
pub mod rows;
pub mod text;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rmrec::{Algorithm, CodeParams, URule, VRule};

pub use error::CliError;
pub use rows::{AnalyzeRow, Format, Interval, OutputRow, OUTPUT_HEADER};

#[derive(Debug, Parser)]
#[command(name = "rmcode", version, about = "Recursive decoding of Reed-Muller codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print n, k, d and the information paths.
    Info(CodeArgs),
    /// Encode information bits given as hex.
    Encode(EncodeArgs),
    /// Decode a received vector.
    Decode(DecodeArgs),
    /// Monte Carlo word and bit error rates.
    Simulate(SimulateArgs),
    /// Residual thresholds and per-path error predictions.
    Analyze(AnalyzeArgs),
    /// Measured operation counts against the proven bounds.
    Opcount(OpcountArgs),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct CodeArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub m: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub r: i64,
}

impl CodeArgs {
    pub fn params(&self) -> Result<CodeParams, CliError> {
        Ok(CodeParams::from_signed(self.m, self.r)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Psi,
    Phi,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Psi => Algorithm::Psi,
            AlgoArg::Phi => Algorithm::Phi,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum URuleArg {
    Scaled,
    Unscaled,
}

impl From<URuleArg> for URule {
    fn from(a: URuleArg) -> Self {
        match a {
            URuleArg::Scaled => URule::Scaled,
            URuleArg::Unscaled => URule::Unscaled,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VRuleArg {
    Product,
    MinSum,
}

impl From<VRuleArg> for VRule {
    fn from(a: VRuleArg) -> Self {
        match a {
            VRuleArg::Product => VRule::Product,
            VRuleArg::MinSum => VRule::MinSum,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TieArg {
    /// Fair coin seeded by `--seed`.
    Random,
    /// Always `+1`.
    Positive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CodewordFormat {
    /// `+`/`-` symbols.
    Symbols,
    /// Hex of the binary image.
    Hex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TextFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TransmitArg {
    AllOnes,
    Random,
}

#[derive(Debug, Clone, Args)]
pub struct RuleArgs {
    #[arg(long, value_enum, default_value_t = URuleArg::Scaled)]
    pub u_rule: URuleArg,
    #[arg(long, value_enum, default_value_t = VRuleArg::Product)]
    pub v_rule: VRuleArg,
}

#[derive(Debug, Clone, Args)]
pub struct EncodeArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Information bits as hex, first path most significant.
    #[arg(required_unless_present = "file")]
    pub info: Option<String>,
    /// Read the information bits from a file instead.
    #[arg(long, conflicts_with = "info")]
    pub file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = CodewordFormat::Symbols)]
    pub output: CodewordFormat,
}

#[derive(Debug, Clone, Args)]
pub struct DecodeArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Received vector: `+`/`-` string, hex of the binary image, or
    /// comma/space separated reals.
    #[arg(required_unless_present = "file", allow_hyphen_values = true)]
    pub input: Option<String>,
    #[arg(long, conflicts_with = "input")]
    pub file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = AlgoArg::Psi)]
    pub algo: AlgoArg,
    #[command(flatten)]
    pub rules: RuleArgs,
    #[arg(long, value_enum, default_value_t = TieArg::Random)]
    pub ties: TieArg,
    #[arg(long, env = "RM_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = CodewordFormat::Symbols)]
    pub output: CodewordFormat,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    pub format: TextFormat,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// One or more algorithms, comma separated.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "psi")]
    pub algo: Vec<AlgoArg>,
    /// Single channel, `bsc:<p>` or `awgn:<sigma>`.
    #[arg(long, conflicts_with = "grid")]
    pub channel: Option<String>,
    /// Channel grid: `[bsc:|awgn:]a,b,c` or `[bsc:|awgn:]start:stop:step`.
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, env = "RM_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub rules: RuleArgs,
    #[arg(long, value_enum, default_value_t = TransmitArg::AllOnes)]
    pub transmit: TransmitArg,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to a file instead of standard output.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Channel residual `1 - 2p`.
    #[arg(long, required_unless_present = "at_threshold", conflicts_with = "at_threshold")]
    pub epsilon: Option<f64>,
    /// Use the residual threshold of the first chosen algorithm.
    #[arg(long)]
    pub at_threshold: bool,
    /// Constant of the first-order residual; must exceed ln 4.
    #[arg(long, default_value_t = rmrec::analysis::DEFAULT_C)]
    pub c: f64,
    /// Algorithms to report; `psi` plus `phi` when r >= 1 by default.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub algo: Vec<AlgoArg>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
}

#[derive(Debug, Clone, Args)]
pub struct OpcountArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Algorithms to audit; `psi` plus `phi` when r >= 1 by default.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub algo: Vec<AlgoArg>,
    /// Random noisy inputs per rule combination.
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, env = "RM_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Restrict to one u-rule; both by default.
    #[arg(long, value_enum)]
    pub u_rule: Option<URuleArg>,
    /// Restrict to one v-rule; both by default.
    #[arg(long, value_enum)]
    pub v_rule: Option<VRuleArg>,
}

/// Runs a parsed command, writing its report to `out`.
pub fn run(cli: &Cli, out: &mut dyn std::io::Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Info(a) => commands::info(a, out),
        Command::Encode(a) => commands::encode(a, out),
        Command::Decode(a) => commands::decode(a, out),
        Command::Simulate(a) => commands::simulate(a, out),
        Command::Analyze(a) => commands::analyze(a, out),
        Command::Opcount(a) => commands::opcount(a, out),
    }
}
