//! Command-line front end.
//!
//! The `scaled-mtp` binary is a thin wrapper around [`run`]. Commands:
//!
//! * `reject`: apply a procedure to a p-value file.
//! * `thresholds`: print the critical values for a given `m`.
//! * `verify`: Monte-Carlo check of a procedure's control guarantee.
//! * `optimize`: gain study over a `gamma` or `tau` grid.
//! * `twotest`: closed-form quantities of the two-test model.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 malformed input or usage,
//! 3 invalid parameter combination, 4 a verification check failed.
//! Nothing is written when a command fails before producing its result.

mod commands;
mod input;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use input::{parse_pvalues, read_pvalues, PValueInput};

use crate::procedures::{CorrectionUpper, Dependence, SevProcedureConfig, StepMode, StpProcedureConfig};
use crate::simulation::{Correlation, GaussianShiftModel, McSettings, Procedure};
use crate::types::{ScalingSpec, ShapeSpec, WeightVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub const IO: i32 = 1;
    pub const MALFORMED_INPUT: i32 = 2;
    pub const INVALID_PARAMETERS: i32 = 3;
    pub const CHECK_FAILED: i32 = 4;

    pub fn input(message: impl Into<String>) -> Self {
        Self { code: Self::MALFORMED_INPUT, message: message.into() }
    }

    pub fn params(message: impl Into<String>) -> Self {
        Self { code: Self::INVALID_PARAMETERS, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self { code: Self::IO, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::params(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "scaled-mtp", version, about = "Multiple testing with scaled error rates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply a procedure to a file of p-values
    Reject(RejectArgs),
    /// Print the critical values of a procedure
    Thresholds(ThresholdsArgs),
    /// Monte-Carlo check of a procedure's error control
    Verify(VerifyArgs),
    /// Best gamma or tau per false-positive price lambda
    Optimize(OptimizeArgs),
    /// Optimal critical value in the two-test model
    Twotest(TwoTestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file (standard output when absent)
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    StepUp,
    StepDown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DependenceArg {
    /// Independence or positive dependence
    Simes,
    /// Any dependence; thresholds divided by the correction constant
    Arbitrary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UpperArg {
    Conservative,
    Literal,
}

/// Procedure selection shared by `reject`, `thresholds` and `verify`.
#[derive(Debug, Clone, Args, Serialize)]
pub struct ProcedureArgs {
    /// Step-up procedure controlling SEV = E[SFDP] (the default)
    #[arg(long)]
    pub sev: bool,
    /// Step-down procedure controlling STP = P[SFDP > beta]
    #[arg(long)]
    pub stp: bool,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// linear, constant:C, truncated:TAU, power:GAMMA or tabulated:v1;v2;...
    #[arg(long, default_value = "linear")]
    pub scaling: ScalingSpec,
    /// identity or harmonic (SEV only)
    #[arg(long)]
    pub shape: Option<ShapeSpec>,
    /// SEV only; step-up by default
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// STP exceedance level, 0 by default
    #[arg(long)]
    pub beta: Option<f64>,
    /// STP only
    #[arg(long, value_enum)]
    pub dependence: Option<DependenceArg>,
    /// Upper index of the arbitrary-dependence correction sum
    #[arg(long, value_enum)]
    pub correction_upper: Option<UpperArg>,
}

impl ProcedureArgs {
    pub fn build(&self, weights: Option<WeightVector>) -> Result<Procedure, CliError> {
        if self.sev && self.stp {
            return Err(CliError::params("--sev and --stp are mutually exclusive"));
        }
        if self.stp {
            if weights.is_some() {
                return Err(CliError::params("weights are only supported by --sev procedures"));
            }
            if self.shape.is_some() || self.mode.is_some() {
                return Err(CliError::params("--shape and --mode only apply to --sev"));
            }
            let dependence = match self.dependence {
                Some(DependenceArg::Arbitrary) => Dependence::Arbitrary,
                _ => Dependence::SimesPositive,
            };
            let upper = match self.correction_upper {
                Some(UpperArg::Literal) => CorrectionUpper::Literal,
                _ => CorrectionUpper::Conservative,
            };
            if upper == CorrectionUpper::Literal && dependence != Dependence::Arbitrary {
                return Err(CliError::params("--correction-upper requires --dependence arbitrary"));
            }
            let cfg = StpProcedureConfig::new(self.alpha, self.beta.unwrap_or(0.0), self.scaling.clone())
                .with_dependence(dependence)
                .with_correction_upper(upper);
            return Ok(Procedure::Stp(cfg));
        }
        if self.beta.is_some() || self.dependence.is_some() || self.correction_upper.is_some() {
            return Err(CliError::params("--beta, --dependence and --correction-upper only apply to --stp"));
        }
        let mut cfg = SevProcedureConfig::new(self.alpha, self.scaling.clone())
            .with_shape(self.shape.clone().unwrap_or(ShapeSpec::Identity))
            .with_mode(match self.mode {
                Some(ModeArg::StepDown) => StepMode::StepDown,
                _ => StepMode::StepUp,
            });
        if let Some(w) = weights {
            cfg = cfg.with_weights(w);
        }
        Ok(Procedure::Sev(cfg))
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ModelArgs {
    /// Number of true null hypotheses
    #[arg(long)]
    pub m0: usize,
    /// Number of true alternatives
    #[arg(long, default_value_t = 0)]
    pub m1: usize,
    /// Mean shift of the alternatives
    #[arg(long, default_value_t = 3.0)]
    pub delta: f64,
    /// Equicorrelation of the test statistics (independent when absent)
    #[arg(long)]
    pub rho: Option<f64>,
}

impl ModelArgs {
    pub fn model(&self) -> Result<GaussianShiftModel, CliError> {
        let mut model = GaussianShiftModel::new(self.m0, self.m1, self.delta);
        if let Some(rho) = self.rho {
            model = model.with_correlation(Correlation::Equicorrelated(rho));
        }
        model.validate()?;
        Ok(model)
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct McArgs {
    #[arg(long, default_value_t = 1000)]
    pub reps: usize,
    /// Master seed; required, there is no time-based default
    #[arg(long)]
    pub seed: u64,
    /// Worker threads (default: available processors)
    #[arg(long, env = "SCALED_MTP_WORKERS")]
    #[serde(skip)]
    pub workers: Option<usize>,
}

impl McArgs {
    pub fn settings(&self) -> Result<McSettings, CliError> {
        if self.reps == 0 {
            return Err(CliError::params("--reps must be at least 1"));
        }
        let workers = match self.workers {
            Some(0) => return Err(CliError::params("--workers must be at least 1")),
            Some(n) => n,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        Ok(McSettings::new(self.reps, self.seed).with_workers(workers))
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RejectArgs {
    /// One p-value per line, or `id,p` / `id,p,weight` rows
    pub input: PathBuf,
    #[command(flatten)]
    pub procedure: ProcedureArgs,
    #[command(flatten)]
    #[serde(skip)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ThresholdsArgs {
    /// Number of hypotheses
    #[arg(long)]
    pub m: usize,
    #[command(flatten)]
    pub procedure: ProcedureArgs,
    #[command(flatten)]
    #[serde(skip)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub procedure: ProcedureArgs,
    #[command(flatten)]
    pub mc: McArgs,
    #[command(flatten)]
    #[serde(skip)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// Comma-separated prices of a false positive
    #[arg(long, value_delimiter = ',', required = true)]
    pub lambdas: Vec<f64>,
    /// Comma-separated power-scaling exponents
    #[arg(long, value_delimiter = ',')]
    pub gammas: Option<Vec<f64>>,
    /// Comma-separated truncation levels
    #[arg(long, value_delimiter = ',')]
    pub taus: Option<Vec<usize>>,
    #[command(flatten)]
    pub mc: McArgs,
    #[command(flatten)]
    #[serde(skip)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TwoTestArgs {
    /// Price of a false positive
    #[arg(long)]
    pub lambda: f64,
    /// Mean shift of the alternative
    #[arg(long)]
    pub delta: f64,
    #[command(flatten)]
    #[serde(skip)]
    pub out: OutputArgs,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return Ok(());
            }
            return Err(CliError::input(e.render().to_string()));
        }
    };
    execute(&cli.command)
}

pub fn execute(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Reject(args) => commands::reject(args),
        Command::Thresholds(args) => commands::thresholds(args),
        Command::Verify(args) => commands::verify(args),
        Command::Optimize(args) => commands::optimize(args),
        Command::Twotest(args) => commands::twotest(args),
    }
}
