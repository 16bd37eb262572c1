use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ratideal::numeric::{Mode, Precision};
use ratideal::Error;
use serde::Serialize;

#[derive(Parser, Debug, Clone)]
#[command(name = "ratideal", version, about = "Hyperbolic gamma evaluation and identity verification")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    /// Working precision in decimal digits, at least 16.
    #[arg(long, global = true, env = "RATIDEAL_PRECISION")]
    pub precision: Option<u32>,
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,
    /// Relative tolerance for float comparisons.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Write the JSON report here instead of printing a summary only.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print the JSON report on stdout.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeArg {
    Exact,
    Float,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Repr {
    Auto,
    Product,
    Integral,
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyKind {
    Ratbeta,
    RatTrafo,
    HypBeta,
    VTrafo,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    A,
    B,
    C,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Evaluate γ⁽²⁾(u; ω₁, ω₂). Defaults to ω = e^{±iπ/8}.
    GammaEval {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true, requires = "omega2")]
        omega1: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "omega1")]
        omega2: Option<String>,
        #[arg(long, value_enum, default_value_t = Repr::Auto)]
        repr: Repr,
    },
    /// Run seeded random checks of one identity.
    Verify {
        #[arg(value_enum)]
        kind: VerifyKind,
        /// Number of random cases (default 25, 10, 5, 3 by kind).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        count: Option<u64>,
    },
    /// Compare both sides of the degeneration limit along a δ list.
    LimitScan {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        n: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        y: Vec<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        delta: Vec<f64>,
    },
    /// Check the three worked closed forms against the residue engine.
    Examples {
        #[arg(long, value_enum, requires = "a")]
        which: Option<Which>,
        /// Exact parameters, e.g. "-i,-2i,-3i,-4i".
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "which")]
        a: Vec<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::GammaEval { .. } => "gamma-eval",
            Command::Verify { .. } => "verify",
            Command::LimitScan { .. } => "limit-scan",
            Command::Examples { .. } => "examples",
        }
    }
}

/// Resolved settings echoed into every report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub seed: u64,
    pub precision_digits: u32,
    pub tolerance: f64,
    pub mode: Mode,
    pub output_path: String,
    #[serde(skip)]
    pub precision: Precision,
}

impl RunConfig {
    pub fn resolve(cli: &Cli) -> Result<Self, Error> {
        let g = &cli.global;
        let digits = g.precision.unwrap_or(Precision::DEFAULT.digits());
        if digits < 16 {
            return Err(Error::InvalidParameters(format!("precision must be at least 16 digits, got {digits}")));
        }
        let precision = Precision::new(digits)?;
        let hyperbolic = matches!(
            cli.command,
            Command::GammaEval { .. }
                | Command::LimitScan { .. }
                | Command::Verify { kind: VerifyKind::HypBeta | VerifyKind::VTrafo, .. }
        );
        let mode = match (g.mode, hyperbolic) {
            (Some(ModeArg::Exact), true) => {
                return Err(Error::InvalidParameters(format!(
                    "{} works in floating arithmetic only",
                    cli.command.name()
                )))
            }
            (Some(ModeArg::Float), _) | (None, true) => Mode::Float,
            (Some(ModeArg::Exact), false) | (None, false) => Mode::Exact,
        };
        let tolerance = g.tol.unwrap_or(1e-6);
        let floor = 10f64.powi(4 - digits as i32);
        if !(tolerance > 0.0) || tolerance < floor {
            return Err(Error::InvalidParameters(format!(
                "tolerance {tolerance:e} must be at least 10^(4−{digits}) = {floor:e}"
            )));
        }
        Ok(RunConfig {
            command: cli.command.name().to_string(),
            seed: g.seed,
            precision_digits: digits,
            tolerance,
            mode,
            output_path: g.out.as_ref().map(|p| p.display().to_string()).unwrap_or_default(),
            precision,
        })
    }
}
