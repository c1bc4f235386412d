use clap::{Args, Parser, Subcommand, ValueEnum};
use newtonpoly::measure::{geometric, Estimator, SweepConfig, Weight};
use newtonpoly::OscSweep;
use std::path::PathBuf;

use crate::error::CliError;

/// Environment variable holding the worker-thread count.
pub const WORKERS_ENV: &str = "NEWTONPOLY_WORKERS";

#[derive(Debug, Parser)]
#[command(
    name = "newtonpoly",
    version,
    about = "Newton polyhedra, growth and decay indices of polynomial phases"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Predict the growth and oscillation indices from the Newton polyhedron.
    Analyze(AnalyzeArgs),
    /// Measure sublevel volumes and fit the growth exponent.
    Measure(MeasureArgs),
    /// Compute oscillatory integrals and fit the decay exponent.
    Oscillate(OscillateArgs),
    /// Check a corpus of polynomials with expected values.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EstimatorArg {
    Line,
    Indicator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightArg {
    Indicator,
    Bump,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Polynomial, e.g. "x^4 + x^2 + y^2 + z^2".
    pub poly: String,
    /// Comma-separated variable names, in order.
    #[arg(long, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
    /// Number of variables when they are inferred from the text.
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 1e-1)]
    pub eps_from: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub eps_to: f64,
    #[arg(long, default_value_t = 11)]
    pub eps_points: usize,
    /// Samples per shell and threshold.
    #[arg(long, default_value_t = 200_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 24)]
    pub shells: usize,
    /// Half-width of the cube around the origin.
    #[arg(long, default_value_t = 0.5)]
    pub eta: f64,
    #[arg(long, value_enum, default_value_t = EstimatorArg::Line)]
    pub estimator: EstimatorArg,
    #[arg(long, value_enum, default_value_t = WeightArg::Indicator)]
    pub weight: WeightArg,
    /// Largest distance between the fitted exponent and the predicted range.
    #[arg(long, default_value_t = 0.05)]
    pub tolerance: f64,
}

impl SweepArgs {
    pub fn config(&self, seed: u64) -> Result<SweepConfig, CliError> {
        if !(self.eps_from > 0.0 && self.eps_to > 0.0) || self.eps_points < 2 {
            return Err(CliError::Config(
                "eps range must be positive with at least two points".into(),
            ));
        }
        Ok(SweepConfig {
            eta: self.eta,
            eps: geometric(self.eps_from, self.eps_to, self.eps_points),
            samples: self.samples,
            shells: self.shells,
            seed,
            weight: match self.weight {
                WeightArg::Indicator => Weight::Indicator,
                WeightArg::Bump => Weight::SmoothBump,
            },
            estimator: match self.estimator {
                EstimatorArg::Line => Estimator::Line,
                EstimatorArg::Indicator => Estimator::Indicator,
            },
            line_var: None,
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct MeasureArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OscArgs {
    #[arg(long, default_value_t = 5e2)]
    pub lambda_from: f64,
    #[arg(long, default_value_t = 5e4)]
    pub lambda_to: f64,
    #[arg(long, default_value_t = 10)]
    pub lambda_points: usize,
    /// Half-width of the bump cutoff.
    #[arg(long = "eta", default_value_t = 0.5)]
    pub osc_eta: f64,
    /// Variables the phase depends on only through their radius, e.g. "y,z". Repeatable.
    #[arg(long)]
    pub radial: Vec<String>,
    /// Largest number of phase evaluations per integral.
    #[arg(long, default_value_t = 2_000_000_000)]
    pub budget: u64,
}

impl OscArgs {
    pub fn config(&self, vars: &[String]) -> Result<OscSweep, CliError> {
        if !(self.lambda_from > 0.0 && self.lambda_to > self.lambda_from) || self.lambda_points < 2
        {
            return Err(CliError::Config(
                "lambda range must be positive and increasing with at least two points".into(),
            ));
        }
        let mut radial = Vec::new();
        for group in &self.radial {
            let mut g = Vec::new();
            for name in group.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let i = vars.iter().position(|v| v == name).ok_or_else(|| {
                    CliError::Config(format!("radial variable {name:?} is not a variable"))
                })?;
                g.push(i);
            }
            radial.push(g);
        }
        Ok(OscSweep {
            lambdas: geometric(self.lambda_from, self.lambda_to, self.lambda_points),
            eta: self.osc_eta,
            radial,
            budget: self.budget,
            ..OscSweep::default()
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct OscillateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub osc: OscArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Corpus file (TOML); the bundled corpus when omitted.
    pub corpus: Option<PathBuf>,
    /// Skip measured expectations.
    #[arg(long)]
    pub quick: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Table format; a plain text table when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
