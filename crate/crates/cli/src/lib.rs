//! Command-line front end: analysis reports, measurement sweeps and corpus verification.

pub mod args;
pub mod commands;
pub mod corpus;
pub mod error;
pub mod report;

use std::io::Write;

pub use args::Cli;
use args::{Command, Format};
use commands::{build_report, emit, parse_input, Stages};
pub use error::{exit, CliError};
pub use report::AnalysisReport;

/// Runs one command and returns the process exit code.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Analyze(a) => {
            let (p, vars) = parse_input(&a.input)?;
            let report = build_report("analyze", &p, &vars, a.input.seed, &Stages::default())?;
            emit(report, &a.output, stdout)?;
        }
        Command::Measure(a) => {
            let (p, vars) = parse_input(&a.input)?;
            let stages = Stages {
                sweep: Some((a.sweep.config(a.input.seed)?, a.sweep.tolerance)),
                oscillation: None,
            };
            let report = build_report("measure", &p, &vars, a.input.seed, &stages)?;
            emit(report, &a.output, stdout)?;
        }
        Command::Oscillate(a) => {
            let (p, vars) = parse_input(&a.input)?;
            let stages = Stages {
                sweep: None,
                oscillation: Some(a.osc.config(&vars)?),
            };
            let report = build_report("oscillate", &p, &vars, a.input.seed, &stages)?;
            emit(report, &a.output, stdout)?;
        }
        Command::Verify(a) => {
            let text = match &a.corpus {
                Some(path) => std::fs::read_to_string(path)?,
                None => corpus::BUNDLED.to_string(),
            };
            let summary = corpus::verify(&text, a.seed, a.quick)?;
            let body = match a.format {
                None => summary.text_table(),
                Some(Format::Json) => serde_json::to_string_pretty(&summary)? + "\n",
                Some(Format::Csv) => summary.csv()?,
            };
            match &a.out {
                Some(path) => std::fs::write(path, body)?,
                None => stdout.write_all(body.as_bytes())?,
            }
            if !summary.all_pass() {
                return Ok(exit::VERIFY_FAILED);
            }
        }
    }
    Ok(exit::OK)
}

/// Sizes the global worker pool from the environment; invalid values are ignored.
pub fn configure_workers() {
    let n = std::env::var(args::WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    if let Some(n) = n {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .is_err()
        {
            log::warn!("worker pool already initialised");
        }
    }
}
