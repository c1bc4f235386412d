use newtonpoly::measure::sweep_and_fit;
use newtonpoly::predict::{diagnose_faces, nondegeneracy_from, predict_growth_from, PredictConfig};
use newtonpoly::{
    decay_sweep_and_fit, parse_poly, parse_poly_infer, predict_oscillation, transfer_check,
    GrowthEvidence, NewtonPolyhedron, OscSweep, SparsePoly, SweepConfig, ZeroSearchConfig,
};
use std::io::Write;
use std::path::Path;

use crate::args::{Format, InputArgs, OutputArgs};
use crate::error::CliError;
use crate::report::{
    faces_csv, osc_csv, sweep_csv, units, AnalysisReport, GrowthCheck, GrowthSection, InputSummary,
    Nondegeneracy, OscillationSection, PolyhedronSummary, Provenance, SemanticConfig, SCHEMA,
};

const MAX_VARS: usize = 4;

pub fn parse_input(input: &InputArgs) -> Result<(SparsePoly, Vec<String>), CliError> {
    parse_text(&input.poly, input.vars.as_deref(), input.dim)
}

pub fn parse_text(
    text: &str,
    vars: Option<&[String]>,
    dim: Option<usize>,
) -> Result<(SparsePoly, Vec<String>), CliError> {
    if let Some(d) = dim {
        if d == 0 || d > MAX_VARS {
            return Err(CliError::Dimension(format!(
                "--dim {d} is outside 1..={MAX_VARS}"
            )));
        }
    }
    match vars {
        Some(v) => {
            if let Some(d) = dim.filter(|&d| d != v.len()) {
                return Err(CliError::Config(format!(
                    "--dim {d} disagrees with {} variables",
                    v.len()
                )));
            }
            if v.len() > MAX_VARS {
                return Err(CliError::Dimension(format!(
                    "{} variables, at most {MAX_VARS} supported",
                    v.len()
                )));
            }
            Ok((parse_poly(text, v)?, v.to_vec()))
        }
        None => {
            let (p, vars) = parse_poly_infer(text, dim.unwrap_or(1))?;
            if let Some(d) = dim.filter(|&d| d < vars.len()) {
                return Err(CliError::Config(format!(
                    "--dim {d} is below the {} variables used",
                    vars.len()
                )));
            }
            Ok((p, vars))
        }
    }
}

/// Options for the optional measurement stages of a report.
#[derive(Debug, Clone, Default)]
pub struct Stages {
    pub sweep: Option<(SweepConfig, f64)>,
    pub oscillation: Option<OscSweep>,
}

pub fn predict_config(seed: u64) -> PredictConfig {
    PredictConfig {
        search: ZeroSearchConfig {
            seed,
            ..ZeroSearchConfig::default()
        },
    }
}

pub fn build_report(
    command: &str,
    p: &SparsePoly,
    vars: &[String],
    seed: u64,
    stages: &Stages,
) -> Result<AnalysisReport, CliError> {
    let pcfg = predict_config(seed);
    if p.is_zero() {
        return Err(CliError::Analysis(
            "the zero polynomial has no Newton polyhedron".into(),
        ));
    }
    let np = NewtonPolyhedron::build(p)?;
    let diagnoses = diagnose_faces(p, &np, &pcfg)?;
    let nd = nondegeneracy_from(&np, diagnoses.clone());
    let growth = predict_growth_from(p, &np, &diagnoses)?;
    let prediction = predict_oscillation(p, &growth);

    let growth_section = match &stages.sweep {
        Some((cfg, tol)) => {
            log::info!("sublevel sweep over {} thresholds", cfg.eps.len());
            let (sweep, fit) = sweep_and_fit(p, cfg)?;
            let check = GrowthCheck::new(&fit, &prediction, *tol);
            Some(GrowthSection {
                config: cfg.clone(),
                sweep,
                fit,
                check,
                csv: None,
            })
        }
        None => None,
    };
    let osc_section = match &stages.oscillation {
        Some(cfg) => {
            log::info!("oscillatory sweep over {} frequencies", cfg.lambdas.len());
            let (sweep, fit) = decay_sweep_and_fit(p, cfg)?;
            let transfer = transfer_check(
                GrowthEvidence::Prediction(&prediction),
                &fit,
                &prediction,
                newtonpoly::oscillation::TRANSFER_TOLERANCE,
            );
            Some(OscillationSection {
                config: cfg.clone(),
                sweep,
                fit,
                transfer,
                csv: None,
            })
        }
        None => None,
    };

    let semantic = SemanticConfig {
        command,
        seed,
        predict: &pcfg,
        sweep: stages.sweep.as_ref().map(|(c, _)| c),
        growth_tolerance: stages.sweep.as_ref().map(|(_, t)| *t),
        oscillation: stages.oscillation.as_ref(),
    };
    Ok(AnalysisReport {
        schema: SCHEMA.into(),
        command: command.into(),
        input: InputSummary::new(p, vars),
        polyhedron: PolyhedronSummary::from(&np),
        nondegeneracy: Some(Nondegeneracy {
            nondegenerate: nd.nondegenerate,
            gradient_nonvanishing: nd.gradient_nonvanishing,
            certainty: nd.certainty,
        }),
        diagnoses,
        prediction,
        growth: growth_section,
        oscillation: osc_section,
        units: units(),
        provenance: Provenance::new(&semantic),
    })
}

fn side_path(out: &Path, tag: &str) -> std::path::PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "report".into());
    out.with_file_name(format!("{stem}.{tag}.csv"))
}

/// Writes the report (JSON) or its main table (CSV) to `--out` or `stdout`.
pub fn emit(
    mut report: AnalysisReport,
    output: &OutputArgs,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let text = match output.format {
        Format::Json => {
            if let Some(out) = &output.out {
                if let Some(g) = report.growth.as_mut() {
                    let path = side_path(out, "sweep");
                    std::fs::write(&path, sweep_csv(&g.sweep)?)?;
                    g.csv = Some(path.display().to_string());
                }
                if let Some(o) = report.oscillation.as_mut() {
                    let path = side_path(out, "oscillation");
                    std::fs::write(&path, osc_csv(&o.sweep)?)?;
                    o.csv = Some(path.display().to_string());
                }
            }
            let mut s = serde_json::to_string_pretty(&report)?;
            s.push('\n');
            s
        }
        Format::Csv => match (&report.oscillation, &report.growth) {
            (Some(o), _) => osc_csv(&o.sweep)?,
            (None, Some(g)) => sweep_csv(&g.sweep)?,
            (None, None) => faces_csv(&report)?,
        },
    };
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}
