use newtonpoly::measure::geometric;
use newtonpoly::oscillation::{Verdict, TRANSFER_TOLERANCE};
use newtonpoly::rational::{fmt as qfmt, parse as parse_rational};
use newtonpoly::{
    MultiplicityRange, OscSweep, OscillationStatus, PredictionKind, Rational, SweepConfig,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::commands::{build_report, parse_text, Stages};
use crate::error::CliError;
use crate::report::AnalysisReport;

pub const BUNDLED: &str = include_str!("../corpus/bundled.toml");

pub const GROWTH_TOLERANCE: f64 = 0.05;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Corpus {
    #[serde(default)]
    pub case: Vec<Case>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Case {
    pub name: String,
    pub poly: String,
    pub vars: Option<Vec<String>>,
    pub dim: Option<usize>,
    /// Where the expected values come from.
    pub source: Option<String>,
    #[serde(default)]
    pub expect: Expect,
    pub sweep: Option<CaseSweep>,
    pub oscillation: Option<CaseOsc>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    pub d: Option<String>,
    pub k: Option<usize>,
    pub kind: Option<PredictionKind>,
    /// Exact predicted growth exponent.
    pub growth: Option<String>,
    pub growth_lower: Option<String>,
    pub growth_upper: Option<String>,
    pub multiplicity: Option<u32>,
    pub nondegenerate: Option<bool>,
    pub oscillation_status: Option<OscillationStatus>,
    pub measured_growth: Option<f64>,
    pub measured_decay: Option<f64>,
    pub transfer: Option<Verdict>,
    pub growth_tolerance: Option<f64>,
    pub decay_tolerance: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseSweep {
    pub eps_from: Option<f64>,
    pub eps_to: Option<f64>,
    pub eps_points: Option<usize>,
    pub samples: Option<usize>,
    pub shells: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseOsc {
    pub lambda_from: Option<f64>,
    pub lambda_to: Option<f64>,
    pub lambda_points: Option<usize>,
    #[serde(default)]
    pub radial: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub case: String,
    pub check: String,
    pub expected: String,
    pub actual: String,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub rows: Vec<Row>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub corpus_hash: String,
    pub seed: u64,
    pub version: String,
}

impl VerifySummary {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn text_table(&self) -> String {
        let header = ["case", "check", "expected", "actual", "status"];
        let cells: Vec<[String; 5]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.case.clone(),
                    r.check.clone(),
                    r.expected.clone(),
                    r.actual.clone(),
                    format!("{:?}", r.status).to_uppercase(),
                ]
            })
            .collect();
        let mut widths = header.map(str::len);
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cols: &[String]| {
            let mut s = cols
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ");
            s.truncate(s.trim_end().len());
            s.push('\n');
            s
        };
        let mut out = line(&header.map(String::from));
        for row in &cells {
            out.push_str(&line(row));
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} skipped\n",
            self.passed, self.failed, self.skipped
        ));
        out
    }

    pub fn csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r)?;
        }
        if self.rows.is_empty() {
            w.write_record(["case", "check", "expected", "actual", "status"])?;
        }
        Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv is utf-8"))
    }
}

pub fn parse_corpus(text: &str) -> Result<Corpus, CliError> {
    toml::from_str(text).map_err(|e| CliError::Corpus(e.to_string()))
}

fn rational(s: &str, what: &str) -> Result<Rational, CliError> {
    parse_rational(s).ok_or_else(|| CliError::Corpus(format!("{what}: {s:?} is not a rational")))
}

impl CaseSweep {
    fn config(&self, seed: u64) -> SweepConfig {
        let base = SweepConfig::default();
        SweepConfig {
            eps: geometric(
                self.eps_from.unwrap_or(1e-1),
                self.eps_to.unwrap_or(1e-6),
                self.eps_points.unwrap_or(11),
            ),
            samples: self.samples.unwrap_or(base.samples),
            shells: self.shells.unwrap_or(base.shells),
            seed,
            ..base
        }
    }
}

impl CaseOsc {
    fn config(&self, vars: &[String]) -> Result<OscSweep, CliError> {
        let mut radial = Vec::new();
        for g in &self.radial {
            let idx: Result<Vec<usize>, CliError> = g
                .split(',')
                .map(str::trim)
                .map(|v| {
                    vars.iter().position(|x| x == v).ok_or_else(|| {
                        CliError::Corpus(format!("radial variable {v:?} is not a variable"))
                    })
                })
                .collect();
            radial.push(idx?);
        }
        Ok(OscSweep {
            lambdas: geometric(
                self.lambda_from.unwrap_or(5e2),
                self.lambda_to.unwrap_or(5e4),
                self.lambda_points.unwrap_or(10),
            ),
            radial,
            ..OscSweep::default()
        })
    }
}

struct Rows<'a> {
    case: &'a str,
    rows: Vec<Row>,
}

impl Rows<'_> {
    fn push(&mut self, check: &str, expected: impl ToString, actual: impl ToString, ok: bool) {
        self.rows.push(Row {
            case: self.case.to_string(),
            check: check.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
        });
    }

    fn skip(&mut self, check: &str, expected: impl ToString) {
        self.rows.push(Row {
            case: self.case.to_string(),
            check: check.into(),
            expected: expected.to_string(),
            actual: String::new(),
            status: Status::Skip,
        });
    }
}

/// Checks one case; problems with the case itself become failing rows, not errors.
pub fn check_case(case: &Case, seed: u64, quick: bool) -> Vec<Row> {
    let mut rows = Rows {
        case: &case.name,
        rows: Vec::new(),
    };
    if let Err(e) = check_into(case, seed, quick, &mut rows) {
        rows.push("run", "ok", e.to_string(), false);
    }
    rows.rows
}

fn check_into(case: &Case, seed: u64, quick: bool, rows: &mut Rows<'_>) -> Result<(), CliError> {
    let e = &case.expect;
    let (p, vars) = parse_text(&case.poly, case.vars.as_deref(), case.dim)?;
    let want_growth = e.measured_growth.is_some() && !quick;
    let want_decay = (e.measured_decay.is_some() || e.transfer.is_some()) && !quick;
    let stages = Stages {
        sweep: want_growth.then(|| {
            (
                case.sweep.clone().unwrap_or_default().config(seed),
                e.growth_tolerance.unwrap_or(GROWTH_TOLERANCE),
            )
        }),
        oscillation: if want_decay {
            Some(case.oscillation.clone().unwrap_or_default().config(&vars)?)
        } else {
            None
        },
    };
    let report = build_report("verify", &p, &vars, seed, &stages)?;
    compare(e, &report, quick, rows)
}

fn compare(
    e: &Expect,
    r: &AnalysisReport,
    quick: bool,
    rows: &mut Rows<'_>,
) -> Result<(), CliError> {
    let pred = &r.prediction;
    if let Some(d) = &e.d {
        let want = rational(d, "d")?;
        rows.push(
            "d",
            qfmt(&want),
            qfmt(&r.polyhedron.d),
            want == r.polyhedron.d,
        );
    }
    if let Some(k) = e.k {
        rows.push("k", k, r.polyhedron.k, k == r.polyhedron.k);
    }
    if let Some(kind) = e.kind {
        rows.push(
            "kind",
            kind_name(kind),
            kind_name(pred.kind),
            kind == pred.kind,
        );
    }
    let range = &pred.growth_exponent;
    if let Some(g) = &e.growth {
        let want = rational(g, "growth")?;
        rows.push(
            "growth",
            qfmt(&want),
            range,
            range.exact_value() == Some(&want),
        );
    }
    if let Some(g) = &e.growth_lower {
        let want = rational(g, "growth_lower")?;
        let got = range
            .lower
            .as_ref()
            .map(qfmt)
            .unwrap_or_else(|| "none".into());
        rows.push(
            "growth lower",
            qfmt(&want),
            got,
            range.lower.as_ref() == Some(&want),
        );
    }
    if let Some(g) = &e.growth_upper {
        let want = rational(g, "growth_upper")?;
        let got = range
            .upper
            .as_ref()
            .map(qfmt)
            .unwrap_or_else(|| "none".into());
        rows.push(
            "growth upper",
            qfmt(&want),
            got,
            range.upper.as_ref() == Some(&want),
        );
    }
    if let Some(m) = e.multiplicity {
        let got = pred
            .log_multiplicity
            .as_ref()
            .map(|x| x.to_string())
            .unwrap_or_else(|| "none".into());
        rows.push(
            "multiplicity",
            m,
            got,
            pred.log_multiplicity == Some(MultiplicityRange::exact(m)),
        );
    }
    if let Some(nd) = e.nondegenerate {
        let got = r.nondegeneracy.as_ref().map(|x| x.nondegenerate);
        rows.push(
            "nondegenerate",
            nd,
            got.map(|b| b.to_string()).unwrap_or_default(),
            got == Some(nd),
        );
    }
    if let Some(s) = e.oscillation_status {
        rows.push(
            "oscillation status",
            status_name(s),
            status_name(pred.oscillation_status),
            s == pred.oscillation_status,
        );
    }
    if let Some(a) = e.measured_growth {
        let tol = e.growth_tolerance.unwrap_or(GROWTH_TOLERANCE);
        match &r.growth {
            Some(g) if !quick => rows.push(
                "measured growth",
                format!("{a} +- {tol}"),
                format!("{:.4}", g.fit.alpha),
                (g.fit.alpha - a).abs() <= tol,
            ),
            _ => rows.skip("measured growth", format!("{a} +- {tol}")),
        }
    }
    if let Some(a) = e.measured_decay {
        let tol = e.decay_tolerance.unwrap_or(TRANSFER_TOLERANCE);
        match &r.oscillation {
            Some(o) if !quick => rows.push(
                "measured decay",
                format!("{a} +- {tol}"),
                format!("{:.4}", o.fit.alpha),
                (o.fit.alpha - a).abs() <= tol,
            ),
            _ => rows.skip("measured decay", format!("{a} +- {tol}")),
        }
    }
    if let Some(v) = e.transfer {
        match &r.oscillation {
            Some(o) if !quick => rows.push(
                "transfer",
                verdict_name(v),
                verdict_name(o.transfer.verdict),
                v == o.transfer.verdict,
            ),
            _ => rows.skip("transfer", verdict_name(v)),
        }
    }
    Ok(())
}

fn kind_name(k: PredictionKind) -> String {
    serde_json::to_value(k)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default()
}

fn status_name(s: OscillationStatus) -> String {
    serde_json::to_value(s)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default()
}

fn verdict_name(v: Verdict) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default()
}

pub fn verify(text: &str, seed: u64, quick: bool) -> Result<VerifySummary, CliError> {
    let corpus = parse_corpus(text)?;
    let rows: Vec<Row> = corpus
        .case
        .iter()
        .flat_map(|c| check_case(c, seed, quick))
        .collect();
    let count = |s: Status| rows.iter().filter(|r| r.status == s).count();
    Ok(VerifySummary {
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skip),
        rows,
        corpus_hash: hex::encode(Sha256::digest(text.as_bytes())),
        seed,
        version: env!("CARGO_PKG_VERSION").into(),
    })
}
