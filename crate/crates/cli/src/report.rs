use newtonpoly::measure::SweepResult;
use newtonpoly::oscillation::OscSweepResult;
use newtonpoly::predict::PredictConfig;
use newtonpoly::rational::serde_q;
use newtonpoly::{
    Certainty, ExponentRange, Face, FaceDiagnosis, FitResult, IndexPrediction, NewtonPolyhedron,
    OscSweep, Rational, SparsePoly, SweepConfig, TransferReport,
};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

pub const SCHEMA: &str = "newtonpoly-report/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: String,
    pub command: String,
    pub input: InputSummary,
    pub polyhedron: PolyhedronSummary,
    pub diagnoses: Vec<FaceDiagnosis>,
    pub nondegeneracy: Option<Nondegeneracy>,
    pub prediction: IndexPrediction,
    pub growth: Option<GrowthSection>,
    pub oscillation: Option<OscillationSection>,
    /// Units and scale of the numeric fields, keyed by field name.
    pub units: BTreeMap<String, String>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSummary {
    /// Canonical text: terms in descending lexicographic exponent order.
    pub canonical: String,
    pub variables: Vec<String>,
    /// Exponent vector (comma-separated) to coefficient.
    pub terms: BTreeMap<String, String>,
}

impl InputSummary {
    pub fn new(p: &SparsePoly, vars: &[String]) -> Self {
        let terms = p
            .terms()
            .map(|(e, c)| {
                let key =
                    e.0.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",");
                (key, newtonpoly::rational::fmt(c))
            })
            .collect();
        InputSummary {
            canonical: p.display_with(vars).to_string(),
            variables: vars.to_vec(),
            terms,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceSummary {
    #[serde(with = "serde_q::vec")]
    pub normal: Vec<Rational>,
    #[serde(with = "serde_q")]
    pub offset: Rational,
    pub exponents: Vec<Vec<u32>>,
    pub dim: usize,
    pub compact: bool,
}

impl From<&Face> for FaceSummary {
    fn from(f: &Face) -> Self {
        FaceSummary {
            normal: f.normal.clone(),
            offset: f.offset.clone(),
            exponents: f.exponents.clone(),
            dim: f.dim,
            compact: f.compact,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyhedronSummary {
    pub n: usize,
    pub vertices: Vec<Vec<u32>>,
    /// Newton distance.
    #[serde(with = "serde_q")]
    pub d: Rational,
    /// Dimension of the central face.
    pub k: usize,
    pub central_face: FaceSummary,
    pub central_compact: bool,
    pub faces: Vec<FaceSummary>,
}

impl From<&NewtonPolyhedron> for PolyhedronSummary {
    fn from(np: &NewtonPolyhedron) -> Self {
        let c = np.central_face();
        PolyhedronSummary {
            n: np.n,
            vertices: np.vertices.clone(),
            d: c.d,
            k: c.k,
            central_face: (&c.central_face).into(),
            central_compact: c.central_compact,
            faces: np.faces.iter().map(FaceSummary::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nondegeneracy {
    /// No compact face polynomial vanishes on the torus.
    pub nondegenerate: bool,
    /// No compact face polynomial has a critical zero on the torus.
    pub gradient_nonvanishing: bool,
    pub certainty: Certainty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Consistency {
    Consistent,
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthCheck {
    pub verdict: Consistency,
    pub alpha: f64,
    pub predicted: ExponentRange,
    pub tolerance: f64,
}

impl GrowthCheck {
    pub fn new(fit: &FitResult, prediction: &IndexPrediction, tolerance: f64) -> Self {
        let ok = prediction
            .growth_exponent
            .contains_within(fit.alpha, tolerance);
        GrowthCheck {
            verdict: if ok {
                Consistency::Consistent
            } else {
                Consistency::Inconsistent
            },
            alpha: fit.alpha,
            predicted: prediction.growth_exponent.clone(),
            tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthSection {
    pub config: SweepConfig,
    pub sweep: SweepResult,
    pub fit: FitResult,
    pub check: GrowthCheck,
    /// Path of the sweep table, when one was written.
    pub csv: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OscillationSection {
    pub config: OscSweep,
    pub sweep: OscSweepResult,
    pub fit: FitResult,
    pub transfer: TransferReport,
    pub csv: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    pub config_hash: String,
}

/// The options that change results. Output paths, formats and worker counts are excluded.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SemanticConfig<'a> {
    pub command: &'a str,
    pub seed: u64,
    pub predict: &'a PredictConfig,
    pub sweep: Option<&'a SweepConfig>,
    pub growth_tolerance: Option<f64>,
    pub oscillation: Option<&'a OscSweep>,
}

impl SemanticConfig<'_> {
    pub fn hash(&self) -> String {
        let text = serde_json::to_string(self).expect("plain data serialises");
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

impl Provenance {
    pub fn new(cfg: &SemanticConfig<'_>) -> Self {
        Provenance {
            tool: "newtonpoly".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            seed: cfg.seed,
            config_hash: cfg.hash(),
        }
    }
}

pub fn units() -> BTreeMap<String, String> {
    [
        ("d", "Newton distance, exact rational"),
        ("eps", "sublevel threshold on |S|, dimensionless"),
        (
            "estimate",
            "weighted volume of {|S| < eps} inside [-eta, eta]^n, in coordinate units^n",
        ),
        ("stderr", "one standard error of the same quantity"),
        ("lambda", "oscillation frequency, phase is exp(i lambda S)"),
        (
            "modulus",
            "|J(lambda)| with a product bump cutoff (radial groups use a radial bump)",
        ),
        (
            "alpha",
            "fitted exponent: V ~ eps^alpha |ln eps|^beta or |J| ~ lambda^-alpha ln(lambda)^beta",
        ),
        ("beta", "log power in the same model"),
        ("point", "torus coordinates, decimal"),
        ("rationals", "exact values are strings p/q"),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect()
}

pub fn sweep_csv(sweep: &SweepResult) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["eps", "estimate", "stderr", "shells_used"])?;
    for p in &sweep.points {
        w.serialize((p.eps, p.estimate, p.stderr, p.shells_used))?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv is utf-8"))
}

pub fn osc_csv(sweep: &OscSweepResult) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "lambda",
        "re",
        "im",
        "modulus",
        "error",
        "reliable",
        "evaluations",
    ])?;
    for v in &sweep.points {
        w.serialize((
            v.lambda,
            v.re,
            v.im,
            v.modulus,
            v.error,
            v.reliable,
            v.evaluations,
        ))?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv is utf-8"))
}

pub fn faces_csv(report: &AnalysisReport) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "face",
        "dim",
        "vertices",
        "max_zero_order",
        "order_bound",
        "certainty",
        "nondegenerate",
    ])?;
    for d in &report.diagnoses {
        let verts = d
            .vertices
            .iter()
            .map(|v| {
                format!(
                    "({})",
                    v.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                )
            })
            .collect::<Vec<_>>()
            .join(" ");
        w.write_record([
            d.face.to_string(),
            d.dim.to_string(),
            verts,
            d.max_zero_order.to_string(),
            d.order_bound.map(|b| b.to_string()).unwrap_or_default(),
            format!("{:?}", d.certainty).to_lowercase(),
            d.nondegenerate.to_string(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv is utf-8"))
}
