use newtonpoly::face::FaceError;
use newtonpoly::measure::MeasureError;
use newtonpoly::oscillation::OscError;
use newtonpoly::{GeomError, PolyError, PredictError};
use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const DIMENSION: i32 = 3;
    pub const CONFIG: i32 = 4;
    pub const ANALYSIS: i32 = 5;
    pub const IO: i32 = 6;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported dimension: {0}")]
    Dimension(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("analysis failed: {0}")]
    Analysis(String),
    #[error("corpus error: {0}")]
    Corpus(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Corpus(_) => exit::PARSE,
            CliError::Dimension(_) => exit::DIMENSION,
            CliError::Config(_) => exit::CONFIG,
            CliError::Analysis(_) => exit::ANALYSIS,
            CliError::Io(_) => exit::IO,
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::Dimension(_) => CliError::Dimension(e.to_string()),
            PolyError::Syntax { .. }
            | PolyError::UnknownVariable { .. }
            | PolyError::NoVariables
            | PolyError::DuplicateVariable(_) => CliError::Parse(e.to_string()),
            _ => CliError::Analysis(e.to_string()),
        }
    }
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::Dimension(_) => CliError::Dimension(e.to_string()),
            GeomError::Poly(p) => p.into(),
            _ => CliError::Analysis(e.to_string()),
        }
    }
}

impl From<FaceError> for CliError {
    fn from(e: FaceError) -> Self {
        match e {
            FaceError::Unsupported(_) => CliError::Dimension(e.to_string()),
            FaceError::Poly(p) => p.into(),
            FaceError::Measure(m) => m.into(),
            _ => CliError::Analysis(e.to_string()),
        }
    }
}

impl From<PredictError> for CliError {
    fn from(e: PredictError) -> Self {
        match e {
            PredictError::Geom(g) => g.into(),
            PredictError::Face(f) => f.into(),
            PredictError::Poly(p) => p.into(),
            PredictError::NonzeroAtOrigin(_) => CliError::Analysis(e.to_string()),
        }
    }
}

impl From<MeasureError> for CliError {
    fn from(e: MeasureError) -> Self {
        match e {
            MeasureError::Config(m) => CliError::Config(m),
            MeasureError::TooFewPoints { .. } => CliError::Config(e.to_string()),
            MeasureError::Poly(p) => p.into(),
            _ => CliError::Analysis(e.to_string()),
        }
    }
}

impl From<OscError> for CliError {
    fn from(e: OscError) -> Self {
        match e {
            OscError::Config(m) => CliError::Config(m),
            OscError::NotRadial(_) => CliError::Config(e.to_string()),
            OscError::Poly(p) => p.into(),
            OscError::Measure(m) => m.into(),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(std::io::Error::other(e.to_string()))
    }
}
