//! Newton-polyhedron invariants of polynomial phases, growth and oscillation index
//! prediction, and numerical labs that measure both.

pub mod face;
pub mod geom;
pub mod linalg;
pub mod lp;
pub mod maps;
pub mod measure;
pub mod oscillation;
pub mod poly;
pub mod predict;
pub mod rational;

pub use face::{Certainty, FaceDiagnosis, FaceError, PointIndex, ZeroSearchConfig, ZeroWitness};
pub use geom::{CentralFaceReport, Face, Facet, GeomError, NewtonPolyhedron};
pub use measure::{FitKind, FitResult, MeasureError, SweepConfig};
pub use oscillation::{
    decay_sweep_and_fit, oscillatory_integral, transfer_check, GrowthEvidence, OscSweep,
    TransferReport, Verdict,
};
pub use poly::{parse_poly, parse_poly_infer, CompiledPoly, PolyError, SparsePoly, VanishingOrder};
pub use predict::{
    predict_growth, predict_oscillation, varchenko_nondegenerate, ExponentRange, IndexPrediction,
    MultiplicityRange, OscillationStatus, PhaseSign, PredictError, PredictionKind,
};
pub use rational::Rational;
