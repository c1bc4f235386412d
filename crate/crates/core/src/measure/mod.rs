//! Sublevel-set measurement `|{x : |S(x)| < eps}|` near the origin, power-law fitting,
//! and the exact monomial-box oracle.

pub mod fit;
pub mod lemma31;
pub(crate) mod roots;
mod sublevel;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use fit::{fit_power_law, FitKind, FitResult, Measurement, PinnedFit};
pub use lemma31::{
    envelope_check, lemma31_integral, monomial_box_volume_exact, EnvelopeCase, EnvelopeReport,
};
pub use sublevel::{bump, sublevel_sweep, sublevel_volume, SweepResult, VolumePoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Weight {
    Indicator,
    SmoothBump,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Estimator {
    /// Plain hit-or-miss sampling inside each shell.
    Indicator,
    /// Samples all but one coordinate and integrates the remaining line exactly.
    Line,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub eta: f64,
    pub eps: Vec<f64>,
    pub samples: usize,
    pub shells: usize,
    pub seed: u64,
    pub weight: Weight,
    pub estimator: Estimator,
    /// Coordinate integrated exactly by the line estimator; defaults to a lowest-degree one.
    pub line_var: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            eta: 0.5,
            eps: geometric(1e-1, 1e-6, 11),
            samples: 200_000,
            shells: 24,
            seed: 0,
            weight: Weight::Indicator,
            estimator: Estimator::Line,
            line_var: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error("invalid sweep configuration: {0}")]
    Config(String),
    #[error("polynomial error: {0}")]
    Poly(#[from] crate::poly::PolyError),
    #[error("every volume estimate is zero with zero variance")]
    Degenerate,
    #[error("need at least {need} usable points, have {have}")]
    TooFewPoints { need: usize, have: usize },
    #[error("envelope case {case:?} needs {need}, but M = {m}")]
    CaseMismatch {
        case: EnvelopeCase,
        need: &'static str,
        m: f64,
    },
    #[error("delta must lie in (0, 1), got {0}")]
    Delta(f64),
    #[error("exponents must be nonnegative and not all zero")]
    Exponents,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), MeasureError> {
        let bad = |s: &str| Err(MeasureError::Config(s.to_string()));
        if !(self.eta > 0.0 && self.eta <= 1.0) {
            return bad("eta must lie in (0, 1]");
        }
        if self.eps.is_empty() || self.eps.iter().any(|e| !(*e > 0.0) || !e.is_finite()) {
            return bad("eps values must be positive");
        }
        if self.eps.windows(2).any(|w| w[1] >= w[0]) {
            return bad("eps values must be strictly decreasing");
        }
        if self.shells < 4 {
            return bad("at least 4 shells are required");
        }
        if self.samples < 2 {
            return bad("at least 2 samples per shell are required");
        }
        Ok(())
    }
}

/// `count` geometrically spaced values from `from` to `to` inclusive.
pub fn geometric(from: f64, to: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![from];
    }
    let (a, b) = (from.ln(), to.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

/// Runs the sweep and fits `V(eps) ~ eps^alpha ln(1/eps)^beta`, with `beta` pinned to `0..n-1`.
pub fn sweep_and_fit(
    p: &crate::poly::SparsePoly,
    cfg: &SweepConfig,
) -> Result<(SweepResult, FitResult), MeasureError> {
    if cfg.eps.len() < 6 {
        return Err(MeasureError::TooFewPoints {
            need: 6,
            have: cfg.eps.len(),
        });
    }
    let sweep = sublevel_sweep(p, cfg)?;
    let data: Vec<Measurement> = sweep
        .points
        .iter()
        .map(|pt| Measurement {
            x: pt.eps,
            value: pt.estimate,
            stderr: pt.stderr,
        })
        .collect();
    let max_beta = p.nvars().saturating_sub(1) as u32;
    let mut fit = fit_power_law(FitKind::Growth, &data, max_beta)?;
    fit.notes.extend(sweep.warnings.iter().cloned());
    Ok((sweep, fit))
}
