//! Growth and oscillation index predictions from the Newton polyhedron and face diagnoses.
//!
//! Every conclusion records the rule that produced it in a trail, together with whether the
//! rule's hypotheses were certified exactly or rest on numeric face diagnoses.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::face::{
    self, exact_order_bound, Certainty, FaceDiagnosis, FaceError, PointIndex, ZeroSearchConfig,
};
use crate::geom::{CentralFaceReport, GeomError, NewtonPolyhedron};
use crate::poly::{CompiledPoly, PolyError, SparsePoly};
use crate::rational::{self, serde_q, Rational};

pub mod rule {
    pub const ONE_VARIABLE: &str = "one-variable";
    pub const NONZERO_GRADIENT: &str = "nonzero-gradient-at-origin";
    pub const VOLUME_LOWER_BOUND: &str = "newton-distance-volume-lower-bound";
    pub const BOUNDED_FACE_ZEROS: &str = "bounded-face-zero-orders";
    pub const FACE_ZERO_OF_ORDER_D: &str = "face-zero-of-order-d";
    pub const HIGH_ORDER_FACE_ZEROS: &str = "high-order-face-zeros";
    pub const ORDER_CERTIFICATE: &str = "face-zero-order-certificate";
    pub const POINTWISE_INFIMUM: &str = "pointwise-index-infimum";
    pub const POINTWISE_AT_LEAST_1_OVER_D: &str = "pointwise-index-at-least-1/d";
    pub const CENTRAL_SMALL_INDEX: &str = "central-face-small-pointwise-index";
    pub const CENTRAL_INDEX_1_OVER_D: &str = "central-face-pointwise-index-1/d";
    pub const PLANAR: &str = "planar-characterisation";
    pub const PLANAR_MULTIPLICITY: &str = "planar-multiplicity";
    pub const OSCILLATION_TRANSFER: &str = "oscillation-transfer";
    pub const OSCILLATION_AWAY_FROM_ODD: &str = "oscillation-transfer-away-from-odd-integers";
    pub const OSCILLATION_ONE_WAY: &str = "oscillation-one-way-bound";
}

/// Numeric pointwise indices closer than this to `1/d` are read as equal to it.
const INDEX_MATCH_TOL: f64 = 0.02;
const SIGN_SAMPLES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PredictError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Face(#[from] FaceError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("S(0) = {0} is nonzero: the sublevel set near the origin is empty for small eps")]
    NonzeroAtOrigin(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PredictionKind {
    Exact,
    Bracket,
    UpperBoundOnly,
    LowerBoundOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OscillationStatus {
    Transfers,
    TransfersConditionally,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhaseSign {
    Nonnegative,
    Nonpositive,
    Indefinite,
    Undetermined,
}

impl PhaseSign {
    pub fn single_signed(self) -> bool {
        matches!(self, PhaseSign::Nonnegative | PhaseSign::Nonpositive)
    }
}

/// Exponent `alpha` in `I(eps) ~ eps^alpha`, as a possibly half-open interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentRange {
    #[serde(with = "serde_q::opt")]
    pub lower: Option<Rational>,
    pub lower_strict: bool,
    #[serde(with = "serde_q::opt")]
    pub upper: Option<Rational>,
    pub upper_strict: bool,
}

impl ExponentRange {
    pub fn exact(v: Rational) -> Self {
        ExponentRange {
            lower: Some(v.clone()),
            lower_strict: false,
            upper: Some(v),
            upper_strict: false,
        }
    }

    pub fn at_most(v: Rational, strict: bool) -> Self {
        ExponentRange {
            lower: None,
            lower_strict: false,
            upper: Some(v),
            upper_strict: strict,
        }
    }

    pub fn exact_value(&self) -> Option<&Rational> {
        match (&self.lower, &self.upper) {
            (Some(a), Some(b)) if a == b && !self.lower_strict && !self.upper_strict => Some(a),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact_value().is_some()
    }

    pub fn is_nonempty(&self) -> bool {
        match (&self.lower, &self.upper) {
            (Some(a), Some(b)) => a < b || (a == b && !self.lower_strict && !self.upper_strict),
            _ => true,
        }
    }

    /// Whether `x` lies in the range widened by `tol` on each side.
    pub fn contains_within(&self, x: f64, tol: f64) -> bool {
        let lo = self
            .lower
            .as_ref()
            .map_or(f64::NEG_INFINITY, rational::to_f64);
        let hi = self.upper.as_ref().map_or(f64::INFINITY, rational::to_f64);
        x >= lo - tol && x <= hi + tol
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = match &self.lower {
            None => true,
            Some(a) => x > a || (x == a && !self.lower_strict),
        };
        let below = match &self.upper {
            None => true,
            Some(b) => x < b || (x == b && !self.upper_strict),
        };
        above && below
    }

    /// Whether some odd integer in `1..=max` lies in the range.
    pub fn meets_odd_integer(&self, max: u32) -> bool {
        (1..=max.max(1))
            .step_by(2)
            .any(|j| self.contains(&rational::int(j as i64)))
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        ExponentRange {
            lower: self.lower.as_ref().map(|v| v * s),
            lower_strict: self.lower_strict,
            upper: self.upper.as_ref().map(|v| v * s),
            upper_strict: self.upper_strict,
        }
    }
}

impl fmt::Display for ExponentRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.exact_value() {
            return write!(f, "{}", rational::fmt(v));
        }
        match &self.lower {
            Some(a) => write!(
                f,
                "{}{}",
                if self.lower_strict { "(" } else { "[" },
                rational::fmt(a)
            )?,
            None => write!(f, "(0")?,
        }
        match &self.upper {
            Some(b) => write!(
                f,
                ", {}{}",
                rational::fmt(b),
                if self.upper_strict { ")" } else { "]" }
            ),
            None => write!(f, ", inf)"),
        }
    }
}

/// Power of `|ln eps|` accompanying the leading exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityRange {
    pub lo: u32,
    pub hi: u32,
}

impl MultiplicityRange {
    pub fn exact(m: u32) -> Self {
        MultiplicityRange { lo: m, hi: m }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

impl fmt::Display for MultiplicityRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrailEntry {
    pub rule: String,
    pub certainty: Certainty,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexPrediction {
    pub kind: PredictionKind,
    pub growth_exponent: ExponentRange,
    pub log_multiplicity: Option<MultiplicityRange>,
    pub theorem_trail: Vec<TrailEntry>,
    pub certainty: Certainty,
    /// The exponent the tree reaches when its numeric face diagnoses are taken at face value.
    #[serde(with = "serde_q::opt")]
    pub conditional_exponent: Option<Rational>,
    pub n: usize,
    #[serde(with = "serde_q")]
    pub d: Rational,
    pub k: usize,
    pub central_compact: bool,
    /// Largest torus zero order found over the compact faces.
    pub max_face_zero_order: Option<u32>,
    /// Certified upper bound on every compact face's torus zero orders.
    pub face_zero_order_bound: Option<u32>,
    /// `I(eps) >= C |ln eps|^{n-k-1} eps^{1/d}`, which holds for every phase.
    pub lower_bound_statement: String,
    pub oscillation_status: OscillationStatus,
    pub oscillation_exponent: Option<ExponentRange>,
    /// `J` decays at least like `lambda^{-b}` for this `b`.
    #[serde(with = "serde_q::opt")]
    pub oscillation_decay_at_least: Option<Rational>,
    pub phase_sign: Option<PhaseSign>,
    pub notes: Vec<String>,
}

impl IndexPrediction {
    fn new(n: usize, c: &CentralFaceReport) -> Self {
        let inv = c.d.recip();
        let logs = (n as i64 - c.k as i64 - 1).max(0);
        IndexPrediction {
            kind: PredictionKind::UpperBoundOnly,
            growth_exponent: ExponentRange::at_most(inv.clone(), false),
            log_multiplicity: None,
            theorem_trail: Vec::new(),
            certainty: Certainty::Exact,
            conditional_exponent: None,
            n,
            d: c.d.clone(),
            k: c.k,
            central_compact: c.central_compact,
            max_face_zero_order: None,
            face_zero_order_bound: None,
            lower_bound_statement: format!(
                "I(eps) >= C |ln eps|^{logs} eps^({}) as eps -> 0",
                rational::fmt(&inv)
            ),
            oscillation_status: OscillationStatus::Unknown,
            oscillation_exponent: None,
            oscillation_decay_at_least: None,
            phase_sign: None,
            notes: Vec::new(),
        }
    }

    fn cite(&mut self, rule: &str, certainty: Certainty, detail: impl Into<String>) {
        self.theorem_trail.push(TrailEntry {
            rule: rule.to_string(),
            certainty,
            detail: detail.into(),
        });
    }

    pub fn cites(&self, rule: &str) -> bool {
        self.theorem_trail.iter().any(|t| t.rule == rule)
    }

    fn settle(&mut self) {
        self.certainty = self
            .theorem_trail
            .iter()
            .fold(Certainty::Exact, |c, t| c.and(t.certainty));
        if self.kind == PredictionKind::Exact && self.certainty != Certainty::Exact {
            // an exact value resting on numeric diagnoses keeps only its certified half
            self.conditional_exponent = self.growth_exponent.exact_value().cloned();
            self.kind = PredictionKind::UpperBoundOnly;
            self.growth_exponent.lower = None;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NondegeneracyReport {
    /// No compact face polynomial vanishes on the torus.
    pub nondegenerate: bool,
    pub certainty: Certainty,
    /// No compact face polynomial has a critical point on the torus.
    pub gradient_nonvanishing: bool,
    pub diagnoses: Vec<FaceDiagnosis>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct PredictConfig {
    pub search: ZeroSearchConfig,
}

/// Per-face diagnoses; in four variables only exact order certificates are available.
pub fn diagnose_faces(
    p: &SparsePoly,
    np: &NewtonPolyhedron,
    cfg: &PredictConfig,
) -> Result<Vec<FaceDiagnosis>, PredictError> {
    if np.n <= 3 {
        return Ok(face::face_max_zero_order(p, np, &cfg.search)?.1);
    }
    let mut out = Vec::new();
    for (i, f) in np.faces.iter().enumerate() {
        if !f.compact {
            continue;
        }
        let bound = if f.dim == 0 {
            Some(0)
        } else {
            exact_order_bound(&p.restrict_to_face(f)?, cfg.search.max_order)
        };
        out.push(FaceDiagnosis {
            face: i,
            dim: f.dim,
            vertices: f.vertices.iter().map(|&v| np.vertices[v].clone()).collect(),
            max_zero_order: 0,
            certainty: if bound == Some(0) {
                Certainty::Exact
            } else {
                Certainty::Numeric
            },
            order_bound: bound,
            witnesses: Vec::new(),
            min_pointwise_index: None,
            nondegenerate: bound.is_some_and(|b| b <= 1),
            mu_floor: None,
        });
    }
    Ok(out)
}

pub fn varchenko_nondegenerate(p: &SparsePoly) -> Result<NondegeneracyReport, PredictError> {
    varchenko_nondegenerate_with(p, &PredictConfig::default())
}

pub fn varchenko_nondegenerate_with(
    p: &SparsePoly,
    cfg: &PredictConfig,
) -> Result<NondegeneracyReport, PredictError> {
    let np = NewtonPolyhedron::build(p)?;
    let diagnoses = diagnose_faces(p, &np, cfg)?;
    Ok(nondegeneracy_from(&np, diagnoses))
}

/// Nondegeneracy verdict from per-face diagnoses already computed by [`diagnose_faces`].
pub fn nondegeneracy_from(
    np: &NewtonPolyhedron,
    diagnoses: Vec<FaceDiagnosis>,
) -> NondegeneracyReport {
    let searched = np.n <= 3;
    let zero_free = diagnoses.iter().all(|d| !d.has_torus_zero());
    let certainty = if zero_free {
        // "no zero" is exact only when certified, witnesses of a zero carry their own tag
        if diagnoses.iter().all(|d| d.order_bound == Some(0)) {
            Certainty::Exact
        } else {
            Certainty::Numeric
        }
    } else if diagnoses
        .iter()
        .flat_map(|d| &d.witnesses)
        .any(|w| w.certainty == Certainty::Exact)
    {
        Certainty::Exact
    } else {
        Certainty::Numeric
    };
    NondegeneracyReport {
        nondegenerate: zero_free && (searched || certainty == Certainty::Exact),
        certainty,
        gradient_nonvanishing: diagnoses.iter().all(|d| d.nondegenerate),
        diagnoses,
    }
}

pub fn predict_growth(p: &SparsePoly) -> Result<IndexPrediction, PredictError> {
    predict_growth_with(p, &PredictConfig::default())
}

pub fn predict_growth_with(
    p: &SparsePoly,
    cfg: &PredictConfig,
) -> Result<IndexPrediction, PredictError> {
    let np = NewtonPolyhedron::build(p)?;
    if let Some(shortcut) = origin_shortcuts(p, &np)? {
        return Ok(shortcut);
    }
    let diagnoses = diagnose_faces(p, &np, cfg)?;
    predict_growth_from(p, &np, &diagnoses)
}

fn origin_shortcuts(
    p: &SparsePoly,
    np: &NewtonPolyhedron,
) -> Result<Option<IndexPrediction>, PredictError> {
    let c0 = p.constant_term();
    if !c0.is_zero() {
        return Err(PredictError::NonzeroAtOrigin(rational::fmt(&c0)));
    }
    let n = p.nvars();
    let linear = p.terms().any(|(e, _)| e.0.iter().sum::<u32>() == p.denom());
    if linear {
        let c = np.central_face();
        let mut out = IndexPrediction::new(n, &c);
        out.kind = PredictionKind::Exact;
        out.growth_exponent = ExponentRange::exact(Rational::one());
        out.log_multiplicity = Some(MultiplicityRange::exact(0));
        out.cite(
            rule::NONZERO_GRADIENT,
            Certainty::Exact,
            "grad S(0) != 0, so I(eps) ~ eps",
        );
        out.notes.push(
            "the standing assumption grad S(0) = 0 fails; the regular-point value is reported"
                .into(),
        );
        out.settle();
        return Ok(Some(out));
    }
    Ok(None)
}

fn int_le(m: u32, d: &Rational) -> bool {
    rational::int(m as i64) <= *d
}

fn express_index(ix: &PointIndex) -> Option<Rational> {
    match ix {
        PointIndex::Infinite => None,
        PointIndex::Exact { value } => Some(value.clone()),
        PointIndex::Numeric { value, .. } => Some(rational::approximate(*value, 1000)),
    }
}

/// Prediction from precomputed face diagnoses (one per compact face, as [`diagnose_faces`]).
pub fn predict_growth_from(
    p: &SparsePoly,
    np: &NewtonPolyhedron,
    diagnoses: &[FaceDiagnosis],
) -> Result<IndexPrediction, PredictError> {
    if let Some(shortcut) = origin_shortcuts(p, np)? {
        return Ok(shortcut);
    }
    let n = np.n;
    let c = np.central_face();
    let mut out = IndexPrediction::new(n, &c);
    let inv = c.d.recip();
    let logs = (n as i64 - c.k as i64 - 1).max(0) as u32;
    out.cite(
        rule::VOLUME_LOWER_BOUND,
        Certainty::Exact,
        format!("exponent <= 1/d = {}", rational::fmt(&inv)),
    );

    if n == 1 {
        out.kind = PredictionKind::Exact;
        out.growth_exponent = ExponentRange::exact(inv.clone());
        out.log_multiplicity = Some(MultiplicityRange::exact(0));
        out.cite(
            rule::ONE_VARIABLE,
            Certainty::Exact,
            format!("S ~ c x^{}", rational::fmt(&c.d)),
        );
        out.settle();
        return Ok(out);
    }

    out.max_face_zero_order = diagnoses.iter().map(|d| d.max_zero_order).max();
    out.face_zero_order_bound = diagnoses
        .iter()
        .map(|d| d.order_bound)
        .collect::<Option<Vec<_>>>()
        .and_then(|v| v.into_iter().max());

    let central_idx = np.find_face(&c.central_face);
    let central_diag = central_idx.and_then(|i| diagnoses.iter().find(|d| d.face == i));

    if n == 2 {
        planar(&mut out, &c, diagnoses, central_diag);
        out.settle();
        return Ok(out);
    }

    let searched = n <= 3;
    let bound = out.face_zero_order_bound;
    let found = out.max_face_zero_order.unwrap_or(0);
    let found_exact = diagnoses
        .iter()
        .flat_map(|d| &d.witnesses)
        .filter(|w| w.certainty == Certainty::Exact)
        .map(|w| w.order)
        .max()
        .unwrap_or(0);

    // which branch applies, and how firmly
    let branch = if bound.is_some_and(|b| int_le(b, &c.d)) {
        Some((true, Certainty::Exact))
    } else if !int_le(found_exact, &c.d) {
        Some((false, Certainty::Exact))
    } else if searched {
        Some((int_le(found, &c.d), Certainty::Numeric))
    } else {
        None
    };

    match branch {
        None => {
            // four variables without a certificate: only the polyhedron and the bound survive
            if let Some(b) = bound {
                out.kind = PredictionKind::Bracket;
                out.growth_exponent = ExponentRange {
                    lower: Some(rational::q(1, b as i64)),
                    lower_strict: false,
                    upper: Some(inv.clone()),
                    upper_strict: false,
                };
                out.cite(
                    rule::ORDER_CERTIFICATE,
                    Certainty::Exact,
                    format!("no face zero exceeds order {b}, so exponent >= 1/{b}"),
                );
            }
            out.notes.push(format!(
                "face zeros are not searched in dimension {n}; the order certificates do not settle d' <= d"
            ));
        }
        Some((true, cert)) => {
            bounded_orders(&mut out, np, &c, diagnoses, central_diag, cert, logs);
        }
        Some((false, cert)) => {
            high_orders(&mut out, &c, diagnoses, central_diag, cert, bound, found);
        }
    }
    out.settle();
    Ok(out)
}

fn planar(
    out: &mut IndexPrediction,
    c: &CentralFaceReport,
    diagnoses: &[FaceDiagnosis],
    central_diag: Option<&FaceDiagnosis>,
) {
    let inv = c.d.recip();
    let edge_order = match central_diag {
        Some(d) if c.central_compact && c.k == 1 => Some(d.max_zero_order),
        _ => None,
    };
    match edge_order {
        Some(m) if !int_le(m, &c.d) => {
            let dp = diagnoses
                .iter()
                .map(|d| d.max_zero_order)
                .max()
                .unwrap_or(m);
            out.kind = PredictionKind::UpperBoundOnly;
            out.growth_exponent = ExponentRange {
                lower: Some(rational::q(1, dp as i64)),
                lower_strict: false,
                upper: Some(inv),
                upper_strict: true,
            };
            out.cite(
                rule::PLANAR,
                Certainty::Exact,
                format!("the central edge polynomial has a zero of order {m} > d"),
            );
            out.cite(
                rule::HIGH_ORDER_FACE_ZEROS,
                Certainty::Exact,
                format!("largest face zero order d' = {dp}, so exponent >= 1/{dp}"),
            );
        }
        _ => {
            out.kind = PredictionKind::Exact;
            out.growth_exponent = ExponentRange::exact(inv);
            out.cite(
                rule::PLANAR,
                Certainty::Exact,
                "no compact central edge carries a zero of order above d",
            );
            let order_d =
                edge_order.is_some_and(|m| c.d.is_integer() && rational::int(m as i64) == c.d);
            let mult = if order_d { 1 } else { 1 - c.k as u32 };
            out.log_multiplicity = Some(MultiplicityRange::exact(mult));
            out.cite(
                rule::PLANAR_MULTIPLICITY,
                Certainty::Exact,
                if order_d {
                    "the central edge polynomial has a zero of order d".to_string()
                } else {
                    format!("multiplicity 1 - k with k = {}", c.k)
                },
            );
        }
    }
}

fn bounded_orders(
    out: &mut IndexPrediction,
    np: &NewtonPolyhedron,
    c: &CentralFaceReport,
    diagnoses: &[FaceDiagnosis],
    central_diag: Option<&FaceDiagnosis>,
    cert: Certainty,
    logs: u32,
) {
    let inv = c.d.recip();
    if cert == Certainty::Exact {
        out.kind = PredictionKind::Exact;
        out.growth_exponent = ExponentRange::exact(inv.clone());
    } else {
        out.kind = PredictionKind::Bracket;
        out.growth_exponent = ExponentRange {
            lower: out
                .face_zero_order_bound
                .map(|b| rational::q(1, b.max(1) as i64).min(inv.clone())),
            lower_strict: false,
            upper: Some(inv.clone()),
            upper_strict: false,
        };
        out.conditional_exponent = Some(inv.clone());
    }
    out.cite(
        rule::BOUNDED_FACE_ZEROS,
        cert,
        match (cert, out.face_zero_order_bound) {
            (Certainty::Exact, Some(b)) => format!("every face zero has order <= {b} <= d"),
            _ => format!(
                "largest face zero order found is {} <= d",
                out.max_face_zero_order.unwrap_or(0)
            ),
        },
    );

    // multiplicity: n-k-1 unless a compact subface of C(S) has a zero of order exactly d
    let sub: Vec<&FaceDiagnosis> = diagnoses
        .iter()
        .filter(|d| np.faces[d.face].is_subface_of(&c.central_face))
        .collect();
    let mut mult = MultiplicityRange::exact(logs);
    if c.d.is_integer() {
        let dm = c.d.to_integer().to_u32().unwrap_or(u32::MAX);
        let hit = sub
            .iter()
            .flat_map(|d| &d.witnesses)
            .filter(|w| w.order == dm)
            .map(|w| w.certainty)
            .min();
        let excluded = sub.iter().all(|d| d.order_bound.is_some_and(|b| b < dm));
        if let Some(wc) = hit {
            mult = MultiplicityRange {
                lo: logs,
                hi: logs + 1,
            };
            out.cite(
                rule::FACE_ZERO_OF_ORDER_D,
                wc,
                "a compact subface of the central face has a zero of order d",
            );
        } else if !excluded {
            // the collapse is only certified when no subface can carry an order-d zero
            mult = MultiplicityRange {
                lo: logs,
                hi: logs + 1,
            };
            if out.n <= 3 {
                out.notes.push(format!(
                    "no zero of order d was found on the central face's compact subfaces; multiplicity {logs} is likely"
                ));
            }
        }
    }
    // converse lower bound: a central-face point of index exactly 1/d lifts the multiplicity
    if c.central_compact && !mult.is_exact() {
        if let Some((ix, wc)) = central_index(central_diag) {
            let hit = match &ix {
                PointIndex::Exact { value } => *value == inv,
                PointIndex::Numeric { value, log_power } => {
                    (value - rational::to_f64(&inv)).abs() < INDEX_MATCH_TOL
                        && log_power.abs() < 0.5
                }
                PointIndex::Infinite => false,
            };
            if hit && wc.and(ix.certainty()) == Certainty::Exact {
                mult = MultiplicityRange::exact(mult.hi);
                out.cite(
                    rule::CENTRAL_INDEX_1_OVER_D,
                    Certainty::Exact,
                    "a central-face zero has pointwise index 1/d with multiplicity 0",
                );
            } else if hit {
                out.notes.push(format!(
                    "a central-face zero appears to have pointwise index 1/d; multiplicity {} is likely",
                    mult.hi
                ));
            }
        }
    }
    out.log_multiplicity = Some(mult);
}

/// Smallest pointwise index among the central face's witnesses, with the witness certainty.
fn central_index(central_diag: Option<&FaceDiagnosis>) -> Option<(PointIndex, Certainty)> {
    let d = central_diag?;
    let ix = d.min_pointwise_index.clone()?;
    let wc = if d.witnesses.iter().any(|w| w.certainty == Certainty::Exact) {
        Certainty::Exact
    } else {
        Certainty::Numeric
    };
    Some((ix, wc))
}

fn high_orders(
    out: &mut IndexPrediction,
    c: &CentralFaceReport,
    diagnoses: &[FaceDiagnosis],
    central_diag: Option<&FaceDiagnosis>,
    cert: Certainty,
    bound: Option<u32>,
    found: u32,
) {
    let inv = c.d.recip();
    let inv_f = rational::to_f64(&inv);
    // d' is pinned when the certificate meets the largest zero found
    let dp = found.max(1);
    let dp_cert = if bound == Some(dp) {
        cert
    } else {
        Certainty::Numeric
    };
    out.kind = PredictionKind::Bracket;
    out.growth_exponent = ExponentRange {
        lower: Some(rational::q(1, dp as i64)),
        lower_strict: false,
        upper: Some(inv.clone()),
        upper_strict: false,
    };
    out.cite(
        rule::HIGH_ORDER_FACE_ZEROS,
        dp_cert,
        format!("largest face zero order d' = {dp} > d, so exponent >= 1/{dp}"),
    );
    if dp_cert == Certainty::Numeric {
        if let Some(b) = bound {
            out.notes.push(format!(
                "certified fallback: every face zero has order <= {b}, so exponent >= 1/{b}"
            ));
        }
    }

    if out.n == 3 {
        let indices: Vec<&PointIndex> = diagnoses
            .iter()
            .filter_map(|d| d.min_pointwise_index.as_ref())
            .collect();
        let least = indices
            .iter()
            .min_by(|a, b| a.value_f64().partial_cmp(&b.value_f64()).unwrap());
        if let Some(&a) = least {
            let af = a.value_f64();
            let lower_f = out
                .growth_exponent
                .lower
                .as_ref()
                .map_or(0.0, rational::to_f64);
            if af < inv_f && af > lower_f + 1e-12 {
                if let Some(ar) = express_index(a) {
                    out.growth_exponent.lower = Some(ar.clone());
                    out.cite(
                        rule::POINTWISE_INFIMUM,
                        Certainty::Numeric,
                        format!("smallest pointwise index found a = {}", rational::fmt(&ar)),
                    );
                }
            } else if af >= inv_f - 1e-12 {
                out.conditional_exponent = Some(inv.clone());
                out.cite(
                    rule::POINTWISE_AT_LEAST_1_OVER_D,
                    Certainty::Numeric,
                    "every pointwise index found is at least 1/d",
                );
            }
        }
    }

    if c.central_compact {
        if let Some((ix, wc)) = central_index(central_diag) {
            if ix.value_f64() < inv_f - 1e-12 {
                out.growth_exponent.upper_strict = true;
                out.cite(
                    rule::CENTRAL_SMALL_INDEX,
                    wc.and(ix.certainty()),
                    format!(
                        "a central-face zero has pointwise index {} < 1/d",
                        express_index(&ix).map_or("?".into(), |v| rational::fmt(&v))
                    ),
                );
            }
        }
    }
}

/// Sign of the phase near the origin: syntactic certificates first, then sampling.
pub fn phase_sign(p: &SparsePoly, seed: u64) -> PhaseSign {
    if p.has_integer_exponents() {
        let even = p.terms().all(|(e, _)| e.0.iter().all(|k| k % 2 == 0));
        if even && p.terms().all(|(_, c)| c.is_positive()) {
            return PhaseSign::Nonnegative;
        }
        if even && p.terms().all(|(_, c)| c.is_negative()) {
            return PhaseSign::Nonpositive;
        }
        if p.exact_sqrt().is_some() {
            return PhaseSign::Nonnegative;
        }
        if p.neg().exact_sqrt().is_some() {
            return PhaseSign::Nonpositive;
        }
    }
    let cp = CompiledPoly::new(p);
    let n = p.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut pos, mut neg) = (false, false);
    let mut x = vec![0.0; n];
    for _ in 0..SIGN_SAMPLES {
        for xi in x.iter_mut() {
            *xi = rng.gen_range(-0.25..0.25);
        }
        let v = cp.eval(&x);
        pos |= v > 0.0;
        neg |= v < 0.0;
        if pos && neg {
            return PhaseSign::Indefinite;
        }
    }
    PhaseSign::Undetermined
}

pub fn predict_oscillation(p: &SparsePoly, growth: &IndexPrediction) -> IndexPrediction {
    let mut out = growth.clone();
    let sign = phase_sign(p, 0);
    out.phase_sign = Some(sign);
    let d_gt_1 = growth.d > Rational::one();
    let odd = growth.growth_exponent.meets_odd_integer(growth.n as u32);
    if d_gt_1 || sign.single_signed() {
        out.oscillation_status = OscillationStatus::Transfers;
        out.oscillation_exponent = Some(growth.growth_exponent.clone());
        out.cite(
            rule::OSCILLATION_TRANSFER,
            Certainty::Exact,
            if d_gt_1 {
                format!("d = {} > 1", rational::fmt(&growth.d))
            } else {
                format!("the phase is {sign:?} near the origin").to_lowercase()
            },
        );
    } else if !odd {
        // only the upper and lower estimates transfer, not the strictness from the converse
        let mut r = growth.growth_exponent.clone();
        if growth.cites(rule::CENTRAL_SMALL_INDEX) || growth.cites(rule::PLANAR) {
            r.upper_strict = false;
        }
        out.oscillation_status = OscillationStatus::TransfersConditionally;
        out.oscillation_exponent = Some(r);
        out.cite(
            rule::OSCILLATION_AWAY_FROM_ODD,
            growth.certainty,
            format!(
                "growth exponent range {} contains no odd integer",
                growth.growth_exponent
            ),
        );
    } else {
        out.oscillation_status = OscillationStatus::Unknown;
        out.oscillation_exponent = None;
        out.notes.push(format!(
            "oscillation index not predicted: d = {} <= 1, phase {sign:?}, growth range {} meets an odd integer",
            rational::fmt(&growth.d),
            growth.growth_exponent
        ));
    }
    let recip_odd = growth.d.numer().is_one() && num_integer::Integer::is_odd(growth.d.denom());
    out.notes.push(format!(
        "odd-integer phrasing: the growth exponent {} an odd integer",
        if odd { "may be" } else { "is not" }
    ));
    out.notes.push(format!(
        "reciprocal phrasing: d = {} {} the reciprocal of an odd integer",
        rational::fmt(&growth.d),
        if recip_odd { "is" } else { "is not" }
    ));
    out.oscillation_decay_at_least = growth.growth_exponent.lower.clone();
    out.cite(
        rule::OSCILLATION_ONE_WAY,
        Certainty::Exact,
        match &growth.growth_exponent.lower {
            Some(b) => format!(
                "|J(lambda)| <= C lambda^-{} up to logarithms",
                rational::fmt(b)
            ),
            None => "no upper estimate on I is available to transfer".to_string(),
        },
    );
    out.certainty = out
        .theorem_trail
        .iter()
        .fold(Certainty::Exact, |c, t| c.and(t.certainty));
    out
}
