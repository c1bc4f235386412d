//! Oscillatory integrals `J(lambda) = int exp(i lambda S(x)) phi(x) dx` with a product bump
//! cutoff, decay fits, and the sublevel-to-oscillatory transfer check.
//!
//! Quadrature is iterated Gauss-Legendre on panels sized so that the phase moves by at most a
//! fixed angle per panel. Groups of variables that share no monomial are integrated separately
//! and multiplied, and declared radial groups collapse to one radius with the sphere Jacobian.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::measure::{self, bump, FitKind, FitResult, MeasureError, Measurement};
use crate::poly::{CompiledPoly, PolyError, SparsePoly};
use crate::predict::{ExponentRange, IndexPrediction, OscillationStatus};
use crate::rational;

const GL_POINTS: usize = 16;
const PRE_GRID: usize = 64;
const INNER_SAMPLES: usize = 9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OscError {
    #[error("invalid oscillation configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("the phase is not radial in variables {0:?}")]
    NotRadial(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OscSweep {
    pub lambdas: Vec<f64>,
    pub eta: f64,
    /// Groups of variables in which the phase depends only on the group's Euclidean radius.
    pub radial: Vec<Vec<usize>>,
    /// Largest number of phase evaluations per integral before the result is flagged.
    pub budget: u64,
    /// Largest phase change, in radians, across one quadrature panel.
    pub panel_phase: f64,
    pub min_panels: usize,
}

impl Default for OscSweep {
    fn default() -> Self {
        OscSweep {
            lambdas: measure::geometric(1e1, 1e4, 10),
            eta: 0.5,
            radial: Vec::new(),
            budget: 2_000_000_000,
            panel_phase: 10.0,
            min_panels: 8,
        }
    }
}

impl OscSweep {
    pub fn validate(&self, nvars: usize) -> Result<(), OscError> {
        let bad = |s: String| Err(OscError::Config(s));
        if self.lambdas.iter().any(|l| !(*l > 0.0) || !l.is_finite()) {
            return bad("lambda values must be positive".into());
        }
        if self.lambdas.windows(2).any(|w| w[1] <= w[0]) {
            return bad("lambda values must be strictly increasing".into());
        }
        if self.budget == 0 {
            return bad("the quadrature budget must be positive".into());
        }
        if !(self.eta > 0.0 && self.eta <= 1.0) {
            return bad("eta must lie in (0, 1]".into());
        }
        if !(self.panel_phase > 0.0) || self.min_panels == 0 {
            return bad("panel settings must be positive".into());
        }
        let mut seen = vec![false; nvars];
        for g in &self.radial {
            if g.len() < 2 {
                return bad(format!("radial group {g:?} needs at least two variables"));
            }
            for &v in g {
                if v >= nvars || seen[v] {
                    return bad(format!(
                        "radial group {g:?} repeats or exceeds the variables"
                    ));
                }
                seen[v] = true;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OscValue {
    pub lambda: f64,
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
    /// Difference from the same integral at half the panel resolution.
    pub error: f64,
    pub reliable: bool,
    pub evaluations: u64,
}

impl OscValue {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OscSweepResult {
    pub points: Vec<OscValue>,
    pub factors: usize,
    pub warnings: Vec<String>,
}

fn gauss_legendre() -> &'static [(f64, f64)] {
    static NODES: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    NODES.get_or_init(|| {
        let n = GL_POINTS;
        (0..n)
            .map(|i| {
                let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
                let mut dp = 0.0;
                for _ in 0..100 {
                    let (mut p0, mut p1) = (1.0, x);
                    for k in 2..=n {
                        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                        p0 = p1;
                        p1 = p2;
                    }
                    dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                    let dx = p1 / dp;
                    x -= dx;
                    if dx.abs() < 1e-16 {
                        break;
                    }
                }
                (x, 2.0 / ((1.0 - x * x) * dp * dp))
            })
            .collect()
    })
}

/// Surface area of the unit sphere in `R^m`.
fn sphere_area(m: usize) -> f64 {
    // Gamma(m/2) from Gamma(1) = 1 and Gamma(1/2) = sqrt(pi)
    let mut g = if m % 2 == 0 { 1.0 } else { PI.sqrt() };
    let mut a = if m % 2 == 0 { 1.0 } else { 0.5 };
    while a < m as f64 / 2.0 - 1e-9 {
        g *= a;
        a += 1.0;
    }
    2.0 * PI.powf(m as f64 / 2.0) / g
}

#[derive(Debug, Clone)]
enum Coord {
    Plain(usize),
    /// Radius stored in `vars[0]`, the other variables held at zero.
    Radial(Vec<usize>),
}

impl Coord {
    fn var(&self) -> usize {
        match self {
            Coord::Plain(v) => *v,
            Coord::Radial(vs) => vs[0],
        }
    }

    fn range(&self, eta: f64) -> (f64, f64) {
        match self {
            Coord::Plain(_) => (-eta, eta),
            Coord::Radial(_) => (0.0, eta),
        }
    }

    fn weight(&self, t: f64, eta: f64) -> f64 {
        match self {
            Coord::Plain(_) => bump(t, eta),
            Coord::Radial(vs) => bump(t, eta) * sphere_area(vs.len()) * t.powi(vs.len() as i32 - 1),
        }
    }
}

struct Integrator<'a> {
    poly: &'a CompiledPoly,
    grads: &'a [CompiledPoly],
    coords: &'a [Coord],
    inner_grids: Vec<Vec<Vec<f64>>>,
    lambda: f64,
    eta: f64,
    panel_phase: f64,
    min_panels: usize,
    budget: u64,
    evals: u64,
    exhausted: bool,
    x: Vec<f64>,
    /// Coefficients of the phase along the innermost coordinate.
    line: Vec<f64>,
}

fn horner(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * t + a)
}

impl<'a> Integrator<'a> {
    fn new(
        poly: &'a CompiledPoly,
        grads: &'a [CompiledPoly],
        coords: &'a [Coord],
        lambda: f64,
        cfg: &OscSweep,
        panel_phase: f64,
    ) -> Self {
        // sample tuples of the inner coordinates, used to bound outer-level oscillation rates
        let mut inner_grids = Vec::with_capacity(coords.len());
        for j in 0..coords.len() {
            let mut tuples: Vec<Vec<f64>> = vec![Vec::new()];
            for c in &coords[j + 1..] {
                let (lo, hi) = c.range(cfg.eta);
                let pts: Vec<f64> = (0..INNER_SAMPLES)
                    .map(|i| lo + (hi - lo) * i as f64 / (INNER_SAMPLES - 1) as f64)
                    .collect();
                tuples = tuples
                    .into_iter()
                    .flat_map(|t| {
                        pts.iter().map(move |&v| {
                            let mut t2 = t.clone();
                            t2.push(v);
                            t2
                        })
                    })
                    .collect();
            }
            inner_grids.push(tuples);
        }
        Integrator {
            poly,
            grads,
            coords,
            inner_grids,
            lambda: lambda.abs(),
            eta: cfg.eta,
            panel_phase,
            min_panels: cfg.min_panels,
            budget: cfg.budget,
            evals: 0,
            exhausted: false,
            x: vec![0.0; poly.nvars()],
            line: Vec::new(),
        }
    }

    /// Phase-variation density on a uniform pre-grid of level `j`.
    fn variation(&mut self, j: usize, ts: &[f64]) -> Vec<f64> {
        let c = &self.coords[j];
        let var = c.var();
        if j + 1 == self.coords.len() {
            self.poly.line_coeffs(var, &self.x, &mut self.line);
            let s: Vec<f64> = ts.iter().map(|&t| horner(&self.line, t)).collect();
            self.evals += ts.len() as u64;
            return s
                .windows(2)
                .map(|w| self.lambda * (w[1] - w[0]).abs())
                .collect();
        }
        let inner: Vec<usize> = self.coords[j + 1..].iter().map(Coord::var).collect();
        let saved = self.x.clone();
        let rates: Vec<f64> = ts
            .iter()
            .map(|&t| {
                self.x[var] = t;
                let mut m = 0.0f64;
                for tuple in &self.inner_grids[j] {
                    for (&v, &u) in inner.iter().zip(tuple) {
                        self.x[v] = u;
                    }
                    m = m.max(self.grads[var].eval(&self.x).abs());
                }
                m
            })
            .collect();
        self.evals += (ts.len() * self.inner_grids[j].len()) as u64;
        self.x = saved;
        let h = ts[1] - ts[0];
        rates
            .windows(2)
            .map(|w| self.lambda * 0.5 * (w[0] + w[1]) * h)
            .collect()
    }

    fn level(&mut self, j: usize) -> Complex64 {
        if self.exhausted {
            return Complex64::new(0.0, 0.0);
        }
        let coord = self.coords[j].clone();
        let var = coord.var();
        let (lo, hi) = coord.range(self.eta);
        let ts: Vec<f64> = (0..=PRE_GRID)
            .map(|i| lo + (hi - lo) * i as f64 / PRE_GRID as f64)
            .collect();
        let dens = self.variation(j, &ts);
        // panel boundaries at equal steps of phase variation plus a uniform floor
        let floor = self.panel_phase * self.min_panels as f64 / PRE_GRID as f64;
        let mut cum = vec![0.0];
        for v in &dens {
            cum.push(cum.last().unwrap() + v + floor);
        }
        let total = *cum.last().unwrap();
        let npanels = (total / self.panel_phase).ceil().max(1.0) as usize;
        let mut bounds = Vec::with_capacity(npanels + 1);
        let mut g = 0;
        for k in 0..=npanels {
            let target = total * k as f64 / npanels as f64;
            while g + 1 < PRE_GRID && cum[g + 1] < target {
                g += 1;
            }
            let span = cum[g + 1] - cum[g];
            let f = if span > 0.0 {
                ((target - cum[g]) / span).clamp(0.0, 1.0)
            } else {
                0.0
            };
            bounds.push(ts[g] + f * (ts[g + 1] - ts[g]));
        }
        bounds[npanels] = hi;
        let last = j + 1 == self.coords.len();
        let mut sum = Complex64::new(0.0, 0.0);
        for w in bounds.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
            for &(node, wt) in gauss_legendre() {
                let t = mid + half * node;
                let phi = coord.weight(t, self.eta);
                if phi == 0.0 {
                    continue;
                }
                self.x[var] = t;
                let v = if last {
                    self.evals += 1;
                    let (sn, cs) = (self.lambda * horner(&self.line, t)).sin_cos();
                    Complex64::new(cs, sn)
                } else {
                    self.level(j + 1)
                };
                sum += v * (wt * half * phi);
            }
            if self.evals > self.budget {
                self.exhausted = true;
                return sum;
            }
        }
        self.x[var] = 0.0;
        sum
    }
}

/// One independent factor of the integral: its polynomial and its coordinates.
struct Factor {
    poly: CompiledPoly,
    grads: Vec<CompiledPoly>,
    coords: Vec<Coord>,
}

fn check_radial(p: &SparsePoly, group: &[usize]) -> Result<(), OscError> {
    // S must depend on the group only through sum x_i^2: compare a point with its rotations
    let cp = CompiledPoly::new(p);
    let n = p.nvars();
    let scale = CompiledPoly::new(&SparsePoly::from_terms(
        n,
        p.terms()
            .map(|(e, c)| (num_traits::Signed::abs(c), e.0.clone())),
    ));
    for k in 0..12 {
        let mut x: Vec<f64> = (0..n)
            .map(|i| 0.37 * ((i * 7 + k * 3) as f64 % 5.0 - 2.0) / 2.0)
            .collect();
        let r: f64 = group.iter().map(|&v| x[v] * x[v]).sum::<f64>().sqrt();
        let base = cp.eval(&x);
        let mag = scale
            .eval(&x.iter().map(|t| t.abs()).collect::<Vec<_>>())
            .max(1e-300);
        for (i, &v) in group.iter().enumerate() {
            x[v] = if i == k % group.len() { r } else { 0.0 };
        }
        if (cp.eval(&x) - base).abs() > 1e-9 * mag {
            return Err(OscError::NotRadial(group.to_vec()));
        }
    }
    Ok(())
}

/// Splits the variables into groups that share no monomial (declared radial groups stay whole).
fn factors(p: &SparsePoly, radial: &[Vec<usize>]) -> (Vec<Factor>, rational::Rational) {
    let n = p.nvars();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    };
    for (e, _) in p.terms() {
        let vars: Vec<usize> = (0..n).filter(|&i| e.0[i] > 0).collect();
        for w in vars.windows(2) {
            union(&mut parent, w[0], w[1]);
        }
    }
    for g in radial {
        for w in g.windows(2) {
            union(&mut parent, w[0], w[1]);
        }
    }
    let constant = p.constant_term();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|g| find(&mut parent, g[0]) == r) {
            Some(g) => g.push(i),
            None => groups.push(vec![i]),
        }
    }
    let out = groups
        .into_iter()
        .map(|g| {
            let part = SparsePoly::from_terms(
                n,
                p.terms()
                    .filter(|(e, _)| {
                        e.0.iter().any(|&k| k > 0) && (0..n).all(|i| e.0[i] == 0 || g.contains(&i))
                    })
                    .map(|(e, c)| (c.clone(), e.0.clone())),
            );
            let mut coords: Vec<Coord> = Vec::new();
            for &v in &g {
                match radial.iter().find(|r| r.contains(&v)) {
                    Some(r) if r[0] == v => coords.push(Coord::Radial(r.clone())),
                    Some(_) => {}
                    None => coords.push(Coord::Plain(v)),
                }
            }
            // radial coordinates innermost
            coords.sort_by_key(|c| matches!(c, Coord::Radial(_)));
            let grads = (0..n)
                .map(|i| CompiledPoly::new(&part.derivative(i).expect("integer exponents")))
                .collect();
            Factor {
                poly: CompiledPoly::new(&part),
                grads,
                coords,
            }
        })
        .collect();
    (out, constant)
}

fn integrate_factor(
    f: &Factor,
    lambda: f64,
    cfg: &OscSweep,
    phase: f64,
    budget: u64,
) -> (Complex64, u64, bool) {
    let mut it = Integrator::new(&f.poly, &f.grads, &f.coords, lambda, cfg, phase);
    it.budget = budget;
    let mut v = it.level(0);
    if lambda < 0.0 {
        v = v.conj();
    }
    (v, it.evals, it.exhausted)
}

fn prepare(p: &SparsePoly, cfg: &OscSweep) -> Result<(Vec<Factor>, f64), OscError> {
    if !p.has_integer_exponents() {
        return Err(PolyError::FractionalExponent.into());
    }
    cfg.validate(p.nvars())?;
    for g in &cfg.radial {
        check_radial(p, g)?;
    }
    let (fs, c) = factors(p, &cfg.radial);
    Ok((fs, rational::to_f64(&c)))
}

fn evaluate(fs: &[Factor], constant: f64, lambda: f64, cfg: &OscSweep) -> OscValue {
    let mut fine = Complex64::from_polar(1.0, constant * lambda);
    let mut err_terms = Vec::new();
    let mut evals = 0;
    let mut reliable = true;
    // one budget shared by every factor and both resolutions
    for f in fs {
        let left = cfg.budget.saturating_sub(evals);
        let (vc, ec, xc) = integrate_factor(f, lambda, cfg, 2.0 * cfg.panel_phase, left);
        let (vf, ef, xf) = if xc {
            (vc, 0, true)
        } else {
            integrate_factor(f, lambda, cfg, cfg.panel_phase, left.saturating_sub(ec))
        };
        evals += ec + ef;
        reliable &= !(xc || xf);
        let best = if xf { vc } else { vf };
        err_terms.push(((vf - vc).norm(), best.norm()));
        fine *= best;
    }
    // first-order propagation of the per-factor differences
    let mut error = 0.0;
    for (i, (e, _)) in err_terms.iter().enumerate() {
        let others: f64 = err_terms
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, (_, m))| m)
            .product();
        error += e * others;
    }
    OscValue {
        lambda,
        re: fine.re,
        im: fine.im,
        modulus: fine.norm(),
        error: error.max(1e-15 * fine.norm()),
        reliable,
        evaluations: evals,
    }
}

/// `J(lambda)` with its resolution-comparison error; `lambda` may be negative, and 0 gives
/// `int phi`.
pub fn oscillatory_integral(
    p: &SparsePoly,
    lambda: f64,
    cfg: &OscSweep,
) -> Result<OscValue, OscError> {
    let (fs, c) = prepare(p, cfg)?;
    Ok(evaluate(&fs, c, lambda, cfg))
}

pub fn oscillatory_sweep(p: &SparsePoly, cfg: &OscSweep) -> Result<OscSweepResult, OscError> {
    let (fs, c) = prepare(p, cfg)?;
    let points: Vec<OscValue> = cfg
        .lambdas
        .par_iter()
        .map(|&l| evaluate(&fs, c, l, cfg))
        .collect();
    let warnings = points
        .iter()
        .filter(|v| !v.reliable)
        .map(|v| {
            format!(
                "lambda = {:.4e}: quadrature budget exhausted, value unreliable",
                v.lambda
            )
        })
        .collect();
    Ok(OscSweepResult {
        points,
        factors: fs.len(),
        warnings,
    })
}

/// Fits `|J| ~ lambda^-alpha ln(lambda)^beta` over the reliable sweep points.
pub fn decay_sweep_and_fit(
    p: &SparsePoly,
    cfg: &OscSweep,
) -> Result<(OscSweepResult, FitResult), OscError> {
    let sweep = oscillatory_sweep(p, cfg)?;
    let data: Vec<Measurement> = sweep
        .points
        .iter()
        .filter(|v| v.reliable)
        .map(|v| Measurement {
            x: v.lambda,
            value: v.modulus,
            stderr: v.error,
        })
        .collect();
    let max_beta = p.nvars().saturating_sub(1) as u32;
    let mut fit = measure::fit_power_law(FitKind::Decay, &data, max_beta)?;
    fit.notes.extend(sweep.warnings.iter().cloned());
    Ok((sweep, fit))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Verdict {
    Match,
    ExpectedMismatch,
    Violation,
}

#[derive(Debug, Clone, Copy)]
pub enum GrowthEvidence<'a> {
    Fit(&'a FitResult),
    Prediction(&'a IndexPrediction),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferReport {
    pub verdict: Verdict,
    pub alpha_growth: Option<f64>,
    pub growth_range: Option<ExponentRange>,
    pub alpha_osc: f64,
    pub tolerance: f64,
    pub conditions_hold: bool,
    /// `J` decays at least as fast as the growth upper estimate allows.
    pub one_way_bound: Option<f64>,
    pub one_way_ok: bool,
    pub notes: Vec<String>,
}

pub const TRANSFER_TOLERANCE: f64 = 0.10;

/// Compares growth and decay exponents against the transfer conditions in `prediction`.
pub fn transfer_check(
    growth: GrowthEvidence<'_>,
    osc: &FitResult,
    prediction: &IndexPrediction,
    tolerance: f64,
) -> TransferReport {
    let conditions_hold = matches!(
        prediction.oscillation_status,
        OscillationStatus::Transfers | OscillationStatus::TransfersConditionally
    );
    let alpha_osc = osc.alpha;
    let (alpha_growth, growth_range, agree, one_way_bound) = match growth {
        GrowthEvidence::Fit(f) => (
            Some(f.alpha),
            None,
            (f.alpha - alpha_osc).abs() <= tolerance,
            Some(f.alpha),
        ),
        GrowthEvidence::Prediction(p) => {
            let r = p.growth_exponent.clone();
            let agree = r.contains_within(alpha_osc, tolerance);
            let bound = r.lower.as_ref().map(rational::to_f64);
            (r.exact_value().map(rational::to_f64), Some(r), agree, bound)
        }
    };
    let one_way_ok = one_way_bound.map_or(true, |b| alpha_osc >= b - tolerance);
    let mut notes = Vec::new();
    let verdict = match (conditions_hold, agree) {
        (true, true) => Verdict::Match,
        (true, false) => Verdict::Violation,
        (false, a) => {
            if a {
                notes.push("exponents agree although transfer is not guaranteed".to_string());
            }
            Verdict::ExpectedMismatch
        }
    };
    if !one_way_ok {
        notes.push("decay is slower than the sublevel upper estimate permits".to_string());
    }
    TransferReport {
        verdict,
        alpha_growth,
        growth_range,
        alpha_osc,
        tolerance,
        conditions_hold,
        one_way_bound,
        one_way_ok,
        notes,
    }
}
