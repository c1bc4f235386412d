//! Zeros of compact-face polynomials on the torus `(R \ {0})^n`.
//!
//! In the plane every compact edge polynomial reduces, on each open quadrant, to a univariate
//! polynomial whose positive roots and multiplicities are computed exactly. In three variables
//! the zero set is searched numerically on a compact slice of the torus; quasi-homogeneity of
//! face polynomials guarantees that every zero's scaling orbit crosses the slice.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Face, NewtonPolyhedron};
use crate::measure::{self, Estimator, MeasureError, SweepConfig};
use crate::poly::univariate::{positive_roots, UniPoly};
use crate::poly::{CompiledPoly, PolyError, SparsePoly, VanishingOrder};
use crate::rational::{self, serde_q, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FaceError {
    #[error("face is not a compact edge")]
    NotEdge,
    #[error("expected {expected} variables, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("face diagnosis is unsupported in dimension {0}; only the polyhedron is available")]
    Unsupported(usize),
    #[error("point has a zero coordinate")]
    OffTorus,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certainty {
    Exact,
    Numeric,
}

impl Certainty {
    pub fn and(self, other: Certainty) -> Certainty {
        self.max(other)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroWitness {
    pub point: Vec<f64>,
    #[serde(with = "serde_q::optvec")]
    pub exact_point: Option<Vec<Rational>>,
    pub order: u32,
    pub certainty: Certainty,
}

/// Growth index of `|S_F|` at a torus point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PointIndex {
    /// `S_F(a) != 0`.
    Infinite,
    Exact {
        #[serde(with = "serde_q")]
        value: Rational,
    },
    Numeric {
        value: f64,
        log_power: f64,
    },
}

impl PointIndex {
    pub fn value_f64(&self) -> f64 {
        match self {
            PointIndex::Infinite => f64::INFINITY,
            PointIndex::Exact { value } => rational::to_f64(value),
            PointIndex::Numeric { value, .. } => *value,
        }
    }

    pub fn certainty(&self) -> Certainty {
        match self {
            PointIndex::Numeric { .. } => Certainty::Numeric,
            _ => Certainty::Exact,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceDiagnosis {
    /// Index into [`NewtonPolyhedron::faces`].
    pub face: usize,
    pub dim: usize,
    /// Vertex exponents of the face.
    pub vertices: Vec<Vec<u32>>,
    /// Largest zero order found on the torus (0 when no zero was found).
    pub max_zero_order: u32,
    pub certainty: Certainty,
    /// An exact upper bound on every torus zero order, from a nonvanishing derivative.
    pub order_bound: Option<u32>,
    pub witnesses: Vec<ZeroWitness>,
    pub min_pointwise_index: Option<PointIndex>,
    /// `grad S_F` has no zero on the torus.
    pub nondegenerate: bool,
    /// Smallest coordinate modulus searched on the slice (numeric searches only).
    pub mu_floor: Option<f64>,
}

impl FaceDiagnosis {
    pub fn has_torus_zero(&self) -> bool {
        self.max_zero_order > 0
    }

    fn vertex(face: usize, np: &NewtonPolyhedron) -> Self {
        let f = &np.faces[face];
        FaceDiagnosis {
            face,
            dim: 0,
            vertices: f.vertices.iter().map(|&v| np.vertices[v].clone()).collect(),
            max_zero_order: 0,
            certainty: Certainty::Exact,
            order_bound: Some(0),
            witnesses: Vec::new(),
            min_pointwise_index: None,
            nondegenerate: true,
            mu_floor: None,
        }
    }
}

/// Exact diagnosis of a compact edge polynomial in two variables.
pub fn edge_zero_analysis_2d(sf: &SparsePoly, edge: &Face) -> Result<FaceDiagnosis, FaceError> {
    if sf.nvars() != 2 {
        return Err(FaceError::Dimension {
            expected: 2,
            got: sf.nvars(),
        });
    }
    if edge.dim != 1 || !edge.compact {
        return Err(FaceError::NotEdge);
    }
    let mut support = sf.support()?;
    support.sort();
    if support.len() < 2 {
        return Err(FaceError::NotEdge);
    }
    // exponents (a0 + j p, b0 - j q) along the edge
    let (a0, b0) = (support[0][0] as i64, support[0][1] as i64);
    let last = support.last().unwrap();
    let (dx, dy) = (last[0] as i64 - a0, b0 - last[1] as i64);
    if dx <= 0 || dy <= 0 {
        return Err(FaceError::NotEdge);
    }
    let g = num_integer::gcd(dx, dy);
    let (p, q, len) = (dx / g, dy / g, g);
    let mut coefs = vec![Rational::zero(); len as usize + 1];
    for e in &support {
        let j = (e[0] as i64 - a0) / p;
        if (e[0] as i64 - a0) % p != 0 || b0 - e[1] as i64 != j * q {
            return Err(FaceError::NotEdge);
        }
        coefs[j as usize] = sf.coefficient(e);
    }

    let mut witnesses = Vec::new();
    for (sx, sy) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
        // sign of x^{jp} y^{(L-j)q} on the quadrant
        let reduced: Vec<Rational> = coefs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let j = j as i64;
                let mut s = 1;
                if sx < 0 && (j * p) % 2 == 1 {
                    s = -s;
                }
                if sy < 0 && ((len - j) * q) % 2 == 1 {
                    s = -s;
                }
                if s < 0 {
                    -c.clone()
                } else {
                    c.clone()
                }
            })
            .collect();
        let poly = UniPoly::new(reduced);
        for root in positive_roots(&poly, &rational::q(1, 1 << 40)) {
            let exact = root.exact.clone().or_else(|| {
                let guess = rational::approximate(root.midpoint_f64(), 1 << 20);
                (guess > root.lo && guess <= root.hi && poly.eval(&guess).is_zero())
                    .then_some(guess)
            });
            let w = exact.as_ref().map_or(root.midpoint_f64(), rational::to_f64);
            // |y| = 1 and |x|^p = w
            let xabs = w.powf(1.0 / p as f64);
            let exact_point = match (&exact, p) {
                (Some(r), 1) => Some(vec![r * rational::int(sx), rational::int(sy)]),
                _ => None,
            };
            witnesses.push(ZeroWitness {
                point: vec![sx as f64 * xabs, sy as f64],
                exact_point,
                order: root.multiplicity,
                certainty: Certainty::Exact,
            });
        }
    }
    let max = witnesses.iter().map(|w| w.order).max().unwrap_or(0);
    Ok(FaceDiagnosis {
        face: usize::MAX,
        dim: 1,
        vertices: vec![support[0].clone(), last.clone()],
        max_zero_order: max,
        certainty: Certainty::Exact,
        order_bound: Some(max),
        min_pointwise_index: pointwise_from_witnesses(&witnesses),
        nondegenerate: max <= 1,
        witnesses,
        mu_floor: None,
    })
}

fn pointwise_from_witnesses(ws: &[ZeroWitness]) -> Option<PointIndex> {
    // order-1 zeros have index exactly 1; higher orders are filled in by the caller
    ws.iter().any(|w| w.order == 1).then(|| PointIndex::Exact {
        value: Rational::one(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSearchConfig {
    pub starts: usize,
    pub mu_floor: f64,
    pub seed: u64,
    pub max_order: u32,
    pub deriv_tol: f64,
    pub order_tol: f64,
    pub max_iter: usize,
}

impl Default for ZeroSearchConfig {
    fn default() -> Self {
        ZeroSearchConfig {
            starts: 96,
            mu_floor: 1e-3,
            seed: 0,
            max_order: 8,
            deriv_tol: 1e-6,
            order_tol: 1e-3,
            max_iter: 200,
        }
    }
}

/// Positive weights `w` with `S_F(t^w x) = t^c S_F(x)`, taken from the face's normal.
fn face_weights(sf: &SparsePoly) -> Option<Vec<f64>> {
    let support = sf.rational_terms();
    let n = sf.nvars();
    if support.is_empty() {
        return None;
    }
    // normal to the affine hull of the support with positive entries: try the all-ones
    // fallback when the support is a single point
    if support.len() == 1 {
        return Some(vec![1.0; n]);
    }
    let base = &support[0].0;
    let rows: Vec<Vec<Rational>> = support[1..]
        .iter()
        .map(|(e, _)| e.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let ns = crate::linalg::null_space(&rows, n);
    // search a positive combination among the basis vectors and their small sums
    let mut candidates: Vec<Vec<Rational>> = ns.clone();
    if ns.len() > 1 {
        let sum: Vec<Rational> = (0..n)
            .map(|i| ns.iter().map(|v| v[i].clone()).sum())
            .collect();
        candidates.push(sum);
    }
    for v in candidates {
        let sign = v
            .iter()
            .find(|x| !x.is_zero())
            .map(|x| x.is_positive())
            .unwrap_or(true);
        let v: Vec<Rational> = if sign {
            v
        } else {
            v.iter().map(|x| -x.clone()).collect()
        };
        if v.iter().all(|x| x.is_positive()) {
            return Some(v.iter().map(rational::to_f64).collect());
        }
    }
    None
}

type MultiIndex = Vec<u32>;

const MAX_POINTWISE_SWEEPS: usize = 3;

/// Partial derivatives of `S` and of its absolute-coefficient majorant, by order.
struct DerivTable {
    n: usize,
    orders: Vec<Vec<(MultiIndex, CompiledPoly, CompiledPoly, f64)>>,
    exact: BTreeMap<MultiIndex, SparsePoly>,
}

fn abs_poly(p: &SparsePoly) -> SparsePoly {
    SparsePoly::from_terms(p.nvars(), p.terms().map(|(e, c)| (c.abs(), e.0.clone())))
}

impl DerivTable {
    fn new(p: &SparsePoly, max_order: u32) -> Result<Self, PolyError> {
        let n = p.nvars();
        let mut exact: BTreeMap<MultiIndex, SparsePoly> = BTreeMap::new();
        exact.insert(vec![0; n], p.clone());
        let mut orders = vec![vec![(
            vec![0; n],
            CompiledPoly::new(p),
            CompiledPoly::new(&abs_poly(p)),
            1.0,
        )]];
        for m in 1..=max_order as usize {
            let mut level = Vec::new();
            let prev: Vec<MultiIndex> = orders[m - 1].iter().map(|t| t.0.clone()).collect();
            for beta in prev {
                // extend only the last nonzero slot onwards to enumerate each multi-index once
                let start = beta.iter().rposition(|&b| b > 0).unwrap_or(0);
                for i in start..n {
                    let mut b2 = beta.clone();
                    b2[i] += 1;
                    let d = exact[&beta].derivative(i)?;
                    let fact: f64 = b2
                        .iter()
                        .map(|&k| (1..=k).map(|x| x as f64).product::<f64>())
                        .product();
                    level.push((
                        b2.clone(),
                        CompiledPoly::new(&d),
                        CompiledPoly::new(&abs_poly(&d)),
                        fact,
                    ));
                    exact.insert(b2, d);
                }
            }
            orders.push(level);
        }
        Ok(DerivTable { n, orders, exact })
    }

    /// Normalised size of the order-`m` Taylor coefficients at `x`.
    fn norm(&self, m: usize, x: &[f64]) -> f64 {
        let ax: Vec<f64> = x.iter().map(|v| v.abs()).collect();
        let mut num = 0.0f64;
        let mut den = 0.0f64;
        for (_, d, dabs, fact) in &self.orders[m] {
            num = num.max(d.eval(x).abs() / fact);
            den = den.max(dabs.eval(&ax) / fact);
        }
        if den == 0.0 {
            0.0
        } else {
            num / den
        }
    }

    fn index_of(&self, beta: &[u32]) -> Option<&CompiledPoly> {
        let m: u32 = beta.iter().sum();
        self.orders
            .get(m as usize)?
            .iter()
            .find(|t| t.0 == beta)
            .map(|t| &t.1)
    }

    /// Damped Gauss-Newton on every partial of order `< m`, keeping the point on the slice.
    fn refine(&self, m: usize, x: &mut [f64], weights: &[f64]) {
        let n = self.n;
        for _ in 0..60 {
            let mut jtj = vec![vec![0.0; n]; n];
            let mut jtg = vec![0.0; n];
            let mut resid = 0.0;
            for level in &self.orders[..m] {
                for (beta, d, dabs, _) in level {
                    let scale = dabs
                        .eval(&x.iter().map(|v| v.abs()).collect::<Vec<_>>())
                        .max(1e-300);
                    let g = d.eval(x) / scale;
                    resid += g * g;
                    let mut row = vec![0.0; n];
                    for (i, r) in row.iter_mut().enumerate() {
                        let mut b2 = beta.clone();
                        b2[i] += 1;
                        *r = self.index_of(&b2).map_or(0.0, |p| p.eval(x)) / scale;
                    }
                    for i in 0..n {
                        jtg[i] += row[i] * g;
                        for j in 0..n {
                            jtj[i][j] += row[i] * row[j];
                        }
                    }
                }
            }
            if resid < 1e-30 {
                break;
            }
            let tr: f64 = (0..n).map(|i| jtj[i][i]).sum();
            for (i, row) in jtj.iter_mut().enumerate() {
                row[i] += 1e-12 * tr.max(1e-300);
            }
            let Some(step) = solve_dense(jtj, jtg) else {
                break;
            };
            for i in 0..n {
                x[i] -= step[i];
            }
            to_slice(x, weights);
            if step.iter().map(|s| s.abs()).fold(0.0, f64::max) < 1e-15 {
                break;
            }
        }
    }
}

fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap())?;
        if a[p][c] == 0.0 {
            return None;
        }
        a.swap(c, p);
        b.swap(c, p);
        for i in c + 1..n {
            let f = a[i][c] / a[c][c];
            for j in c..n {
                a[i][j] -= f * a[c][j];
            }
            b[i] -= f * b[c];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Rescales `x` along its quasi-homogeneous orbit onto `max_i |x_i| = 1`.
fn to_slice(x: &mut [f64], w: &[f64]) {
    let ln_t = x
        .iter()
        .zip(w)
        .map(|(v, wi)| -v.abs().ln() / wi)
        .fold(f64::INFINITY, f64::min);
    if !ln_t.is_finite() {
        return;
    }
    for (v, wi) in x.iter_mut().zip(w) {
        *v *= (ln_t * wi).exp();
    }
}

/// Numeric search for torus zeros of a quasi-homogeneous polynomial, with order estimates.
pub fn torus_zero_search(
    sf: &SparsePoly,
    cfg: &ZeroSearchConfig,
) -> Result<Vec<ZeroWitness>, FaceError> {
    let n = sf.nvars();
    if sf.len() <= 1 {
        return Ok(Vec::new());
    }
    let weights = face_weights(sf).unwrap_or_else(|| vec![1.0; n]);
    let table = DerivTable::new(sf, cfg.max_order)?;
    let value = &table.orders[0][0].1;
    let majorant = &table.orders[0][0].2;
    let grads: Vec<&CompiledPoly> = table.orders[1].iter().map(|t| &t.1).collect();
    let found: Vec<Option<Vec<f64>>> = (0..cfg.starts)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(s as u64);
            let mut x: Vec<f64> = (0..n)
                .map(|_| {
                    let m = rng.gen_range(cfg.mu_floor..1.0);
                    if rng.gen::<bool>() {
                        m
                    } else {
                        -m
                    }
                })
                .collect();
            x[s % n] = x[s % n].signum();
            for _ in 0..cfg.max_iter {
                let v = value.eval(&x);
                let scale = majorant.eval(&x.iter().map(|t| t.abs()).collect::<Vec<_>>());
                if v.abs() <= 1e-14 * scale {
                    break;
                }
                let g: Vec<f64> = grads.iter().map(|d| d.eval(&x)).collect();
                let g2: f64 = g.iter().map(|t| t * t).sum();
                if g2 == 0.0 {
                    return None;
                }
                for i in 0..n {
                    x[i] -= v * g[i] / g2;
                }
                if x.iter().any(|t| !t.is_finite() || *t == 0.0) {
                    return None;
                }
                to_slice(&mut x, &weights);
            }
            let scale = majorant.eval(&x.iter().map(|t| t.abs()).collect::<Vec<_>>());
            let ok =
                value.eval(&x).abs() <= 1e-10 * scale && x.iter().all(|t| t.abs() >= cfg.mu_floor);
            ok.then_some(x)
        })
        .collect();

    let mut points: Vec<Vec<f64>> = Vec::new();
    for x in found.into_iter().flatten() {
        if points.iter().all(|p| {
            p.iter()
                .zip(&x)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
                > 1e-4
        }) {
            points.push(x);
        }
    }
    let mut out: Vec<ZeroWitness> = points
        .into_par_iter()
        .map(|x| classify_zero(sf, &table, x, &weights, cfg))
        .collect::<Result<_, _>>()?;
    out.sort_by(|a, b| {
        b.order.cmp(&a.order).then(
            a.point
                .partial_cmp(&b.point)
                .unwrap_or(std::cmp::Ordering::Equal),
        )
    });
    out.truncate(32);
    Ok(out)
}

fn classify_zero(
    sf: &SparsePoly,
    table: &DerivTable,
    mut x: Vec<f64>,
    weights: &[f64],
    cfg: &ZeroSearchConfig,
) -> Result<ZeroWitness, FaceError> {
    let max = cfg.max_order as usize;
    let mut order = None;
    for m in 1..=max {
        let mut nm = table.norm(m, &x);
        if nm > cfg.order_tol {
            let lower_ok = |x: &[f64]| (1..m).all(|j| table.norm(j, x) < cfg.deriv_tol);
            if !lower_ok(&x) {
                let mut y = x.clone();
                table.refine(m, &mut y, weights);
                if lower_ok(&y) {
                    x = y;
                }
            }
            order = Some(m as u32);
            break;
        }
        if nm >= cfg.deriv_tol {
            // ambiguous scale: pull the point onto the zero set of the order-m partials
            let mut y = x.clone();
            table.refine(m + 1, &mut y, weights);
            nm = table.norm(m, &y);
            if nm < cfg.deriv_tol {
                x = y;
            } else {
                order = Some(m as u32);
                break;
            }
        }
    }
    let mut witness = ZeroWitness {
        point: x.clone(),
        exact_point: None,
        order: order.unwrap_or(cfg.max_order + 1),
        certainty: Certainty::Numeric,
    };
    if witness.order == 1 && certify_simple_zero(sf, &witness.point)? {
        witness.certainty = Certainty::Exact;
    } else if witness.order == 2 {
        if let Some(g) = sf.exact_sqrt() {
            if certify_simple_zero(&g, &witness.point)? {
                witness.certainty = Certainty::Exact;
            }
        }
    }
    // a small rational point on the same zero makes the order exact
    let r: Vec<Rational> = x.iter().map(|&v| rational::approximate(v, 1000)).collect();
    if r.iter().all(|v| !v.is_zero()) && sf.evaluate_exact(&r)?.is_zero() {
        if let VanishingOrder::Finite(k) = sf.vanishing_order_at(&r, cfg.max_order as i64)? {
            witness.order = k;
            witness.certainty = Certainty::Exact;
            witness.point = r.iter().map(rational::to_f64).collect();
            witness.exact_point = Some(r);
        }
    }
    Ok(witness)
}

/// Proves that `g` has a simple torus zero near `x`: all but the steepest coordinate are frozen
/// at nearby rationals, and the remaining univariate restriction must change sign on a small
/// interval on which its derivative has no root.
fn certify_simple_zero(g: &SparsePoly, x: &[f64]) -> Result<bool, FaceError> {
    if !g.has_integer_exponents() {
        return Ok(false);
    }
    let n = g.nvars();
    let grads = g.gradient()?;
    let slopes: Vec<f64> = grads
        .iter()
        .map(|d| CompiledPoly::new(d).eval(x).abs())
        .collect();
    let i = (0..n)
        .max_by(|&a, &b| slopes[a].partial_cmp(&slopes[b]).unwrap())
        .unwrap_or(0);
    let frozen: Vec<Rational> = x
        .iter()
        .map(|&v| rational::approximate(v, 1_000_000))
        .collect();
    if frozen.iter().any(|v| v.is_zero()) {
        return Ok(false);
    }
    let deg = g.degree_in(i) as usize;
    let mut coefs = vec![Rational::zero(); deg + 1];
    for (e, c) in g.terms() {
        let mut t = c.clone();
        for (j, (&k, r)) in e.0.iter().zip(&frozen).enumerate() {
            if j != i && k > 0 {
                t *= num_traits::pow(r.clone(), k as usize);
            }
        }
        coefs[e.0[i] as usize] += t;
    }
    let line = UniPoly::new(coefs);
    let h = (1e-4f64).min(0.5 * x[i].abs());
    let lo = rational::from_f64(x[i] - h);
    let hi = rational::from_f64(x[i] + h);
    let (vl, vh) = (line.eval(&lo), line.eval(&hi));
    if vl.is_zero() || vh.is_zero() || vl.is_positive() == vh.is_positive() {
        return Ok(false);
    }
    let dl = line.derivative();
    if dl.is_zero() || dl.eval(&lo).is_zero() {
        return Ok(false);
    }
    let sqf = dl.div_rem(&dl.gcd(&dl.derivative())).0;
    Ok(crate::poly::univariate::count_roots(&sqf.sturm_sequence(), &lo, &hi) == 0)
}

/// Smallest `m` such that some order-`m` partial of `S_F` is a single nonzero monomial, or
/// 0 when `S_F` is a same-signed sum of even monomials. Either way no torus zero has order
/// above the returned value.
pub fn exact_order_bound(sf: &SparsePoly, max_order: u32) -> Option<u32> {
    if sf.is_zero() {
        return None;
    }
    if sf.has_integer_exponents() {
        let even = sf.terms().all(|(e, _)| e.0.iter().all(|k| k % 2 == 0));
        let pos = sf.terms().all(|(_, c)| c.is_positive());
        let neg = sf.terms().all(|(_, c)| c.is_negative());
        if even && (pos || neg) {
            return Some(0);
        }
    } else {
        return None;
    }
    let table = DerivTable::new(sf, max_order).ok()?;
    (0..=max_order as usize)
        .find(|&m| {
            table.orders[m]
                .iter()
                .any(|(beta, _, _, _)| table.exact.get(beta).is_some_and(|d| d.len() == 1))
        })
        .map(|m| m as u32)
}

/// Growth index of `|S_F|` at the torus point `a`.
pub fn growth_index_at_point(sf: &SparsePoly, a: &[f64]) -> Result<PointIndex, FaceError> {
    let n = sf.nvars();
    if a.len() != n {
        return Err(FaceError::Dimension {
            expected: n,
            got: a.len(),
        });
    }
    if a.iter().any(|&t| t == 0.0) {
        return Err(FaceError::OffTorus);
    }
    let cp = CompiledPoly::new(sf);
    let scale =
        CompiledPoly::new(&abs_poly(sf)).eval(&a.iter().map(|t| t.abs()).collect::<Vec<_>>());
    if cp.eval(a).abs() > 1e-9 * scale {
        return Ok(PointIndex::Infinite);
    }
    let grad: Vec<f64> = (0..n)
        .map(|i| sf.derivative(i).map(|d| CompiledPoly::new(&d).eval(a)))
        .collect::<Result<_, _>>()?;
    let gnorm = grad.iter().map(|g| g.abs()).fold(0.0, f64::max);
    if gnorm > 1e-6 * scale {
        return Ok(PointIndex::Exact {
            value: Rational::one(),
        });
    }
    // local sublevel measurement of S_F(a + x) near x = 0
    let shift: Vec<Rational> = a.iter().map(|&t| rational::from_f64(t)).collect();
    let local = sf.translate(&shift)?;
    let c0 = rational::to_f64(&local.constant_term()).abs();
    let local = local.sub(&SparsePoly::constant(n, local.constant_term()));
    let radius = 0.25 * a.iter().map(|t| t.abs()).fold(f64::INFINITY, f64::min);
    let hi = 1e-2 * scale;
    let lo = (1e-7 * scale).max(1e3 * c0);
    let cfg = SweepConfig {
        eta: radius.min(1.0),
        eps: measure::geometric(hi, lo, 8),
        samples: 20_000,
        shells: 16,
        estimator: Estimator::Line,
        ..SweepConfig::default()
    };
    let (_, fit) = measure::sweep_and_fit(&local, &cfg)?;
    Ok(PointIndex::Numeric {
        value: fit.alpha,
        log_power: fit.beta,
    })
}

/// Pointwise index at a witness: 1 for simple zeros, `1/2` when `S_F = G^2` with `G` having a
/// simple zero there, and a numeric local measurement otherwise.
fn witness_index(sf: &SparsePoly, w: &ZeroWitness) -> Result<PointIndex, FaceError> {
    if w.order == 1 {
        return Ok(PointIndex::Exact {
            value: Rational::one(),
        });
    }
    if let Some(g) = sf.exact_sqrt() {
        if let PointIndex::Exact { value } = growth_index_at_point(&g, &w.point)? {
            if value.is_one() {
                return Ok(PointIndex::Exact {
                    value: rational::q(1, 2),
                });
            }
        }
    }
    growth_index_at_point(sf, &w.point)
}

fn min_index(a: Option<PointIndex>, b: PointIndex) -> Option<PointIndex> {
    match a {
        None => Some(b),
        Some(a) => {
            if b.value_f64() < a.value_f64() {
                Some(b)
            } else {
                Some(a)
            }
        }
    }
}

/// Diagnoses one compact face of dimension at least one.
pub fn diagnose_face(
    p: &SparsePoly,
    np: &NewtonPolyhedron,
    face: usize,
    cfg: &ZeroSearchConfig,
) -> Result<FaceDiagnosis, FaceError> {
    let f = &np.faces[face];
    if f.dim == 0 {
        return Ok(FaceDiagnosis::vertex(face, np));
    }
    let sf = p.restrict_to_face(f)?;
    let vertices: Vec<Vec<u32>> = f.vertices.iter().map(|&v| np.vertices[v].clone()).collect();
    let bound = exact_order_bound(&sf, cfg.max_order);
    let mut diag = match np.n {
        2 => {
            let mut d = edge_zero_analysis_2d(&sf, f)?;
            d.face = face;
            d
        }
        3 => {
            let witnesses = if bound == Some(0) {
                Vec::new()
            } else {
                torus_zero_search(&sf, cfg)?
            };
            let max = witnesses.iter().map(|w| w.order).max().unwrap_or(0);
            let all_exact = witnesses.iter().all(|w| w.certainty == Certainty::Exact);
            let certainty = match bound {
                Some(b) if b == max && (b == 0 || all_exact) => Certainty::Exact,
                _ => Certainty::Numeric,
            };
            FaceDiagnosis {
                face,
                dim: f.dim,
                vertices: vertices.clone(),
                max_zero_order: max,
                certainty,
                order_bound: bound,
                nondegenerate: bound.map_or(max <= 1, |b| b <= 1),
                witnesses,
                min_pointwise_index: None,
                mu_floor: (bound != Some(0)).then_some(cfg.mu_floor),
            }
        }
        n => return Err(FaceError::Unsupported(n)),
    };
    diag.vertices = vertices;
    if diag.order_bound.is_none() {
        diag.order_bound = bound;
    }
    if np.n == 3 {
        // local sweeps are costly: measure at most a few non-simple witnesses per face
        let mut least = None;
        let mut sweeps = 0;
        for w in &diag.witnesses {
            let cheap = w.order == 1 || sf.exact_sqrt().is_some();
            if !cheap {
                if sweeps == MAX_POINTWISE_SWEEPS {
                    continue;
                }
                sweeps += 1;
            }
            least = min_index(least, witness_index(&sf, w)?);
        }
        diag.min_pointwise_index = least;
    }
    Ok(diag)
}

/// `d'`, the largest torus zero order over all compact faces, and every face's diagnosis.
pub fn face_max_zero_order(
    p: &SparsePoly,
    np: &NewtonPolyhedron,
    cfg: &ZeroSearchConfig,
) -> Result<(u32, Vec<FaceDiagnosis>), FaceError> {
    if np.n > 3 {
        return Err(FaceError::Unsupported(np.n));
    }
    let mut out = Vec::new();
    for (i, f) in np.faces.iter().enumerate() {
        if !f.compact {
            continue;
        }
        if np.n == 1 || f.dim == 0 {
            out.push(FaceDiagnosis::vertex(i, np));
        } else {
            out.push(diagnose_face(p, np, i, cfg)?);
        }
    }
    let d = out.iter().map(|d| d.max_zero_order).max().unwrap_or(0);
    Ok((d, out))
}
