//! Stratified Monte Carlo estimation of `int_{|S| < eps} phi` over the cube `(-eta, eta)^n`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::roots::MonotonePieces;
use super::{Estimator, MeasureError, SweepConfig, Weight};
use crate::poly::{CompiledPoly, SparsePoly};

const CHUNK: usize = 4096;
const INNER_WARN: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolumePoint {
    pub eps: f64,
    pub estimate: f64,
    pub stderr: f64,
    /// Strata (shells plus the inner cube) with a nonzero contribution.
    pub shells_used: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub points: Vec<VolumePoint>,
    pub estimator: Estimator,
    pub line_var: Option<usize>,
    pub warnings: Vec<String>,
}

/// The product bump factor `exp(1 - 1/(1 - (t/eta)^2))`, zero outside `(-eta, eta)`.
pub fn bump(t: f64, eta: f64) -> f64 {
    let s = t / eta;
    let d = 1.0 - s * s;
    if d <= 0.0 {
        0.0
    } else {
        (1.0 - 1.0 / d).exp()
    }
}

struct Stratum {
    outer: f64,
    inner: f64,
    volume: f64,
}

fn strata(n: usize, cfg: &SweepConfig) -> Vec<Stratum> {
    let mut out: Vec<Stratum> = (0..cfg.shells)
        .map(|j| {
            let r = cfg.eta * 0.5f64.powi(j as i32);
            Stratum {
                outer: r,
                inner: r / 2.0,
                volume: (2.0 * r).powi(n as i32) - r.powi(n as i32),
            }
        })
        .collect();
    let r = cfg.eta * 0.5f64.powi(cfg.shells as i32);
    out.push(Stratum {
        outer: r,
        inner: 0.0,
        volume: (2.0 * r).powi(n as i32),
    });
    out
}

fn pick_line_var(p: &SparsePoly) -> usize {
    (0..p.nvars())
        .filter(|&i| p.degree_in(i) > 0)
        .min_by_key(|&i| (p.degree_in(i), i))
        .unwrap_or(0)
}

const GL8: [(f64, f64); 4] = [
    (0.183_434_642_495_649_8, 0.362_683_783_378_362_0),
    (0.525_532_409_916_329_0, 0.313_706_645_877_887_3),
    (0.796_666_477_413_626_7, 0.222_381_034_453_374_5),
    (0.960_289_856_497_536_3, 0.101_228_536_290_376_3),
];

fn bump_integral(a: f64, b: f64, eta: f64) -> f64 {
    let len = b - a;
    let panels = ((8.0 * len / eta).ceil() as usize).clamp(1, 16);
    let h = len / panels as f64;
    let mut sum = 0.0;
    for k in 0..panels {
        let mid = a + (k as f64 + 0.5) * h;
        for &(x, w) in &GL8 {
            sum += w * (bump(mid - 0.5 * h * x, eta) + bump(mid + 0.5 * h * x, eta));
        }
    }
    sum * 0.5 * h
}

/// Octaves covered by the log-uniform half of the sampling mixture.
const LOG_OCTAVES: i32 = 40;

/// Draws from `1/2 Uniform(-r, r) + 1/2 (log-uniform |t| on (r 2^-40, r), random sign)` and
/// returns the sample with its density. The log-uniform half reaches the thin neighbourhoods of
/// coordinate hyperplanes that carry logarithmic volume; the uniform half bounds the weights.
fn sample_mixture(rng: &mut ChaCha8Rng, r: f64) -> (f64, f64) {
    let span = LOG_OCTAVES as f64 * std::f64::consts::LN_2;
    let t = if rng.gen::<bool>() {
        rng.gen_range(-r..r)
    } else {
        let s = r * (-span * rng.gen::<f64>()).exp();
        if rng.gen::<bool>() {
            s
        } else {
            -s
        }
    };
    let a = t.abs();
    let mut g = 0.25 / r;
    if a > r * 0.5f64.powi(LOG_OCTAVES) {
        g += 0.25 / (a * span);
    }
    (t, g)
}

struct Sampler<'a> {
    poly: &'a CompiledPoly,
    n: usize,
    eps: &'a [f64],
    eta: f64,
    weight: Weight,
    line: Option<usize>,
}

struct ChunkAcc {
    sum: Vec<f64>,
    sumsq: Vec<f64>,
}

impl Sampler<'_> {
    fn run_chunk(
        &self,
        st: &Stratum,
        seed: u64,
        stratum: usize,
        chunk: usize,
        count: usize,
    ) -> ChunkAcc {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(((stratum as u64) << 32) | chunk as u64);
        let m = self.eps.len();
        let mut acc = ChunkAcc {
            sum: vec![0.0; m],
            sumsq: vec![0.0; m],
        };
        let mut x = vec![0.0; self.n];
        let mut vals = vec![0.0; m];
        let mut coefs = Vec::new();
        let mut ivs = Vec::new();
        for _ in 0..count {
            match self.line {
                Some(i) => {
                    let mut density = 1.0;
                    for (k, v) in x.iter_mut().enumerate() {
                        if k != i {
                            let (t, g) = sample_mixture(&mut rng, st.outer);
                            *v = t;
                            density *= g;
                        }
                    }
                    self.line_values(st, i, &x, &mut coefs, &mut ivs, &mut vals);
                    let scale = 1.0 / (st.volume * density);
                    vals.iter_mut().for_each(|v| *v *= scale);
                }
                None => {
                    loop {
                        let mut mx = 0.0f64;
                        for v in x.iter_mut() {
                            *v = rng.gen_range(-st.outer..st.outer);
                            mx = mx.max(v.abs());
                        }
                        if mx >= st.inner {
                            break;
                        }
                    }
                    self.point_values(&x, &mut vals);
                }
            }
            for k in 1..m {
                if vals[k] > vals[k - 1] {
                    vals[k] = vals[k - 1];
                }
            }
            for k in 0..m {
                acc.sum[k] += vals[k];
                acc.sumsq[k] += vals[k] * vals[k];
            }
        }
        acc
    }

    fn point_values(&self, x: &[f64], vals: &mut [f64]) {
        let s = self.poly.eval(x).abs();
        let w = match self.weight {
            Weight::Indicator => 1.0,
            Weight::SmoothBump => x.iter().map(|&t| bump(t, self.eta)).product(),
        };
        for (v, &e) in vals.iter_mut().zip(self.eps) {
            *v = if s < e { w } else { 0.0 };
        }
    }

    fn line_values(
        &self,
        st: &Stratum,
        i: usize,
        x: &[f64],
        coefs: &mut Vec<f64>,
        ivs: &mut Vec<(f64, f64)>,
        vals: &mut [f64],
    ) {
        self.poly.line_coeffs(i, x, coefs);
        let others = x
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .fold(0.0f64, |m, (_, v)| m.max(v.abs()));
        let (r, h) = (st.outer, st.inner);
        let pieces: [(f64, f64); 2];
        let tset: &[(f64, f64)] = if others >= h || h == 0.0 {
            pieces = [(-r, r), (0.0, 0.0)];
            &pieces[..1]
        } else {
            pieces = [(-r, -h), (h, r)];
            &pieces[..]
        };
        let w_other = match self.weight {
            Weight::Indicator => 1.0,
            Weight::SmoothBump => x
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, &t)| bump(t, self.eta))
                .product(),
        };
        vals.iter_mut().for_each(|v| *v = 0.0);
        for &(a, b) in tset {
            let mp = MonotonePieces::new(coefs, a, b);
            if let Some(minabs) = mp.sign_definite_min() {
                if minabs >= self.eps[0] {
                    continue;
                }
            }
            for (k, &e) in self.eps.iter().enumerate() {
                mp.sublevel_intervals(coefs, e, ivs);
                if ivs.is_empty() {
                    // eps is decreasing, so smaller levels cannot hit either
                    break;
                }
                vals[k] += match self.weight {
                    Weight::Indicator => ivs.iter().map(|(u, v)| v - u).sum::<f64>(),
                    Weight::SmoothBump => ivs
                        .iter()
                        .map(|&(u, v)| bump_integral(u, v, self.eta))
                        .sum(),
                };
            }
        }
        for v in vals.iter_mut() {
            *v *= w_other;
        }
    }
}

/// Estimates the weighted sublevel volume at every `cfg.eps` with shared, nested samples.
pub fn sublevel_sweep(p: &SparsePoly, cfg: &SweepConfig) -> Result<SweepResult, MeasureError> {
    cfg.validate()?;
    let n = p.nvars();
    if let Some(v) = cfg.line_var {
        if v >= n {
            return Err(MeasureError::Config(format!(
                "line variable {v} out of range"
            )));
        }
    }
    let mut warnings = Vec::new();
    let line = match cfg.estimator {
        Estimator::Indicator => None,
        Estimator::Line if !p.has_integer_exponents() => {
            warnings.push("fractional exponents: using the indicator estimator".to_string());
            None
        }
        Estimator::Line => Some(cfg.line_var.unwrap_or_else(|| pick_line_var(p))),
    };
    let poly = CompiledPoly::new(p);
    let sampler = Sampler {
        poly: &poly,
        n,
        eps: &cfg.eps,
        eta: cfg.eta,
        weight: cfg.weight,
        line,
    };
    let strata = strata(n, cfg);
    let chunks = cfg.samples.div_ceil(CHUNK);
    let tasks: Vec<(usize, usize)> = (0..strata.len())
        .flat_map(|s| (0..chunks).map(move |c| (s, c)))
        .collect();
    let results: Vec<ChunkAcc> = tasks
        .par_iter()
        .map(|&(s, c)| {
            let count = CHUNK.min(cfg.samples - c * CHUNK);
            sampler.run_chunk(&strata[s], cfg.seed, s, c, count)
        })
        .collect();

    let m = cfg.eps.len();
    let nf = cfg.samples as f64;
    let mut est = vec![0.0; m];
    let mut var = vec![0.0; m];
    let mut used = vec![0usize; m];
    let mut inner = vec![0.0; m];
    for (s, st) in strata.iter().enumerate() {
        let mut sum = vec![0.0; m];
        let mut sumsq = vec![0.0; m];
        for acc in &results[s * chunks..(s + 1) * chunks] {
            for k in 0..m {
                sum[k] += acc.sum[k];
                sumsq[k] += acc.sumsq[k];
            }
        }
        for k in 0..m {
            let mean = sum[k] / nf;
            let s2 = ((sumsq[k] - nf * mean * mean) / (nf - 1.0)).max(0.0);
            est[k] += st.volume * mean;
            var[k] += st.volume * st.volume * s2 / nf;
            if mean > 0.0 {
                used[k] += 1;
            }
            if s == strata.len() - 1 {
                inner[k] = st.volume * mean;
            }
        }
    }
    for k in 0..m {
        if est[k] > 0.0 && inner[k] > INNER_WARN * est[k] {
            warnings.push(format!(
                "eps = {:.3e}: inner cube holds {:.1}% of the volume; increase the shell count",
                cfg.eps[k],
                100.0 * inner[k] / est[k]
            ));
        }
    }
    for w in &warnings {
        log::warn!("{w}");
    }
    let points = (0..m)
        .map(|k| VolumePoint {
            eps: cfg.eps[k],
            estimate: est[k],
            stderr: var[k].sqrt(),
            shells_used: used[k],
        })
        .collect();
    Ok(SweepResult {
        points,
        estimator: cfg.estimator,
        line_var: line,
        warnings,
    })
}

/// Single-level estimate `(value, standard error)`.
pub fn sublevel_volume(
    p: &SparsePoly,
    eps: f64,
    cfg: &SweepConfig,
) -> Result<(f64, f64), MeasureError> {
    if !(eps > 0.0) {
        return Err(MeasureError::Config("eps must be positive".into()));
    }
    let cfg = SweepConfig {
        eps: vec![eps],
        ..cfg.clone()
    };
    let r = sublevel_sweep(p, &cfg)?;
    Ok((r.points[0].estimate, r.points[0].stderr))
}
