//! Real roots of small `f64` polynomials on an interval, by recursive isolation of
//! monotone pieces between critical points.

/// Ascending coefficients with trailing zeros removed.
pub fn trim(c: &[f64]) -> &[f64] {
    let mut n = c.len();
    while n > 0 && c[n - 1] == 0.0 {
        n -= 1;
    }
    &c[..n]
}

#[inline]
pub fn horner(c: &[f64], t: f64) -> f64 {
    let mut acc = 0.0;
    for &x in c.iter().rev() {
        acc = acc * t + x;
    }
    acc
}

#[inline]
fn horner_d(c: &[f64], t: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut d = 0.0;
    for &x in c.iter().rev() {
        d = d * t + p;
        p = p * t + x;
    }
    (p, d)
}

/// Solves `q(t) = level` on `[u, v]` where `q - level` changes sign (safeguarded Newton).
pub fn solve_bracketed(c: &[f64], level: f64, mut u: f64, mut v: f64) -> f64 {
    let mut fu = horner(c, u) - level;
    if fu == 0.0 {
        return u;
    }
    let fv = horner(c, v) - level;
    if fv == 0.0 {
        return v;
    }
    let mut t = 0.5 * (u + v);
    for _ in 0..100 {
        let (p, d) = horner_d(c, t);
        let f = p - level;
        if f == 0.0 {
            return t;
        }
        if (f < 0.0) == (fu < 0.0) {
            u = t;
            fu = f;
        } else {
            v = t;
        }
        let mut next = if d != 0.0 { t - f / d } else { f64::NAN };
        if !(next > u && next < v) {
            next = 0.5 * (u + v);
        }
        if (next - t).abs() <= 4.0 * f64::EPSILON * t.abs().max(1e-300)
            || v - u <= f64::EPSILON * u.abs().max(v.abs())
        {
            return next;
        }
        t = next;
    }
    t
}

fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(k, &x)| k as f64 * x)
        .collect()
}

/// Sorted roots of `c` in the open interval `(a, b)`; tangential roots may be missed.
pub fn roots_in(c: &[f64], a: f64, b: f64) -> Vec<f64> {
    let c = trim(c);
    match c.len() {
        0 | 1 => Vec::new(),
        2 => {
            let t = -c[0] / c[1];
            if t > a && t < b {
                vec![t]
            } else {
                Vec::new()
            }
        }
        3 => {
            let (c0, c1, c2) = (c[0], c[1], c[2]);
            let disc = c1 * c1 - 4.0 * c2 * c0;
            if disc < 0.0 {
                return Vec::new();
            }
            let s = disc.sqrt();
            let qv = -0.5 * (c1 + c1.signum() * s);
            let mut r = Vec::with_capacity(2);
            if qv != 0.0 {
                r.push(qv / c2);
                r.push(c0 / qv);
            } else {
                r.push(0.0);
            }
            r.retain(|&t| t > a && t < b);
            r.sort_by(|x, y| x.partial_cmp(y).unwrap());
            r.dedup();
            r
        }
        _ => {
            let crit = roots_in(&derivative(c), a, b);
            let mut out = Vec::new();
            let mut u = a;
            let mut fu = horner(c, u);
            for &v in crit.iter().chain(std::iter::once(&b)) {
                let fv = horner(c, v);
                if fv == 0.0 && v < b {
                    out.push(v);
                } else if (fu < 0.0 && fv > 0.0) || (fu > 0.0 && fv < 0.0) {
                    out.push(solve_bracketed(c, 0.0, u, v));
                }
                u = v;
                fu = fv;
            }
            out
        }
    }
}

/// Monotone decomposition of `q` on `[a, b]`: breakpoints `a = t_0 < ... < t_m = b` and values.
pub struct MonotonePieces {
    pub knots: Vec<f64>,
    pub values: Vec<f64>,
}

impl MonotonePieces {
    pub fn new(c: &[f64], a: f64, b: f64) -> Self {
        let c = trim(c);
        let mut knots = Vec::with_capacity(c.len() + 1);
        knots.push(a);
        if c.len() > 2 {
            knots.extend(roots_in(&derivative(c), a, b));
        }
        knots.push(b);
        let values = knots.iter().map(|&t| horner(c, t)).collect();
        MonotonePieces { knots, values }
    }

    /// Smallest `|q|` over the knots (bounds `min |q|` when no piece changes sign).
    pub fn sign_definite_min(&self) -> Option<f64> {
        let pos = self.values.iter().all(|&v| v > 0.0);
        let neg = self.values.iter().all(|&v| v < 0.0);
        if pos || neg {
            Some(
                self.values
                    .iter()
                    .fold(f64::INFINITY, |m, v| m.min(v.abs())),
            )
        } else {
            None
        }
    }

    /// Subintervals of `[a, b]` where `|q| < eps`, one candidate per monotone piece.
    pub fn sublevel_intervals(&self, c: &[f64], eps: f64, out: &mut Vec<(f64, f64)>) {
        out.clear();
        let c = trim(c);
        for k in 0..self.knots.len() - 1 {
            let (u, v) = (self.knots[k], self.knots[k + 1]);
            let (fu, fv) = (self.values[k], self.values[k + 1]);
            let (lo, hi) = if fu <= fv { (fu, fv) } else { (fv, fu) };
            if hi <= -eps || lo >= eps {
                continue;
            }
            let (start, end) = if fu <= fv {
                let s = if fu > -eps {
                    u
                } else {
                    solve_bracketed(c, -eps, u, v)
                };
                let e = if fv < eps {
                    v
                } else {
                    solve_bracketed(c, eps, u, v)
                };
                (s, e)
            } else {
                let s = if fu < eps {
                    u
                } else {
                    solve_bracketed(c, eps, u, v)
                };
                let e = if fv > -eps {
                    v
                } else {
                    solve_bracketed(c, -eps, u, v)
                };
                (s, e)
            };
            if end > start {
                match out.last_mut() {
                    Some(last) if last.1 >= start => last.1 = end,
                    _ => out.push((start, end)),
                }
            }
        }
    }
}
