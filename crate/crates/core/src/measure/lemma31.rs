//! Exact closed forms for `|{x in (0,1)^n : x^m < delta}|` and for the truncated integral
//! `int_{x^m > delta} delta / x^m dx`, as finite sums `delta^p * poly(ln(1/delta))`.
//!
//! With `u_i = -ln x_i` both quantities become statements about sums of independent
//! exponential variables, whose Laplace transforms are rational. The inverse transform is a
//! sum of residues, computed here with exact rational Taylor coefficients and evaluated in
//! 256-bit floating point.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::MeasureError;
use crate::rational::{self, Rational};

const PREC: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

/// `delta^power * sum_k coefs[k] * ln(1/delta)^k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogTerm {
    #[serde(with = "rational::serde_q")]
    pub power: Rational,
    #[serde(with = "rational::serde_q::vec")]
    pub coefs: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogPowerSum {
    pub terms: Vec<LogTerm>,
}

fn big(r: &Rational, cc: &mut Consts) -> BigFloat {
    let conv = |n: &BigInt, cc: &mut Consts| -> BigFloat {
        match n.to_i64() {
            Some(v) => BigFloat::from_i64(v, PREC),
            None => BigFloat::parse(&n.to_string(), Radix::Dec, PREC, RM, cc),
        }
    };
    let n = conv(r.numer(), cc);
    let d = conv(r.denom(), cc);
    n.div(&d, PREC, RM)
}

impl LogPowerSum {
    /// Evaluates at `delta` in 256-bit arithmetic and rounds to `f64`.
    pub fn eval(&self, delta: f64) -> f64 {
        let mut cc = Consts::new().expect("astro-float constants");
        let d = BigFloat::from_f64(delta, PREC);
        let ln_d = d.ln(PREC, RM, &mut cc);
        let l = ln_d.neg();
        let mut total = BigFloat::from_i64(0, PREC);
        for t in &self.terms {
            let mut poly = BigFloat::from_i64(0, PREC);
            for c in t.coefs.iter().rev() {
                poly = poly.mul(&l, PREC, RM).add(&big(c, &mut cc), PREC, RM);
            }
            let scale = big(&t.power, &mut cc)
                .mul(&ln_d, PREC, RM)
                .exp(PREC, RM, &mut cc);
            total = total.add(&poly.mul(&scale, PREC, RM), PREC, RM);
        }
        total.to_string().parse::<f64>().unwrap_or(f64::NAN)
    }

    /// The term with the smallest power of delta, then the largest log power: the leading
    /// behaviour as `delta -> 0`.
    pub fn leading(&self) -> Option<(Rational, usize)> {
        let t = self
            .terms
            .iter()
            .filter(|t| t.coefs.iter().any(|c| !c.is_zero()))
            .min_by(|a, b| a.power.cmp(&b.power))?;
        let k = t.coefs.iter().rposition(|c| !c.is_zero())?;
        Some((t.power.clone(), k))
    }
}

/// Taylor coefficients of `(c + u)^(-r)` in `u`, up to `u^(order-1)`.
fn inverse_power_series(c: &Rational, r: u32, order: usize) -> Vec<Rational> {
    let base = c.recip();
    let mut out = Vec::with_capacity(order);
    let mut coef = base.pow(r as i32);
    for i in 0..order {
        out.push(coef.clone());
        // binom(-r, i+1) / binom(-r, i) = -(r + i) / (i + 1)
        coef = -coef * Rational::from_integer(BigInt::from(r as u64 + i as u64))
            / Rational::from_integer(BigInt::from(i as u64 + 1))
            * &base;
    }
    out
}

fn series_mul(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order];
    for (i, x) in a.iter().enumerate().take(order) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Residues of `K e^{sL} / prod_j (s - p_j)^{r_j}`, each as `e^{p L} * poly(L)`.
/// Returned as `(pole, coefficients in L)`.
fn residues(poles: &[(Rational, u32)], k: &Rational) -> Vec<(Rational, Vec<Rational>)> {
    poles
        .iter()
        .enumerate()
        .map(|(j, (p, r))| {
            let order = *r as usize;
            let mut g = vec![Rational::zero(); order];
            g[0] = k.clone();
            for (i, (q, rq)) in poles.iter().enumerate() {
                if i != j {
                    g = series_mul(&g, &inverse_power_series(&(p - q), *rq, order), order);
                }
            }
            // coefficient of L^a is g_{r-1-a} / a!
            let mut coefs = Vec::with_capacity(order);
            let mut fact = Rational::one();
            for a in 0..order {
                if a > 0 {
                    fact *= Rational::from_integer(BigInt::from(a as u64));
                }
                coefs.push(&g[order - 1 - a] / &fact);
            }
            (p.clone(), coefs)
        })
        .collect()
}

fn group(values: impl IntoIterator<Item = Rational>) -> Vec<(Rational, u32)> {
    let mut v: Vec<Rational> = values.into_iter().collect();
    v.sort();
    let mut out: Vec<(Rational, u32)> = Vec::new();
    for x in v {
        match out.last_mut() {
            Some((y, r)) if *y == x => *r += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

fn positive_exponents(m: &[Rational]) -> Result<Vec<Rational>, MeasureError> {
    if m.iter().any(|x| x.is_negative()) {
        return Err(MeasureError::Exponents);
    }
    let pos: Vec<Rational> = m.iter().filter(|x| x.is_positive()).cloned().collect();
    if pos.is_empty() {
        return Err(MeasureError::Exponents);
    }
    Ok(pos)
}

/// Closed form of `|{x in (0,1)^n : x^m < delta}|`.
pub fn volume_terms(m: &[Rational]) -> Result<LogPowerSum, MeasureError> {
    let pos = positive_exponents(m)?;
    let rates = group(pos.iter().map(|x| x.recip()));
    // survival function of sum of Exp(rate) variables: minus the residues away from s = 0
    let k: Rational = rates
        .iter()
        .map(|(l, r)| l.pow(*r as i32))
        .fold(Rational::one(), |a, b| a * b);
    let mut poles: Vec<(Rational, u32)> = vec![(Rational::zero(), 1)];
    poles.extend(rates.iter().map(|(l, r)| (-l.clone(), *r)));
    let terms = residues(&poles, &k)
        .into_iter()
        .filter(|(p, _)| !p.is_zero())
        .map(|(p, coefs)| LogTerm {
            power: -p,
            coefs: coefs.into_iter().map(|c| -c).collect(),
        })
        .collect();
    Ok(LogPowerSum { terms })
}

/// Closed form of `int_{x in (0,1)^n, x^m > delta} delta / x^m dx`.
pub fn integral_terms(m: &[Rational]) -> Result<LogPowerSum, MeasureError> {
    let pos = positive_exponents(m)?;
    let k: Rational = pos.iter().fold(Rational::one(), |a, b| a / b);
    let poles = group(
        std::iter::once(Rational::zero()).chain(pos.iter().map(|x| Rational::one() - x.recip())),
    );
    let terms = residues(&poles, &k)
        .into_iter()
        .map(|(p, coefs)| LogTerm {
            power: Rational::one() - p,
            coefs,
        })
        .collect();
    Ok(LogPowerSum { terms })
}

fn check_delta(delta: f64) -> Result<(), MeasureError> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(MeasureError::Delta(delta))
    }
}

/// `|{x in (0,1)^n : x_1^{m_1} ... x_n^{m_n} < delta}|`, exact up to the final rounding.
pub fn monomial_box_volume_exact(m: &[Rational], delta: f64) -> Result<f64, MeasureError> {
    check_delta(delta)?;
    Ok(volume_terms(m)?.eval(delta))
}

/// `int_{x^m > delta} delta / x^m dx` over `(0,1)^n`.
pub fn lemma31_integral(m: &[Rational], delta: f64) -> Result<f64, MeasureError> {
    check_delta(delta)?;
    Ok(integral_terms(m)?.eval(delta))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnvelopeCase {
    /// Volume against `|ln delta|^(l-1) delta^(1/M)`.
    A,
    /// Integral against `delta`, for `M < 1`.
    B,
    /// Integral against `|ln delta|^l delta`, for `M = 1`.
    C,
    /// Integral against the volume, for `M > 1`.
    D,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeReport {
    pub case: EnvelopeCase,
    #[serde(with = "rational::serde_q::vec")]
    pub m: Vec<Rational>,
    #[serde(with = "rational::serde_q")]
    pub big_m: Rational,
    pub l: usize,
    pub deltas: Vec<f64>,
    pub ratios: Vec<f64>,
    pub inf: f64,
    pub sup: f64,
    /// Relative change of the ratio across the last decade (smallest delta against ten times it).
    pub drift: f64,
    pub pass: bool,
}

pub const DRIFT_TOLERANCE: f64 = 0.05;

/// Evaluates the case's ratio on `deltas` (plus ten times the smallest one) and reports its range.
pub fn envelope_check(
    m: &[Rational],
    deltas: &[f64],
    case: EnvelopeCase,
) -> Result<EnvelopeReport, MeasureError> {
    let pos = positive_exponents(m)?;
    let big_m = pos.iter().max().cloned().unwrap();
    let l = pos.iter().filter(|x| **x == big_m).count();
    let mf = rational::to_f64(&big_m);
    let need = match case {
        EnvelopeCase::B if big_m >= Rational::one() => Some("M < 1"),
        EnvelopeCase::C if big_m != Rational::one() => Some("M = 1"),
        EnvelopeCase::D if big_m <= Rational::one() => Some("M > 1"),
        _ => None,
    };
    if let Some(need) = need {
        return Err(MeasureError::CaseMismatch { case, need, m: mf });
    }
    for &d in deltas {
        check_delta(d)?;
    }
    let vol = volume_terms(m)?;
    let int = integral_terms(m)?;
    let ratio = |d: f64| -> f64 {
        let ln = -d.ln();
        match case {
            EnvelopeCase::A => vol.eval(d) / (ln.powi(l as i32 - 1) * d.powf(1.0 / mf)),
            EnvelopeCase::B => int.eval(d) / d,
            EnvelopeCase::C => int.eval(d) / (ln.powi(l as i32) * d),
            EnvelopeCase::D => int.eval(d) / vol.eval(d),
        }
    };
    let mut grid: Vec<f64> = deltas.to_vec();
    grid.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let ratios: Vec<f64> = grid.iter().map(|&d| ratio(d)).collect();
    let dmin = *grid
        .last()
        .ok_or(MeasureError::TooFewPoints { need: 1, have: 0 })?;
    let r0 = ratio(dmin);
    let r1 = ratio((10.0 * dmin).min(0.5));
    let drift = ((r0 - r1) / r0).abs();
    let inf = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let sup = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let pass = inf > 0.0 && sup.is_finite() && drift < DRIFT_TOLERANCE;
    Ok(EnvelopeReport {
        case,
        m: m.to_vec(),
        big_m,
        l,
        deltas: grid,
        ratios,
        inf,
        sup,
        drift,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs()
    }

    #[test]
    fn closed_forms() {
        for d in [1e-2, 1e-5, 1e-9] {
            let ln = -f64::ln(d);
            assert!(close(
                monomial_box_volume_exact(&[int(2)], d).unwrap(),
                d.sqrt(),
                1e-14
            ));
            let v = monomial_box_volume_exact(&[int(1), int(1)], d).unwrap();
            assert!(close(v, d * (1.0 + ln), 1e-14));
            let v = monomial_box_volume_exact(&[int(2), int(2)], d).unwrap();
            assert!(close(v, d.sqrt() * (1.0 + 0.5 * ln), 1e-14));
            // zero exponents do not contribute
            let v = monomial_box_volume_exact(&[int(0), int(3)], d).unwrap();
            assert!(close(v, d.powf(1.0 / 3.0), 1e-14));
            // distinct exponents: x y^2 < d  gives 2 d^{1/2} - d
            let v = monomial_box_volume_exact(&[int(1), int(2)], d).unwrap();
            assert!(close(v, 2.0 * d.sqrt() - d, 1e-13));
        }
    }

    #[test]
    fn integral_closed_forms() {
        for d in [1e-3, 1e-7] {
            let ln = -f64::ln(d);
            // m = (1): int_d^1 d/x dx = d ln(1/d)
            assert!(close(
                lemma31_integral(&[int(1)], d).unwrap(),
                d * ln,
                1e-14
            ));
            // m = (1/2): int_{d^2}^1 d x^{-1/2} dx = 2d(1 - d)
            assert!(close(
                lemma31_integral(&[q(1, 2)], d).unwrap(),
                2.0 * d * (1.0 - d),
                1e-14
            ));
            // m = (2): int_{d^{1/2}}^1 d x^{-2} dx = d^{1/2} - d
            assert!(close(
                lemma31_integral(&[int(2)], d).unwrap(),
                d.sqrt() - d,
                1e-13
            ));
            // m = (1,1): d ln^2(1/d) / 2
            assert!(close(
                lemma31_integral(&[int(1), int(1)], d).unwrap(),
                d * ln * ln / 2.0,
                1e-14
            ));
        }
    }

    #[test]
    fn high_precision_survives_cancellation() {
        // nearly equal exponents produce large alternating residues
        let m = [q(100, 100), q(101, 100), q(102, 100)];
        let v = monomial_box_volume_exact(&m, 1e-8).unwrap();
        let w = monomial_box_volume_exact(&[int(1), int(1), int(1)], 1e-8).unwrap();
        assert!(v > w && v < 1.5 * w, "{v} {w}");
    }

    #[test]
    fn envelopes() {
        let grid = super::super::geometric(1e-2, 1e-8, 7);
        let r = envelope_check(&[int(1), int(2)], &grid, EnvelopeCase::A).unwrap();
        assert!(r.pass && r.drift < 1e-2);
        let r = envelope_check(&[int(1), int(1)], &grid, EnvelopeCase::C).unwrap();
        assert!(r.pass && close(r.ratios[6], 0.5, 1e-12));
        let r = envelope_check(&[q(1, 2), q(1, 2)], &grid, EnvelopeCase::B).unwrap();
        assert!(r.pass);
        let r = envelope_check(&[int(2), int(1)], &grid, EnvelopeCase::D).unwrap();
        assert!(r.pass);
        assert!(matches!(
            envelope_check(&[int(2)], &grid, EnvelopeCase::B),
            Err(MeasureError::CaseMismatch { .. })
        ));
        assert!(matches!(
            monomial_box_volume_exact(&[int(1)], 1.0),
            Err(MeasureError::Delta(_))
        ));
        assert!(matches!(
            monomial_box_volume_exact(&[int(0)], 0.5),
            Err(MeasureError::Exponents)
        ));
    }
}
