//! Dense univariate polynomials over Q: gcd, square-free decomposition, Sturm counts.

use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};

/// Ascending coefficients; the last stored coefficient is nonzero (or the vector is empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coefs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coefs: Vec<Rational>) -> Self {
        while coefs.last().is_some_and(|c| c.is_zero()) {
            coefs.pop();
        }
        UniPoly { coefs }
    }

    pub fn zero() -> Self {
        UniPoly { coefs: Vec::new() }
    }

    pub fn coefs(&self) -> &[Rational] {
        &self.coefs
    }

    pub fn is_zero(&self) -> bool {
        self.coefs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coefs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coefs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coefs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coefs.iter().rev() {
            acc = acc * x + rational::to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coefs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rational::int(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rational) -> Self {
        UniPoly::new(self.coefs.iter().map(|c| c * s).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coefs.len().max(other.coefs.len());
        let mut v = vec![Rational::zero(); n];
        for (i, c) in self.coefs.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in other.coefs.iter().enumerate() {
            v[i] -= c;
        }
        UniPoly::new(v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rational::zero(); self.coefs.len() + other.coefs.len() - 1];
        for (i, a) in self.coefs.iter().enumerate() {
            for (j, b) in other.coefs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::new(v)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.leading();
        let mut r = self.coefs.clone();
        let n = self.coefs.len();
        if n <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = &r[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coefs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.leading().recip();
        self.scale(&l)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Yun's algorithm: returns `(multiplicity, factor)` with square-free, pairwise coprime
    /// factors of positive degree whose product (with multiplicities) is `self` up to a constant.
    pub fn square_free_decomposition(&self) -> Vec<(u32, UniPoly)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let mut c = fp.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((i, a.clone()));
            }
            b = b.div_rem(&a).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Sturm sequence of a square-free polynomial.
    pub fn sturm_sequence(&self) -> Vec<UniPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            // keep the sign-relevant remainder but normalise size
            let scale = r.leading().abs().recip();
            seq.push(r.scale(&-scale));
        }
        seq
    }

    /// Bound on the absolute value of every real root (Cauchy).
    pub fn root_bound(&self) -> Rational {
        let l = self.leading().abs();
        let m = self
            .coefs
            .iter()
            .take(self.coefs.len().saturating_sub(1))
            .map(|c| c.abs() / &l)
            .fold(Rational::zero(), |a, b| if b > a { b } else { a });
        m + Rational::one()
    }
}

fn sign_changes(seq: &[UniPoly], x: &Rational) -> usize {
    let mut changes = 0;
    let mut last = 0i8;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Number of distinct roots in the half-open interval `(a, b]` of a square-free polynomial.
pub fn count_roots(seq: &[UniPoly], a: &Rational, b: &Rational) -> usize {
    sign_changes(seq, a).saturating_sub(sign_changes(seq, b))
}

/// A positive real root of some factor, known to lie in `(lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsolatedRoot {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity: u32,
    /// Set when the root is rational and was hit exactly.
    pub exact: Option<Rational>,
}

impl IsolatedRoot {
    pub fn midpoint_f64(&self) -> f64 {
        match &self.exact {
            Some(r) => rational::to_f64(r),
            None => rational::to_f64(&((&self.lo + &self.hi) / rational::int(2))),
        }
    }
}

/// Isolates every root in `(0, bound]`, each tagged with its multiplicity in `p`, refining
/// each isolating interval until its width is below `width`.
pub fn positive_roots(p: &UniPoly, width: &Rational) -> Vec<IsolatedRoot> {
    let mut out = Vec::new();
    for (mult, f) in p.square_free_decomposition() {
        let seq = f.sturm_sequence();
        let bound = f.root_bound();
        let mut stack = vec![(Rational::zero(), bound)];
        while let Some((lo, hi)) = stack.pop() {
            let n = count_roots(&seq, &lo, &hi);
            if n == 0 {
                continue;
            }
            if f.eval(&hi).is_zero() && n == 1 {
                out.push(IsolatedRoot {
                    lo: hi.clone(),
                    hi: hi.clone(),
                    multiplicity: mult,
                    exact: Some(hi),
                });
                continue;
            }
            if n == 1 && &hi - &lo < *width {
                out.push(IsolatedRoot {
                    lo,
                    hi,
                    multiplicity: mult,
                    exact: None,
                });
                continue;
            }
            let mid = (&lo + &hi) / rational::int(2);
            stack.push((mid.clone(), hi));
            stack.push((lo, mid));
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (w-1)^2 (w+2) and (w-1)(w-3)
        let a = up(&[1, -2, 1]).mul(&up(&[2, 1]));
        let b = up(&[-1, 1]).mul(&up(&[-3, 1]));
        assert_eq!(a.gcd(&b), up(&[-1, 1]));
        let (qq, r) = a.div_rem(&up(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(qq, up(&[-1, 1]).mul(&up(&[2, 1])));
    }

    #[test]
    fn yun_recovers_multiplicities() {
        // (w-1)^4 (w-2)
        let p = up(&[-1, 1])
            .mul(&up(&[-1, 1]))
            .mul(&up(&[-1, 1]))
            .mul(&up(&[-1, 1]))
            .mul(&up(&[-2, 1]));
        let sf = p.square_free_decomposition();
        assert_eq!(sf, vec![(1, up(&[-2, 1])), (4, up(&[-1, 1]))]);
    }

    #[test]
    fn sturm_counts_positive_roots() {
        // w^2 - 2 has one positive root, w^2 + 1 none
        let p = up(&[-2, 0, 1]);
        let roots = positive_roots(&p, &q(1, 1000));
        assert_eq!(roots.len(), 1);
        assert!((roots[0].midpoint_f64() - 2f64.sqrt()).abs() < 1e-3);
        assert!(positive_roots(&up(&[1, 0, 1]), &q(1, 10)).is_empty());
        let r = positive_roots(&up(&[-1, 1]).mul(&up(&[-1, 1])), &q(1, 10));
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].multiplicity, 2);
    }
}
