//! Floating-point evaluator for the sampling and quadrature hot loops.

use super::SparsePoly;
use crate::rational;

/// A polynomial flattened into `f64` coefficients and small exponent arrays.
#[derive(Debug, Clone)]
pub struct CompiledPoly {
    nvars: usize,
    denom: u32,
    coefs: Vec<f64>,
    exps: Vec<u32>,
    degrees: Vec<u32>,
}

impl CompiledPoly {
    pub fn new(p: &SparsePoly) -> Self {
        let n = p.nvars();
        let mut coefs = Vec::with_capacity(p.len());
        let mut exps = Vec::with_capacity(p.len() * n);
        for (e, c) in p.terms() {
            coefs.push(rational::to_f64(c));
            exps.extend_from_slice(&e.0);
        }
        let degrees = (0..n).map(|i| p.degree_in(i)).collect();
        CompiledPoly {
            nvars: n,
            denom: p.denom(),
            coefs,
            exps,
            degrees,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.coefs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefs.is_empty()
    }

    /// Degree in `var` (as an exponent numerator when the polynomial is fractional).
    pub fn degree_in(&self, var: usize) -> u32 {
        self.degrees[var]
    }

    /// Evaluates at `x`. Fractional powers use `|x_i|`; callers restrict those to the positive orthant.
    #[inline]
    pub fn eval(&self, x: &[f64]) -> f64 {
        let n = self.nvars;
        let mut sum = 0.0;
        if self.denom == 1 {
            for (t, &c) in self.coefs.iter().enumerate() {
                let e = &self.exps[t * n..(t + 1) * n];
                let mut v = c;
                for i in 0..n {
                    if e[i] != 0 {
                        v *= x[i].powi(e[i] as i32);
                    }
                }
                sum += v;
            }
        } else {
            let den = self.denom as f64;
            for (t, &c) in self.coefs.iter().enumerate() {
                let e = &self.exps[t * n..(t + 1) * n];
                let mut v = c;
                for i in 0..n {
                    if e[i] != 0 {
                        v *= x[i].abs().powf(e[i] as f64 / den);
                    }
                }
                sum += v;
            }
        }
        sum
    }

    /// Ascending coefficients of `t -> p(x with x_var = t)`. Integer exponents only.
    pub fn line_coeffs(&self, var: usize, x: &[f64], out: &mut Vec<f64>) {
        debug_assert_eq!(self.denom, 1);
        let n = self.nvars;
        out.clear();
        out.resize(self.degrees[var] as usize + 1, 0.0);
        for (t, &c) in self.coefs.iter().enumerate() {
            let e = &self.exps[t * n..(t + 1) * n];
            let mut v = c;
            for i in 0..n {
                if i != var && e[i] != 0 {
                    v *= x[i].powi(e[i] as i32);
                }
            }
            out[e[var] as usize] += v;
        }
    }
}
