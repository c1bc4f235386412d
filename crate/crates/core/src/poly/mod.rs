//! Exact sparse multivariate polynomials over the rationals.
//!
//! Exponents are stored as integer numerators over a single denominator
//! shared by the whole polynomial, so fractional powers produced by
//! monomial substitutions stay exact.

mod compiled;
mod parse;
pub mod univariate;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, Rational};

pub use compiled::CompiledPoly;
pub use parse::{default_variables, parse_poly, parse_poly_infer};

/// Largest ambient dimension the crate accepts.
pub const MAX_DIM: usize = 4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable {name:?} at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("at least one variable must be declared")]
    NoVariables,
    #[error("duplicate variable name {0:?}")]
    DuplicateVariable(String),
    #[error("dimension {0} is outside 1..={MAX_DIM}")]
    Dimension(usize),
    #[error("operation requires integer exponents")]
    FractionalExponent,
    #[error("negative base {base} raised to fractional power in coordinate {coord}")]
    NegativeBase { coord: usize, base: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("monomial map is singular")]
    SingularMap,
    #[error("substitution produced a negative exponent")]
    NegativeExponent,
    #[error("max_order must be nonnegative")]
    NegativeOrder,
}

/// Exponent numerators; the true exponent is `numerators / denom` of the owning polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn to_rational(&self, denom: u32) -> Vec<Rational> {
        self.0
            .iter()
            .map(|&e| rational::q(e as i64, denom as i64))
            .collect()
    }
}

/// A sparse polynomial `sum_alpha s_alpha x^alpha` with nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    nvars: usize,
    denom: u32,
    terms: BTreeMap<Exponent, Rational>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            denom: 1,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Exponent(vec![0; nvars]), c);
        }
        p
    }

    pub fn monomial(coef: Rational, exps: Vec<u32>) -> Self {
        let mut p = Self::zero(exps.len());
        if !coef.is_zero() {
            p.terms.insert(Exponent(exps), coef);
        }
        p
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(Rational::one(), e)
    }

    /// Builds a polynomial from `(coefficient, integer exponent)` pairs, collecting like terms.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Vec<u32>)>,
    {
        let mut p = Self::zero(nvars);
        for (c, e) in terms {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(Exponent(e), c);
        }
        p
    }

    /// Builds a polynomial with rational exponents, choosing the least common denominator.
    pub fn from_rational_terms<I>(nvars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Rational, Vec<Rational>)>,
    {
        let terms: Vec<_> = terms.into_iter().collect();
        let mut den = BigInt::one();
        for (_, e) in &terms {
            if e.len() != nvars {
                return Err(PolyError::DimensionMismatch {
                    expected: nvars,
                    got: e.len(),
                });
            }
            for x in e {
                if x.is_negative() {
                    return Err(PolyError::NegativeExponent);
                }
                den = den.lcm(x.denom());
            }
        }
        let denom = den.to_u32().expect("exponent denominator fits u32");
        let mut p = Self::zero(nvars);
        p.denom = denom;
        for (c, e) in terms {
            let nums = e
                .iter()
                .map(|x| {
                    (x * Rational::from_integer(den.clone()))
                        .to_integer()
                        .to_u32()
                        .expect("exponent fits u32")
                })
                .collect();
            p.add_term(Exponent(nums), c);
        }
        p.normalize_denom();
        Ok(p)
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_integer_exponents(&self) -> bool {
        self.denom == 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    /// Exponents as rational vectors, paired with coefficients.
    pub fn rational_terms(&self) -> Vec<(Vec<Rational>, Rational)> {
        self.terms
            .iter()
            .map(|(e, c)| (e.to_rational(self.denom), c.clone()))
            .collect()
    }

    /// Integer exponent vectors of the support, or an error if any exponent is fractional.
    pub fn support(&self) -> Result<Vec<Vec<u32>>, PolyError> {
        self.require_integer()?;
        Ok(self.terms.keys().map(|e| e.0.clone()).collect())
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        if self.denom != 1 {
            let scaled = Exponent(exps.iter().map(|e| e * self.denom).collect());
            return self
                .terms
                .get(&scaled)
                .cloned()
                .unwrap_or_else(Rational::zero);
        }
        self.terms
            .get(&Exponent(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|e| e.total()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e.0[var]).max().unwrap_or(0)
    }

    fn require_integer(&self) -> Result<(), PolyError> {
        if self.denom == 1 {
            Ok(())
        } else {
            Err(PolyError::FractionalExponent)
        }
    }

    fn normalize_denom(&mut self) {
        if self.denom == 1 {
            return;
        }
        let mut g = self.denom;
        for e in self.terms.keys() {
            for &x in &e.0 {
                g = g.gcd(&x);
            }
        }
        if g > 1 {
            let terms = std::mem::take(&mut self.terms);
            self.terms = terms
                .into_iter()
                .map(|(e, c)| (Exponent(e.0.into_iter().map(|x| x / g).collect()), c))
                .collect();
            self.denom /= g;
        }
    }

    fn rescaled(&self, denom: u32) -> BTreeMap<Exponent, Rational> {
        debug_assert_eq!(denom % self.denom, 0);
        let f = denom / self.denom;
        self.terms
            .iter()
            .map(|(e, c)| (Exponent(e.0.iter().map(|x| x * f).collect()), c.clone()))
            .collect()
    }

    fn check_dim(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "polynomial dimension mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_dim(other);
        let denom = self.denom.lcm(&other.denom);
        let mut p = SparsePoly {
            nvars: self.nvars,
            denom,
            terms: self.rescaled(denom),
        };
        for (e, c) in other.rescaled(denom) {
            p.add_term(e, c);
        }
        p.normalize_denom();
        p
    }

    pub fn neg(&self) -> Self {
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c = -c.clone();
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c *= s;
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_dim(other);
        let denom = self.denom.lcm(&other.denom);
        let a = self.rescaled(denom);
        let b = other.rescaled(denom);
        let mut p = SparsePoly {
            nvars: self.nvars,
            denom,
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e = Exponent(ea.0.iter().zip(&eb.0).map(|(x, y)| x + y).collect());
                p.add_term(e, ca * cb);
            }
        }
        p.normalize_denom();
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::constant(self.nvars, Rational::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Constant term `S(0)`.
    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Exponent(vec![0; self.nvars]))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Floating-point evaluation; fractional exponents require nonnegative bases.
    pub fn evaluate(&self, point: &[f64]) -> Result<f64, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let den = self.denom;
        let mut sum = 0.0;
        for (e, c) in &self.terms {
            let mut t = rational::to_f64(c);
            for (i, (&num, &x)) in e.0.iter().zip(point).enumerate() {
                if num == 0 {
                    continue;
                }
                if num % den == 0 {
                    t *= x.powi((num / den) as i32);
                } else if x < 0.0 {
                    return Err(PolyError::NegativeBase { coord: i, base: x });
                } else {
                    t *= x.powf(num as f64 / den as f64);
                }
            }
            sum += t;
        }
        Ok(sum)
    }

    /// Exact evaluation at a rational point (integer exponents only).
    pub fn evaluate_exact(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        self.require_integer()?;
        if point.len() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut sum = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (&k, x) in e.0.iter().zip(point) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            sum += t;
        }
        Ok(sum)
    }

    /// Formal partial derivative in variable `var`.
    pub fn derivative(&self, var: usize) -> Result<Self, PolyError> {
        self.require_integer()?;
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e.0[var];
            if k == 0 {
                continue;
            }
            let mut ne = e.0.clone();
            ne[var] -= 1;
            p.add_term(Exponent(ne), c * Rational::from_integer(BigInt::from(k)));
        }
        Ok(p)
    }

    pub fn gradient(&self) -> Result<Vec<Self>, PolyError> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    /// Keeps the terms whose (rational) exponents satisfy `normal . alpha == offset` exactly.
    pub fn restrict_to_hyperplane(&self, normal: &[Rational], offset: &Rational) -> Self {
        let mut p = Self::zero(self.nvars);
        p.denom = self.denom;
        for (e, c) in &self.terms {
            if &rational::dot(normal, &e.to_rational(self.denom)) == offset {
                p.terms.insert(e.clone(), c.clone());
            }
        }
        p.normalize_denom();
        p
    }

    /// Terms of the polynomial lying on a face of its Newton polyhedron.
    pub fn restrict_to_face(&self, face: &crate::geom::Face) -> Result<Self, PolyError> {
        if face.normal.len() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                got: face.normal.len(),
            });
        }
        Ok(self.restrict_to_hyperplane(&face.normal, &face.offset))
    }

    /// Exact expansion of `p(x + a)`.
    pub fn translate(&self, a: &[Rational]) -> Result<Self, PolyError> {
        self.require_integer()?;
        if a.len() != self.nvars {
            return Err(PolyError::DimensionMismatch {
                expected: self.nvars,
                got: a.len(),
            });
        }
        let n = self.nvars;
        // binomial expansions of (x_i + a_i)^k, cached per variable
        let mut cache: Vec<Vec<Vec<Rational>>> = vec![Vec::new(); n];
        for i in 0..n {
            let maxk = self.degree_in(i) as usize;
            let mut rows = vec![vec![Rational::one()]];
            for k in 1..=maxk {
                let prev = &rows[k - 1];
                let mut next = vec![Rational::zero(); k + 1];
                for (j, c) in prev.iter().enumerate() {
                    next[j] += c * &a[i];
                    next[j + 1] += c;
                }
                rows.push(next);
            }
            cache[i] = rows;
        }
        let mut acc: BTreeMap<Exponent, Rational> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut partial: Vec<(Vec<u32>, Rational)> = vec![(Vec::with_capacity(n), c.clone())];
            for i in 0..n {
                let row = &cache[i][e.0[i] as usize];
                let mut next = Vec::with_capacity(partial.len() * row.len());
                for (exps, coef) in &partial {
                    for (j, b) in row.iter().enumerate() {
                        if b.is_zero() {
                            continue;
                        }
                        let mut ne = exps.clone();
                        ne.push(j as u32);
                        next.push((ne, coef * b));
                    }
                }
                partial = next;
            }
            for (exps, coef) in partial {
                *acc.entry(Exponent(exps)).or_insert_with(Rational::zero) += coef;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(SparsePoly {
            nvars: n,
            denom: 1,
            terms: acc,
        })
    }

    /// Smallest total degree with a nonzero coefficient in `p(x + a)`.
    pub fn vanishing_order_at(
        &self,
        a: &[Rational],
        max_order: i64,
    ) -> Result<VanishingOrder, PolyError> {
        if max_order < 0 {
            return Err(PolyError::NegativeOrder);
        }
        if self.evaluate_exact(a)? != Rational::zero() {
            return Ok(VanishingOrder::Finite(0));
        }
        let t = self.translate(a)?;
        match t.terms.keys().map(|e| e.total()).min() {
            Some(m) if m as i64 <= max_order => Ok(VanishingOrder::Finite(m as u32)),
            _ => Ok(VanishingOrder::ExceedsMax),
        }
    }

    /// Permutes variables: new variable `i` is old variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut p = Self::zero(self.nvars);
        p.denom = self.denom;
        for (e, c) in &self.terms {
            let ne = perm.iter().map(|&j| e.0[j]).collect();
            p.terms.insert(Exponent(ne), c.clone());
        }
        p
    }

    /// Formats with the given variable names in the canonical flat grammar.
    pub fn display_with<'a>(&'a self, vars: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, vars }
    }

    /// Terms in canonical print order: descending total degree, then descending lex.
    pub fn ordered_terms(&self) -> Vec<(&Exponent, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.total().cmp(&a.0.total()).then_with(|| b.0.cmp(a.0)));
        v
    }

    /// Exact square root if the polynomial is the square of a polynomial with rational
    /// coefficients (leading coefficient positive).
    pub fn exact_sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.denom != 1 {
            return None;
        }
        // lex-leading term of q determines the rest, one term at a time
        let lead = |p: &SparsePoly| -> Option<(Exponent, Rational)> {
            p.terms
                .iter()
                .next_back()
                .map(|(e, c)| (e.clone(), c.clone()))
        };
        let (le, lc) = lead(self)?;
        if le.0.iter().any(|&x| x % 2 != 0) {
            return None;
        }
        let root_c = rational::sqrt_exact(&lc)?;
        let root_e = Exponent(le.0.iter().map(|x| x / 2).collect());
        let mut q = SparsePoly::monomial(root_c.clone(), root_e.0.clone());
        let two_lc = &root_c * rational::int(2);
        for _ in 0..4 * self.terms.len() + 8 {
            let r = self.sub(&q.mul(&q));
            if r.is_zero() {
                return Some(q);
            }
            let (re, rc) = lead(&r)?;
            if re > le {
                return None;
            }
            let mut te = Vec::with_capacity(self.nvars);
            for (x, y) in re.0.iter().zip(&root_e.0) {
                if x < y {
                    return None;
                }
                te.push(x - y);
            }
            let te = Exponent(te);
            if te >= root_e {
                return None;
            }
            q.add_term(te, rc / &two_lc);
        }
        None
    }
}

/// Result of [`SparsePoly::vanishing_order_at`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VanishingOrder {
    Finite(u32),
    ExceedsMax,
}

pub struct PolyDisplay<'a> {
    poly: &'a SparsePoly,
    vars: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.poly;
        if p.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in p.ordered_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            let is_const = e.0.iter().all(|&x| x == 0);
            if !mag.is_one() || is_const {
                factors.push(rational::fmt(&mag));
            }
            for (i, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let name = &self.vars[i];
                if k % p.denom == 0 {
                    let k = k / p.denom;
                    if k == 1 {
                        factors.push(name.clone());
                    } else {
                        factors.push(format!("{name}^{k}"));
                    }
                } else {
                    let r = rational::q(k as i64, p.denom as i64);
                    factors.push(format!("{name}^({})", rational::fmt(&r)));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn p(text: &str, names: &[&str]) -> SparsePoly {
        parse_poly(text, &vars(names)).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(
            p("x^2 + y^2", &["x", "y"]).evaluate(&[3.0, 4.0]).unwrap(),
            25.0
        );
        let u = p("x^4 + x^2 + y^2 + z^2", &["x", "y", "z"]);
        assert_eq!(u.evaluate(&[0.0, 0.0, 0.0]).unwrap(), 0.0);
        let m = p("x^2*y^2", &["x", "y"]);
        assert_eq!(m.evaluate_exact(&[q(1, 2), int(2)]).unwrap(), int(1));
    }

    #[test]
    fn fractional_exponent_rejects_negative_base() {
        let f = SparsePoly::from_rational_terms(1, vec![(int(1), vec![q(1, 2)])]).unwrap();
        assert_eq!(f.denom(), 2);
        assert!((f.evaluate(&[4.0]).unwrap() - 2.0).abs() < 1e-15);
        assert!(matches!(
            f.evaluate(&[-1.0]),
            Err(PolyError::NegativeBase { .. })
        ));
        assert_eq!(f.gradient(), Err(PolyError::FractionalExponent));
    }

    #[test]
    fn gradient_examples() {
        let xy = vars(&["x", "y"]);
        let g = p("x^2 + y^2", &["x", "y"]).gradient().unwrap();
        assert_eq!(g[0], p("2*x", &["x", "y"]));
        assert_eq!(g[1], p("2*y", &["x", "y"]));
        let g = p("x^2*y^2", &["x", "y"]).gradient().unwrap();
        assert_eq!(g[0].display_with(&xy).to_string(), "2*x*y^2");
        assert_eq!(g[1].display_with(&xy).to_string(), "2*x^2*y");
        let g = p("5", &["x", "y"]).gradient().unwrap();
        assert!(g.iter().all(|d| d.is_zero()));
    }

    #[test]
    fn translate_examples() {
        let f = p("(x-y)^4", &["x", "y"]);
        assert_eq!(f.translate(&[int(1), int(1)]).unwrap(), f);
        let g = p("x^2", &["x"]);
        assert_eq!(g.translate(&[int(1)]).unwrap(), p("x^2 + 2*x + 1", &["x"]));
        let h = p("x^2 + y^2 - z^2", &["x", "y", "z"]);
        let t = h.translate(&[int(1), int(0), int(1)]).unwrap();
        assert_eq!(t, p("x^2 + y^2 - z^2 + 2*x - 2*z", &["x", "y", "z"]));
        assert!(t.constant_term().is_zero());
    }

    #[test]
    fn vanishing_order_examples() {
        let f = p("(x-y)^4", &["x", "y"]);
        assert_eq!(
            f.vanishing_order_at(&[int(1), int(1)], 10).unwrap(),
            VanishingOrder::Finite(4)
        );
        assert_eq!(
            f.vanishing_order_at(&[int(1), int(1)], 3).unwrap(),
            VanishingOrder::ExceedsMax
        );
        let h = p("x^2 + y^2 - z^2", &["x", "y", "z"]);
        assert_eq!(
            h.vanishing_order_at(&[int(1), int(0), int(1)], 5).unwrap(),
            VanishingOrder::Finite(1)
        );
        let m = p("x^2*y^2", &["x", "y"]);
        assert_eq!(
            m.vanishing_order_at(&[int(1), int(1)], 5).unwrap(),
            VanishingOrder::Finite(0)
        );
        assert_eq!(
            m.vanishing_order_at(&[int(1), int(1)], -1),
            Err(PolyError::NegativeOrder)
        );
    }

    #[test]
    fn restriction_keeps_hyperplane_terms() {
        let u = p("x^4 + x^2 + y^2 + z^2", &["x", "y", "z"]);
        let s = u.restrict_to_hyperplane(&[int(1), int(1), int(1)], &int(2));
        assert_eq!(s, p("x^2 + y^2 + z^2", &["x", "y", "z"]));
    }

    #[test]
    fn exact_square_roots() {
        let xyz = ["x", "y", "z"];
        let u = p("x^4 - x^2 + y^2 + z^2", &xyz);
        let v = u.mul(&u);
        let r = v.exact_sqrt().unwrap();
        assert!(r == u || r == u.neg());
        assert!(p("x^2 + y^2", &["x", "y"]).exact_sqrt().is_none());
        assert_eq!(
            p("4*x^2 - 4*x*y + y^2", &["x", "y"])
                .exact_sqrt()
                .map(|r| r.mul(&r)),
            Some(p("4*x^2 - 4*x*y + y^2", &["x", "y"]))
        );
    }
}
