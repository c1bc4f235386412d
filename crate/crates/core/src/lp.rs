//! Exact two-phase simplex over the rationals (Bland's rule), sized for tiny programs.
//!
//! Solves `min c.x  s.t.  A x = b, x >= 0`.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

struct Tableau {
    // rows: m constraint rows then the objective row; last column is the rhs
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c].clone();
        for v in self.t[r].iter_mut() {
            *v /= &p;
        }
        let prow = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex on the objective row (last row) restricted to `allowed` columns.
    /// Returns false when unbounded.
    fn run(&mut self, allowed: usize) -> bool {
        let m = self.basis.len();
        let rhs = self.ncols;
        loop {
            // Bland: lowest-index column with negative reduced cost
            let Some(c) = (0..allowed).find(|&j| self.t[m][j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..m {
                let a = &self.t[i][c];
                if a.is_positive() {
                    let ratio = &self.t[i][rhs] / a;
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

pub fn solve(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m);
    // columns: n structural, m artificial, then rhs
    let ncols = n + m;
    let mut t = Vec::with_capacity(m + 1);
    for i in 0..m {
        assert_eq!(a[i].len(), n);
        let neg = b[i].is_negative();
        let mut row: Vec<Rational> = a[i]
            .iter()
            .map(|v| if neg { -v.clone() } else { v.clone() })
            .collect();
        row.extend((0..m).map(|j| {
            if j == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        }));
        row.push(if neg { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    // phase-one objective: minimise the sum of artificials, written in reduced form
    let mut obj = vec![Rational::zero(); ncols + 1];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[ncols] -= &row[ncols];
    }
    t.push(obj);
    let mut tab = Tableau {
        t,
        basis: (n..n + m).collect(),
        ncols,
    };
    tab.run(ncols);
    if !tab.t[m][ncols].is_zero() {
        return LpOutcome::Infeasible;
    }
    // drive remaining artificials out of the basis; drop redundant rows
    let mut i = 0;
    while i < tab.basis.len() {
        if tab.basis[i] >= n {
            match (0..n).find(|&j| !tab.t[i][j].is_zero()) {
                Some(j) => {
                    tab.pivot(i, j);
                    i += 1;
                }
                None => {
                    tab.t.remove(i);
                    tab.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }
    let m2 = tab.basis.len();
    // phase two objective row
    let mut obj = vec![Rational::zero(); ncols + 1];
    obj[..n].clone_from_slice(c);
    for r in 0..m2 {
        let bc = &c[tab.basis[r]];
        if bc.is_zero() {
            continue;
        }
        for j in 0..=ncols {
            let v = &tab.t[r][j];
            if !v.is_zero() {
                obj[j] -= bc * v;
            }
        }
    }
    tab.t[m2] = obj;
    // artificial columns are excluded from entering
    if !tab.run(n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for r in 0..m2 {
        x[tab.basis[r]] = tab.t[r][ncols].clone();
    }
    let value = -tab.t[m2][ncols].clone();
    LpOutcome::Optimal { x, value }
}

/// Feasibility of `A x = b, x >= 0`.
pub fn feasible(a: &[Vec<Rational>], b: &[Rational]) -> bool {
    let n = a.first().map_or(0, |r| r.len());
    !matches!(
        solve(a, b, &vec![Rational::zero(); n]),
        LpOutcome::Infeasible
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn small_program() {
        // min -x - y s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let a = vec![row(&[1, 2, 1, 0]), row(&[3, 1, 0, 1])];
        let b = row(&[4, 6]);
        let c = row(&[-1, -1, 0, 0]);
        match solve(&a, &b, &c) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(x[0], q(8, 5));
                assert_eq!(x[1], q(6, 5));
                assert_eq!(value, q(-14, 5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = vec![row(&[1, 1])];
        assert_eq!(solve(&a, &row(&[-1]), &row(&[0, 0])), LpOutcome::Infeasible);
        let a = vec![row(&[1, -1])];
        assert_eq!(solve(&a, &row(&[0]), &row(&[-1, 0])), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows() {
        let a = vec![row(&[1, 1]), row(&[2, 2])];
        let b = row(&[1, 2]);
        match solve(&a, &b, &row(&[1, 0])) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(0)),
            other => panic!("{other:?}"),
        }
    }
}
