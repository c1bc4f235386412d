//! Monomial substitutions `x = z^M`: exponent transforms, constant-Jacobian normalisation,
//! vertex normal-cone maps and the separating-hyperplane properties of transformed vertices.
//!
//! Row `i` of `M` is the exponent vector `m_i` of `x_i = z^{m_i}`, so a monomial `x^alpha`
//! becomes `z^{M^T alpha}`. The inverse substitution `z = x^B` has `B = M^{-1}`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{CentralFaceReport, Face, NewtonPolyhedron};
use crate::linalg::{self, Matrix};
use crate::poly::{PolyError, SparsePoly};
use crate::rational::{self, serde_q, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MapError {
    #[error("monomial map matrix is singular")]
    Singular,
    #[error("matrix must be square with side {0}")]
    Shape(usize),
    #[error("column {0} has zero sum")]
    ZeroColumnSum(usize),
    #[error("normalisation needs nonnegative entries")]
    NegativeEntry,
    #[error("geometric transform needs a constant Jacobian")]
    NotConstantJacobian,
    #[error("hyperplane {0} is parallel to the diagonal")]
    ParallelHyperplane(usize),
    #[error("normal cone is not full-dimensional")]
    DegenerateCone,
    #[error("vertex cone maps are available for n <= 3, got {0}")]
    Dimension(usize),
    #[error("vertex index {0} out of range")]
    NoSuchVertex(usize),
    #[error("map does not select the face: column {0}")]
    FaceMismatch(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialMap {
    #[serde(with = "serde_q::vecvec")]
    matrix: Matrix,
}

impl MonomialMap {
    pub fn new(matrix: Matrix) -> Result<Self, MapError> {
        let n = matrix.len();
        if n == 0 || matrix.iter().any(|r| r.len() != n) {
            return Err(MapError::Shape(n));
        }
        if linalg::det(&matrix).is_zero() {
            return Err(MapError::Singular);
        }
        Ok(MonomialMap { matrix })
    }

    pub fn identity(n: usize) -> Self {
        MonomialMap {
            matrix: linalg::identity(n),
        }
    }

    /// Map whose matrix has the given columns.
    pub fn from_columns(cols: &[Vec<Rational>]) -> Result<Self, MapError> {
        Self::new(linalg::transpose(&cols.to_vec()))
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn det(&self) -> Rational {
        linalg::det(&self.matrix)
    }

    /// `B = M^{-1}`, the exponent matrix of the inverse substitution `z = x^B`.
    pub fn inverse_matrix(&self) -> Matrix {
        linalg::inverse(&self.matrix).expect("nonsingular by construction")
    }

    pub fn column_sums(&self) -> Vec<Rational> {
        let n = self.dim();
        (0..n)
            .map(|j| self.matrix.iter().map(|r| &r[j]).sum())
            .collect()
    }

    /// Exponent of `z` in the Jacobian determinant `det(M) z^{sum_i m_i - 1}`.
    pub fn jacobian_exponent(&self) -> Vec<Rational> {
        self.column_sums()
            .into_iter()
            .map(|s| s - Rational::one())
            .collect()
    }

    pub fn constant_jacobian(&self) -> bool {
        self.column_sums().iter().all(|s| s.is_one())
    }

    /// Composes with `z_j -> z_j^{k_j}`, `k_j = 1 / (column sum j)`.
    pub fn normalize_constant_jacobian(&self) -> Result<Self, MapError> {
        if self.matrix.iter().flatten().any(|x| x.is_negative()) {
            return Err(MapError::NegativeEntry);
        }
        let sums = self.column_sums();
        if let Some(j) = sums.iter().position(|s| s.is_zero()) {
            return Err(MapError::ZeroColumnSum(j));
        }
        let matrix = self
            .matrix
            .iter()
            .map(|row| row.iter().zip(&sums).map(|(x, s)| x / s).collect())
            .collect();
        Self::new(matrix)
    }

    /// Least common denominator `N` of the entries: components are monomials in `z^{1/N}`.
    pub fn denominator(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        self.matrix
            .iter()
            .flatten()
            .fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// `M^T alpha`, by direct substitution.
    pub fn transform(&self, alpha: &[Rational]) -> Vec<Rational> {
        linalg::mat_vec(&linalg::transpose(&self.matrix), alpha)
    }

    /// `(B^T)^{-1} alpha` by Cramer's rule: component `i` is `det(B_{i,alpha}) / det(B)`, with
    /// `B_{i,alpha}` the matrix `B` with row `i` replaced by `alpha`.
    pub fn transform_exponent_cramer(&self, alpha: &[Rational]) -> Vec<Rational> {
        let b = self.inverse_matrix();
        let det_b = linalg::det(&b);
        (0..self.dim())
            .map(|i| {
                let mut bi = b.clone();
                bi[i] = alpha.to_vec();
                linalg::det(&bi) / &det_b
            })
            .collect()
    }

    /// Component `i` is the diagonal parameter `t` where the hyperplane through `alpha`
    /// spanned by the rows `b_j` (`j != i`) of `B` meets the line `(t,..,t)`.
    pub fn transform_exponent_geometric(
        &self,
        alpha: &[Rational],
    ) -> Result<Vec<Rational>, MapError> {
        if !self.constant_jacobian() {
            return Err(MapError::NotConstantJacobian);
        }
        let b = self.inverse_matrix();
        let n = self.dim();
        let ones = vec![Rational::one(); n];
        (0..n)
            .map(|i| {
                let rows: Matrix = (0..n).filter(|&j| j != i).map(|j| b[j].clone()).collect();
                let h = if rows.is_empty() {
                    ones.clone()
                } else {
                    let mut ns = linalg::null_space(&rows, n);
                    ns.pop().ok_or(MapError::Singular)?
                };
                let denom = rational::dot(&h, &ones);
                if denom.is_zero() {
                    return Err(MapError::ParallelHyperplane(i));
                }
                Ok(rational::dot(&h, alpha) / denom)
            })
            .collect()
    }

    /// Applies the substitution to every term; coefficients are unchanged.
    pub fn substitute(&self, p: &SparsePoly) -> Result<SparsePoly, MapError> {
        if p.nvars() != self.dim() {
            return Err(PolyError::DimensionMismatch {
                expected: self.dim(),
                got: p.nvars(),
            }
            .into());
        }
        let terms: Vec<(Rational, Vec<Rational>)> = p
            .rational_terms()
            .into_iter()
            .map(|(e, c)| (c, self.transform(&e)))
            .collect();
        Ok(SparsePoly::from_rational_terms(p.nvars(), terms)?)
    }

    /// Evaluates the coordinate change `x = z^M` at a positive point.
    pub fn apply_point(&self, z: &[f64]) -> Vec<f64> {
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(z)
                    .map(|(m, zi)| zi.powf(rational::to_f64(m)))
                    .product()
            })
            .collect()
    }
}

/// A vertex map together with the (primitive) cone rays it was built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeMap {
    pub map: MonomialMap,
    #[serde(with = "serde_q::vecvec")]
    pub rays: Matrix,
}

/// Primitive normals of the facets through vertex `v`: the extreme rays of its normal cone.
pub fn vertex_cone_rays(np: &NewtonPolyhedron, v: usize) -> Result<Matrix, MapError> {
    if v >= np.vertices.len() {
        return Err(MapError::NoSuchVertex(v));
    }
    let face = np.vertex_face(v);
    let mut rays: Matrix = face
        .facets
        .iter()
        .map(|&f| np.facets[f].normal.clone())
        .collect();
    rays.sort();
    if linalg::rank(&rays) < np.n {
        return Err(MapError::DegenerateCone);
    }
    Ok(rays)
}

/// Triangulates the normal cone of vertex `v` by stellar subdivision from its
/// lexicographically least ray and returns one normalised map per simplicial cone.
pub fn vertex_cone_maps(np: &NewtonPolyhedron, v: usize) -> Result<Vec<ConeMap>, MapError> {
    let n = np.n;
    if n > 3 {
        return Err(MapError::Dimension(n));
    }
    let rays = vertex_cone_rays(np, v)?;
    let cones: Vec<Matrix> = if rays.len() == n {
        vec![rays.clone()]
    } else {
        // only n == 3 reaches here with more than n rays
        let r0 = &rays[0];
        let mut out = Vec::new();
        for i in 1..rays.len() {
            for j in i + 1..rays.len() {
                if is_cone_facet(&rays, i, j) && !is_cone_facet_with(&rays, 0, i, j) {
                    out.push(vec![r0.clone(), rays[i].clone(), rays[j].clone()]);
                }
            }
        }
        // facets through r0 do not generate cones; coplanar triples with r0 are skipped
        out.retain(|c| !linalg::det(c).is_zero());
        out
    };
    cones
        .into_iter()
        .map(|cone| {
            let raw = MonomialMap::from_columns(&cone)?;
            Ok(ConeMap {
                map: raw.normalize_constant_jacobian()?,
                rays: cone,
            })
        })
        .collect()
}

fn cross(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Whether rays `i, j` span a 2-face of the 3D cone: all rays weakly on one side.
fn is_cone_facet(rays: &Matrix, i: usize, j: usize) -> bool {
    let h = cross(&rays[i], &rays[j]);
    if h.iter().all(|x| x.is_zero()) {
        return false;
    }
    let signs: Vec<Rational> = rays.iter().map(|r| rational::dot(&h, r)).collect();
    signs.iter().all(|s| !s.is_negative()) || signs.iter().all(|s| !s.is_positive())
}

/// Whether the 2-face spanned by rays `i, j` also contains ray `k`.
fn is_cone_facet_with(rays: &Matrix, k: usize, i: usize, j: usize) -> bool {
    let h = cross(&rays[i], &rays[j]);
    rational::dot(&h, &rays[k]).is_zero()
}

/// A map adapted to a face: the first `n - dim` columns are normals of facets containing the
/// face, completed by coordinate columns; normalised to constant Jacobian.
pub fn face_adapted_map(np: &NewtonPolyhedron, face: &Face) -> Result<MonomialMap, MapError> {
    let n = np.n;
    let need = n - face.dim;
    let mut cols: Matrix = Vec::new();
    for &f in &face.facets {
        let mut trial = cols.clone();
        trial.push(np.facets[f].normal.clone());
        if linalg::rank(&trial) == trial.len() {
            cols = trial;
        }
        if cols.len() == need {
            break;
        }
    }
    if cols.len() < need {
        return Err(MapError::DegenerateCone);
    }
    for i in 0..n {
        if cols.len() == n {
            break;
        }
        let mut e = vec![Rational::zero(); n];
        e[i] = Rational::one();
        let mut trial = cols.clone();
        trial.push(e);
        if linalg::rank(&trial) == trial.len() {
            cols = trial;
        }
    }
    MonomialMap::from_columns(&cols)?.normalize_constant_jacobian()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseResult {
    pub clause: char,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma26Report {
    /// `sigma`-blocks `v'` of the transformed vertices on the face.
    #[serde(with = "serde_q::vecvec")]
    pub v_prime: Matrix,
    pub clauses: Vec<ClauseResult>,
}

impl Lemma26Report {
    pub fn all_pass(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }
}

/// Checks clauses a-d on every vertex of the face, with `sigma` the first `n - dim(face)`
/// coordinates.
pub fn check_lemma26(
    map: &MonomialMap,
    face: &Face,
    report: &CentralFaceReport,
    np: &NewtonPolyhedron,
) -> Result<Lemma26Report, MapError> {
    let n = np.n;
    if map.dim() != n {
        return Err(MapError::Shape(n));
    }
    // the sigma columns must be normals minimised on the face
    let sigma = n - face.dim;
    let mt = linalg::transpose(map.matrix());
    for (j, col) in mt.iter().take(sigma).enumerate() {
        let vals: Vec<Rational> = np
            .vertices
            .iter()
            .map(|v| {
                rational::dot(
                    col,
                    &v.iter()
                        .map(|&x| rational::int(x as i64))
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        let min = vals.iter().min().cloned().unwrap_or_else(Rational::zero);
        if face.vertices.iter().any(|&v| vals[v] != min) {
            return Err(MapError::FaceMismatch(j));
        }
    }
    let d = &report.d;
    let k = report.k;
    let on_central = face.is_subface_of(&report.central_face);
    let is_central =
        face.vertices == report.central_face.vertices && face.rays == report.central_face.rays;
    let mut v_prime = Vec::new();
    let mut a_fail = None;
    let mut b_fail = None;
    let mut c_fail = None;
    let mut d_fail = None;
    for &vi in &face.vertices {
        let v: Vec<Rational> = np.vertices[vi]
            .iter()
            .map(|&x| rational::int(x as i64))
            .collect();
        let vp: Vec<Rational> = map.transform(&v).into_iter().take(sigma).collect();
        let at_d = vp.iter().filter(|x| *x == d).count();
        if vp.iter().any(|x| x.is_negative() || x > d) {
            a_fail.get_or_insert(format!(
                "vertex {:?}: v' = {}",
                np.vertices[vi],
                fmt_vec(&vp)
            ));
        }
        if at_d > n - k {
            b_fail.get_or_insert(format!(
                "vertex {:?}: {at_d} components equal d",
                np.vertices[vi]
            ));
        }
        if at_d == n - k && !on_central {
            c_fail.get_or_insert(format!(
                "vertex {:?}: face not inside C(S)",
                np.vertices[vi]
            ));
        }
        if is_central && vp.iter().any(|x| x != d) {
            d_fail.get_or_insert(format!(
                "vertex {:?}: v' = {}",
                np.vertices[vi],
                fmt_vec(&vp)
            ));
        }
        v_prime.push(vp);
    }
    let clause = |c: char, w: Option<String>| ClauseResult {
        clause: c,
        pass: w.is_none(),
        witness: w,
    };
    Ok(Lemma26Report {
        v_prime,
        clauses: vec![
            clause('a', a_fail),
            clause('b', b_fail),
            clause('c', c_fail),
            clause('d', d_fail),
        ],
    })
}

fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(rational::fmt).collect();
    format!("({})", parts.join(", "))
}
