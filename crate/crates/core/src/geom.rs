//! Newton polyhedra `conv(support) + R^n_{>=0}`: vertices, facets, the face lattice,
//! the Newton distance and the central face.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;
use crate::lp::{self, LpOutcome};
use crate::poly::{PolyError, SparsePoly, MAX_DIM};
use crate::rational::{self, serde_q, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("the zero polynomial has no Newton polyhedron")]
    ZeroPolynomial,
    #[error("dimension {0} is outside 1..={MAX_DIM}")]
    Dimension(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// A facet `a . x >= c` with primitive integer normal `a >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facet {
    #[serde(with = "serde_q::vec")]
    pub normal: Vec<Rational>,
    #[serde(with = "serde_q")]
    pub offset: Rational,
}

/// A nonempty proper face of the polyhedron.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    /// Supporting normal in the relative interior of the face's normal cone.
    #[serde(with = "serde_q::vec")]
    pub normal: Vec<Rational>,
    #[serde(with = "serde_q")]
    pub offset: Rational,
    /// Source exponents lying on the face.
    pub exponents: Vec<Vec<u32>>,
    /// Indices into [`NewtonPolyhedron::vertices`].
    pub vertices: Vec<usize>,
    /// Coordinate directions `e_i` contained in the face's recession cone.
    pub rays: Vec<usize>,
    pub dim: usize,
    pub compact: bool,
    /// Indices into [`NewtonPolyhedron::facets`] of the facets containing the face.
    pub facets: Vec<usize>,
}

impl Face {
    pub fn is_vertex(&self) -> bool {
        self.dim == 0
    }

    /// Whether `self` is a face of `other` (including equality).
    pub fn is_subface_of(&self, other: &Face) -> bool {
        self.vertices.iter().all(|v| other.vertices.contains(v))
            && self.rays.iter().all(|r| other.rays.contains(r))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolyhedron {
    pub n: usize,
    pub exponents: Vec<Vec<u32>>,
    pub vertices: Vec<Vec<u32>>,
    pub facets: Vec<Facet>,
    /// All nonempty proper faces, sorted by dimension then vertex set.
    pub faces: Vec<Face>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralFaceReport {
    #[serde(with = "serde_q")]
    pub d: Rational,
    pub central_face: Face,
    pub k: usize,
    pub central_compact: bool,
}

fn to_q(v: &[u32]) -> Vec<Rational> {
    v.iter().map(|&x| rational::int(x as i64)).collect()
}

/// Is `p` in `conv(points) + R^n_{>=0}`?
fn in_hull_plus_orthant(points: &[Vec<Rational>], p: &[Rational]) -> bool {
    let n = p.len();
    let m = points.len();
    if m == 0 {
        return false;
    }
    // unknowns: lambda (m), slack s (n)
    let mut a = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut row: Vec<Rational> = points.iter().map(|q| q[i].clone()).collect();
        row.extend((0..n).map(|j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        }));
        a.push(row);
    }
    let mut sum = vec![Rational::one(); m];
    sum.extend((0..n).map(|_| Rational::zero()));
    a.push(sum);
    let mut b = p.to_vec();
    b.push(Rational::one());
    lp::feasible(&a, &b)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl NewtonPolyhedron {
    pub fn build(p: &SparsePoly) -> Result<Self, GeomError> {
        if p.is_zero() {
            return Err(GeomError::ZeroPolynomial);
        }
        let n = p.nvars();
        if n == 0 || n > MAX_DIM {
            return Err(GeomError::Dimension(n));
        }
        let exponents = p.support()?;
        Ok(Self::from_support(n, exponents))
    }

    pub fn from_support(n: usize, exponents: Vec<Vec<u32>>) -> Self {
        let pts: Vec<Vec<Rational>> = exponents.iter().map(|e| to_q(e)).collect();
        let mut vertices = Vec::new();
        for (i, e) in exponents.iter().enumerate() {
            let others: Vec<Vec<Rational>> = pts
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| q.clone())
                .collect();
            if !in_hull_plus_orthant(&others, &pts[i]) {
                vertices.push(e.clone());
            }
        }
        vertices.sort();
        let facets = compute_facets(n, &vertices);
        let mut poly = NewtonPolyhedron {
            n,
            exponents,
            vertices,
            facets,
            faces: Vec::new(),
        };
        poly.faces = poly.compute_faces();
        poly
    }

    fn vertex_q(&self, i: usize) -> Vec<Rational> {
        to_q(&self.vertices[i])
    }

    /// Face cut out by the given set of facets (their intersection), if nonempty.
    fn face_from_facets(&self, set: &BTreeSet<usize>) -> Option<Face> {
        let verts: Vec<usize> = (0..self.vertices.len())
            .filter(|&v| {
                let q = self.vertex_q(v);
                set.iter()
                    .all(|&f| rational::dot(&self.facets[f].normal, &q) == self.facets[f].offset)
            })
            .collect();
        if verts.is_empty() {
            return None;
        }
        let rays: Vec<usize> = (0..self.n)
            .filter(|&i| set.iter().all(|&f| self.facets[f].normal[i].is_zero()))
            .collect();
        Some(self.face_from_parts(verts, rays))
    }

    fn face_from_parts(&self, verts: Vec<usize>, rays: Vec<usize>) -> Face {
        let n = self.n;
        let contained = |f: &Facet| {
            verts
                .iter()
                .all(|&v| rational::dot(&f.normal, &self.vertex_q(v)) == f.offset)
                && rays.iter().all(|&r| f.normal[r].is_zero())
        };
        let facets: Vec<usize> = (0..self.facets.len())
            .filter(|&f| contained(&self.facets[f]))
            .collect();
        let mut normal = vec![Rational::zero(); n];
        for &f in &facets {
            for (a, b) in normal.iter_mut().zip(&self.facets[f].normal) {
                *a += b;
            }
        }
        let v0 = self.vertex_q(verts[0]);
        let offset = rational::dot(&normal, &v0);
        let mut span: linalg::Matrix = verts[1..]
            .iter()
            .map(|&v| {
                self.vertex_q(v)
                    .iter()
                    .zip(&v0)
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        for &r in &rays {
            let mut e = vec![Rational::zero(); n];
            e[r] = Rational::one();
            span.push(e);
        }
        let dim = if span.is_empty() {
            0
        } else {
            linalg::rank(&span)
        };
        let exponents = self
            .exponents
            .iter()
            .filter(|e| rational::dot(&normal, &to_q(e)) == offset)
            .cloned()
            .collect();
        Face {
            normal,
            offset,
            exponents,
            compact: rays.is_empty(),
            vertices: verts,
            rays,
            dim,
            facets,
        }
    }

    fn compute_faces(&self) -> Vec<Face> {
        let mut seen: BTreeMap<(Vec<usize>, Vec<usize>), Face> = BTreeMap::new();
        let mut frontier: Vec<BTreeSet<usize>> = (0..self.facets.len())
            .map(|f| BTreeSet::from([f]))
            .collect();
        let mut tried: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        while let Some(set) = frontier.pop() {
            if !tried.insert(set.clone()) {
                continue;
            }
            let Some(face) = self.face_from_facets(&set) else {
                continue;
            };
            let key = (face.vertices.clone(), face.rays.clone());
            if seen.contains_key(&key) {
                continue;
            }
            let closed: BTreeSet<usize> = face.facets.iter().copied().collect();
            for f in 0..self.facets.len() {
                if !closed.contains(&f) {
                    let mut next = closed.clone();
                    next.insert(f);
                    frontier.push(next);
                }
            }
            seen.insert(key, face);
        }
        let mut faces: Vec<Face> = seen.into_values().collect();
        faces.sort_by(|a, b| {
            a.dim
                .cmp(&b.dim)
                .then_with(|| a.vertices.cmp(&b.vertices))
                .then_with(|| a.rays.cmp(&b.rays))
        });
        faces
    }

    pub fn compact_faces(&self) -> Vec<&Face> {
        self.faces.iter().filter(|f| f.compact).collect()
    }

    /// Exact membership test.
    pub fn contains(&self, point: &[Rational]) -> Result<bool, GeomError> {
        if point.len() != self.n {
            return Err(GeomError::DimensionMismatch {
                expected: self.n,
                got: point.len(),
            });
        }
        let verts: Vec<Vec<Rational>> =
            (0..self.vertices.len()).map(|i| self.vertex_q(i)).collect();
        Ok(in_hull_plus_orthant(&verts, point))
    }

    /// Newton distance from the linear program `min t : (t,..,t) in N`.
    pub fn newton_distance_lp(&self) -> Rational {
        let n = self.n;
        let m = self.vertices.len();
        // unknowns: lambda (m), s (n), t
        let mut a = Vec::with_capacity(n + 1);
        for i in 0..n {
            let mut row: Vec<Rational> = (0..m)
                .map(|v| rational::int(self.vertices[v][i] as i64))
                .collect();
            row.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row.push(-Rational::one());
            a.push(row);
        }
        let mut sum = vec![Rational::one(); m];
        sum.extend((0..=n).map(|_| Rational::zero()));
        a.push(sum);
        let mut b = vec![Rational::zero(); n];
        b.push(Rational::one());
        let mut c = vec![Rational::zero(); m + n];
        c.push(Rational::one());
        match lp::solve(&a, &b, &c) {
            LpOutcome::Optimal { value, .. } => value,
            other => {
                unreachable!("Newton distance program is always feasible and bounded: {other:?}")
            }
        }
    }

    /// Newton distance from the facet description: `max_f c_f / sum(a_f)`.
    pub fn newton_distance_facets(&self) -> Rational {
        self.facets
            .iter()
            .map(|f| &f.offset / f.normal.iter().sum::<Rational>())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// The Newton distance and the face whose relative interior holds `(d,..,d)`.
    pub fn central_face(&self) -> CentralFaceReport {
        let d = self.newton_distance_lp();
        let diag = vec![d.clone(); self.n];
        let tight: BTreeSet<usize> = (0..self.facets.len())
            .filter(|&f| rational::dot(&self.facets[f].normal, &diag) == self.facets[f].offset)
            .collect();
        let face = self
            .face_from_facets(&tight)
            .expect("the diagonal point lies on the boundary");
        CentralFaceReport {
            d,
            k: face.dim,
            central_compact: face.compact,
            central_face: face,
        }
    }

    /// Finds the stored face with the same vertex and ray sets.
    pub fn find_face(&self, face: &Face) -> Option<usize> {
        self.faces
            .iter()
            .position(|f| f.vertices == face.vertices && f.rays == face.rays)
    }

    /// Vertex face for vertex index `v`.
    pub fn vertex_face(&self, v: usize) -> &Face {
        self.faces
            .iter()
            .find(|f| f.dim == 0 && f.vertices == [v])
            .expect("every vertex is a face")
    }
}

/// Facets by brute force over spanning subsets of vertices and coordinate rays.
fn compute_facets(n: usize, vertices: &[Vec<u32>]) -> Vec<Facet> {
    let verts: Vec<Vec<Rational>> = vertices.iter().map(|v| to_q(v)).collect();
    let mut found: BTreeSet<Vec<num_bigint::BigInt>> = BTreeSet::new();
    let mut out = Vec::new();
    for nv in 1..=n.min(verts.len()) {
        let nr = n - nv;
        for vs in combinations(verts.len(), nv) {
            for rs in combinations(n, nr) {
                let v0 = &verts[vs[0]];
                let mut rows: linalg::Matrix = vs[1..]
                    .iter()
                    .map(|&j| verts[j].iter().zip(v0).map(|(a, b)| a - b).collect())
                    .collect();
                for &r in &rs {
                    let mut e = vec![Rational::zero(); n];
                    e[r] = Rational::one();
                    rows.push(e);
                }
                let ns = if rows.is_empty() {
                    vec![vec![Rational::one()]]
                } else {
                    linalg::null_space(&rows, n)
                };
                if ns.len() != 1 {
                    continue;
                }
                let mut a = ns.into_iter().next().unwrap();
                if a.iter().any(|x| x.is_negative()) {
                    if a.iter().any(|x| x.is_positive()) {
                        continue;
                    }
                    a = a.into_iter().map(|x| -x).collect();
                }
                let prim = rational::primitive_integer(&a);
                let a: Vec<Rational> = prim.iter().cloned().map(Rational::from_integer).collect();
                let c = rational::dot(&a, v0);
                if verts.iter().all(|v| rational::dot(&a, v) >= c) && found.insert(prim) {
                    out.push(Facet {
                        normal: a,
                        offset: c,
                    });
                }
            }
        }
    }
    out.sort_by(|x, y| {
        x.normal
            .cmp(&y.normal)
            .then_with(|| x.offset.cmp(&y.offset))
    });
    out
}
