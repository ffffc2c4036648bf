//! Rational polytopes: vertex and facet descriptions, duality, the
//! reflexive/Delzant/Fano predicates, triangulation and lattice transforms.
//!
//! Throughout, "the polytope" of a toric Fano manifold is its moment
//! polytope. Duality uses the convention `P* = { y : <x, y> >= -1 on P }`.

mod kernel;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{determinant, rank, RatMatrix, RatVector, Rational};
use kernel::{extreme_directions, Orientation};

/// Facet description: `normal . x <= offset` for every row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    pub dim: usize,
    pub facets: Vec<(RatVector, Rational)>,
}

/// Full-dimensional polytope given by its (irredundant) vertex list.
///
/// The facet description and the vertex-facet incidences are computed once
/// at construction.
#[derive(Debug, Clone)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<RatVector>,
    hrep: HPolytope,
    // incidence[f] = indices of the vertices on facet f
    incidence: Vec<Vec<usize>>,
}

impl PartialEq for VPolytope {
    /// Equality as vertex sets.
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertex_set() == other.vertex_set()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplex {
    vertices: Vec<RatVector>,
}

impl Simplex {
    /// `n + 1` affinely independent points in dimension `n`.
    pub fn new(vertices: Vec<RatVector>) -> Result<Self> {
        let n = vertices.first().map_or(0, RatVector::dim);
        if vertices.len() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                got: vertices.len(),
            });
        }
        let s = Simplex { vertices };
        if s.edge_determinant().is_zero() {
            return Err(Error::DegeneratePolytope);
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    /// Determinant of the edge vectors from vertex 0.
    pub fn edge_determinant(&self) -> Rational {
        let v0 = &self.vertices[0];
        let edges: Vec<RatVector> = self.vertices[1..].iter().map(|v| v.sub(v0)).collect();
        if edges.is_empty() {
            return Rational::one();
        }
        determinant(&RatMatrix::from_rows(&edges).expect("edges share a dimension"))
            .expect("square edge matrix")
    }
}

fn check_dims(points: &[RatVector]) -> Result<usize> {
    let n = points.first().map_or(0, RatVector::dim);
    for p in points {
        if p.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.dim(),
            });
        }
    }
    Ok(n)
}

/// Dimension of the affine hull of the given points.
pub fn affine_dimension(points: &[&RatVector]) -> usize {
    match points.split_first() {
        None => 0,
        Some((p0, rest)) => {
            let diffs: Vec<RatVector> = rest.iter().map(|p| p.sub(p0)).collect();
            rank(&diffs)
        }
    }
}

/// `(p, last)` scaled to a primitive integer vector.
fn homogenize(p: &RatVector, last: &Rational) -> Vec<BigInt> {
    let (ints, _) = p.extended(last.clone()).clear_denominators();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g == BigInt::from(1) {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Facets of the convex hull of full-dimensional points, with the indices of
/// the points on each.
fn hull_facets(n: usize, points: &[RatVector]) -> (Vec<(RatVector, Rational)>, Vec<Vec<usize>>) {
    let w: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| homogenize(p, &Rational::one()))
        .collect();
    let mut facets = Vec::new();
    let mut incidence = Vec::new();
    for c in extreme_directions(&w, Orientation::Free) {
        // (u, -beta) . (p, 1) <= 0  <=>  u . p <= beta
        let normal: RatVector = c[..n].iter().map(|x| Rational::from(x.clone())).collect();
        let offset = Rational::from(-c[n].clone());
        let on: Vec<usize> = (0..points.len())
            .filter(|&i| normal.dot(&points[i]) == offset)
            .collect();
        facets.push((normal, offset));
        incidence.push(on);
    }
    (facets, incidence)
}

impl VPolytope {
    /// Convex hull of the points, keeping only genuine vertices (in input
    /// order, duplicates dropped).
    ///
    /// A point is a vertex iff the normals of the facets through it span the
    /// whole space.
    pub fn from_vertices(points: Vec<RatVector>) -> Result<Self> {
        let n = check_dims(&points)?;
        let mut unique: Vec<RatVector> = Vec::with_capacity(points.len());
        for p in points {
            if !unique.contains(&p) {
                unique.push(p);
            }
        }
        if n == 0 || unique.len() < n + 1 {
            return Err(Error::DegeneratePolytope);
        }
        let refs: Vec<&RatVector> = unique.iter().collect();
        if affine_dimension(&refs) < n {
            return Err(Error::DegeneratePolytope);
        }
        let (facets, inc) = hull_facets(n, &unique);
        let keep: Vec<usize> = (0..unique.len())
            .filter(|&i| {
                let normals: Vec<RatVector> = (0..facets.len())
                    .filter(|&f| inc[f].contains(&i))
                    .map(|f| facets[f].0.clone())
                    .collect();
                rank(&normals) == n
            })
            .collect();
        let remap = |i: usize| keep.iter().position(|&k| k == i);
        let incidence = inc
            .iter()
            .map(|on| on.iter().filter_map(|&i| remap(i)).collect())
            .collect();
        let vertices = keep.iter().map(|&i| unique[i].clone()).collect();
        Ok(VPolytope {
            dim: n,
            vertices,
            hrep: HPolytope { dim: n, facets },
            incidence,
        })
    }

    /// The bounded polyhedron `{ x : a . x <= b }`, with redundant rows
    /// dropped.
    pub fn from_halfspaces(n: usize, rows: &[(RatVector, Rational)]) -> Result<Self> {
        let vertices = vertices_of_halfspaces(n, rows);
        if vertices.len() < n + 1 {
            return Err(Error::DegeneratePolytope);
        }
        let mut facets: Vec<(RatVector, Rational)> = Vec::new();
        let mut incidence = Vec::new();
        for (a, b) in rows {
            let prim = homogenize(a, &-b);
            let normal: RatVector = prim[..n]
                .iter()
                .map(|x| Rational::from(x.clone()))
                .collect();
            let offset = Rational::from(-prim[n].clone());
            if normal.is_zero() || facets.iter().any(|(u, c)| *u == normal && *c == offset) {
                continue;
            }
            let on: Vec<usize> = (0..vertices.len())
                .filter(|&i| normal.dot(&vertices[i]) == offset)
                .collect();
            let pts: Vec<&RatVector> = on.iter().map(|&i| &vertices[i]).collect();
            if on.len() >= n && affine_dimension(&pts) + 1 == n {
                facets.push((normal, offset));
                incidence.push(on);
            }
        }
        let all: Vec<&RatVector> = vertices.iter().collect();
        if affine_dimension(&all) < n {
            return Err(Error::DegeneratePolytope);
        }
        Ok(VPolytope {
            dim: n,
            vertices,
            hrep: HPolytope { dim: n, facets },
            incidence,
        })
    }

    /// Builds from integer coordinates.
    pub fn from_int_vertices(points: &[&[i64]]) -> Result<Self> {
        Self::from_vertices(points.iter().map(|p| RatVector::from_ints(p)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Vertices as a sorted set, for order-independent comparison.
    pub fn vertex_set(&self) -> BTreeSet<RatVector> {
        self.vertices.iter().cloned().collect()
    }

    pub fn facets(&self) -> &HPolytope {
        &self.hrep
    }

    /// For each facet, the indices of its vertices.
    pub fn facet_incidence(&self) -> &[Vec<usize>] {
        &self.incidence
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().all(RatVector::is_integral)
    }

    /// True iff every facet inequality is strict at the origin.
    pub fn contains_origin_interior(&self) -> bool {
        self.hrep.facets.iter().all(|(_, b)| b.is_positive())
    }

    /// `{ y : <x, y> >= -1 for all x in P }`.
    pub fn dual(&self) -> Result<VPolytope> {
        if !self.contains_origin_interior() {
            return Err(Error::OriginNotInterior);
        }
        let points = self
            .hrep
            .facets
            .iter()
            .map(|(u, b)| u.scale(&(-b.recip())))
            .collect();
        VPolytope::from_vertices(points)
    }

    /// The dual is again a lattice polytope. Non-integral input is never
    /// reflexive.
    pub fn is_reflexive(&self) -> Result<bool> {
        let dual = self.dual()?;
        Ok(self.is_integral() && dual.is_integral())
    }

    /// Indices of the vertices joined to vertex `v` by an edge.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let on_v: Vec<usize> = (0..self.incidence.len())
            .filter(|&f| self.incidence[f].contains(&v))
            .collect();
        (0..self.vertices.len())
            .filter(|&w| w != v)
            .filter(|&w| {
                let common: Vec<usize> = on_v
                    .iter()
                    .copied()
                    .filter(|&f| self.incidence[f].contains(&w))
                    .collect();
                let normals: Vec<RatVector> = common
                    .iter()
                    .map(|&f| self.hrep.facets[f].0.clone())
                    .collect();
                if rank(&normals) != self.dim - 1 {
                    return false;
                }
                // the face cut out by the common facets is exactly {v, w}
                (0..self.vertices.len()).all(|x| {
                    x == v || x == w || !common.iter().all(|&f| self.incidence[f].contains(&x))
                })
            })
            .collect()
    }

    /// Smoothness: every vertex has exactly `n` edges whose primitive
    /// directions form a lattice basis.
    pub fn is_delzant(&self) -> bool {
        if !self.is_integral() {
            return false;
        }
        (0..self.vertices.len()).all(|v| {
            let nbrs = self.neighbors(v);
            if nbrs.len() != self.dim {
                return false;
            }
            let dirs: Vec<RatVector> = nbrs
                .iter()
                .map(|&w| primitive_direction(&self.vertices[w].sub(&self.vertices[v])))
                .collect();
            let m = RatMatrix::from_rows(&dirs).expect("equal dimensions");
            determinant(&m).expect("square").abs().is_one()
        })
    }

    /// Integral, origin in the interior, reflexive and Delzant.
    pub fn is_fano_polytope(&self) -> bool {
        self.is_integral()
            && self.contains_origin_interior()
            && self.is_reflexive().unwrap_or(false)
            && self.is_delzant()
    }

    /// Triangulation into full-dimensional simplices with disjoint interiors.
    ///
    /// A simplex is returned as is. Otherwise the boundary is pulled
    /// triangulated facet by facet and coned over the origin when the origin
    /// is interior, or the whole polytope is pulled from its first vertex.
    pub fn triangulate(&self) -> Vec<Simplex> {
        if self.vertices.len() == self.dim + 1 {
            return vec![Simplex {
                vertices: self.vertices.clone(),
            }];
        }
        if self.contains_origin_interior() {
            let origin = RatVector::zeros(self.dim);
            let mut out = Vec::new();
            for f in 0..self.incidence.len() {
                for cell in self.pull(&self.incidence[f], self.dim - 1) {
                    let mut vs = vec![origin.clone()];
                    vs.extend(cell.iter().map(|&i| self.vertices[i].clone()));
                    out.push(Simplex { vertices: vs });
                }
            }
            out
        } else {
            self.triangulate_pulling()
        }
    }

    /// Pulling triangulation from the first vertex, recursively on faces.
    pub fn triangulate_pulling(&self) -> Vec<Simplex> {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        self.pull(&all, self.dim)
            .into_iter()
            .map(|cell| Simplex {
                vertices: cell.iter().map(|&i| self.vertices[i].clone()).collect(),
            })
            .collect()
    }

    /// Facets of the `k`-dimensional face with vertex set `face`.
    fn subfacets(&self, face: &[usize], k: usize) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for inc in &self.incidence {
            let sub: Vec<usize> = face.iter().copied().filter(|i| inc.contains(i)).collect();
            if sub.len() < k || sub.len() == face.len() || out.contains(&sub) {
                continue;
            }
            let pts: Vec<&RatVector> = sub.iter().map(|&i| &self.vertices[i]).collect();
            if affine_dimension(&pts) + 1 == k {
                out.push(sub);
            }
        }
        out
    }

    fn pull(&self, face: &[usize], k: usize) -> Vec<Vec<usize>> {
        if face.len() == k + 1 {
            return vec![face.to_vec()];
        }
        let apex = face[0];
        let mut out = Vec::new();
        for sub in self.subfacets(face, k) {
            if sub.contains(&apex) {
                continue;
            }
            for mut cell in self.pull(&sub, k - 1) {
                cell.insert(0, apex);
                out.push(cell);
            }
        }
        out
    }

    /// Image under a unimodular integer matrix acting on column vectors.
    pub fn transform(&self, u: &RatMatrix) -> Result<VPolytope> {
        if !u.is_square() || u.rows() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: u.rows(),
            });
        }
        if !u.is_integral() || !determinant(u)?.abs().is_one() {
            return Err(Error::NotUnimodular);
        }
        let points = self
            .vertices
            .iter()
            .map(|v| u.mul_vec(v))
            .collect::<Result<Vec<_>>>()?;
        VPolytope::from_vertices(points)
    }

    /// Same polytope with the vertex list reordered.
    pub fn with_vertex_order(&self, order: &[usize]) -> Result<VPolytope> {
        VPolytope::from_vertices(order.iter().map(|&i| self.vertices[i].clone()).collect())
    }

    /// Cartesian product `P x Q`.
    pub fn product(&self, other: &VPolytope) -> Result<VPolytope> {
        let mut points = Vec::new();
        for p in &self.vertices {
            for q in &other.vertices {
                let mut e = p.entries().to_vec();
                e.extend(q.iter().cloned());
                points.push(RatVector::new(e));
            }
        }
        VPolytope::from_vertices(points)
    }
}

/// Vertices of the bounded polyhedron `{ x : a . x <= b }`.
///
/// Returns an empty list when the system is infeasible or has no vertex.
pub fn vertices_of_halfspaces(n: usize, rows: &[(RatVector, Rational)]) -> Vec<RatVector> {
    let w: Vec<Vec<BigInt>> = rows.iter().map(|(a, b)| homogenize(a, &-b)).collect();
    extreme_directions(&w, Orientation::LastPositive)
        .into_iter()
        .map(|c| {
            let scale = Rational::from(c[n].clone());
            c[..n]
                .iter()
                .map(|x| Rational::from(x.clone()) / &scale)
                .collect()
        })
        .collect()
}

/// Divides an integral vector by the gcd of its entries.
pub fn primitive_direction(v: &RatVector) -> RatVector {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x.numer()));
    if g.is_zero() {
        return v.clone();
    }
    let g = Rational::from(g.abs());
    v.iter().map(|x| x / &g).collect()
}
