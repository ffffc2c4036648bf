//! Exact integrals over polytopes: volume, first and second moments, and
//! integrals of piecewise-affine convex functions.

use rayon::prelude::*;

use crate::exact::{RatMatrix, RatVector, Rational};
use crate::polytope::{Simplex, VPolytope};
use crate::stability::{AffineFunction, PLConvexFunction};

/// `vol = ∫ 1`, `m1_i = ∫ x_i`, `m2_ij = ∫ x_i x_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentData {
    pub vol: Rational,
    pub m1: RatVector,
    pub m2: RatMatrix,
}

impl MomentData {
    pub fn zero(n: usize) -> Self {
        MomentData {
            vol: Rational::zero(),
            m1: RatVector::zeros(n),
            m2: RatMatrix::zeros(n, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.m1.dim()
    }

    fn accumulate(mut self, other: &MomentData) -> Self {
        self.vol += &other.vol;
        self.m1 = self.m1.add(&other.m1);
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let v = self.m2.get(i, j) + other.m2.get(i, j);
                self.m2.set(i, j, v);
            }
        }
        self
    }

    /// The bordered Gram matrix `[[m2, m1], [m1^T, vol]]` of `x_1, ..., x_n, 1`.
    pub fn gram(&self) -> RatMatrix {
        let n = self.dim();
        let mut g = RatMatrix::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                g.set(i, j, self.m2.get(i, j).clone());
            }
            g.set(i, n, self.m1[i].clone());
            g.set(n, i, self.m1[i].clone());
        }
        g.set(n, n, self.vol.clone());
        g
    }

    /// `∫ l`.
    pub fn integrate_affine(&self, l: &AffineFunction) -> Rational {
        l.a.dot(&self.m1) + &l.c * &self.vol
    }

    /// `∫ l g`.
    pub fn integrate_product(&self, l: &AffineFunction, g: &AffineFunction) -> Rational {
        let m2b = self.m2.mul_vec(&g.a).expect("dimension checked by caller");
        l.a.dot(&m2b)
            + &l.c * &g.a.dot(&self.m1)
            + &g.c * &l.a.dot(&self.m1)
            + &l.c * &g.c * &self.vol
    }
}

fn factorial(n: usize) -> Rational {
    (1..=n as i64)
        .map(Rational::from)
        .fold(Rational::one(), |a, b| a * b)
}

pub fn simplex_volume(s: &Simplex) -> Rational {
    s.edge_determinant().abs() / factorial(s.dim())
}

/// `∫_S x_i`: volume times the barycenter.
pub fn simplex_moment1(s: &Simplex, i: usize) -> Rational {
    let sum: Rational = s.vertices().iter().map(|v| v[i].clone()).sum();
    simplex_volume(s) * sum / Rational::from(s.dim() as i64 + 1)
}

/// `∫_S x_i x_j = vol / ((n+1)(n+2)) * (sum_k v_ki v_kj + s_i s_j)` with `s` the
/// vertex sum.
pub fn simplex_moment2(s: &Simplex, i: usize, j: usize) -> Rational {
    let n = s.dim() as i64;
    let si: Rational = s.vertices().iter().map(|v| v[i].clone()).sum();
    let sj: Rational = s.vertices().iter().map(|v| v[j].clone()).sum();
    let diag: Rational = s.vertices().iter().map(|v| &v[i] * &v[j]).sum();
    simplex_volume(s) * (diag + si * sj) / Rational::from((n + 1) * (n + 2))
}

/// All moments of one simplex at once.
pub fn simplex_moments(s: &Simplex) -> MomentData {
    let n = s.dim();
    let vol = simplex_volume(s);
    let sum = s
        .vertices()
        .iter()
        .fold(RatVector::zeros(n), |acc, v| acc.add(v));
    let m1 = sum.scale(&(&vol / Rational::from(n as i64 + 1)));
    let k = &vol / Rational::from(((n + 1) * (n + 2)) as i64);
    let mut m2 = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let diag: Rational = s.vertices().iter().map(|v| &v[i] * &v[j]).sum();
            let x = &k * &(diag + &sum[i] * &sum[j]);
            m2.set(j, i, x.clone());
            m2.set(i, j, x);
        }
    }
    MomentData { vol, m1, m2 }
}

/// Sums simplex moments in cell order.
pub fn moments_of_cells(n: usize, cells: &[Simplex]) -> MomentData {
    let parts: Vec<MomentData> = cells.par_iter().map(simplex_moments).collect();
    parts
        .iter()
        .fold(MomentData::zero(n), |acc, m| acc.accumulate(m))
}

pub fn moment_data(p: &VPolytope) -> MomentData {
    moments_of_cells(p.dim(), &p.triangulate())
}

pub fn integrate_affine(p: &VPolytope, l: &AffineFunction) -> Rational {
    moment_data(p).integrate_affine(l)
}

/// Cells `P ∩ { l_k >= l_j for all j }` of positive volume, with the index of
/// the piece active on each. A piece equal to an earlier one gets no cell.
pub fn pl_subdivision(p: &VPolytope, f: &PLConvexFunction) -> Vec<(VPolytope, usize)> {
    let pieces = f.pieces();
    let distinct: Vec<usize> = (0..pieces.len())
        .filter(|&k| !pieces[..k].contains(&pieces[k]))
        .collect();
    if distinct.len() == 1 {
        return vec![(p.clone(), distinct[0])];
    }
    let n = p.dim();
    distinct
        .iter()
        .filter_map(|&k| {
            let mut rows = p.facets().facets.clone();
            for &j in &distinct {
                if j != k {
                    // l_j <= l_k  <=>  (a_j - a_k) . x <= c_k - c_j
                    rows.push((pieces[j].a.sub(&pieces[k].a), &pieces[k].c - &pieces[j].c));
                }
            }
            let cell = VPolytope::from_halfspaces(n, &rows).ok()?;
            Some((cell, k))
        })
        .collect()
}

/// Moments and vertices of the cells of a piecewise-affine function.
#[derive(Debug, Clone)]
pub struct Subdivision {
    /// Cell moments with the index of the active piece.
    pub cells: Vec<(MomentData, usize)>,
    /// Vertices of all cells, deduplicated in discovery order.
    pub vertices: Vec<RatVector>,
}

impl Subdivision {
    /// Reuses `whole` when the only cell is the polytope itself.
    pub fn new(p: &VPolytope, whole: &MomentData, f: &PLConvexFunction) -> Self {
        let parts = pl_subdivision(p, f);
        let mut vertices: Vec<RatVector> = Vec::new();
        for (cell, _) in &parts {
            for v in cell.vertices() {
                if !vertices.contains(v) {
                    vertices.push(v.clone());
                }
            }
        }
        let cells = if parts.len() == 1 {
            vec![(whole.clone(), parts[0].1)]
        } else {
            parts
                .par_iter()
                .map(|(c, k)| (moment_data(c), *k))
                .filter(|(m, _)| !m.vol.is_zero())
                .collect()
        };
        Subdivision { cells, vertices }
    }

    /// `∫ f`.
    pub fn integrate(&self, f: &PLConvexFunction) -> Rational {
        self.cells
            .iter()
            .map(|(m, k)| m.integrate_affine(&f.pieces()[*k]))
            .sum()
    }

    /// `∫ f g`.
    pub fn integrate_times(&self, f: &PLConvexFunction, g: &AffineFunction) -> Rational {
        self.cells
            .iter()
            .map(|(m, k)| m.integrate_product(&f.pieces()[*k], g))
            .sum()
    }

    /// `min_P f`, attained at a cell vertex.
    pub fn minimum(&self, f: &PLConvexFunction) -> Rational {
        self.vertices
            .iter()
            .map(|v| f.eval(v))
            .min()
            .expect("cells have vertices")
    }
}

pub fn integrate_pl(p: &VPolytope, f: &PLConvexFunction) -> Rational {
    Subdivision::new(p, &moment_data(p), f).integrate(f)
}

pub fn integrate_pl_times_affine(
    p: &VPolytope,
    f: &PLConvexFunction,
    g: &AffineFunction,
) -> Rational {
    Subdivision::new(p, &moment_data(p), f).integrate_times(f, g)
}
