#![allow(dead_code)]

use dingstab_core::exact::{rat, solve_linear, RatMatrix, RatVector, Rational};
use dingstab_core::polytope::VPolytope;
use dingstab_core::stability::{AffineFunction, PLConvexFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn poly(points: &[&[i64]]) -> VPolytope {
    VPolytope::from_int_vertices(points).unwrap()
}

/// Moment polytope whose dual has the given vertices.
pub fn from_fan(rays: &[&[i64]]) -> VPolytope {
    poly(rays).dual().unwrap()
}

pub fn random_rational(rng: &mut impl Rng, num: i64, den: i64) -> Rational {
    rat(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

pub fn random_affine(rng: &mut impl Rng, n: usize, num: i64, den: i64) -> AffineFunction {
    let a = (0..n).map(|_| random_rational(rng, num, den)).collect();
    AffineFunction::new(a, random_rational(rng, num, den))
}

/// Maximum of 2 to `max_pieces` random affine pieces.
pub fn random_pl(rng: &mut impl Rng, n: usize, max_pieces: usize) -> PLConvexFunction {
    let k = rng.gen_range(2..=max_pieces);
    let pieces = (0..k).map(|_| random_affine(rng, n, 3, 2)).collect();
    PLConvexFunction::new(pieces).unwrap()
}

/// Product of random elementary, swap and sign matrices.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> RatMatrix {
    let mut u = RatMatrix::identity(n);
    for _ in 0..rng.gen_range(1..=6) {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if i != j => {
                let k = Rational::from(rng.gen_range(-2i64..=2));
                for c in 0..n {
                    let v = u.get(i, c) + &(u.get(j, c) * &k);
                    u.set(i, c, v);
                }
            }
            1 => {
                for c in 0..n {
                    let (a, b) = (u.get(i, c).clone(), u.get(j, c).clone());
                    u.set(i, c, b);
                    u.set(j, c, a);
                }
            }
            _ => {
                for c in 0..n {
                    let v = -u.get(i, c);
                    u.set(i, c, v);
                }
            }
        }
    }
    u
}

// polynomials in x, lowest degree first

fn pmul(p: &[Rational], q: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

fn ppow(p: &[Rational], k: usize) -> Vec<Rational> {
    (0..k).fold(vec![Rational::one()], |acc, _| pmul(&acc, p))
}

fn peval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// `∫_x0^x1 p`.
fn pintegrate(p: &[Rational], x0: &Rational, x1: &Rational) -> Rational {
    let mut anti = vec![Rational::zero()];
    for (i, c) in p.iter().enumerate() {
        anti.push(c / &Rational::from(i as i64 + 1));
    }
    peval(&anti, x1) - peval(&anti, x0)
}

/// `y` along the line through `p` and `q`, as a polynomial in `x`.
fn line(p: &[Rational; 2], q: &[Rational; 2]) -> Vec<Rational> {
    let slope = (&q[1] - &p[1]) / (&q[0] - &p[0]);
    vec![&p[1] - &(&slope * &p[0]), slope]
}

/// `∫ x^a y^b` over a triangle by iterated integration: split into vertical
/// slabs at the vertex abscissae, and in each slab integrate `y` between the
/// lowest and highest edge crossing the slab.
pub fn triangle_monomial(tri: &[[Rational; 2]; 3], a: usize, b: usize) -> Rational {
    let mut xs: Vec<Rational> = tri.iter().map(|p| p[0].clone()).collect();
    xs.sort();
    xs.dedup();
    let mut total = Rational::zero();
    for w in xs.windows(2) {
        let (x0, x1) = (&w[0], &w[1]);
        let mid = (x0 + x1) / &Rational::from(2);
        let mut edges: Vec<Vec<Rational>> = Vec::new();
        for i in 0..3 {
            for j in i + 1..3 {
                let (p, q) = (&tri[i], &tri[j]);
                let (lo, hi) = if p[0] < q[0] { (p, q) } else { (q, p) };
                if lo[0] <= *x0 && hi[0] >= *x1 && lo[0] != hi[0] {
                    edges.push(line(p, q));
                }
            }
        }
        edges.sort_by_key(|e| peval(e, &mid));
        let (low, high) = (&edges[0], &edges[edges.len() - 1]);
        let k = b + 1;
        let mut diff = ppow(high, k);
        for (i, c) in ppow(low, k).into_iter().enumerate() {
            diff[i] -= c;
        }
        let mut integrand = pmul(&ppow(&[Rational::zero(), Rational::one()], a), &diff);
        for c in integrand.iter_mut() {
            *c = &*c / &Rational::from(k as i64);
        }
        total += pintegrate(&integrand, x0, x1);
    }
    total
}

/// Minimum of `c.z` over `{A z <= b}` by trying every basic solution, `None`
/// when no basic solution is feasible.
pub fn brute_force_lp(c: &RatVector, rows: &[(RatVector, Rational)]) -> Option<Rational> {
    let n = c.dim();
    let mut best: Option<Rational> = None;
    let mut subset: Vec<usize> = (0..n).collect();
    loop {
        let a: Vec<RatVector> = subset.iter().map(|&i| rows[i].0.clone()).collect();
        let b: RatVector = subset.iter().map(|&i| rows[i].1.clone()).collect();
        if let Ok(z) = solve_linear(&RatMatrix::from_rows(&a).unwrap(), &b) {
            if rows.iter().all(|(r, bound)| r.dot(&z) <= *bound) {
                let v = c.dot(&z);
                if best.as_ref().is_none_or(|b| v < *b) {
                    best = Some(v);
                }
            }
        }
        // next n-subset in lexicographic order
        let m = rows.len();
        let Some(i) = (0..n).rev().find(|&i| subset[i] < m - n + i) else {
            return best;
        };
        subset[i] += 1;
        for j in i + 1..n {
            subset[j] = subset[j - 1] + 1;
        }
    }
}
