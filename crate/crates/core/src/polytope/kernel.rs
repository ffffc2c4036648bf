//! Integer kernel shared by facet enumeration and vertex enumeration.
//!
//! Both conversions reduce to the same question in homogeneous coordinates:
//! given integer vectors `w_1, ..., w_m` in `Z^(k+1)`, find every direction
//! `c` orthogonal to some `k` linearly independent `w_i` with `w_j . c <= 0`
//! for all `j`. The orthogonal direction of a `k`-subset is its vector of
//! signed maximal minors. Small inputs run on `i128`, everything else on
//! `BigInt`.

use std::collections::HashSet;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

/// Integer rings the kernel can run on.
trait Ring: Integer + Signed + Clone + Hash {}
impl<T: Integer + Signed + Clone + Hash> Ring for T {}

fn det<T: Ring>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = v / prev.clone();
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Signed maximal minors of a `k x (k+1)` matrix: a vector orthogonal to
/// every row, zero iff the rows are dependent.
fn orthogonal<T: Ring>(rows: &[&Vec<T>]) -> Vec<T> {
    let width = rows.len() + 1;
    (0..width)
        .map(|skip| {
            let minor: Vec<Vec<T>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != skip)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let d = det(minor);
            if skip % 2 == 1 {
                -d
            } else {
                d
            }
        })
        .collect()
}

fn dot<T: Ring>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn primitive<T: Ring>(mut v: Vec<T>) -> Vec<T> {
    let g = v.iter().fold(T::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = x.clone() / g.clone();
        }
    }
    v
}

/// How admissible directions are oriented.
#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Orientation {
    /// Either sign, whichever puts every row on the non-positive side.
    Free,
    /// The last coordinate must be positive (a point at finite distance).
    LastPositive,
}

fn extreme<T: Ring>(w: &[Vec<T>], orient: Orientation) -> Vec<Vec<T>> {
    let width = w.first().map_or(0, Vec::len);
    let k = width - 1;
    let mut seen: HashSet<Vec<T>> = HashSet::new();
    let mut out = Vec::new();
    if w.len() < k {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let rows: Vec<&Vec<T>> = idx.iter().map(|&i| &w[i]).collect();
        let mut c = orthogonal(&rows);
        if c.iter().any(|x| !x.is_zero()) {
            let flip = match orient {
                Orientation::LastPositive => {
                    if c[k].is_zero() {
                        None
                    } else {
                        Some(c[k].is_negative())
                    }
                }
                Orientation::Free => {
                    // orient by the first row off the hyperplane
                    w.iter()
                        .map(|r| dot(r, &c))
                        .find(|d| !d.is_zero())
                        .map(|d| d.is_positive())
                }
            };
            if let Some(flip) = flip {
                if flip {
                    c = c.into_iter().map(|x| -x).collect();
                }
                if w.iter().all(|r| !dot(r, &c).is_positive()) {
                    let c = primitive(c);
                    if seen.insert(c.clone()) {
                        out.push(c);
                    }
                }
            }
        }
        // next k-subset in lexicographic order
        let m = w.len();
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < m - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Whether the computation provably fits in `i128`: Bareiss intermediates
/// are products of two minors, minors obey Hadamard's bound.
fn fits_i128(w: &[Vec<BigInt>]) -> bool {
    let width = w.first().map_or(0, Vec::len) as f64;
    let bits = w.iter().flatten().map(|x| x.bits()).max().unwrap_or(0) as f64;
    let k = (width - 1.0).max(1.0);
    let minor_bits = k * bits + 0.5 * k * k.log2();
    2.0 * minor_bits + width.log2() + 4.0 < 126.0
}

/// Directions `c` (primitive, deduplicated, in discovery order) with
/// `w_j . c <= 0` for all `j` and equality on `k` independent rows.
pub(crate) fn extreme_directions(w: &[Vec<BigInt>], orient: Orientation) -> Vec<Vec<BigInt>> {
    if fits_i128(w) {
        let small: Vec<Vec<i128>> = w
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_i128().expect("bounded entry"))
                    .collect()
            })
            .collect();
        extreme(&small, orient)
            .into_iter()
            .map(|c| c.into_iter().map(BigInt::from).collect())
            .collect()
    } else {
        extreme(w, orient)
    }
}
