//! Enumeration of smooth Fano polytopes (fan convention) up to `GL(d, Z)`.
//!
//! A smooth Fano `d`-polytope is a simplicial lattice polytope with the
//! origin in its interior whose facets each have a vertex set forming a
//! lattice basis. Every such polytope has a *special* facet `F`: one whose
//! cone contains the sum of all vertices. Putting `F` in standard position
//! (`V(F) = {e_1, ..., e_d}`, facet normal `u = (1, ..., 1)`) gives
//!
//! * `<u, v> <= 0` for every vertex off `F`, and the depths `-<u, v>` sum to
//!   at most `d`;
//! * `v_i >= <u, v> - 1` for every coordinate, using the facets adjacent
//!   to `F`.
//!
//! The search grows the boundary complex facet by facet. Crossing a ridge
//! `R` of a facet `R + {x}` the next vertex is `y = -x + sum a_r r`, so each
//! step branches over the lattice points in that affine hyperplane that stay
//! beneath every facet found so far. A closed complex in which every vertex
//! lies beneath every facet is the full boundary of its hull.

use std::collections::{BTreeSet, HashMap};

/// Largest supported dimension.
pub const MAX_DIM: usize = 5;

pub type Point = [i64; MAX_DIM];

/// A smooth Fano polytope given by the vertices of its fan polytope.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FanPolytope {
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
}

fn dot(d: usize, a: &Point, b: &Point) -> i64 {
    (0..d).map(|i| a[i] * b[i]).sum()
}

/// Exact determinant of a small integer matrix by fraction-free elimination.
pub fn det(rows: &[Point], d: usize) -> i64 {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r[..d].iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..d {
        if m[k][k] == 0 {
            match (k + 1..d).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..d {
            for j in k + 1..d {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    (sign * m[d - 1][d - 1]) as i64
}

/// Normal `u` with `<u, v> = 1` on a unimodular facet.
fn facet_normal(rows: &[Point], d: usize) -> Option<Point> {
    let base = det(rows, d);
    if base.abs() != 1 {
        return None;
    }
    let mut u = [0i64; MAX_DIM];
    for j in 0..d {
        let replaced: Vec<Point> = rows
            .iter()
            .map(|r| {
                let mut r = *r;
                r[j] = 1;
                r
            })
            .collect();
        u[j] = det(&replaced, d) * base;
    }
    Some(u)
}

#[derive(Clone)]
struct Facet {
    verts: Vec<usize>,
}

#[derive(Clone)]
struct State {
    verts: Vec<Point>,
    facets: Vec<Facet>,
    // ridge (sorted vertex indices) -> facets containing it
    ridges: HashMap<Vec<usize>, Vec<usize>>,
    candidates: Vec<Point>,
    budget: i64,
}

struct Search {
    d: usize,
    found: BTreeSet<Vec<Vec<i64>>>,
    nodes: u64,
}

fn height(d: usize, p: &Point) -> i64 {
    p[..d].iter().sum()
}

fn is_primitive(p: &[i64]) -> bool {
    let mut g = 0i64;
    for &x in p {
        g = gcd(g, x.abs());
    }
    g == 1
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Lattice points that can be a vertex off the special facet.
fn initial_candidates(d: usize) -> Vec<Point> {
    let dd = d as i64;
    let lo = -dd - 1;
    let hi = dd * dd;
    let mut out = Vec::new();
    let mut cur = [0i64; MAX_DIM];
    fn rec(i: usize, d: usize, lo: i64, hi: i64, cur: &mut Point, out: &mut Vec<Point>) {
        if i == d {
            let h = height(d, cur);
            let dd = d as i64;
            if !(-dd..=0).contains(&h) {
                return;
            }
            if cur[..d].iter().any(|&x| x < h - 1) {
                return;
            }
            if is_primitive(&cur[..d]) {
                out.push(*cur);
            }
            return;
        }
        for x in lo..=hi {
            cur[i] = x;
            rec(i + 1, d, lo, hi, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d, lo, hi, &mut cur, &mut out);
    out
}

impl Search {
    fn ridges_of(verts: &[usize]) -> Vec<(Vec<usize>, usize)> {
        (0..verts.len())
            .map(|skip| {
                let r: Vec<usize> = verts
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &v)| v)
                    .collect();
                (r, verts[skip])
            })
            .collect()
    }

    /// Adds the facet with the given (sorted) vertex indices if consistent.
    fn add_facet(&self, state: &State, verts: Vec<usize>) -> Option<State> {
        let d = self.d;
        let rows: Vec<Point> = verts.iter().map(|&i| state.verts[i]).collect();
        let normal = facet_normal(&rows, d)?;
        for (i, v) in state.verts.iter().enumerate() {
            if !verts.contains(&i) && dot(d, &normal, v) > 0 {
                return None;
            }
        }
        for (r, _) in Self::ridges_of(&verts) {
            if state.ridges.get(&r).map_or(0, |f| f.len()) >= 2 {
                return None;
            }
        }
        let mut next = state.clone();
        let fi = next.facets.len();
        for (r, _) in Self::ridges_of(&verts) {
            next.ridges.entry(r).or_default().push(fi);
        }
        next.candidates.retain(|c| dot(d, &normal, c) <= 0);
        next.facets.push(Facet { verts });
        Some(next)
    }

    /// All consistent ways to close the given open ridge.
    fn extensions(&self, state: &State, ridge: &[usize], facet: usize) -> Vec<State> {
        let d = self.d;
        let f = &state.facets[facet];
        let x = *f.verts.iter().find(|v| !ridge.contains(v)).unwrap();
        // dual functional: lambda(y) = det(R, y) / det(R, x)
        let mut rows: Vec<Point> = ridge.iter().map(|&i| state.verts[i]).collect();
        rows.push(state.verts[x]);
        let base = det(&rows, d);
        let lambda = |y: &Point| {
            let mut r = rows.clone();
            r[d - 1] = *y;
            det(&r, d) * base
        };
        let mut out = Vec::new();
        for (yi, y) in state.verts.iter().enumerate() {
            if f.verts.contains(&yi) || lambda(y) != -1 {
                continue;
            }
            let mut nv: Vec<usize> = ridge.to_vec();
            nv.push(yi);
            nv.sort_unstable();
            if let Some(s) = self.add_facet(state, nv) {
                out.push(s);
            }
        }
        for y in &state.candidates {
            if lambda(y) != -1 {
                continue;
            }
            let depth = -height(d, y);
            if depth > state.budget {
                continue;
            }
            let mut with_vertex = state.clone();
            with_vertex.verts.push(*y);
            with_vertex.budget -= depth;
            let yi = with_vertex.verts.len() - 1;
            let y = *y;
            with_vertex.candidates.retain(|c| *c != y);
            let mut nv: Vec<usize> = ridge.to_vec();
            nv.push(yi);
            nv.sort_unstable();
            if let Some(s) = self.add_facet(&with_vertex, nv) {
                out.push(s);
            }
        }
        out
    }

    fn run(&mut self, state: State) {
        self.nodes += 1;
        let open: Vec<(&Vec<usize>, usize)> = state
            .ridges
            .iter()
            .filter(|(_, f)| f.len() == 1)
            .map(|(r, f)| (r, f[0]))
            .collect();
        if open.is_empty() {
            self.record(&state);
            return;
        }
        // branch on the most constrained ridge
        let mut best: Option<Vec<State>> = None;
        let mut order: Vec<(&Vec<usize>, usize)> = open;
        order.sort();
        for (r, f) in order {
            let ext = self.extensions(&state, r, f);
            if ext.is_empty() {
                return;
            }
            let better = best.as_ref().is_none_or(|b| ext.len() < b.len());
            if better {
                let single = ext.len() == 1;
                best = Some(ext);
                if single {
                    break;
                }
            }
        }
        for child in best.unwrap() {
            self.run(child);
        }
    }

    fn record(&mut self, state: &State) {
        let d = self.d;
        let mut sum = [0i64; MAX_DIM];
        for v in &state.verts {
            for i in 0..d {
                sum[i] += v[i];
            }
        }
        // special facet condition: the vertex sum lies in the cone over e_1..e_d
        if sum[..d].iter().any(|&s| s < 0) {
            return;
        }
        let verts: Vec<Vec<i64>> = state.verts.iter().map(|v| v[..d].to_vec()).collect();
        self.found.insert(normal_form(d, &verts));
    }
}

/// Canonical representative of the `GL(d, Z)` orbit of a smooth Fano polytope.
///
/// Every facet is a lattice basis; rewriting all vertices in the coordinates
/// of each ordered facet basis and taking the lexicographically least sorted
/// vertex list gives an invariant of the orbit.
pub fn normal_form(d: usize, verts: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let pts: Vec<Point> = verts.iter().map(|v| to_point(v)).collect();
    let mut best: Option<Vec<Vec<i64>>> = None;
    for facet in facets_of(d, &pts) {
        for perm in permutations(d) {
            let basis: Vec<Point> = perm.iter().map(|&k| pts[facet[k]]).collect();
            let coords: Option<Vec<Vec<i64>>> =
                pts.iter().map(|p| solve_unimodular(d, &basis, p)).collect();
            let Some(mut coords) = coords else { continue };
            coords.sort();
            if best.as_ref().is_none_or(|b| coords < *b) {
                best = Some(coords);
            }
        }
    }
    best.expect("polytope has a unimodular facet")
}

fn to_point(v: &[i64]) -> Point {
    let mut p = [0i64; MAX_DIM];
    p[..v.len()].copy_from_slice(v);
    p
}

/// Coordinates of `p` in the lattice basis `basis` (rows), if integral.
fn solve_unimodular(d: usize, basis: &[Point], p: &Point) -> Option<Vec<i64>> {
    let base = det(basis, d);
    if base.abs() != 1 {
        return None;
    }
    // p = sum c_k basis_k; Cramer on the transposed system
    let cols: Vec<Point> = basis.to_vec();
    let mut out = Vec::with_capacity(d);
    for k in 0..d {
        let mut m = cols.clone();
        m[k] = *p;
        out.push(det(&m, d) * base);
    }
    Some(out)
}

/// Facets (as vertex index sets) of a simplicial polytope with all facet
/// normals at height 1.
fn facets_of(d: usize, pts: &[Point]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for combo in combinations(pts.len(), d) {
        let rows: Vec<Point> = combo.iter().map(|&i| pts[i]).collect();
        if let Some(u) = facet_normal(&rows, d) {
            if pts
                .iter()
                .enumerate()
                .all(|(i, p)| combo.contains(&i) || dot(d, &u, p) <= 0)
            {
                out.push(combo);
            }
        }
    }
    out
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
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..d).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out
}

/// Enumerates all smooth Fano polytopes of dimension `d`, returned as sorted
/// normal forms.
pub fn enumerate(d: usize) -> Vec<FanPolytope> {
    assert!((1..=MAX_DIM).contains(&d), "unsupported dimension {d}");
    let mut search = Search {
        d,
        found: BTreeSet::new(),
        nodes: 0,
    };
    let mut verts = Vec::new();
    for i in 0..d {
        let mut e = [0i64; MAX_DIM];
        e[i] = 1;
        verts.push(e);
    }
    let start = State {
        verts,
        facets: Vec::new(),
        ridges: HashMap::new(),
        candidates: initial_candidates(d),
        budget: d as i64,
    };
    let start = search
        .add_facet(&start, (0..d).collect())
        .expect("standard simplex is a valid facet");
    search.run(start);
    let mut out: Vec<FanPolytope> = search
        .found
        .into_iter()
        .map(|vertices| FanPolytope { dim: d, vertices })
        .collect();
    out.sort_by(|a, b| (a.vertices.len(), &a.vertices).cmp(&(b.vertices.len(), &b.vertices)));
    out
}
