//! Relative Ding stability of toric Fano manifolds in terms of the moment
//! polytope `P`.
//!
//! The extremal affine function `θ` is the unique affine function with
//! `∫ θ = 0` and `∫ x_i θ = ∫ x_i`. Its maximum `M_P` over `P` decides
//! stability: uniformly relatively Ding polystable iff `M_P < 1`, relatively
//! Ding polystable iff `M_P <= 1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{lp_minimize, solve_linear, LpOutcome, LpProblem, RatVector, Rational};
use crate::moments::{moment_data, pl_subdivision, MomentData, Subdivision};
use crate::polytope::VPolytope;

/// `x ↦ a . x + c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineFunction {
    pub a: RatVector,
    pub c: Rational,
}

impl AffineFunction {
    pub fn new(a: RatVector, c: Rational) -> Self {
        AffineFunction { a, c }
    }

    pub fn zero(n: usize) -> Self {
        AffineFunction::new(RatVector::zeros(n), Rational::zero())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        AffineFunction::new(RatVector::zeros(n), c)
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn eval(&self, x: &RatVector) -> Rational {
        self.a.dot(x) + &self.c
    }

    pub fn add(&self, other: &AffineFunction) -> AffineFunction {
        AffineFunction::new(self.a.add(&other.a), &self.c + &other.c)
    }

    pub fn sub(&self, other: &AffineFunction) -> AffineFunction {
        AffineFunction::new(self.a.sub(&other.a), &self.c - &other.c)
    }

    pub fn scale(&self, s: &Rational) -> AffineFunction {
        AffineFunction::new(self.a.scale(s), &self.c * s)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.c.is_zero()
    }
}

impl fmt::Display for AffineFunction {
    /// Coefficients then the constant, comma-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in self.a.iter() {
            write!(f, "{x},")?;
        }
        write!(f, "{}", self.c)
    }
}

/// `f(x) = max_k l_k(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLConvexFunction {
    pieces: Vec<AffineFunction>,
}

impl PLConvexFunction {
    pub fn new(pieces: Vec<AffineFunction>) -> Result<Self> {
        let first = pieces.first().ok_or(Error::EmptyFunction)?;
        let n = first.dim();
        if let Some(bad) = pieces.iter().find(|l| l.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.dim(),
            });
        }
        Ok(PLConvexFunction { pieces })
    }

    pub fn affine(l: AffineFunction) -> Self {
        PLConvexFunction { pieces: vec![l] }
    }

    pub fn pieces(&self) -> &[AffineFunction] {
        &self.pieces
    }

    pub fn dim(&self) -> usize {
        self.pieces[0].dim()
    }

    pub fn eval(&self, x: &RatVector) -> Rational {
        self.pieces
            .iter()
            .map(|l| l.eval(x))
            .max()
            .expect("at least one piece")
    }

    /// `f + l`, piece by piece.
    pub fn add_affine(&self, l: &AffineFunction) -> PLConvexFunction {
        PLConvexFunction {
            pieces: self.pieces.iter().map(|p| p.add(l)).collect(),
        }
    }
}

impl fmt::Display for PLConvexFunction {
    /// The piece-spec syntax `a1,...,an,c;...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.pieces.iter().enumerate() {
            if k > 0 {
                write!(f, ";")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    UniformlyPolystable,
    PolystableBoundary,
    Unstable,
}

impl Verdict {
    pub fn from_mabuchi(m: &Rational) -> Verdict {
        match m.cmp(&Rational::one()) {
            std::cmp::Ordering::Less => Verdict::UniformlyPolystable,
            std::cmp::Ordering::Equal => Verdict::PolystableBoundary,
            std::cmp::Ordering::Greater => Verdict::Unstable,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::UniformlyPolystable => "uniformly_polystable",
            Verdict::PolystableBoundary => "boundary",
            Verdict::Unstable => "unstable",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Verdict {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "uniformly_polystable" => Ok(Verdict::UniformlyPolystable),
            "boundary" => Ok(Verdict::PolystableBoundary),
            "unstable" => Ok(Verdict::Unstable),
            _ => Err(format!("unknown verdict `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub theta: AffineFunction,
    pub mabuchi: Rational,
    pub verdict: Verdict,
    pub witness: RatVector,
    /// `max{0, (1 - θ)/vol}`, present iff unstable.
    pub destabilizer: Option<PLConvexFunction>,
}

/// A polytope together with its moments and extremal affine function, so
/// repeated functional evaluations share the expensive parts.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub polytope: VPolytope,
    pub moments: MomentData,
    pub theta: AffineFunction,
}

impl Analysis {
    pub fn new(polytope: VPolytope) -> Result<Self> {
        let moments = moment_data(&polytope);
        let theta = theta_from_moments(&moments)?;
        Ok(Analysis {
            polytope,
            moments,
            theta,
        })
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    fn check_dim(&self, f: &PLConvexFunction) -> Result<()> {
        if f.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: f.dim(),
            });
        }
        Ok(())
    }

    /// `max_P θ` with the lexicographically largest vertex attaining it.
    pub fn mabuchi(&self) -> (Rational, RatVector) {
        let mut best: Option<(Rational, &RatVector)> = None;
        for v in self.polytope.vertices() {
            let t = self.theta.eval(v);
            let better = match &best {
                None => true,
                Some((m, w)) => t > *m || (t == *m && v > *w),
            };
            if better {
                best = Some((t, v));
            }
        }
        let (m, w) = best.expect("polytope has vertices");
        (m, w.clone())
    }

    /// Cells of `f` over the polytope.
    pub fn subdivide(&self, f: &PLConvexFunction) -> Result<Subdivision> {
        self.check_dim(f)?;
        Ok(Subdivision::new(&self.polytope, &self.moments, f))
    }

    fn ding_on(&self, sub: &Subdivision, f: &PLConvexFunction) -> Rational {
        let f0 = f.eval(&RatVector::zeros(self.dim()));
        -f0 + (sub.integrate(f) - sub.integrate_times(f, &self.theta)) / &self.moments.vol
    }

    /// `I_θ(f) = -f(0) + (1/vol) ∫ f (1 - θ)`.
    pub fn ding(&self, f: &PLConvexFunction) -> Result<Rational> {
        let sub = self.subdivide(f)?;
        Ok(self.ding_on(&sub, f))
    }

    /// `inf_l (1/vol) ∫ (f + l) - min_P (f + l)` over affine `l`, as a linear
    /// program in the linear part of `l` and the negated minimum.
    pub fn jnorm(&self, f: &PLConvexFunction) -> Result<Rational> {
        let sub = self.subdivide(f)?;
        let n = self.dim();
        let vol = &self.moments.vol;
        let mut objective: Vec<Rational> = self.moments.m1.iter().map(|x| x / vol).collect();
        objective.push(Rational::one());
        let mut lp = LpProblem::new(RatVector::new(objective));
        for v in &sub.vertices {
            // f(v) + a . v + t >= 0
            let row = v.neg().extended(-Rational::one());
            lp = lp.le(row, f.eval(v));
        }
        match lp_minimize(&lp)? {
            LpOutcome::Optimal { value, .. } => Ok(sub.integrate(f) / vol + value),
            other => Err(Error::Invariant(format!(
                "J-norm program in dimension {n} ended {other:?}"
            ))),
        }
    }

    /// `∫_P f`.
    pub fn integrate(&self, f: &PLConvexFunction) -> Result<Rational> {
        Ok(self.subdivide(f)?.integrate(f))
    }

    pub fn destabilizer(&self) -> Result<PLConvexFunction> {
        let (m, _) = self.mabuchi();
        if m <= Rational::one() {
            return Err(Error::NotUnstable(m));
        }
        let n = self.dim();
        let one_minus = AffineFunction::constant(n, Rational::one()).sub(&self.theta);
        let l = one_minus.scale(&self.moments.vol.recip());
        PLConvexFunction::new(vec![AffineFunction::zero(n), l])
    }

    pub fn report(&self) -> Result<StabilityReport> {
        let (mabuchi, witness) = self.mabuchi();
        let verdict = Verdict::from_mabuchi(&mabuchi);
        let destabilizer = if verdict == Verdict::Unstable {
            let f = self.destabilizer()?;
            let i = self.ding(&f)?;
            if !i.is_negative() {
                return Err(Error::Invariant(format!(
                    "destabilizer has relative Ding invariant {i}"
                )));
            }
            Some(f)
        } else {
            None
        };
        Ok(StabilityReport {
            theta: self.theta.clone(),
            mabuchi,
            verdict,
            witness,
            destabilizer,
        })
    }

    /// Checks `I_θ(f) >= ((1 - M_P)/vol) ∫ f` for a normalized `f`.
    pub fn uniform_bound(&self, f: &PLConvexFunction) -> Result<bool> {
        self.check_dim(f)?;
        let (m, _) = self.mabuchi();
        if m >= Rational::one() {
            return Err(Error::NotUniformlyStable(m));
        }
        let sub = self.subdivide(f)?;
        check_normalized(&sub, f)?;
        let lhs = self.ding_on(&sub, f);
        let rhs = (Rational::one() - m) / &self.moments.vol * sub.integrate(f);
        Ok(lhs >= rhs)
    }
}

/// Solves `[[m2, m1], [m1^T, vol]] (a, c) = (m1, 0)` and checks both defining
/// conditions exactly.
pub fn theta_from_moments(m: &MomentData) -> Result<AffineFunction> {
    let n = m.dim();
    let rhs = m.m1.extended(Rational::zero());
    let sol = solve_linear(&m.gram(), &rhs)?.into_entries();
    let theta = AffineFunction::new(RatVector::new(sol[..n].to_vec()), sol[n].clone());
    if !m.integrate_affine(&theta).is_zero() {
        return Err(Error::Invariant("integral of θ is not zero".into()));
    }
    for i in 0..n {
        let xi = AffineFunction::new(RatVector::unit(n, i), Rational::zero());
        if m.integrate_product(&xi, &theta) != m.m1[i] {
            return Err(Error::Invariant(format!(
                "moment condition {i} fails for θ"
            )));
        }
    }
    Ok(theta)
}

pub fn extremal_affine(p: &VPolytope) -> Result<AffineFunction> {
    theta_from_moments(&moment_data(p))
}

/// `M_P = max_P θ` and a vertex attaining it.
pub fn mabuchi_constant(p: &VPolytope) -> Result<(Rational, RatVector)> {
    Ok(Analysis::new(p.clone())?.mabuchi())
}

/// Checks the Fano conditions, relaxing Delzant when `orbifold` is set.
pub fn check_fano(p: &VPolytope, orbifold: bool) -> Result<()> {
    if !p.is_integral() {
        return Err(Error::NotFano("vertices are not integral"));
    }
    if !p.contains_origin_interior() {
        return Err(Error::NotFano("origin is not an interior point"));
    }
    if !p.is_reflexive()? {
        return Err(Error::NotFano("polytope is not reflexive"));
    }
    if !orbifold && !p.is_delzant() {
        return Err(Error::NotFano("polytope is not Delzant"));
    }
    Ok(())
}

pub fn classify(p: &VPolytope, orbifold: bool) -> Result<StabilityReport> {
    check_fano(p, orbifold)?;
    Analysis::new(p.clone())?.report()
}

pub fn relative_ding_invariant(p: &VPolytope, f: &PLConvexFunction) -> Result<Rational> {
    Analysis::new(p.clone())?.ding(f)
}

pub fn reduced_j_norm(p: &VPolytope, f: &PLConvexFunction) -> Result<Rational> {
    Analysis::new(p.clone())?.jnorm(f)
}

pub fn build_destabilizer(p: &VPolytope) -> Result<PLConvexFunction> {
    Analysis::new(p.clone())?.destabilizer()
}

pub fn uniform_bound_check(p: &VPolytope, f: &PLConvexFunction) -> Result<bool> {
    Analysis::new(p.clone())?.uniform_bound(f)
}

/// Vertices of all subdivision cells of `f`, deduplicated in discovery order.
/// A convex piecewise-affine function attains its minimum over `P` at one of
/// them.
pub fn subdivision_vertices(p: &VPolytope, f: &PLConvexFunction) -> Vec<RatVector> {
    let mut out: Vec<RatVector> = Vec::new();
    for (cell, _) in pl_subdivision(p, f) {
        for v in cell.vertices() {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
    }
    out
}

fn check_normalized(sub: &Subdivision, f: &PLConvexFunction) -> Result<()> {
    if !f.eval(&RatVector::zeros(f.dim())).is_zero() {
        return Err(Error::NotNormalized("value at the origin is not 0"));
    }
    if !sub.minimum(f).is_zero() {
        return Err(Error::NotNormalized("minimum over the polytope is not 0"));
    }
    Ok(())
}

/// `f - l0` where `l0` is the lowest-index piece active at the origin.
pub fn normalize(p: &VPolytope, f: &PLConvexFunction) -> Result<PLConvexFunction> {
    let zero = RatVector::zeros(f.dim());
    let top = f.eval(&zero);
    let l0 = f
        .pieces()
        .iter()
        .find(|l| l.eval(&zero) == top)
        .expect("some piece is active")
        .clone();
    let g = PLConvexFunction::new(f.pieces().iter().map(|l| l.sub(&l0)).collect())?;
    let min = subdivision_vertices(p, &g).iter().map(|v| g.eval(v)).min();
    if !g.eval(&zero).is_zero() || min.is_some_and(|m| !m.is_zero()) {
        return Err(Error::Invariant(
            "normalized function is not minimal at the origin".into(),
        ));
    }
    Ok(g)
}

/// `{ (x, y) : x in P, 0 <= y <= R - f(x) }`, with `R = max_P f + 1` by
/// default.
pub fn test_config_polytope(
    p: &VPolytope,
    f: &PLConvexFunction,
    r: Option<Rational>,
) -> Result<VPolytope> {
    if f.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: f.dim(),
        });
    }
    let max = p
        .vertices()
        .iter()
        .map(|v| f.eval(v))
        .max()
        .expect("polytope has vertices");
    let r = r.unwrap_or_else(|| &max + Rational::one());
    if r <= max {
        return Err(Error::RTooSmall {
            height: r.into(),
            max: max.into(),
        });
    }
    let mut points: Vec<RatVector> = p
        .vertices()
        .iter()
        .map(|v| v.extended(Rational::zero()))
        .collect();
    for w in subdivision_vertices(p, f) {
        let h = &r - f.eval(&w);
        points.push(w.extended(h));
    }
    VPolytope::from_vertices(points)
}
