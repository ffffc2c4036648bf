//! Exact two-phase simplex for `minimize c.z subject to A z <= b`, `z` free.
//!
//! Free variables are split as `z = z+ - z-`, each row gets a slack, and rows
//! with a negative bound are negated and given an artificial variable.
//! Pivoting follows Bland's rule throughout, so degenerate problems cannot
//! cycle.

use super::{RatVector, Rational};
use crate::error::{Error, Result};

/// `minimize objective . z` subject to `row . z <= bound` for every constraint.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub objective: RatVector,
    pub constraints: Vec<(RatVector, Rational)>,
    pub nvars: usize,
}

impl LpProblem {
    pub fn new(objective: RatVector) -> Self {
        let nvars = objective.dim();
        LpProblem {
            objective,
            constraints: Vec::new(),
            nvars,
        }
    }

    /// Adds `row . z <= bound`.
    pub fn le(mut self, row: RatVector, bound: Rational) -> Self {
        self.constraints.push((row, bound));
        self
    }

    /// Adds `row . z >= bound`.
    pub fn ge(self, row: RatVector, bound: Rational) -> Self {
        self.le(row.neg(), -bound)
    }

    fn validate(&self) -> Result<()> {
        if self.objective.dim() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: self.objective.dim(),
            });
        }
        for (row, _) in &self.constraints {
            if row.dim() != self.nvars {
                return Err(Error::DimensionMismatch {
                    expected: self.nvars,
                    got: row.dim(),
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, argmin: RatVector },
    Unbounded,
    Infeasible,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    // reduced costs; last entry is minus the objective value
    obj: Vec<Rational>,
    basis: Vec<usize>,
    width: usize,
}

enum Status {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.width]
    }

    fn set_cost(&mut self, cost: &[Rational]) {
        let mut obj: Vec<Rational> = cost.to_vec();
        obj.push(Rational::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            for (o, t) in obj.iter_mut().zip(&self.rows[i]) {
                *o -= &cost[b] * t;
            }
        }
        self.obj = obj;
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &p;
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<Rational>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.basis[r] = c;
    }

    /// Bland's rule: lowest-index improving column, lowest-index leaving
    /// variable among ratio-test ties.
    fn run(&mut self, allowed: usize) -> Status {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
                return Status::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return Status::Unbounded,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

/// Solves the problem exactly; `Unbounded` and `Infeasible` are outcomes, not
/// errors.
pub fn lp_minimize(p: &LpProblem) -> Result<LpOutcome> {
    p.validate()?;
    let n = p.nvars;
    let m = p.constraints.len();
    // columns: z+ [0, n), z- [n, 2n), slack [2n, 2n+m), artificials after
    let needs_art: Vec<usize> = (0..m)
        .filter(|&i| p.constraints[i].1.is_negative())
        .collect();
    let art_start = 2 * n + m;
    let width = art_start + needs_art.len();
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for (i, (row, bound)) in p.constraints.iter().enumerate() {
        let mut t = vec![Rational::zero(); width + 1];
        let sign = if bound.is_negative() {
            -Rational::one()
        } else {
            Rational::one()
        };
        for j in 0..n {
            t[j] = &row[j] * &sign;
            t[n + j] = -&t[j];
        }
        t[2 * n + i] = sign.clone();
        t[width] = bound * &sign;
        match needs_art.iter().position(|&k| k == i) {
            Some(k) => {
                t[art_start + k] = Rational::one();
                basis.push(art_start + k);
            }
            None => basis.push(2 * n + i),
        }
        rows.push(t);
    }
    let mut tab = Tableau {
        rows,
        obj: Vec::new(),
        basis,
        width,
    };

    if !needs_art.is_empty() {
        let mut cost = vec![Rational::zero(); width];
        for c in cost.iter_mut().skip(art_start) {
            *c = Rational::one();
        }
        tab.set_cost(&cost);
        tab.run(width);
        if !tab.obj[width].is_zero() {
            return Ok(LpOutcome::Infeasible);
        }
        // drive zero-level artificials out of the basis; drop redundant rows
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= art_start {
                match (0..art_start).find(|&j| !tab.rows[i][j].is_zero()) {
                    Some(j) => {
                        tab.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        tab.rows.remove(i);
                        tab.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }

    let mut cost = vec![Rational::zero(); width];
    for j in 0..n {
        cost[j] = p.objective[j].clone();
        cost[n + j] = -&p.objective[j];
    }
    tab.set_cost(&cost);
    if let Status::Unbounded = tab.run(art_start) {
        return Ok(LpOutcome::Unbounded);
    }

    let mut z = vec![Rational::zero(); n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            z[b] += tab.rhs(i);
        } else if b < 2 * n {
            z[b - n] -= tab.rhs(i);
        }
    }
    let argmin = RatVector::new(z);
    let value = p.objective.dot(&argmin);
    debug_assert!(p
        .constraints
        .iter()
        .all(|(row, bound)| row.dot(&argmin) <= *bound));
    Ok(LpOutcome::Optimal { value, argmin })
}
