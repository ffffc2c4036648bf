//! Exact scalars, dense linear algebra and linear programming.

mod linalg;
mod lp;
mod rational;

pub use linalg::{determinant, rank, solve_linear, RatMatrix, RatVector};
pub use lp::{lp_minimize, LpOutcome, LpProblem};
pub use rational::{rat, ParseRationalError, Rational};
