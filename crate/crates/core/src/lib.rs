//! Exact relative Ding stability of toric Fano manifolds.
//!
//! Everything is computed over the rationals: moment integrals by
//! triangulation, the extremal affine function from its Gram system, the
//! Mabuchi constant as its maximum over the moment polytope, and the relative
//! Ding invariant and reduced J-norm of rational piecewise-linear convex
//! functions.

pub mod catalog;
pub mod error;
pub mod exact;
#[cfg(test)]
mod fixtures;
pub mod moments;
pub mod polytope;
pub mod stability;

pub use error::{Error, Result};
