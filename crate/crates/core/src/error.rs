use crate::exact::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("points do not span a full-dimensional polytope")]
    DegeneratePolytope,

    #[error("origin is not in the interior of the polytope")]
    OriginNotInterior,

    #[error("matrix is not unimodular")]
    NotUnimodular,

    #[error("polytope is not a Fano polytope: {0}")]
    NotFano(&'static str),

    #[error("polytope is not reflexive (dual has a non-integral vertex)")]
    NotReflexive,

    #[error("Mabuchi constant {0} does not exceed 1")]
    NotUnstable(Rational),

    #[error("Mabuchi constant {0} is not below 1")]
    NotUniformlyStable(Rational),

    #[error("function is not normalized: {0}")]
    NotNormalized(&'static str),

    #[error("height {height} must exceed the maximum {max} of the function")]
    RTooSmall {
        height: Box<Rational>,
        max: Box<Rational>,
    },

    #[error("piecewise-linear function needs at least one piece")]
    EmptyFunction,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("no dataset for dimension {0}")]
    MissingDataset(usize),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
