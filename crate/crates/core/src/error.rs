use thiserror::Error;

/// Errors raised by the exact arithmetic substrate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division: remainder is nonzero")]
    InexactDivision,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("denominator does not vanish at the evaluation point")]
    EvaluationPole,
}

/// Errors raised by the combinatorial and representation-theoretic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid Cartan type {family}{rank}: {reason}")]
    InvalidCartanType {
        family: char,
        rank: usize,
        reason: &'static str,
    },
    #[error("invalid vertex {vertex} for rank {rank}")]
    InvalidVertex { vertex: usize, rank: usize },
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("indices out of range: {0}")]
    IndexOutOfRange(String),
    #[error("vertex ({vertex}, {p}) violates the parity condition p = xi_i mod 2")]
    Parity { vertex: usize, p: i64 },
    #[error("root {0} is simple and has no minimal pair")]
    SimpleRoot(usize),
    #[error(
        "denominator formulas are only available for types A and D; \
         the simple-pole property for E-types is conjectural"
    )]
    UnsupportedType,
    #[error("module relation violated: {0}")]
    RelationViolated(String),
    #[error("intertwiner space has dimension {dimension} (expected 1)")]
    IntertwinerDimension { dimension: String },
    #[error("denominator does not factor over powers of -q: remainder {0}")]
    Unfactorable(String),
    #[error("size guard exceeded: {0}")]
    TooLarge(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
