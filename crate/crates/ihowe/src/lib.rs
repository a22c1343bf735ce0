//! Exact verification engine for the type AIII iHowe and iSchur dualities.
//!
//! Everything is computed over Q(q) with arbitrary-precision rationals.
//! Module actions are evaluated on labeled bases and compared exactly.

pub mod actions;
pub mod bases;
pub mod braid;
pub mod cli;
pub mod freemod;
pub mod kmatrix;
pub mod qscalar;
pub mod uqalg;

pub use qscalar::{RatScalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("operands act on different bases: {0}")]
    BasisMismatch(String),
    #[error("operator is not diagonal on {0}")]
    NotDiagonal(String),
    #[error("enumeration would produce {0} labels, above the cap {1}")]
    SizeLimit(u128, u128),
    #[error("tuple component out of range: {0}")]
    ComponentOutOfRange(String),
    #[error("label is not in the rho-bar subset: {0}")]
    NotInRhoSubset(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
    #[error("parity is only defined for even rank, got {0}")]
    OddRank(u32),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("series still nonzero after {0} terms")]
    TruncationCapExceeded(usize),
    #[error("vector is not weight homogeneous")]
    NotWeightHomogeneous,
    #[error("solution space at degree {degree} has dimension {nullity}")]
    NonUniqueSolution { degree: usize, nullity: usize },
    #[error("linear system is inconsistent at degree {0}")]
    Inconsistent(usize),
    #[error("weight not reachable from a normalized coset: {0}")]
    UnreachableCoset(String),
    #[error("unknown check: {0}")]
    UnknownCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
