use thiserror::Error;

use crate::root_system::TypeLabel;

/// Errors surfaced by construction and verification operations.
///
/// Verification *failures* (a claim that checks out false) are not errors;
/// they are carried in reports. Errors are precondition and usage problems.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported root system type `{0}` (expected one of A, B, C, D)")]
    UnsupportedType(String),

    #[error("rank {rank} out of range for type {label} (allowed {min}..={max})")]
    RankOutOfRange {
        label: TypeLabel,
        rank: usize,
        min: usize,
        max: usize,
    },

    #[error("rank {rank} exceeds the enumeration cap {cap}")]
    EnumerationCap { rank: usize, cap: usize },

    #[error("{label}_{rank} is degenerate for this operation (diagram bound: {label} requires rank >= {min})")]
    DegenerateRank {
        label: TypeLabel,
        rank: usize,
        min: usize,
    },

    #[error("invalid rank pair ({k}, {n}) for type {label}: propagation needs k >= n within diagram bounds")]
    InvalidRankPair {
        label: TypeLabel,
        k: usize,
        n: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("ambient size mismatch: {a} vs {b}")]
    SizeMismatch { a: usize, b: usize },

    #[error("element does not preserve the embedded subspace")]
    SubspaceNotPreserved,

    #[error("subspace index {n} out of range for ambient size {size}")]
    SubspaceOutOfRange { n: usize, size: usize },

    #[error("polynomial needs at least {min} variables, got {got}")]
    TooFewVariables { min: usize, got: usize },

    #[error("invalid signed permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("family {0} is out of scope for this theorem (split and complex cases only)")]
    OutOfScopeFamily(String),

    #[error("propagation check fails: {0}")]
    NotAPropagation(String),

    #[error("transfer produced a non-invariant symbol: {0}")]
    InvarianceViolated(String),

    #[error("remark precondition violated: needs k - i >= 2, got k = {k}, i = {i}")]
    RemarkPrecondition { k: usize, i: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
