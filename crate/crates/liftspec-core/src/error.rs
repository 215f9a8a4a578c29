use thiserror::Error;

/// Errors shared across the whole library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("not a subgroup of the given group")]
    NotASubgroup,
    #[error("element {0} is not in the group")]
    NotInGroup(String),
    #[error("group is not cyclic")]
    NotCyclic,
    #[error("group is not Sym(3) acting on three points")]
    NotSym3,
    #[error("voltage graph validation failed:\n{}", .0.join("\n"))]
    Validation(Vec<String>),
    #[error("all-ones base matrix unsupported: {0}")]
    UnsupportedJ(String),
    #[error("c1 = 0 is not allowed without the override flag")]
    ZeroC1,
    #[error("group mismatch between operands")]
    GroupMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("representation `{name}` invalid: {msg}")]
    IrrepInvalid { name: String, msg: String },
    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NonHermitian { deviation: f64 },
    #[error("eigenvector count mismatch: expected {expected}, got {actual}")]
    CountMismatch { expected: usize, actual: usize },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("{0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
