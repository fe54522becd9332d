//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("not-prime: {0} is not an odd prime")]
    NotPrime(u64),
    #[error("not-irreducible: modulus is not irreducible over F_{ell}")]
    NotIrreducible { ell: u64 },
    #[error("field-mismatch: operands belong to different field contexts")]
    FieldMismatch,
    #[error("dimension-mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not-invertible: matrix is singular")]
    NotInvertible,
    #[error("splitting-too-large: splitting field degree {needed} exceeds cap {cap}")]
    SplittingTooLarge { needed: usize, cap: usize },
    #[error("zero-eigenvalue: progression test requires nonzero values")]
    ZeroEigenvalue,
    #[error("isotropic-vector: reflection requires Q(v) != 0")]
    IsotropicVector,
    #[error("not-in-SO: spinor norm requires an isometry of determinant +1")]
    NotInSO,
    #[error("inconclusive-no-regular-element: no word with distinct eigenvalues found in {trials} trials")]
    NoRegularElement { trials: usize },
    #[error("not-nilpotent: derivation is not nilpotent on the trace-zero subspace")]
    NotNilpotent,
    #[error("char-too-small: exponentials need ell > 7, got {0}")]
    CharTooSmall(u64),
    #[error("no-nilpotent-found: nilpotent derivation search exceeded {0} attempts")]
    NoNilpotentFound(usize),
    #[error("p-out-of-range: p = {0} outside the supported window (odd primes 5 <= p <= 293)")]
    POutOfRange(u64),
    #[error("overflow: closure enumeration exceeded cap {0}")]
    ClosureOverflow(u64),
    #[error("malformed-input: {0}")]
    MalformedInput(String),
    #[error("not-regular: weight tuple has duplicate entries")]
    NotRegular,
    #[error("not-symmetric: weight tuple is not symmetric self-dual")]
    NotSymmetric,
    #[error("not-in-scope: dimension {0} is not an odd prime")]
    NotInScope(usize),
    #[error("io-error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
