//! Crate-wide error type.

use thiserror::Error;

/// Errors returned by constructors and operations in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The number of degrees of freedom `n` must be at least 1.
    #[error("number of degrees of freedom must be at least 1")]
    ZeroModes,

    /// A vector or matrix does not have the dimension required by the call.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// Darboux vectors and matrices must have even dimension 2n.
    #[error("dimension {len} is odd; Darboux objects have dimension 2n")]
    OddDimension { len: usize },

    /// A matrix failed the orthogonality check `OᵀO = I`.
    #[error("matrix is not orthogonal: defect {defect:.3e} exceeds tolerance {tol:.3e}")]
    NotOrthogonal { defect: f64, tol: f64 },

    /// A pair of real blocks failed the unitarity check `(A+iB)(A+iB)† = I`.
    #[error("blocks are not unitary: defect {defect:.3e} exceeds tolerance {tol:.3e}")]
    NotUnitary { defect: f64, tol: f64 },

    /// A matrix failed the complex-structure checks `J² = -I`, `JᵀJ = I`.
    #[error("matrix is not a complex structure: defect {defect:.3e} exceeds tolerance {tol:.3e}")]
    NotComplexStructure { defect: f64, tol: f64 },

    /// A matrix failed the skew-symmetry check `Pᵀ = -P`.
    #[error("matrix is not skew-symmetric: defect {defect:.3e} exceeds tolerance {tol:.3e}")]
    NotSkewSymmetric { defect: f64, tol: f64 },

    /// Mode-mixing blocks failed the orthogonality identities they inherit
    /// from the underlying rotation.
    #[error("mode-mixing blocks violate the orthogonality identities: defect {defect:.3e} exceeds tolerance {tol:.3e}")]
    NotOrthogonalMixing { defect: f64, tol: f64 },

    /// The tangent-space solver refuses `n` above its cost cap.
    #[error("n = {n} exceeds the moduli solver cap {cap}")]
    ModuliCapExceeded { n: usize, cap: usize },

    /// The requested truncated Fock space exceeds the dimension cap.
    #[error("Fock space dimension {dim} exceeds the cap {cap}")]
    FockDimensionCap { dim: usize, cap: usize },

    /// Truncated Fock spaces need a per-mode occupation cutoff of at least 1.
    #[error("Fock cutoff must be at least 1")]
    ZeroCutoff,

    /// No state annihilated by the observer's modes exists at this truncation.
    #[error("no vacuum at this truncation: residual {residual:.3e} exceeds threshold {threshold:.3e}")]
    NoVacuum { residual: f64, threshold: f64 },

    /// An operation received an empty sample list.
    #[error("input sample list is empty")]
    EmptyInput,

    /// Crossing detection needs at least two samples.
    #[error("path must contain at least two samples, got {len}")]
    PathTooShort { len: usize },

    /// Tolerances must be nonnegative.
    #[error("tolerance must be nonnegative, got {tol}")]
    NegativeTolerance { tol: f64 },

    /// The numerical rank of a skew-symmetric matrix came out odd, which
    /// indicates a singular value sitting exactly on the threshold.
    #[error("numerical rank {rank} of a skew-symmetric matrix is odd; adjust the rank threshold")]
    OddSkewRank { rank: usize },

    /// A path file could not be parsed. Line numbers are 1-based.
    #[error("line {line}: {message}")]
    PathParse { line: usize, message: String },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
