//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by construction, algebra, and verification routines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An operand count, qubit count, or index was outside its valid range.
    #[error("invalid size: {0}")]
    InvalidSize(String),

    /// Two operands live on different qubit counts or vector dimensions.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A dense object would exceed the dense-backend capacity (n ≤ {cap}).
    #[error("capacity exceeded: n = {n} is beyond the dense cap of {cap} qubits")]
    CapacityExceeded {
        /// Requested qubit count.
        n: usize,
        /// Largest supported qubit count for dense objects.
        cap: usize,
    },

    /// An exhaustive scan was requested beyond the enumeration cap.
    #[error("brute force over 2^{bits} assignments exceeds the 2^{cap} cap; use the reduced scan")]
    BruteForceTooLarge {
        /// Number of binary variables that would be enumerated.
        bits: usize,
        /// Maximum supported exponent.
        cap: usize,
    },

    /// Text or JSON input did not match the documented schema.
    #[error("schema violation: {0}")]
    SchemaViolation(String),

    /// A graph definition was malformed (range, self-loop, duplicate edge).
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// An operator that must be Hermitian was not.
    #[error("non-Hermitian operator: {0}")]
    NonHermitian(String),

    /// Stabilizer generators failed a group requirement.
    #[error("invalid stabilizer generators: {0}")]
    InvalidGenerators(String),

    /// A realization failed a structural requirement at construction.
    #[error("invalid realization: {0}")]
    InvalidRealization(String),

    /// An operation required the other storage backend.
    #[error("backend mismatch: {0}")]
    BackendMismatch(String),

    /// A correlator came out with a non-negligible imaginary part.
    #[error("correlator is not real: imaginary part {imag:e} exceeds {tol:e}")]
    NonRealCorrelator {
        /// Measured imaginary component.
        imag: f64,
        /// Tolerance that was exceeded.
        tol: f64,
    },

    /// A noise-model description failed validation.
    #[error("invalid block description: {0}")]
    InvalidBlockSpec(String),

    /// Reported statistics failed validation against the derived terms.
    #[error("invalid statistics: {0}")]
    InvalidStatistics(String),

    /// Integer arithmetic overflowed while computing an exact bound.
    #[error("integer overflow while computing {0}")]
    Overflow(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
