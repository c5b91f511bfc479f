//! Crate-wide error type.
//!
//! Every fallible library routine returns [`Error`]; panics are reserved for
//! internal invariant violations (mixed-field arithmetic and the like).

use thiserror::Error;

/// Errors surfaced by the library and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    /// Base characteristic must be a prime p >= 5 (chars 2 and 3 break the
    /// eigenvalue case analysis and the Gram-matrix halving).
    #[error("characteristic {0} is not supported; need a prime p >= 5")]
    SmallCharacteristic(u64),

    /// The requested base is not prime.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// Primes are capped so that all intermediate products stay inside u64.
    #[error("prime {0} exceeds the supported bound 2^21")]
    PrimeTooLarge(u64),

    /// Extension degree outside 1..=3.
    #[error("extension degree {0} is not supported; need 1 <= k <= 3")]
    BadExtensionDegree(u8),

    /// gcd(0, 0) is undefined.
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZero,

    /// The zero matrix (or a scalar multiple of the identity) does not define
    /// a section with a zero scheme.
    #[error("matrix is a scalar multiple of the identity; it defines no twisted vector field")]
    ScalarSection,

    /// An ideal operation received no nonzero generators.
    #[error("no nonzero generators supplied")]
    EmptyGenerators,

    /// Buchberger degree cap exceeded (defensive; homogeneous inputs of the
    /// supported shape never reach it).
    #[error("Groebner computation exceeded the degree cap {0}")]
    DegreeCapExceeded(usize),

    /// Point enumeration only makes sense over finite fields.
    #[error("point enumeration requires a finite field")]
    EnumerationNeedsFiniteField,

    /// Requested enumeration would visit too many elements.
    #[error("enumeration over a field of order {0} exceeds the supported size")]
    EnumerationTooLarge(u128),

    /// A flag point must satisfy the incidence relation a.b = 0.
    #[error("point/line pair violates the incidence relation")]
    IncidenceViolated,

    /// Division by a non-invertible element or matrix.
    #[error("attempted to invert a non-invertible element")]
    NotInvertible,

    /// Reduction of a rational section modulo p lost its structure.
    #[error("section has bad reduction at p = {0}")]
    BadReduction(u64),

    /// Exact integer root extraction gave up (coefficients too large for the
    /// bounded divisor scan).
    #[error("coefficients too large for exact rational root extraction")]
    RootSearchOverflow,

    /// Parse failure, with a byte offset into the original input.
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    /// Malformed request (bad CLI argument combinations and similar).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The classifier and the ideal oracle disagreed, or an oracle deduction
    /// found contradictory evidence. Always a bug or bad reduction; reported
    /// with exit code 2 by the CLI.
    #[error("inconsistency detected: {0}")]
    Inconsistency(String),

    /// Underlying I/O failure (CLI output files).
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
