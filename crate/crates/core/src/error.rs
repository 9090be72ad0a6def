//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the arithmetic kernels, validators and searches.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("factorization budget exceeded for {0}")]
    FactorBudgetExceeded(String),

    #[error("not irreducible")]
    NotIrreducible,

    #[error("fails q-symmetry")]
    FailsQSymmetry,

    #[error("root off the circle |z| = sqrt(q)")]
    RootOffCircle,

    #[error("p ramified or divides index - invariants unavailable")]
    InvariantsUnavailable,

    #[error("ramified or index-divisor l unsupported")]
    RamifiedPrimeUnsupported,

    #[error("expansion too large: intermediate coefficients exceed {0} bits")]
    ExpansionTooLarge(u64),

    #[error("precision exhausted after {0} doublings")]
    PrecisionExhausted(u32),

    #[error("not a CM polynomial: {0}")]
    NotCmPolynomial(String),

    #[error("field is not Galois over Q; construction unsupported")]
    NotGalois,

    #[error("no qualifying prime <= {0}")]
    NoQualifyingPrime(u64),

    #[error("search budget exhausted: {0}")]
    SearchBudgetExhausted(String),

    #[error("constructed Weil number lands in a strict CM subfield (degree {got}, expected {expected})")]
    DegenerateSubfield { got: usize, expected: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
