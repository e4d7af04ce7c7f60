//! Error types shared across the crate.

use thiserror::Error;

/// Everything that can go wrong in the library proper.
///
/// CLI-level problems (bad flags, unreadable files) are handled in `main`
/// and never reach this type.
#[derive(Debug, Error)]
pub enum Error {
    /// An exact division `a / b` over the integers left a nonzero remainder.
    #[error("non-exact division: {context}")]
    NonExactDivision { context: String },

    /// An operation that requires a nonzero polynomial received zero.
    #[error("zero polynomial not allowed: {context}")]
    ZeroPolynomial { context: String },

    /// The trace substitution needs a reciprocal polynomial.
    #[error("polynomial is not reciprocal")]
    NotReciprocal,

    /// The trace substitution needs an even-degree polynomial.
    #[error("polynomial has odd degree {degree}")]
    OddDegree { degree: usize },

    /// A Sturm evaluation endpoint is a root of the polynomial.
    #[error("Sturm endpoint {endpoint} is a root")]
    EndpointRoot { endpoint: String },

    /// Sturm counting requires a squarefree polynomial.
    #[error("polynomial is not squarefree")]
    NotSquarefree,

    /// Square-class comparison of the value zero is undefined.
    #[error("value is zero; square class undefined")]
    ZeroValue,

    /// A claimed prime failed the primality check.
    #[error("{n} is not prime")]
    NotPrime { n: u64 },

    /// Field characteristic exceeds the supported bound.
    #[error("prime {p} exceeds the supported bound 2^62")]
    PrimeTooLarge { p: u64 },

    /// Two field elements or polynomials live over different primes.
    #[error("field mismatch: p = {left} vs p = {right}")]
    FieldMismatch { left: u64, right: u64 },

    /// Claimed polynomial divisor does not actually divide.
    #[error("claimed divisor does not divide: {context}")]
    NotDivisor { context: String },

    /// Construction of F_n for n = pq needs odd primes p > q.
    #[error("n = {n} is not a product of two distinct odd primes")]
    NotSemiprime { n: u64 },

    /// An operation specific to q being an odd prime.
    #[error("{q} is not an odd prime")]
    NotOddPrime { q: u64 },

    /// An operation on a semiprime pq needs distinct odd primes p > q.
    #[error("(p, q) = ({p}, {q}) is not a pair of odd primes with p > q")]
    NotOddPrimes { p: u64, q: u64 },

    /// Cyclotomic index must not divide n in this context.
    #[error("d = {d} divides n = {n}")]
    DividesN { d: u64, n: u64 },

    /// Divisor pairing passed to discriminant-class machinery is malformed.
    #[error("invalid divisor pairing: {context}")]
    InvalidPairing { context: String },

    /// Lagrange interpolation produced a non-integral coefficient.
    #[error("interpolation produced a non-integral coefficient")]
    InterpolationNotIntegral,

    /// The trace polynomial is not squarefree, so certification cannot run.
    #[error("trace polynomial is not squarefree")]
    NotSquarefreeTrace,

    /// A certification step depends on an earlier step that was not run.
    #[error("prerequisite missing: {context}")]
    PrerequisiteMissing { context: String },

    /// Requested certificate criterion does not apply to this input.
    #[error("criterion inapplicable: {context}")]
    CriterionInapplicable { context: String },

    /// Catch-all for malformed user input to library entry points.
    #[error("invalid input: {context}")]
    InvalidInput { context: String },

    /// JSON (de)serialization failure while reading or writing records.
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    /// Filesystem failure while reading or writing scan files.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
