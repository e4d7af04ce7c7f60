//! Fekete polynomials of principal Dirichlet characters.
//!
//! For squarefree `n`, the Fekete polynomial of the principal character
//! mod `n` is `F_n(x) = sum x^a` over `1 <= a <= n-1` with `gcd(a, n) = 1`.
//! This crate constructs `F_n` exactly, strips its predictable cyclotomic
//! part to get the interesting factor `f_n` and its trace polynomial `g_n`,
//! and certifies separability, irreducibility, and Galois groups through
//! factorizations modulo small primes.
//!
//! Modules:
//! * [`intpoly`]: exact arithmetic in `Z[x]` (gcd, resultants, Sturm chains).
//! * [`modpoly`]: factorization over prime fields `F_p`.
//! * [`cyclotomic`]: cyclotomic polynomials and divisibility tests.
//! * [`fekete`]: the polynomials themselves and their closed-form invariants.
//! * [`certify`]: Galois-group and irreducibility certificates.
//! * [`scan`]: batch computation records and aggregate reports.

pub mod certify;
pub mod cyclotomic;
pub mod error;
pub mod fekete;
pub mod intpoly;
pub mod modpoly;
pub mod scan;

pub use certify::{CertKind, Certificate, SearchConfig, SearchOutcome, Witness};
pub use error::{Error, Result};
pub use fekete::{FeketeDecomposition, SeparabilityReport, ValuePrediction};
pub use intpoly::IntPoly;
pub use modpoly::{ModFactorization, PrimeField, PrimePoly};
pub use scan::{ScanConfig, ScanRecord};
