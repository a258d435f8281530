//! 2-isogeny descent for the elliptic curve families E: y² = x³ ± 2Dx, where
//! D is a product of distinct odd primes with exponents 1 or 3.
//!
//! The φ-Selmer groups of both curves and of their 2-isogenous partners are
//! computed two independent ways: a brute-force oracle that tests local
//! solvability of the attached homogeneous spaces at every place of
//! S = {∞, 2, p₁, …, pₙ}, and a fast path that reads the same groups off the
//! ranks and nullspaces of two Legendre-symbol bit matrices. On top of those
//! sit the constant Tamagawa ratios #S(E)/#S(E′), the rank + Sha dimension
//! sums, and a sieve for curves of Mordell–Weil rank 0 (unconditional) or
//! rank 1 (conditional on BSD and root-number parity).
//!
//! Modules:
//! - [`arith`]: primality, Legendre/Jacobi symbols, residues mod 8.
//! - [`squareclass`]: the group Q(S,2) = ⟨−1, 2, p₁…pₙ⟩ ⊆ Q×/Q×².
//! - [`gf2`]: dense packed bit matrices over F₂ (rank, nullspace bases).
//! - [`local`]: the local-solvability oracle for the four homogeneous spaces.
//! - [`fast`]: the matrix method (membership, group sizes, ratios, flags).
//! - [`sieve`]: batch enumeration of D with optional data parallelism.

pub mod arith;
pub mod fast;
pub mod gf2;
pub mod local;
pub mod sieve;
pub mod squareclass;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("prime {0} breaks the strictly increasing order")]
    PrimesOutOfOrder(u64),
    #[error("exponent {0} unsupported (must be 1 or 3)")]
    BadExponent(u8),
    #[error("D needs at least one odd prime factor")]
    EmptyFactorization,
    #[error("{n} prime factors exceed the supported limit of {limit}")]
    TooManyPrimes { n: usize, limit: usize },
    #[error("value {0} has prime support outside the context")]
    SupportOutsideContext(i64),
    #[error("n = {n} exceeds the enumeration bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("{0} is even where an odd value is required")]
    EvenValue(i64),
    #[error("square class lies outside the subgroup this operation is defined on")]
    OutsideSubgroup,
    #[error("bit-vector length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("place {0} is not 2 or a prime factor of D")]
    UnknownPlace(u64),
    #[error("precision {precision} too small to certify solvability at {place}")]
    PrecisionTooSmall { place: u64, precision: u32 },
    #[error("parallel execution unavailable: {0}")]
    Parallelism(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}
