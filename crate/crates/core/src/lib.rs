//! Exact computation kit for the two-species partially asymmetric simple
//! exclusion process (2-PASEP).
//!
//! The stationary distribution of the 2-PASEP is computed by three
//! independent backends that must agree exactly:
//!
//! - [`chain`]: the finite Markov chain on a fixed gray-particle sector,
//!   solved over exact rationals;
//! - [`ansatz`]: a matrix-product representation with explicit tridiagonal
//!   matrices over polynomials in `q`;
//! - [`histories`]: enumeration of marked Laguerre histories (weighted
//!   Motzkin paths), with a fourth route via partially signed permutations
//!   in [`permutations`].
//!
//! The bijections tying these worlds together (Françon-Viennot and its
//! marked extension, the small/large history correspondence, and the
//! particle-hole involution) live in [`bijections`].
//!
//! All arithmetic is exact: polynomial coefficients are arbitrary-precision
//! integers and probabilities are arbitrary-precision rationals. The
//! algebraic layer ([`qseries`], [`linalg`]) is generic over the scalar
//! type via `num-traits`; the concrete instantiations used throughout are
//! the type aliases below.

pub mod ansatz;
pub mod bijections;
pub mod chain;
pub mod histories;
pub mod linalg;
pub mod permutations;
pub mod qseries;
pub mod scalar;
pub mod states;

/// Polynomial in `q` with arbitrary-precision integer coefficients.
pub type QPoly = qseries::Polynomial<num_bigint::BigInt>;

/// Polynomial in `y` whose coefficients are [`QPoly`] values.
pub type YQPoly = qseries::YPolynomial<num_bigint::BigInt>;

/// Exact rational number (arbitrary-precision numerator and denominator).
pub type QRat = num_rational::BigRational;

pub use num_bigint::BigInt;
