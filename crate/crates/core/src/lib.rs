//! Exact-arithmetic certification engine for truncated exponential Taylor
//! polynomials.
//!
//! The crate builds the polynomial family
//!
//! ```text
//! f(x) = sum_{i=0}^{n} c_i * x^i / i!      (integer c_i, c_n = 1)
//! ```
//!
//! with two distinguished members: the truncated exponential
//! `e_n(x) = sum x^i/i!` and the consecutive sum
//! `E_n(x) = e_n(x) + e_{n-1}(x)`. On top of the exact arithmetic it
//! provides:
//!
//! - p-adic valuations, Legendre's factorial formula, and the Legendre
//!   symbol ([`padic`]);
//! - p-adic Newton polygons, root-valuation reports, and the Newton
//!   index ([`newton`]);
//! - complete factorization over prime fields with degree-pattern
//!   evidence and a Dedekind-style irreducibility oracle ([`modp`]);
//! - irreducibility certificates for the `c_0 = ±2^k` family ([`schur`]);
//! - discriminants (closed form and Sylvester-resultant oracle),
//!   alternating-group containment, and the symmetric-vs-alternating
//!   decision ([`galois`]).
//!
//! Everything is computed in exact integer/rational arithmetic; there is
//! no floating point anywhere. All values are immutable after
//! construction and certificates carry a replayable evidence chain.

pub mod error;
pub mod exact;
pub mod galois;
pub mod modp;
pub mod newton;
pub mod padic;
pub mod primes;
pub mod schur;

pub use error::Error;
pub use exact::{IntPoly, RatPoly, Rational, TaylorSpec};
