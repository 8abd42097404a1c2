//! Exact computer algebra for factorization lifting over filtered
//! noncommutative rings.
//!
//! The crate works with finite-dimensional associative unital algebras given
//! by structure constants over an exact scalar ring (GF(p), Z/p^k, or Q).
//! On top of that sit polynomials with a central indeterminate, Bezout
//! coprimality certificates, a certified Hensel-style factorization-lifting
//! loop for pairs (A, I) filtered by a finite descending chain of ideals,
//! commutator-filtration analysis, bounded-degree noncommutative Groebner
//! presentations, and simple LF-extensions with their universal maps.
//!
//! Everything is exact; every certificate a computation returns is
//! re-verified before it is handed out.

pub mod algebra;
pub mod error;
pub mod hensel;
pub mod lf_extension;
pub mod poly;
pub mod presentations;
pub mod scenario;
pub mod scalars;

pub use error::{Error, Result};
