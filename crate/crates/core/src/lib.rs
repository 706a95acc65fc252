//! Exact computation of the trinomial triangle `a_n^{(k)}`, the
//! decomposition of tensor powers of the A1 adjoint representation
//! `b_n^{(k)}`, and the recurrences, generating functions and polynomial
//! families that relate them.
//!
//! All arithmetic is exact (`num-bigint` / `num-rational`).

pub mod laurent;
pub mod qpolys;
pub mod recurrences;
pub mod series;
pub mod verify;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
