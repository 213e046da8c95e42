//! Real root classification for parametric polynomial systems.
//!
//! Given polynomials in variables `x` depending on parameters `y`, the crate
//! computes a partition of a dense open subset of parameter space into
//! semi-algebraic cells on which the number of real solutions is constant,
//! using parametric Hermite matrices or signed subresultant sequences.

pub mod arith;
pub mod ring;
pub mod univariate;
pub mod linalg;
pub mod grobner;
pub mod rng;
pub mod hermite;
pub mod samplepoints;
pub mod classify;
