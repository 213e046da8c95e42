//! Exact linear algebra over the rationals and over polynomial rings.

mod matrix;
mod modp;
mod polymat;

use thiserror::Error;

use crate::arith::ArithError;

pub use matrix::{
    bareiss_leading_minors, berkowitz, char_poly, det_bareiss, det_exact, rank, signature, sylvester_jacobi,
    RationalMatrix,
};
pub use modp::{Fp, FpPoly};
pub use polymat::{
    clean_factors, congruence, leading_principal_minors, minor_poly, modp_minor_probe, random_congruence, Congruence,
    MinorRequest,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("rows have different lengths")]
    Ragged,
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("matrix has non-polynomial entries")]
    NotPolynomial,
    #[error("minor indices must be strictly increasing, in range and of equal length")]
    InvalidMinor,
    #[error("determinant is identically zero")]
    ZeroDeterminant,
    #[error("no congruence found with all leading minors nonzero")]
    DegenerateMinor,
    #[error("modular reduction failed")]
    BadReduction,
    #[error(transparent)]
    Arith(#[from] ArithError),
}
