//! Univariate polynomials: resultants, signed subresultant coefficients,
//! permanences minus variations and real root isolation.

mod dense;
mod pmv;
mod roots;
mod sres;

use thiserror::Error;

use crate::arith::ArithError;

pub use dense::{resultant, subresultant_gcd_core, UPoly};
pub use pmv::generalized_pmv;
pub use roots::{
    count_real_roots, gcd_q, isolate_real_roots, isolate_real_roots_many, refine, sign_at, simplest_between, squarefree_q, upoly_from_multi,
    IsolatingInterval,
};
pub use sres::{subresultant_lcoeffs, subresultant_lcoeffs_poly, SubresultantCoeffs};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UnivariateError {
    #[error("the first polynomial must have larger degree than the second")]
    DegreeOrder,
    #[error("sign sequence starts with zero")]
    LeadingZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial involves more than one indeterminate")]
    NotUnivariate,
    #[error(transparent)]
    Arith(#[from] ArithError),
}
