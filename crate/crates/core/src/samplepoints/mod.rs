//! Rational sample points meeting every connected component of the set
//! where a family of polynomials does not vanish, by open cylindrical
//! decomposition.

mod lift;
mod project;

use std::sync::Arc;

use thiserror::Error;

use crate::arith::{ArithError, MultiPoly, Rational, VarContext};
use crate::univariate::UnivariateError;

pub use lift::lift;
pub use project::{project_level, ProjectionTower};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SampleError {
    #[error("a projection polynomial vanishes identically over the base point {point:?}")]
    IdenticallyZeroFiber { point: Vec<String> },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Univariate(#[from] UnivariateError),
}

/// At least one rational point in each connected component of
/// `{g_1 != 0, ..., g_s != 0}`; coordinates follow the indeterminates of `ctx`.
///
/// Constant inputs are ignored; with no nonconstant input the origin is returned.
pub fn sample_points(ctx: &Arc<VarContext>, gs: &[MultiPoly]) -> Result<Vec<Vec<Rational>>, SampleError> {
    let gs: Vec<MultiPoly> = gs.iter().filter(|g| !g.is_constant()).cloned().collect();
    let tower = ProjectionTower::build(ctx, &gs)?;
    lift(&tower)
}

#[cfg(test)]
mod tests;
