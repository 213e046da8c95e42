use std::collections::BTreeSet;

use super::hermite::count_at;
use super::{signs_at, ClassifyError, ClassifyOptions};
use crate::arith::{MultiPoly, Rational};
use crate::grobner::ParametricSystem;
use crate::hermite::drl_matrix;
use crate::univariate::generalized_pmv;

/// Counts realized by each pipeline and the number of points where both
/// were compared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossReport {
    pub hermite_counts: BTreeSet<usize>,
    pub sturm_counts: BTreeSet<usize>,
    pub checked: usize,
}

fn off(polys: &[MultiPoly], eta: &[Rational]) -> Result<bool, ClassifyError> {
    Ok(signs_at(polys, eta)?.iter().all(|&s| s != 0))
}

/// Runs both pipelines and compares their counts at every sample point of
/// either one that avoids the boundaries of both.
pub fn cross_validate(sys: &ParametricSystem, opts: &ClassifyOptions) -> Result<CrossReport, ClassifyError> {
    let herm = super::rrc_hermite(sys, opts)?;
    let sturm = super::rrc_sturm(sys, opts)?;
    let h = drl_matrix(sys)?;
    let mut hb = herm.polys.clone();
    if let Some(w) = herm.boundary.w_infinity.as_ref().filter(|w| !w.is_constant()) {
        hb.push(w.clone());
    }
    let sres = &sturm.boundary.subresultants;
    let points: BTreeSet<&Vec<Rational>> = herm.cells.iter().chain(&sturm.cells).map(|c| &c.sample).collect();
    let mut checked = 0;
    for eta in points {
        if !off(&hb, eta)? || !off(&sturm.polys, eta)? {
            continue;
        }
        let hc = count_at(&h, eta)?;
        let sc = generalized_pmv(&signs_at(sres, eta)?)?.max(0) as usize;
        if hc != sc {
            return Err(ClassifyError::Disagreement { eta: eta.iter().map(|r| r.to_string()).collect(), hermite: hc, sturm: sc });
        }
        checked += 1;
    }
    Ok(CrossReport { hermite_counts: herm.counts(), sturm_counts: sturm.counts(), checked })
}
