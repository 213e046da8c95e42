use rayon::prelude::*;

use super::{group, signs_at, Algorithm, Boundary, Cell, ClassificationResult, ClassifyError, ClassifyOptions, Realizability};
use crate::arith::{MultiPoly, Rational};
use crate::grobner::{eliminating_polynomial, ParametricSystem};
use crate::samplepoints::sample_points;
use crate::univariate::{generalized_pmv, subresultant_lcoeffs_poly};

/// Classification through the principal signed subresultant coefficients of
/// an eliminating polynomial and its derivative in the separating variable.
pub fn rrc_sturm(sys: &ParametricSystem, opts: &ClassifyOptions) -> Result<ClassificationResult, ClassifyError> {
    let elim = eliminating_polynomial(sys, opts.seed, opts.linear_form_attempts)?;
    let w = &elim.w;
    let dw = w.derivative(elim.u);
    let d = sys.d().max(1) as u64;
    let cap = 2u64.saturating_mul(d.saturating_pow(2 * sys.n() as u32)).min(u32::MAX as u64) as u32;
    let sres = subresultant_lcoeffs_poly(w, &dw, elim.u, Some(cap), opts.seed)?;
    let pctx = sys.ctx().params_only();
    let all: Vec<MultiPoly> = sres.coeffs().iter().map(|s| s.rename_into(&pctx)).collect::<Result<_, _>>()?;
    let (labels, polys): (Vec<String>, Vec<MultiPoly>) = all
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.is_constant())
        .map(|(k, s)| (format!("s_{k}"), s.clone()))
        .unzip();
    let points = sample_points(&pctx, &polys)?;
    let cells = points
        .into_par_iter()
        .map(|eta| {
            let count = count_at(&all, &eta)?;
            Ok(Cell { signs: signs_at(&polys, &eta)?, sample: eta, count })
        })
        .collect::<Result<Vec<_>, ClassifyError>>()?;
    let x_order = sys.ctx().vars().to_vec();
    Ok(ClassificationResult {
        algorithm: Algorithm::Sturm,
        x_order,
        seed: opts.seed,
        boundary: Boundary { w_infinity: None, w_h: None, minors: Vec::new(), subresultants: all },
        formulas: group(&cells),
        labels,
        polys,
        cells,
        realizability: Realizability::Realized,
    })
}

fn count_at(sres: &[MultiPoly], eta: &[Rational]) -> Result<usize, ClassifyError> {
    let signs = signs_at(sres, eta)?;
    Ok(generalized_pmv(&signs)?.max(0) as usize)
}
