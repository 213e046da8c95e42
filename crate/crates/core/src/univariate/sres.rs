use num_traits::Zero;

use super::{UPoly, UnivariateError};
use crate::arith::{interpolate_with, ArithError, GridSpec, MultiPoly, Rational};
use crate::linalg::det_bareiss;
use crate::ring::Ring;

/// Principal signed subresultant coefficients `s_0, ..., s_D` of a pair
/// `(p, q)` with `deg p = D > deg q`; `s_0` is the leading coefficient of
/// `p` and `s_D` is the signed subresultant of index 0.
#[derive(Clone, Debug, PartialEq)]
pub struct SubresultantCoeffs<C> {
    coeffs: Vec<C>,
}

impl<C> SubresultantCoeffs<C> {
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// `D`, the degree of the first polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn get(&self, k: usize) -> &C {
        &self.coeffs[k]
    }
}

fn coeff_or_zero<R: Ring>(v: &[R], i: isize, zero: &R) -> R {
    if i < 0 {
        zero.clone()
    } else {
        v.get(i as usize).cloned().unwrap_or_else(|| zero.clone())
    }
}

/// Determinant of the Sylvester-Habicht matrix of index `j` for formal
/// coefficient vectors (constant term first) of degrees `D = p.len() - 1`
/// and `Q = q.len() - 1`.
fn syha_det<R: Ring>(p: &[R], q: &[R], j: usize) -> R {
    let d = p.len() - 1;
    let qd = q.len() - 1;
    let zero = p[0].zero_like();
    let n = d + qd - 2 * j;
    let top = (d + qd - j - 1) as isize;
    let mut rows: Vec<Vec<R>> = Vec::with_capacity(n);
    for i in (0..qd - j).rev() {
        rows.push((0..n).map(|c| coeff_or_zero(p, top - c as isize - i as isize, &zero)).collect());
    }
    for i in 0..d - j {
        rows.push((0..n).map(|c| coeff_or_zero(q, top - c as isize - i as isize, &zero)).collect());
    }
    det_bareiss(rows)
}

/// Coefficients for formal degrees: `p[D]` may vanish, which is what makes
/// this commute with evaluation of polynomial coefficients.
pub(crate) fn sres_formal<R: Ring>(p: &[R], q: &[R]) -> Vec<R> {
    let d = p.len() - 1;
    let qd = q.len() - 1;
    let zero = p[0].zero_like();
    let mut out = Vec::with_capacity(d + 1);
    out.push(p[d].clone());
    for k in 1..=d {
        let j = d - k;
        let v = if j == d - 1 {
            coeff_or_zero(q, j as isize, &zero)
        } else if j > qd {
            zero.clone()
        } else {
            syha_det(p, q, j)
        };
        out.push(v);
    }
    out
}

fn check_degrees(dp: Option<usize>, dq: Option<usize>) -> Result<(usize, usize), UnivariateError> {
    match (dp, dq) {
        (None, _) => Err(UnivariateError::ZeroPolynomial),
        (Some(0), _) => Err(UnivariateError::DegreeOrder),
        (Some(d), None) => Ok((d, 0)),
        (Some(d), Some(e)) if e < d => Ok((d, e)),
        _ => Err(UnivariateError::DegreeOrder),
    }
}

/// Principal signed subresultant coefficients of univariate rational polynomials.
pub fn subresultant_lcoeffs(p: &UPoly<Rational>, q: &UPoly<Rational>) -> Result<SubresultantCoeffs<Rational>, UnivariateError> {
    let (_, e) = check_degrees(p.degree(), q.degree())?;
    let mut qc = q.coeffs().to_vec();
    qc.resize(e + 1, Rational::zero());
    Ok(SubresultantCoeffs { coeffs: sres_formal(p.coeffs(), &qc) })
}

/// Principal signed subresultant coefficients with respect to `mainvar` of
/// polynomials whose other indeterminates act as parameters.
///
/// The coefficients are obtained by evaluation at a grid of parameter
/// values and interpolation. The degree bound for `s_k` is the row-degree
/// bound of its Sylvester-Habicht determinant, capped by `cap` if given.
pub fn subresultant_lcoeffs_poly(
    p: &MultiPoly,
    q: &MultiPoly,
    mainvar: usize,
    cap: Option<u32>,
    seed: u64,
) -> Result<SubresultantCoeffs<MultiPoly>, UnivariateError> {
    if !p.same_ctx(q) {
        return Err(ArithError::ContextMismatch.into());
    }
    let pc = p.coeffs_in(mainvar);
    let mut qc = q.coeffs_in(mainvar);
    let dq = qc.len().checked_sub(1);
    let (d, e) = check_degrees(pc.len().checked_sub(1), dq)?;
    if qc.is_empty() {
        qc.push(MultiPoly::zero(p.ctx()));
    }
    let ctx = p.ctx().clone();
    let params: Vec<usize> = (0..ctx.len())
        .filter(|&i| i != mainvar && (p.depends_on(i) || q.depends_on(i)))
        .collect();
    let dyp = pc.iter().map(MultiPoly::total_degree).max().unwrap_or(0);
    let dyq = qc.iter().map(MultiPoly::total_degree).max().unwrap_or(0);
    let bound = (1..=d)
        .map(|k| {
            let j = d - k;
            if j == d - 1 {
                dyq
            } else if j > e {
                0
            } else {
                ((e - j) as u32) * dyp + ((d - j) as u32) * dyq
            }
        })
        .chain(std::iter::once(dyp))
        .max()
        .unwrap_or(0);
    let bound = cap.map_or(bound, |c| c.min(bound));
    let spec = GridSpec::uniform(params.len(), bound, seed);
    let eval_coeffs = |cs: &[MultiPoly], pt: &[Rational]| -> Result<Vec<Rational>, ArithError> {
        let mut full = vec![Rational::zero(); ctx.len()];
        for (a, &v) in params.iter().enumerate() {
            full[v] = pt[a].clone();
        }
        cs.iter().map(|c| c.evaluate(&full)).collect()
    };
    let coeffs = interpolate_with::<_, ArithError>(&ctx, &params, &spec, d + 1, |pt| {
        let pv = eval_coeffs(&pc, pt)?;
        let qv = eval_coeffs(&qc, pt)?;
        Ok(sres_formal(&pv, &qv))
    })?;
    Ok(SubresultantCoeffs { coeffs })
}
