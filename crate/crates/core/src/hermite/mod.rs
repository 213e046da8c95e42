//! Parametric Hermite matrices: the trace form of the quotient algebra
//! written in the monomial basis, with entries in the parameters.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{interpolate_with, ArithError, GridSpec, Monomial, MultiPoly, RatFunc, Rational, VarContext};
use crate::grobner::{Assumptions, GrobnerError, KReducer, ParametricSystem, QuotientBasis};
use crate::linalg::RationalMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HermiteError {
    #[error(transparent)]
    Grobner(#[from] GrobnerError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("leading coefficients in the variables are not all constant")]
    AssumptionCViolated,
    #[error("point lies on the bad locus")]
    OnBadLocus,
    #[error("specialized system has a different quotient basis")]
    BasisMismatch,
    #[error("matrix has non-polynomial entries")]
    NotPolynomial,
}

/// Matrix of multiplication by a monomial; row `j` holds the coordinates of
/// `operand * b_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultMatrix {
    pub operand: Monomial,
    pub matrix: Vec<Vec<RatFunc>>,
}

/// Symmetric matrix of traces `trace(L_{b_i b_j})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteMatrix {
    sys_ctx: Arc<VarContext>,
    pctx: Arc<VarContext>,
    basis: QuotientBasis,
    entries: Vec<Vec<RatFunc>>,
    w_infinity: MultiPoly,
    assumptions: Assumptions,
    scales: Option<Vec<MultiPoly>>,
}

fn rf_dot(row: &[RatFunc], col: impl Iterator<Item = RatFunc>, zero: &RatFunc) -> RatFunc {
    let mut acc = zero.clone();
    for (a, b) in row.iter().zip(col) {
        if a.is_zero() || b.is_zero() {
            continue;
        }
        acc = acc.add(&a.mul(&b).expect("shared context")).expect("shared context");
    }
    acc
}

fn rf_matmul(a: &[Vec<RatFunc>], b: &[Vec<RatFunc>], zero: &RatFunc) -> Vec<Vec<RatFunc>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| rf_dot(&a[i], (0..n).map(|k| b[k][j].clone()), zero)).collect())
        .collect()
}

/// Multiplication matrices of the variables.
pub fn x_matrices(reducer: &KReducer) -> Vec<MultMatrix> {
    let n = reducer.ctx().nvars();
    let basis = reducer.basis();
    (0..n)
        .map(|i| {
            let xi = Monomial::var(n, i, 1);
            let matrix = basis.monomials().iter().map(|b| reducer.normal_form_monomial(&b.mul(&xi))).collect();
            MultMatrix { operand: xi, matrix }
        })
        .collect()
}

/// Multiplication matrices of the basis monomials, built by increasing degree
/// as `L_b = L_{b'} L_{x_i}` for `b = x_i b'`.
pub fn b_matrices(reducer: &KReducer, xs: &[MultMatrix]) -> Vec<MultMatrix> {
    let basis = reducer.basis();
    let delta = basis.len();
    let pctx = reducer.param_ctx();
    let zero = RatFunc::zero(pctx);
    let one = RatFunc::from_poly(MultiPoly::one(pctx));
    let mut out: Vec<MultMatrix> = Vec::with_capacity(delta);
    for b in basis.monomials() {
        let matrix = if b.is_one() {
            (0..delta).map(|i| (0..delta).map(|j| if i == j { one.clone() } else { zero.clone() }).collect()).collect()
        } else {
            let i = b.exps().iter().position(|&e| e > 0).unwrap();
            let prev = b.div(&xs[i].operand).unwrap();
            let k = basis.position(&prev).expect("staircase is closed under division");
            rf_matmul(&out[k].matrix, &xs[i].matrix, &zero)
        };
        out.push(MultMatrix { operand: b.clone(), matrix });
    }
    out
}

/// Entries `h_ij = sum_k c_k trace(L_{b_k})` where `c` is row `j` of `L_{b_i}`;
/// equal products `b_i b_j` are computed once.
pub fn trace_entries(bs: &[MultMatrix], pctx: &Arc<VarContext>) -> Vec<Vec<RatFunc>> {
    let delta = bs.len();
    let zero = RatFunc::zero(pctx);
    let traces: Vec<RatFunc> = bs
        .iter()
        .map(|m| (0..delta).fold(zero.clone(), |acc, j| acc.add(&m.matrix[j][j]).expect("shared context")))
        .collect();
    let mut cache: HashMap<Monomial, RatFunc> = HashMap::new();
    let mut h = vec![vec![zero.clone(); delta]; delta];
    for i in 0..delta {
        for j in i..delta {
            let prod = bs[i].operand.mul(&bs[j].operand);
            let v = cache
                .entry(prod)
                .or_insert_with(|| rf_dot(&bs[i].matrix[j], traces.iter().cloned(), &zero))
                .clone();
            h[j][i] = v.clone();
            h[i][j] = v;
        }
    }
    h
}

impl HermiteMatrix {
    pub fn basis(&self) -> &QuotientBasis {
        &self.basis
    }

    pub fn delta(&self) -> usize {
        self.basis.len()
    }

    /// Context of the system the matrix was built from.
    pub fn sys_ctx(&self) -> &Arc<VarContext> {
        &self.sys_ctx
    }

    /// Context of the parameters, where the entries live.
    pub fn param_ctx(&self) -> &Arc<VarContext> {
        &self.pctx
    }

    pub fn entries(&self) -> &[Vec<RatFunc>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i][j]
    }

    pub fn w_infinity(&self) -> &MultiPoly {
        &self.w_infinity
    }

    pub fn assumptions(&self) -> Assumptions {
        self.assumptions
    }

    pub fn assumption_c_holds(&self) -> bool {
        self.assumptions.c
    }

    /// Basis scale factors applied by [`remove_denominators`], if any.
    pub fn scales(&self) -> Option<&[MultiPoly]> {
        self.scales.as_deref()
    }

    pub fn is_polynomial(&self) -> bool {
        self.entries.iter().flatten().all(RatFunc::is_polynomial)
    }

    /// The entries as polynomials.
    pub fn polynomial_entries(&self) -> Result<Vec<Vec<MultiPoly>>, HermiteError> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|e| e.as_poly().cloned().ok_or(HermiteError::NotPolynomial)).collect())
            .collect()
    }

    /// Total degree of each entry (numerator degree for fractions).
    pub fn degree_pattern(&self) -> Vec<Vec<u32>> {
        self.entries.iter().map(|r| r.iter().map(|e| e.num().total_degree()).collect()).collect()
    }

    /// Entries rendered as text, row by row.
    pub fn render(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect()
    }

    /// A matrix sharing the metadata of `self` with new entries.
    pub(crate) fn with_entries(&self, entries: Vec<Vec<RatFunc>>) -> HermiteMatrix {
        HermiteMatrix { entries, ..self.clone() }
    }
}

#[derive(Serialize)]
struct MatrixJson<'a> {
    basis: Vec<String>,
    entries: Vec<Vec<String>>,
    w_infinity: String,
    assumptions: &'a Assumptions,
}

impl Serialize for HermiteMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixJson {
            basis: self.basis.render(&self.sys_ctx),
            entries: self.render(),
            w_infinity: self.w_infinity.to_string(),
            assumptions: &self.assumptions,
        }
        .serialize(s)
    }
}

/// The parametric Hermite matrix of `sys` in the quotient basis of its
/// reduced Groebner basis for the variables-first block order.
pub fn drl_matrix(sys: &ParametricSystem) -> Result<HermiteMatrix, HermiteError> {
    let gb = sys.groebner();
    let reducer = KReducer::new(&gb)?;
    let assumptions = Assumptions {
        a: true,
        c: reducer.constant_leading_coeffs(),
        e: gb.generators().iter().all(|g| g.total_degree() == g.degree_in_range(0..sys.n())),
    };
    let xs = x_matrices(&reducer);
    let bs = b_matrices(&reducer, &xs);
    let entries = trace_entries(&bs, reducer.param_ctx());
    Ok(HermiteMatrix {
        sys_ctx: sys.ctx().clone(),
        pctx: reducer.param_ctx().clone(),
        basis: reducer.basis().clone(),
        entries,
        w_infinity: reducer.w_infinity(),
        assumptions,
        scales: None,
    })
}

/// Rescales the basis by the denominators of the traces `trace(L_{b_i})`.
pub fn remove_denominators(h: &HermiteMatrix) -> HermiteMatrix {
    let delta = h.delta();
    let scales: Vec<MultiPoly> = (0..delta).map(|i| h.entries[0][i].den().clone()).collect();
    if scales.iter().all(MultiPoly::is_one) {
        return h.clone();
    }
    let entries = (0..delta)
        .map(|i| {
            (0..delta)
                .map(|j| {
                    let c = RatFunc::from_poly(&scales[i] * &scales[j]);
                    h.entries[i][j].mul(&c).expect("shared context")
                })
                .collect()
        })
        .collect();
    HermiteMatrix { entries, scales: Some(scales), ..h.clone() }
}

/// Default interpolation degree bound for the entries.
pub fn default_lambda(sys: &ParametricSystem) -> u32 {
    let n = sys.n() as u32;
    let d = sys.d().max(1);
    let base = 2 * n * (d - 1);
    let gb = sys.groebner();
    let e = gb.generators().iter().all(|g| g.total_degree() == g.degree_in_range(0..sys.n()));
    if e {
        base
    } else {
        let dy = gb.generators().iter().map(|g| g.degree_in_range(sys.n()..sys.ctx().len())).max().unwrap_or(1).max(1);
        dy * base
    }
}

/// Builds the matrix by specializing the parameters on a grid, computing
/// each Hermite matrix over the rationals and interpolating the entries.
pub fn interp_hermite(sys: &ParametricSystem, lambda: Option<u32>, seed: u64) -> Result<HermiteMatrix, HermiteError> {
    let gb = sys.groebner();
    let reducer = KReducer::new(&gb)?;
    if !reducer.constant_leading_coeffs() {
        return Err(HermiteError::AssumptionCViolated);
    }
    let lambda = lambda.unwrap_or_else(|| default_lambda(sys));
    let basis = reducer.basis().clone();
    let delta = basis.len();
    let pctx = reducer.param_ctx().clone();
    let vars: Vec<usize> = (0..sys.t()).collect();
    let spec = GridSpec::uniform(sys.t(), lambda, seed);
    let upper: Vec<(usize, usize)> = (0..delta).flat_map(|i| (i..delta).map(move |j| (i, j))).collect();
    let polys = interpolate_with::<_, HermiteError>(&pctx, &vars, &spec, upper.len(), |eta| {
        let local = drl_matrix(&sys.specialize(eta)?)?;
        if local.basis != basis {
            return Err(HermiteError::BasisMismatch);
        }
        upper
            .iter()
            .map(|&(i, j)| local.entries[i][j].num().as_constant().ok_or(HermiteError::NotPolynomial))
            .collect()
    })?;
    let mut entries = vec![vec![RatFunc::zero(&pctx); delta]; delta];
    for (&(i, j), p) in upper.iter().zip(polys) {
        entries[i][j] = RatFunc::from_poly(p.clone());
        entries[j][i] = RatFunc::from_poly(p);
    }
    let e = gb.generators().iter().all(|g| g.total_degree() == g.degree_in_range(0..sys.n()));
    Ok(HermiteMatrix {
        sys_ctx: sys.ctx().clone(),
        pctx,
        basis,
        entries,
        w_infinity: reducer.w_infinity(),
        assumptions: Assumptions { a: true, c: true, e },
        scales: None,
    })
}

/// Evaluates the entries at `eta`; refuses points where the matrix is not
/// the Hermite matrix of the specialized system.
pub fn specialize_matrix(h: &HermiteMatrix, eta: &[Rational]) -> Result<RationalMatrix, HermiteError> {
    if eta.len() != h.pctx.len() {
        return Err(ArithError::LengthMismatch { expected: h.pctx.len(), got: eta.len() }.into());
    }
    if h.w_infinity.evaluate(eta)? == Rational::from_integer(0.into()) {
        return Err(HermiteError::OnBadLocus);
    }
    let rows = h
        .entries
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| match e.evaluate(eta) {
                    Err(ArithError::DivisionByZero) => Err(HermiteError::OnBadLocus),
                    other => other.map_err(HermiteError::from),
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RationalMatrix::from_rows(rows).expect("square"))
}

#[cfg(test)]
mod tests;
