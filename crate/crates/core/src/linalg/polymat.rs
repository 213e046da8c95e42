use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::Rng;

use super::modp::{Fp, FpPoly};
use super::{det_bareiss, LinalgError};
use crate::arith::{gcd, interpolate_with, squarefree_part, GridSpec, MultiPoly, RatFunc, Rational};
use crate::hermite::HermiteMatrix;

/// Rows and columns of a minor, with an optional degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorRequest {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub bound: Option<u32>,
}

impl MinorRequest {
    pub fn leading(k: usize) -> Self {
        MinorRequest { rows: (0..k).collect(), cols: (0..k).collect(), bound: None }
    }

    fn validate(&self, size: usize) -> Result<(), LinalgError> {
        let inc = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]) && v.iter().all(|&i| i < size);
        if self.rows.len() != self.cols.len() || self.rows.is_empty() || !inc(&self.rows) || !inc(&self.cols) {
            return Err(LinalgError::InvalidMinor);
        }
        Ok(())
    }
}

fn poly_entries(h: &HermiteMatrix) -> Result<Vec<Vec<MultiPoly>>, LinalgError> {
    h.polynomial_entries().map_err(|_| LinalgError::NotPolynomial)
}

/// Laplace bound: the sum over the rows of the largest entry degree.
fn row_degree_bound(e: &[Vec<MultiPoly>], rows: &[usize], cols: &[usize]) -> u32 {
    rows.iter()
        .map(|&r| cols.iter().filter(|&&c| !e[r][c].is_zero()).map(|&c| e[r][c].total_degree()).max().unwrap_or(0))
        .sum()
}

fn eval_entries(e: &[Vec<MultiPoly>], eta: &[Rational]) -> Result<Vec<Vec<Rational>>, LinalgError> {
    e.iter()
        .map(|r| r.iter().map(|p| p.evaluate(eta).map_err(LinalgError::from)).collect())
        .collect()
}

/// Determinant of a submatrix, by integer Bareiss after clearing row denominators.
fn sub_det(m: &[Vec<Rational>], rows: &[usize], cols: &[usize]) -> Rational {
    let mut scale = BigInt::one();
    let ints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|&r| {
            let l = cols.iter().fold(BigInt::one(), |l, &c| l.lcm(m[r][c].denom()));
            let row = cols.iter().map(|&c| m[r][c].numer() * (&l / m[r][c].denom())).collect();
            scale *= l;
            row
        })
        .collect();
    Rational::new(det_bareiss(ints), scale)
}

/// A minor of a polynomial matrix, by evaluation at a grid and interpolation.
pub fn minor_poly(h: &HermiteMatrix, req: &MinorRequest, seed: u64) -> Result<MultiPoly, LinalgError> {
    let e = poly_entries(h)?;
    req.validate(e.len())?;
    let bound = req.bound.unwrap_or_else(|| row_degree_bound(&e, &req.rows, &req.cols));
    let pctx = h.param_ctx();
    let vars: Vec<usize> = (0..pctx.len()).collect();
    let spec = GridSpec::uniform(vars.len(), bound, seed);
    let out = interpolate_with::<_, LinalgError>(pctx, &vars, &spec, 1, |eta| {
        let m = eval_entries(&e, eta)?;
        Ok(vec![sub_det(&m, &req.rows, &req.cols)])
    })?;
    Ok(out.into_iter().next().unwrap())
}

/// All leading principal minors `M_1, ..., M_delta` on one shared grid.
pub fn leading_principal_minors(h: &HermiteMatrix, seed: u64) -> Result<Vec<MultiPoly>, LinalgError> {
    let e = poly_entries(h)?;
    let delta = e.len();
    let idx: Vec<usize> = (0..delta).collect();
    let bound = (1..=delta).map(|k| row_degree_bound(&e, &idx[..k], &idx[..k])).max().unwrap_or(0);
    let pctx = h.param_ctx();
    let vars: Vec<usize> = (0..pctx.len()).collect();
    let spec = GridSpec::uniform(vars.len(), bound, seed);
    interpolate_with::<_, LinalgError>(pctx, &vars, &spec, delta, |eta| {
        let m = eval_entries(&e, eta)?;
        Ok((1..=delta).map(|k| sub_det(&m, &idx[..k], &idx[..k])).collect())
    })
}

/// `A^T H A` for an integer matrix `A`.
pub fn congruence(h: &HermiteMatrix, a: &[Vec<i64>]) -> Result<HermiteMatrix, LinalgError> {
    let delta = h.delta();
    if a.len() != delta || a.iter().any(|r| r.len() != delta) {
        return Err(LinalgError::DimensionMismatch);
    }
    let pctx = h.param_ctx();
    let e = h.entries();
    let rf = |k: i64| RatFunc::from_poly(MultiPoly::from_int(pctx, k));
    let add = |x: &RatFunc, y: &RatFunc| x.add(y).expect("shared context");
    let mul = |x: &RatFunc, y: &RatFunc| x.mul(y).expect("shared context");
    // H A
    let ha: Vec<Vec<RatFunc>> = (0..delta)
        .map(|i| {
            (0..delta)
                .map(|j| (0..delta).filter(|&k| a[k][j] != 0).fold(RatFunc::zero(pctx), |acc, k| add(&acc, &mul(&e[i][k], &rf(a[k][j])))))
                .collect()
        })
        .collect();
    let mut out = vec![vec![RatFunc::zero(pctx); delta]; delta];
    for i in 0..delta {
        for j in i..delta {
            let v = (0..delta).filter(|&k| a[k][i] != 0).fold(RatFunc::zero(pctx), |acc, k| add(&acc, &mul(&rf(a[k][i]), &ha[k][j])));
            out[j][i] = v.clone();
            out[i][j] = v;
        }
    }
    Ok(h.with_entries(out))
}

/// Outcome of a randomized congruence.
#[derive(Clone, Debug)]
pub struct Congruence {
    pub matrix: HermiteMatrix,
    pub a: Vec<Vec<i64>>,
    pub minors: Vec<MultiPoly>,
    pub attempts: usize,
}

fn det_i64(a: &[Vec<i64>]) -> Rational {
    det_bareiss(a.iter().map(|r| r.iter().map(|&x| crate::arith::int(x)).collect()).collect())
}

/// Tries the identity first, then seeded random matrices with entries in
/// `[-3, 3]`, until no leading principal minor vanishes identically.
pub fn random_congruence(h: &HermiteMatrix, seed: u64, max_attempts: usize) -> Result<Congruence, LinalgError> {
    let delta = h.delta();
    let mut rng = crate::rng::stream(seed, "congruence");
    let mut a: Vec<Vec<i64>> = (0..delta).map(|i| (0..delta).map(|j| (i == j) as i64).collect()).collect();
    for attempt in 1..=max_attempts.max(1) {
        let hm = congruence(h, &a)?;
        let minors = leading_principal_minors(&hm, seed)?;
        if minors.iter().all(|m| !m.is_zero()) {
            return Ok(Congruence { matrix: hm, a, minors, attempts: attempt });
        }
        loop {
            a = (0..delta).map(|_| (0..delta).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            if det_i64(&a) != Rational::from_integer(0.into()) {
                break;
            }
        }
    }
    Err(LinalgError::DegenerateMinor)
}

/// Squarefree part of the determinant with the factors it shares with `w_inf` removed.
pub fn clean_factors(det: &MultiPoly, w_inf: &MultiPoly) -> Result<MultiPoly, LinalgError> {
    if det.is_zero() {
        return Err(LinalgError::ZeroDeterminant);
    }
    let s = squarefree_part(det)?;
    let g = gcd(&s, w_inf);
    Ok(s.exact_div(&g)?.normalized())
}

/// Finite-field probe for the smallest leading principal minor that still
/// carries the boundary polynomial.
///
/// Parameters are replaced by seeded random affine functions of one new
/// variable and everything is reduced modulo `p`. Scanning minors downward
/// from the determinant, the first one not divisible by the squarefree part
/// of the determinant has size `r`; the result is `r + 1`. The outcome is
/// heuristic and only serves to pick which minor to interpolate.
pub fn modp_minor_probe(h: &HermiteMatrix, p: u64, seed: u64) -> Result<usize, LinalgError> {
    let e = poly_entries(h)?;
    let delta = e.len();
    let f = Fp::new(p);
    let t = h.param_ctx().len();
    let mut rng = crate::rng::stream(seed, "modp-line");
    let lines: Vec<(u64, u64)> = (0..t).map(|_| (rng.gen_range(1..p), rng.gen_range(0..p))).collect();
    let idx: Vec<usize> = (0..delta).collect();
    let npts = row_degree_bound(&e, &idx, &idx) as usize + 1;
    if npts as u64 >= p {
        return Err(LinalgError::BadReduction);
    }
    let entry_modp = |poly: &MultiPoly, v: u64| -> Result<u64, LinalgError> {
        let ys: Vec<u64> = lines.iter().map(|&(a, b)| f.add(f.mul(a, v), b)).collect();
        let mut acc = 0u64;
        for (m, c) in poly.terms() {
            let mut term = f.from_rational(c).ok_or(LinalgError::BadReduction)?;
            for (k, &ex) in m.exps().iter().enumerate() {
                term = f.mul(term, f.pow(ys[k], ex as u64));
            }
            acc = f.add(acc, term);
        }
        Ok(acc)
    };
    let xs: Vec<u64> = (0..npts as u64).collect();
    let mut values = vec![vec![0u64; npts]; delta];
    for (pi, &v) in xs.iter().enumerate() {
        let m: Vec<Vec<u64>> = e.iter().map(|r| r.iter().map(|q| entry_modp(q, v)).collect()).collect::<Result<_, _>>()?;
        for k in 1..=delta {
            values[k - 1][pi] = f.det(m[..k].iter().map(|r| r[..k].to_vec()).collect());
        }
    }
    let minors: Vec<FpPoly> = values.iter().map(|ys| FpPoly::interpolate(f, &xs, ys)).collect();
    let det = &minors[delta - 1];
    if det.is_zero() {
        return Err(LinalgError::BadReduction);
    }
    let w = det.squarefree(f);
    if w.degree() == Some(0) {
        return Ok(1);
    }
    for r in (1..delta).rev() {
        if minors[r - 1].is_zero() || !minors[r - 1].rem(&w, f).is_zero() {
            return Ok(r + 1);
        }
    }
    Ok(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, parse_poly};
    use crate::grobner::ParametricSystem;
    use crate::hermite::drl_matrix;
    use crate::linalg::berkowitz;

    fn fixture() -> HermiteMatrix {
        let s = ParametricSystem::from_strs(&["y1", "y2", "y3"], &["x1", "x2"], &["x1^2 + x2^2 - y1", "x1*x2 + y2*x2 + y3*x1"]).unwrap();
        drl_matrix(&s).unwrap()
    }

    fn toy() -> HermiteMatrix {
        drl_matrix(&ParametricSystem::from_strs(&["y1", "y2"], &["x"], &["x^2 + y1*x + y2"]).unwrap()).unwrap()
    }

    // determinant from the constant term of the characteristic polynomial
    fn oracle_det(m: &[Vec<MultiPoly>]) -> MultiPoly {
        let c = berkowitz(m)[0].clone();
        if m.len() % 2 == 1 {
            -&c
        } else {
            c
        }
    }

    fn leading(m: &[Vec<MultiPoly>], k: usize) -> Vec<Vec<MultiPoly>> {
        m[..k].iter().map(|r| r[..k].to_vec()).collect()
    }

    #[test]
    fn fixture_minors() {
        let h = fixture();
        let e = h.polynomial_entries().unwrap();
        let ms = leading_principal_minors(&h, 5).unwrap();
        let degs: Vec<u32> = ms.iter().map(|m| m.total_degree()).collect();
        assert_eq!(degs, vec![0, 2, 4, 7]);
        for (k, m) in ms.iter().enumerate() {
            assert_eq!(m, &oracle_det(&leading(&e, k + 1)));
        }
        let y1 = parse_poly("y1", h.param_ctx()).unwrap();
        assert!(ms[3].exact_div(&y1).is_ok());
        let single = minor_poly(&h, &MinorRequest::leading(3), 9).unwrap();
        assert_eq!(single, ms[2]);
        let off = MinorRequest { rows: vec![0, 1], cols: vec![1, 3], bound: None };
        let want = oracle_det(&[vec![e[0][1].clone(), e[0][3].clone()], vec![e[1][1].clone(), e[1][3].clone()]]);
        assert_eq!(minor_poly(&h, &off, 1).unwrap(), want);
    }

    #[test]
    fn toy_determinant() {
        let h = toy();
        let ms = leading_principal_minors(&h, 0).unwrap();
        assert_eq!(ms[1], parse_poly("y1^2 - 4*y2", h.param_ctx()).unwrap());
        let w = clean_factors(&ms[1], h.w_infinity()).unwrap();
        assert_eq!(w, ms[1]);
    }

    #[test]
    fn invalid_requests() {
        let h = toy();
        let bad = MinorRequest { rows: vec![1, 0], cols: vec![0, 1], bound: None };
        assert_eq!(minor_poly(&h, &bad, 0), Err(LinalgError::InvalidMinor));
        assert_eq!(congruence(&h, &[vec![1]]).unwrap_err(), LinalgError::DimensionMismatch);
    }

    #[test]
    fn congruence_scales_determinant() {
        let h = fixture();
        let a = vec![vec![1, 2, 0, -1], vec![0, 1, 3, 0], vec![1, 0, 1, 1], vec![0, -2, 0, 1]];
        let da = det_i64(&a);
        let ha = congruence(&h, &a).unwrap();
        let d0 = leading_principal_minors(&h, 1).unwrap().pop().unwrap();
        let d1 = leading_principal_minors(&ha, 1).unwrap().pop().unwrap();
        assert_eq!(d1, d0.scale(&(&da * &da)));
        let eta = [int(2), int(-1), int(3)];
        let s0 = crate::linalg::signature(&crate::hermite::specialize_matrix(&h, &eta).unwrap()).unwrap();
        let s1 = crate::linalg::signature(&crate::hermite::specialize_matrix(&ha, &eta).unwrap()).unwrap();
        assert_eq!(s0, s1);
    }

    #[test]
    fn random_congruence_on_fixture() {
        let h = fixture();
        let c = random_congruence(&h, 11, 20).unwrap();
        assert_eq!(c.attempts, 1);
        assert!(c.minors.iter().all(|m| !m.is_zero()));
        // zero in the corner forces a change of basis
        let z = ParametricSystem::from_strs(&["y1"], &["x"], &["x^2 - y1"]).unwrap();
        let hz = drl_matrix(&z).unwrap();
        let hz = hz.with_entries(vec![vec![RatFunc::zero(hz.param_ctx()), hz.entry(0, 0).clone()], vec![hz.entry(0, 0).clone(), RatFunc::zero(hz.param_ctx())]]);
        let c = random_congruence(&hz, 4, 20).unwrap();
        assert!(c.attempts > 1);
        assert!(c.minors.iter().all(|m| !m.is_zero()));
    }

    #[test]
    fn probe() {
        assert_eq!(modp_minor_probe(&fixture(), 65521, 3).unwrap(), 4);
        let id = drl_matrix(&ParametricSystem::from_strs(&["y1"], &["x"], &["x^2 - 1"]).unwrap()).unwrap();
        assert_eq!(modp_minor_probe(&id, 65521, 3).unwrap(), 1);
    }
}
