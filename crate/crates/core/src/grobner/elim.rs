use rand::Rng;

use super::{buchberger, quotient_basis, GrobnerError, MonomialOrder, ParametricSystem};
use crate::arith::{gcd_many, squarefree_part, MultiPoly};

/// Generator of the elimination ideal for a linear form `u = sum a_i x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminatingPoly {
    /// Squarefree, free of the variables; lives over the variables, `u` and the parameters.
    pub w: MultiPoly,
    pub a: Vec<i64>,
    /// Degree of `w` in `u`.
    pub degree: usize,
    /// Layout index of `u`.
    pub u: usize,
}

fn fresh_aux_name(sys: &ParametricSystem) -> String {
    let mut name = "u".to_string();
    while sys.ctx().index_of(&name).is_some() {
        name.push('_');
    }
    name
}

fn eliminate(sys: &ParametricSystem, a: &[i64], delta: usize) -> Result<EliminatingPoly, GrobnerError> {
    let n = sys.n();
    if a.len() != n || a.iter().all(|&c| c == 0) {
        return Err(GrobnerError::InvalidSystem("linear form must be a nonzero vector of length n".into()));
    }
    let ctx = sys.ctx().with_aux(&fresh_aux_name(sys))?;
    let u = ctx.aux_index().unwrap();
    let mut polys: Vec<MultiPoly> = sys.polys().iter().map(|p| p.rename_into(&ctx)).collect::<Result<_, _>>()?;
    let mut form = MultiPoly::var(&ctx, u);
    for (i, &c) in a.iter().enumerate() {
        if c != 0 {
            form = &form - &MultiPoly::var(&ctx, i).scale(&crate::arith::int(c));
        }
    }
    polys.push(form);
    let gb = buchberger(&polys, MonomialOrder::Block { split: n });
    let free: Vec<MultiPoly> = gb.generators().iter().filter(|g| g.degree_in_range(0..n) == 0).cloned().collect();
    if free.is_empty() {
        return Err(GrobnerError::EmptyElimination);
    }
    let w = squarefree_part(&gcd_many(&free))?.normalized();
    let degree = w.degree_in(u) as usize;
    if degree < delta {
        return Err(GrobnerError::DegenerateLinearForm { degree, expected: delta });
    }
    Ok(EliminatingPoly { w, a: a.to_vec(), degree, u })
}

/// Squarefree gcd of the generators free of the variables in the elimination
/// ideal of `f` and `u - sum a_i x_i`.
pub fn elimination_ideal_generator(sys: &ParametricSystem, a: &[i64]) -> Result<EliminatingPoly, GrobnerError> {
    let delta = quotient_basis(&sys.groebner())?.len();
    eliminate(sys, a, delta)
}

/// Tries `a = (0, ..., 0, 1)` first and then seeded random forms with
/// entries in `[-10, 10]`, up to `tries` attempts in total.
pub fn eliminating_polynomial(sys: &ParametricSystem, seed: u64, tries: usize) -> Result<EliminatingPoly, GrobnerError> {
    let delta = quotient_basis(&sys.groebner())?.len();
    let n = sys.n();
    let mut a = vec![0i64; n];
    a[n - 1] = 1;
    let mut rng = crate::rng::stream(seed, "linear-form");
    let mut last = GrobnerError::EmptyElimination;
    for _ in 0..tries.max(1) {
        match eliminate(sys, &a, delta) {
            Ok(w) => return Ok(w),
            Err(e @ GrobnerError::DegenerateLinearForm { .. }) => last = e,
            Err(e) => return Err(e),
        }
        loop {
            a = (0..n).map(|_| rng.gen_range(-10..=10)).collect();
            if a.iter().any(|&c| c != 0) {
                break;
            }
        }
    }
    Err(last)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_poly;

    #[test]
    fn fixture_with_second_variable() {
        let s = ParametricSystem::from_strs(&["y1", "y2", "y3"], &["x1", "x2"], &["x1^2 + x2^2 - y1", "x1*x2 + y2*x2 + y3*x1"]).unwrap();
        let e = elimination_ideal_generator(&s, &[0, 1]).unwrap();
        let want = parse_poly("u^4 + 2*y3*u^3 + (y2^2 + y3^2 - y1)*u^2 - 2*y1*y3*u - y1*y3^2", e.w.ctx()).unwrap();
        assert_eq!(e.w, want);
        assert_eq!(e.degree, 4);
        assert!(e.w.total_degree() <= 4);
    }

    #[test]
    fn single_equation() {
        let s = ParametricSystem::from_strs(&["y1", "y2"], &["x"], &["x^2 + y1*x + y2"]).unwrap();
        let e = elimination_ideal_generator(&s, &[1]).unwrap();
        assert_eq!(e.w, parse_poly("u^2 + y1*u + y2", e.w.ctx()).unwrap());
    }

    #[test]
    fn degenerate_form_is_resampled() {
        // u = x1 does not separate (1, 1) from (1, -1) when y1 = 1
        let s = ParametricSystem::from_strs(&["y1"], &["x1", "x2"], &["x1^2 - y1", "x2^2 - 1"]).unwrap();
        assert!(matches!(elimination_ideal_generator(&s, &[1, 0]), Err(GrobnerError::DegenerateLinearForm { degree: 2, expected: 4 })));
        let e = eliminating_polynomial(&s, 3, 20).unwrap();
        assert_eq!(e.degree, 4);
        // the default form x2 is degenerate too, so a random one was used
        assert_ne!(e.a, vec![0, 1]);
    }

    #[test]
    fn name_clash_with_u() {
        let s = ParametricSystem::from_strs(&["y1"], &["u"], &["u^2 - y1"]).unwrap();
        let e = elimination_ideal_generator(&s, &[1]).unwrap();
        assert_eq!(e.w.ctx().name(e.u), "u_");
    }
}
