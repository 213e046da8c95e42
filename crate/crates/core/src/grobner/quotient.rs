use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_traits::One;

use super::{leading_term, GroebnerBasis, GrobnerError};
use crate::arith::{gcd, grevlex_cmp, lcm, squarefree_part, Monomial, MultiPoly, RatFunc, Rational, VarContext};

/// The monomials in the variables outside the staircase of a basis, sorted
/// by total degree and then by grevlex, so the first one is `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    monos: Vec<Monomial>,
}

impl QuotientBasis {
    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }

    /// The dimension of the quotient algebra.
    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn get(&self, i: usize) -> &Monomial {
        &self.monos[i]
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.monos.iter().position(|b| b == m)
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.monos.iter().map(Monomial::degree).collect()
    }

    /// Names of the basis monomials, e.g. `["1", "x2", "x1", "x2^2"]`.
    pub fn render(&self, ctx: &VarContext) -> Vec<String> {
        self.monos
            .iter()
            .map(|m| {
                let parts: Vec<String> = m
                    .exps()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { ctx.name(i).to_string() } else { format!("{}^{}", ctx.name(i), e) })
                    .collect();
                if parts.is_empty() { "1".to_string() } else { parts.join("*") }
            })
            .collect()
    }
}

fn x_part(m: &Monomial, n: usize) -> Monomial {
    Monomial::from_exps(m.exps()[..n].to_vec())
}

fn y_part(m: &Monomial, n: usize) -> Monomial {
    Monomial::from_exps(m.exps()[n..].to_vec())
}

/// Leading monomial in the variables and its coefficient as a polynomial in the parameters.
fn lead_x(g: &MultiPoly, gb: &GroebnerBasis, pctx: &Arc<VarContext>) -> (Monomial, MultiPoly) {
    let n = gb.ctx().nvars();
    let lm = x_part(&leading_term(g, gb.order()).unwrap().0, n);
    let lc = MultiPoly::from_terms(
        pctx,
        g.terms().filter(|(m, _)| m.exps()[..n] == *lm.exps()).map(|(m, c)| (y_part(m, n), c.clone())),
    );
    (lm, lc)
}

fn check_split(gb: &GroebnerBasis) -> Result<(), GrobnerError> {
    let ctx = gb.ctx();
    if ctx.has_aux() || gb.order() != (super::MonomialOrder::Block { split: ctx.nvars() }) {
        return Err(GrobnerError::InvalidSystem("basis must be computed for the variables-first block order".into()));
    }
    Ok(())
}

/// The staircase of a basis for the variables-first block order.
pub fn quotient_basis(gb: &GroebnerBasis) -> Result<QuotientBasis, GrobnerError> {
    check_split(gb)?;
    let n = gb.ctx().nvars();
    let lms: Vec<Monomial> = gb.leading_monomials().iter().map(|m| x_part(m, n)).collect();
    if lms.iter().any(Monomial::is_one) {
        return Err(GrobnerError::GenericallyInconsistent);
    }
    let mut bounds = vec![0u32; n];
    for (i, b) in bounds.iter_mut().enumerate() {
        *b = lms
            .iter()
            .filter(|m| m.exps().iter().enumerate().all(|(j, &e)| (j == i) == (e > 0)))
            .map(|m| m.exps()[i])
            .min()
            .ok_or(GrobnerError::NotZeroDimensional)?;
    }
    let mut seen = BTreeSet::new();
    let mut stack = vec![Monomial::one(n)];
    while let Some(m) = stack.pop() {
        if lms.iter().any(|l| l.divides(&m)) || !seen.insert(m.clone()) {
            continue;
        }
        for i in 0..n {
            if m.exps()[i] + 1 < bounds[i] {
                stack.push(m.mul(&Monomial::var(n, i, 1)));
            }
        }
    }
    let mut monos: Vec<Monomial> = seen.into_iter().collect();
    monos.sort_by(|a, b| grevlex_cmp(a.exps(), b.exps()));
    Ok(QuotientBasis { monos })
}

/// Keeps one generator per leading monomial in the variables, the one whose
/// leading coefficient has the least degree in the parameters.
pub fn reduce_gb_over_k(gb: &GroebnerBasis) -> GroebnerBasis {
    let pctx = gb.ctx().params_only();
    let mut best: HashMap<Monomial, (usize, u32)> = HashMap::new();
    for (k, g) in gb.generators().iter().enumerate() {
        let (lm, lc) = lead_x(g, gb, &pctx);
        let d = lc.total_degree();
        best.entry(lm).and_modify(|e| if d < e.1 { *e = (k, d) }).or_insert((k, d));
    }
    let keep: BTreeSet<usize> = best.values().map(|e| e.0).collect();
    let gens = keep.into_iter().map(|k| gb.generators()[k].clone()).collect();
    GroebnerBasis::from_parts(gb.ctx().clone(), gb.order(), gens, false)
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct XKey(Monomial);

impl Ord for XKey {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex_cmp(self.0.exps(), other.0.exps())
    }
}

impl PartialOrd for XKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in the variables with coefficients in the parameters.
type XPoly = BTreeMap<XKey, MultiPoly>;

#[derive(Clone, Debug)]
struct KGen {
    lm: Monomial,
    lc: MultiPoly,
    lc_const: Option<Rational>,
    tail: Vec<(Monomial, MultiPoly)>,
}

/// Normal forms modulo a basis, over the field of rational functions in the parameters.
#[derive(Clone, Debug)]
pub struct KReducer {
    ctx: Arc<VarContext>,
    pctx: Arc<VarContext>,
    basis: QuotientBasis,
    gens: Vec<KGen>,
    kept: GroebnerBasis,
}

impl KReducer {
    pub fn new(gb: &GroebnerBasis) -> Result<Self, GrobnerError> {
        let basis = quotient_basis(gb)?;
        let kept = reduce_gb_over_k(gb);
        let pctx = gb.ctx().params_only();
        let n = gb.ctx().nvars();
        let gens = kept
            .generators()
            .iter()
            .map(|g| {
                let (lm, lc) = lead_x(g, gb, &pctx);
                let mut tail: BTreeMap<Monomial, MultiPoly> = BTreeMap::new();
                for (m, c) in g.terms() {
                    let xm = x_part(m, n);
                    if xm != lm {
                        let e = tail.entry(xm).or_insert_with(|| MultiPoly::zero(&pctx));
                        e.add_term(y_part(m, n), c.clone());
                    }
                }
                KGen { lc_const: lc.as_constant(), lm, lc, tail: tail.into_iter().collect() }
            })
            .collect();
        Ok(KReducer { ctx: gb.ctx().clone(), pctx, basis, gens, kept })
    }

    pub fn basis(&self) -> &QuotientBasis {
        &self.basis
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    /// Context of the parameters, where all coefficients live.
    pub fn param_ctx(&self) -> &Arc<VarContext> {
        &self.pctx
    }

    /// The basis after dropping duplicate leading monomials.
    pub fn kept_basis(&self) -> &GroebnerBasis {
        &self.kept
    }

    /// Whether every leading coefficient in the variables is a constant.
    pub fn constant_leading_coeffs(&self) -> bool {
        self.gens.iter().all(|g| g.lc_const.is_some())
    }

    /// Squarefree part of the lcm of the leading coefficients in the variables.
    pub fn w_infinity(&self) -> MultiPoly {
        let l = self.gens.iter().fold(MultiPoly::one(&self.pctx), |acc, g| lcm(&acc, &g.lc));
        squarefree_part(&l).unwrap_or(l).normalized()
    }

    fn split(&self, p: &MultiPoly) -> XPoly {
        let n = self.ctx.nvars();
        let mut out = XPoly::new();
        for (m, c) in p.terms() {
            let e = out.entry(XKey(x_part(m, n))).or_insert_with(|| MultiPoly::zero(&self.pctx));
            e.add_term(y_part(m, n), c.clone());
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    fn reduce(&self, mut p: XPoly) -> Vec<RatFunc> {
        // the denominator is kept as the product of these factors
        let mut den: Vec<MultiPoly> = Vec::new();
        let mut upper: Option<XKey> = None;
        loop {
            let next = match &upper {
                None => p.keys().next_back().cloned(),
                Some(u) => p.range(..u.clone()).next_back().map(|(k, _)| k.clone()),
            };
            let Some(key) = next else { break };
            if let Some(g) = self.gens.iter().find(|g| g.lm.divides(&key.0)) {
                let c = p.remove(&key).unwrap();
                let q = key.0.div(&g.lm).unwrap();
                let factor = match &g.lc_const {
                    Some(l) => c.scale(&(Rational::one() / l)),
                    None => {
                        let common = gcd(&c, &g.lc);
                        let scale = g.lc.exact_div(&common).expect("gcd divides");
                        if !scale.is_constant() {
                            for v in p.values_mut() {
                                *v = &*v * &scale;
                            }
                            den.push(scale.clone());
                        }
                        let c = c.exact_div(&common).expect("gcd divides");
                        match scale.as_constant() {
                            Some(k) => c.scale(&(Rational::one() / k)),
                            None => c,
                        }
                    }
                };
                for (tm, tc) in &g.tail {
                    let k = XKey(tm.mul(&q));
                    let e = p.entry(k.clone()).or_insert_with(|| MultiPoly::zero(&self.pctx));
                    *e = &*e - &(&factor * tc);
                    if e.is_zero() {
                        p.remove(&k);
                    }
                }
            }
            upper = Some(key);
        }
        self.basis
            .monomials()
            .iter()
            .map(|b| match p.get(&XKey(b.clone())) {
                Some(c) => {
                    let mut num = c.clone();
                    let mut rest = MultiPoly::one(&self.pctx);
                    for f in &den {
                        match num.exact_div(f) {
                            Ok(q) => num = q,
                            Err(_) => rest = &rest * f,
                        }
                    }
                    RatFunc::new(num, rest).expect("nonzero denominator")
                }
                None => RatFunc::zero(&self.pctx),
            })
            .collect()
    }

    /// Coordinates of the normal form of `p` in the quotient basis.
    pub fn normal_form(&self, p: &MultiPoly) -> Vec<RatFunc> {
        self.reduce(self.split(p))
    }

    /// Coordinates of the normal form of a monomial in the variables.
    pub fn normal_form_monomial(&self, m: &Monomial) -> Vec<RatFunc> {
        let mut p = XPoly::new();
        p.insert(XKey(m.clone()), MultiPoly::one(&self.pctx));
        self.reduce(p)
    }

    /// The polynomial `sum c_k b_k` when every coordinate is polynomial.
    pub fn to_poly(&self, coords: &[RatFunc]) -> Option<MultiPoly> {
        let n = self.ctx.nvars();
        let mut out = MultiPoly::zero(&self.ctx);
        for (c, b) in coords.iter().zip(self.basis.monomials()) {
            let c = c.as_poly()?;
            for (m, v) in c.terms() {
                let mut exps = b.exps().to_vec();
                exps.resize(n, 0);
                exps.extend_from_slice(m.exps());
                out.add_term(Monomial::from_exps(exps), v.clone());
            }
        }
        Some(out)
    }
}

/// Coordinates in the quotient basis of the normal form of `p`.
pub fn normal_form(p: &MultiPoly, gb: &GroebnerBasis) -> Result<Vec<RatFunc>, GrobnerError> {
    Ok(KReducer::new(gb)?.normal_form(p))
}

#[cfg(test)]
mod tests {
    use super::super::ParametricSystem;
    use super::*;
    use crate::arith::parse_poly;

    fn fixture() -> ParametricSystem {
        ParametricSystem::from_strs(&["y1", "y2", "y3"], &["x1", "x2"], &["x1^2 + x2^2 - y1", "x1*x2 + y2*x2 + y3*x1"]).unwrap()
    }

    #[test]
    fn fixture_staircase() {
        let s = fixture();
        let gb = s.groebner();
        let b = quotient_basis(&gb).unwrap();
        assert_eq!(b.render(s.ctx()), vec!["1", "x2", "x1", "x2^2"]);
        assert_eq!(b.degrees(), vec![0, 1, 1, 2]);
    }

    #[test]
    fn small_staircases() {
        let toy = ParametricSystem::from_strs(&["y1", "y2"], &["x"], &["x^2 + y1*x + y2"]).unwrap();
        assert_eq!(quotient_basis(&toy.groebner()).unwrap().render(toy.ctx()), vec!["1", "x"]);
        let pts = ParametricSystem::from_strs(&["y1"], &["x1", "x2"], &["x1", "x2"]).unwrap();
        assert_eq!(quotient_basis(&pts.groebner()).unwrap().len(), 1);
        let curve = ParametricSystem::from_strs(&["y1"], &["x1", "x2"], &["x1^2 + x2^2 - y1"]).unwrap();
        assert_eq!(quotient_basis(&curve.groebner()), Err(GrobnerError::NotZeroDimensional));
        let empty = ParametricSystem::from_strs(&["y1"], &["x"], &["x - y1", "x + 1"]).unwrap();
        assert_eq!(quotient_basis(&empty.groebner()), Err(GrobnerError::GenericallyInconsistent));
    }

    #[test]
    fn normal_forms() {
        let s = fixture();
        let gb = s.groebner();
        let r = KReducer::new(&gb).unwrap();
        let nf = |src: &str| r.to_poly(&r.normal_form(&parse_poly(src, s.ctx()).unwrap())).unwrap();
        assert_eq!(nf("x1^2"), parse_poly("y1 - x2^2", s.ctx()).unwrap());
        for p in s.polys() {
            assert!(nf(&p.to_string()).is_zero());
        }
        for b in r.basis().render(s.ctx()) {
            assert_eq!(nf(&b), parse_poly(&b, s.ctx()).unwrap());
        }
        let once = nf("x1^3*x2 + y2*x1^2*x2^2 - 5");
        assert_eq!(nf(&once.to_string()), once);
    }

    #[test]
    fn rational_function_coordinates() {
        let s = ParametricSystem::from_strs(&["y1"], &["x"], &["y1*x^2 - 1"]).unwrap();
        let r = KReducer::new(&s.groebner()).unwrap();
        let c = r.normal_form(&parse_poly("x^3", s.ctx()).unwrap());
        assert!(c[0].is_zero());
        assert_eq!(c[1].to_string(), "(1) / (y1)");
        assert!(!r.constant_leading_coeffs());
        assert_eq!(r.w_infinity().to_string(), "y1");
    }

    #[test]
    fn duplicate_leading_monomials_dropped() {
        let s = fixture();
        let gb = s.groebner();
        let y1 = parse_poly("y1", s.ctx()).unwrap();
        let mut gens = gb.generators().to_vec();
        gens.push(&gens[0] * &y1);
        let padded = GroebnerBasis::from_parts(gb.ctx().clone(), gb.order(), gens, false);
        let kept = reduce_gb_over_k(&padded);
        assert_eq!(kept.generators(), gb.generators());
        assert_eq!(quotient_basis(&kept), quotient_basis(&gb));
        assert_eq!(reduce_gb_over_k(&gb).generators(), gb.generators());
    }
}
