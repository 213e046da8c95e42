use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{GroebnerBasis, MonomialOrder};
use crate::arith::{Monomial, MultiPoly, Rational, VarContext};

type Terms = Vec<(Monomial, BigInt)>;

/// Integer polynomial with terms sorted by decreasing monomial.
#[derive(Clone, Debug)]
pub(crate) struct IPoly {
    terms: Terms,
}

impl IPoly {
    pub(crate) fn from_multi(p: &MultiPoly, order: MonomialOrder) -> Self {
        let mut terms = p.integer_coeffs();
        terms.sort_by(|a, b| order.cmp(b.0.exps(), a.0.exps()));
        let mut q = IPoly { terms };
        q.make_primitive();
        q
    }

    pub(crate) fn to_multi(&self, ctx: &Arc<VarContext>) -> MultiPoly {
        MultiPoly::from_terms(ctx, self.terms.iter().map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()))))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = content(&self.terms);
        if self.lc().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for t in &mut self.terms {
                t.1 = &t.1 / &g;
            }
        }
    }
}

fn content(terms: &[(Monomial, BigInt)]) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in terms {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// `a*f - b*m*g` for `f`, `g` sorted decreasingly.
fn combine(order: MonomialOrder, a: &BigInt, f: &[(Monomial, BigInt)], b: &BigInt, m: &Monomial, g: &[(Monomial, BigInt)]) -> Terms {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let mut gj: Option<Monomial> = g.first().map(|t| t.0.mul(m));
    while i < f.len() || j < g.len() {
        let ord = match (f.get(i), &gj) {
            (Some(ft), Some(gm)) => order.cmp(ft.0.exps(), gm.exps()),
            (Some(_), None) => Ordering::Greater,
            (None, _) => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push((f[i].0.clone(), &f[i].1 * a));
                i += 1;
            }
            Ordering::Less => {
                out.push((gj.take().unwrap(), -(&g[j].1 * b)));
                j += 1;
                gj = g.get(j).map(|t| t.0.mul(m));
            }
            Ordering::Equal => {
                let c = &f[i].1 * a - &g[j].1 * b;
                if !c.is_zero() {
                    out.push((gj.take().unwrap(), c));
                }
                i += 1;
                j += 1;
                gj = g.get(j).map(|t| t.0.mul(m));
            }
        }
    }
    out
}

/// Fully reduces `p` by the leading terms of `basis`. Returns the reduced
/// terms together with `mult` such that `remainder = terms / mult` over ℚ.
pub(crate) fn reduce_full(p: &IPoly, basis: &[&IPoly], order: MonomialOrder) -> (IPoly, Rational) {
    let mut cur: Terms = p.terms.clone();
    let mut start = 0usize;
    let mut done: Terms = Vec::new();
    let mut mult = Rational::one();
    let mut steps = 0usize;
    while start < cur.len() {
        let (m, c) = &cur[start];
        match basis.iter().find(|g| g.lm().divides(m)) {
            Some(g) => {
                let gam = c.gcd(g.lc());
                let a = g.lc() / &gam;
                let b = c / &gam;
                let q = m.div(g.lm()).unwrap();
                cur = combine(order, &a, &cur[start + 1..], &b, &q, &g.terms[1..]);
                start = 0;
                if !a.is_one() {
                    for t in &mut done {
                        t.1 *= &a;
                    }
                    mult *= Rational::from_integer(a);
                }
                steps += 1;
                if steps % 8 == 0 {
                    let mut k = content(&cur).gcd(&content(&done));
                    if k.is_zero() {
                        k = BigInt::one();
                    }
                    if !k.is_one() {
                        for t in cur.iter_mut().chain(done.iter_mut()) {
                            t.1 = &t.1 / &k;
                        }
                        mult /= Rational::from_integer(k);
                    }
                }
            }
            None => {
                done.push(cur[start].clone());
                start += 1;
            }
        }
    }
    let mut r = IPoly { terms: done };
    if !r.is_zero() {
        let mut k = content(&r.terms);
        if r.lc().is_negative() {
            k = -k;
        }
        r.make_primitive();
        mult /= Rational::from_integer(k);
    }
    (r, mult)
}

fn s_poly(f: &IPoly, g: &IPoly, order: MonomialOrder) -> IPoly {
    let l = f.lm().lcm(g.lm());
    let gam = f.lc().gcd(g.lc());
    let a = g.lc() / &gam;
    let b = f.lc() / &gam;
    let mf = l.div(f.lm()).unwrap();
    let mg = l.div(g.lm()).unwrap();
    let fm: Terms = f.terms[1..].iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
    IPoly { terms: combine(order, &a, &fm, &b, &mg, &g.terms[1..]) }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Engine {
    order: MonomialOrder,
    store: Vec<IPoly>,
    sugar: Vec<u32>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Engine {
    fn pair_sugar(&self, i: usize, j: usize, l: &Monomial) -> u32 {
        let s = |k: usize| self.sugar[k] + l.degree() - self.store[k].lm().degree();
        s(i).max(s(j))
    }

    /// Gebauer-Moeller installation of a new basis element.
    fn update(&mut self, h: usize) {
        let lmh = self.store[h].lm().clone();
        let cands: Vec<(usize, Monomial)> = self.active.iter().map(|&g| (g, self.store[g].lm().lcm(&lmh))).collect();
        let coprime = |g: usize, s: &Engine| s.store[g].lm().gcd(&lmh).is_one();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (idx, (g, l)) in cands.iter().enumerate() {
            let keep = coprime(*g, self)
                || (!cands[idx + 1..].iter().any(|(_, l2)| l2.divides(l)) && !kept.iter().any(|(_, l2)| l2.divides(l)));
            if keep {
                kept.push((*g, l.clone()));
            }
        }
        kept.retain(|(g, _)| !coprime(*g, self));
        let store = &self.store;
        self.pairs.retain(|p| {
            !(lmh.divides(&p.lcm)
                && store[p.i].lm().lcm(&lmh) != p.lcm
                && store[p.j].lm().lcm(&lmh) != p.lcm)
        });
        for (g, l) in kept {
            let sugar = self.pair_sugar(g, h, &l);
            self.pairs.push(Pair { i: g, j: h, lcm: l, sugar });
        }
        let store = &self.store;
        self.active.retain(|&g| !lmh.divides(store[g].lm()));
        self.active.push(h);
    }

    fn add(&mut self, p: IPoly, sugar: u32) {
        self.store.push(p);
        self.sugar.push(sugar);
        self.update(self.store.len() - 1);
    }

    fn reduce_by_active(&self, p: &IPoly) -> IPoly {
        let basis: Vec<&IPoly> = self.active.iter().map(|&k| &self.store[k]).collect();
        reduce_full(p, &basis, self.order).0
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.sugar.cmp(&b.1.sugar).then_with(|| order.cmp(a.1.lcm.exps(), b.1.lcm.exps())))?
            .0;
        Some(self.pairs.swap_remove(best))
    }
}

fn total_degree(p: &IPoly) -> u32 {
    p.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
}

/// Reduced Groebner basis of the ideal generated by `polys`.
///
/// Coefficients are kept integral throughout; generators come out primitive
/// with positive leading coefficient, sorted by increasing leading monomial.
pub fn buchberger(polys: &[MultiPoly], order: MonomialOrder) -> GroebnerBasis {
    let ctx = polys[0].ctx().clone();
    let mut inputs: Vec<IPoly> = polys.iter().filter(|p| !p.is_zero()).map(|p| IPoly::from_multi(p, order)).collect();
    inputs.sort_by(|a, b| order.cmp(a.lm().exps(), b.lm().exps()));
    let mut eng = Engine { order, store: Vec::new(), sugar: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    for f in inputs {
        let sugar = total_degree(&f);
        let h = eng.reduce_by_active(&f);
        if !h.is_zero() {
            eng.add(h, sugar);
        }
    }
    while let Some(pair) = eng.next_pair() {
        let s = s_poly(&eng.store[pair.i], &eng.store[pair.j], order);
        let h = eng.reduce_by_active(&s);
        if !h.is_zero() {
            let sugar = pair.sugar.max(total_degree(&h));
            eng.add(h, sugar);
        }
    }
    let mut basis: Vec<IPoly> = eng.active.iter().map(|&k| eng.store[k].clone()).collect();
    basis.sort_by(|a, b| order.cmp(a.lm().exps(), b.lm().exps()));
    let reduced: Vec<IPoly> = (0..basis.len())
        .map(|k| {
            let others: Vec<&IPoly> = basis.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, g)| g).collect();
            reduce_full(&basis[k], &others, order).0
        })
        .collect();
    let gens = reduced.iter().map(|g| g.to_multi(&ctx)).collect();
    GroebnerBasis::from_parts(ctx, order, gens, true)
}

/// S-polynomial of two polynomials, scaled to integer coefficients.
pub fn s_polynomial(f: &MultiPoly, g: &MultiPoly, order: MonomialOrder) -> MultiPoly {
    let a = IPoly::from_multi(f, order);
    let b = IPoly::from_multi(g, order);
    s_poly(&a, &b, order).to_multi(f.ctx())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, VarContext};

    fn sys(ctx: &Arc<VarContext>, srcs: &[&str]) -> Vec<MultiPoly> {
        srcs.iter().map(|s| parse_poly(s, ctx).unwrap()).collect()
    }

    #[test]
    fn already_reduced_input() {
        let ctx = VarContext::new(&["y1"], &["x1"]).unwrap();
        let g = buchberger(&sys(&ctx, &["x1 - 1"]), MonomialOrder::Block { split: 1 });
        assert_eq!(g.generators(), &sys(&ctx, &["x1 - 1"])[..]);
    }

    #[test]
    fn fixture_basis() {
        let ctx = VarContext::new(&["y1", "y2", "y3"], &["x1", "x2"]).unwrap();
        let f = sys(&ctx, &["x1^2 + x2^2 - y1", "x1*x2 + y2*x2 + y3*x1"]);
        let g = buchberger(&f, MonomialOrder::Block { split: 2 });
        let mut want = sys(
            &ctx,
            &[
                "x2^3 + y3*x2^2 + (y2^2 - y1)*x2 + y2*y3*x1 - y1*y3",
                "x1^2 + x2^2 - y1",
                "x1*x2 + x1*y3 + x2*y2",
            ],
        );
        let mut got = g.generators().to_vec();
        let key = |p: &MultiPoly| p.to_string();
        want.sort_by_key(key);
        got.sort_by_key(key);
        assert_eq!(got, want);
        for a in g.generators() {
            for b in g.generators() {
                assert!(g.reduce(&s_polynomial(a, b, g.order())).is_zero());
            }
        }
    }

    #[test]
    fn deterministic_and_order_independent() {
        let ctx = VarContext::new(&["y1"], &["x1", "x2"]).unwrap();
        let f = sys(&ctx, &["x1^2 + x2 - y1", "x2^2 - x1*y1 + 1", "x1*x2 - 2"]);
        let mut rev = f.clone();
        rev.reverse();
        for order in [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::Block { split: 2 }] {
            let a = buchberger(&f, order);
            let b = buchberger(&rev, order);
            assert_eq!(a.generators(), b.generators());
            for p in &f {
                assert!(a.reduce(p).is_zero());
            }
        }
    }
}
