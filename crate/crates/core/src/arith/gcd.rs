use num_traits::Zero;

use super::{ArithError, Monomial, MultiPoly, Rational};
use crate::univariate::{gcd_q, subresultant_gcd_core, UPoly};

/// Image of `p` in `Q[y_v]` after fixing the other indeterminates; `None`
/// when the degree in `v` drops.
fn image(p: &MultiPoly, v: usize, point: &[Rational]) -> Option<UPoly<Rational>> {
    let cs = p.coeffs_in(v);
    let vals: Vec<Rational> = cs.iter().map(|c| c.evaluate(point).expect("full point")).collect();
    if vals.last().map_or(true, Zero::is_zero) {
        return None;
    }
    Some(UPoly::new(vals, Rational::zero()))
}

/// Deterministic evaluation points with small integer coordinates.
fn probe_points(len: usize) -> impl Iterator<Item = Vec<Rational>> {
    (0..4i64).map(move |k| (0..len).map(|i| Rational::from_integer((3 + 7 * k + 5 * i as i64 * (k + 1)).into())).collect())
}

fn nonconstant(u: &UPoly<Rational>) -> bool {
    u.degree().unwrap_or(0) > 0
}

/// True when some degree-preserving univariate image certifies that `a` and
/// `b` share no factor depending on `v`.
fn coprime_in(a: &MultiPoly, b: &MultiPoly, v: usize) -> bool {
    probe_points(a.ctx().len()).any(|pt| match (image(a, v, &pt), image(b, v, &pt)) {
        (Some(ia), Some(ib)) => !nonconstant(&gcd_q(&ia, &ib)),
        _ => false,
    })
}

fn certainly_coprime(a: &MultiPoly, b: &MultiPoly) -> bool {
    (0..a.ctx().len()).all(|v| !(a.depends_on(v) && b.depends_on(v)) || coprime_in(a, b, v))
}

fn certainly_squarefree(p: &MultiPoly) -> bool {
    p.support_vars().into_iter().all(|v| {
        probe_points(p.ctx().len()).any(|pt| match image(p, v, &pt) {
            Some(i) => !nonconstant(&gcd_q(&i, &i.derivative())),
            None => false,
        })
    })
}

fn from_upoly(u: &UPoly<Rational>, like: &MultiPoly, v: usize) -> MultiPoly {
    let ctx = like.ctx();
    let cs: Vec<MultiPoly> = u.coeffs().iter().map(|c| MultiPoly::constant(ctx, c.clone())).collect();
    MultiPoly::from_coeffs_in(ctx, v, &cs)
}

fn to_upoly(p: &MultiPoly, v: usize) -> UPoly<MultiPoly> {
    UPoly::new(p.coeffs_in(v), MultiPoly::zero(p.ctx()))
}

/// Gcd of the coefficients of `p` viewed as a polynomial in the indeterminate `v`.
pub fn content_in(p: &MultiPoly, v: usize) -> MultiPoly {
    gcd_many(&p.coeffs_in(v))
}

fn primitive_in(p: &MultiPoly, v: usize) -> (MultiPoly, MultiPoly) {
    let c = content_in(p, v);
    let q = p.exact_div(&c).expect("content divides");
    (c, q)
}

/// Coefficients (lowest first) of the polynomial through `(xs[i], ys[i])`.
fn newton(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    let n = xs.len();
    let mut c = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            c[i] = (&c[i] - &c[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut poly = vec![Rational::zero(); n];
    for k in (0..n).rev() {
        let mut next = vec![Rational::zero(); n];
        for d in 0..n {
            if poly[d].is_zero() {
                continue;
            }
            if d + 1 < n {
                next[d + 1] += &poly[d];
            }
            next[d] -= &poly[d] * &xs[k];
        }
        next[0] += &c[k];
        poly = next;
    }
    poly
}

/// Key of a monomial with the `w` exponent dropped.
fn key(m: &Monomial, w: usize) -> Vec<u32> {
    let mut e = m.exps().to_vec();
    e[w] = 0;
    e
}

/// Coefficient in `Q[y_w]` of the lex-largest monomial in the other indeterminates.
fn lead_in(p: &MultiPoly, w: usize) -> (Vec<u32>, MultiPoly) {
    let top = p.terms().map(|(m, _)| key(m, w)).max().expect("nonzero");
    let mut lc = MultiPoly::zero(p.ctx());
    for (m, c) in p.terms() {
        if key(m, w) == top {
            lc.add_term(Monomial::var(m.len(), w, m.exps()[w]), c.clone());
        }
    }
    (top, lc)
}

/// Content with respect to every indeterminate except `w`; lives in `Q[y_w]`.
fn content_except(p: &MultiPoly, w: usize) -> MultiPoly {
    let mut groups: std::collections::BTreeMap<Vec<u32>, MultiPoly> = std::collections::BTreeMap::new();
    for (m, c) in p.terms() {
        let len = m.len();
        groups.entry(key(m, w)).or_insert_with(|| MultiPoly::zero(p.ctx())).add_term(Monomial::var(len, w, m.exps()[w]), c.clone());
    }
    let cs: Vec<MultiPoly> = groups.into_values().collect();
    gcd_many(&cs)
}

/// Dense evaluation/interpolation gcd in the indeterminate `w` of primitive
/// (with respect to the other indeterminates) inputs.
fn brown(a: &MultiPoly, b: &MultiPoly, w: usize) -> MultiPoly {
    let ctx = a.ctx().clone();
    let (_, la) = lead_in(a, w);
    let (_, lb) = lead_in(b, w);
    let gamma = gcd(&la, &lb);
    let bound = (gamma.degree_in(w) + a.degree_in(w).min(b.degree_in(w))) as usize + 1;
    let mut pts: Vec<(Rational, MultiPoly)> = Vec::new();
    let mut best: Option<Vec<u32>> = None;
    let mut k = 0i64;
    loop {
        k += 1;
        let x = Rational::from_integer(k.into());
        let at = |p: &MultiPoly| p.substitute(w, &x);
        let gx = at(&gamma).as_constant().unwrap_or_else(Rational::zero);
        if gx.is_zero() || at(&la).is_zero() || at(&lb).is_zero() {
            continue;
        }
        let g = gcd(&at(a), &at(b));
        if g.is_constant() {
            return MultiPoly::one(&ctx);
        }
        let (top, lc) = lead_in(&g, w);
        let g = g.scale(&(gx / lc.as_constant().expect("free of w")));
        match &best {
            Some(t) if &top > t => continue,
            Some(t) if &top < t => pts.clear(),
            _ => {}
        }
        best = Some(top);
        pts.push((x, g));
        if pts.len() < bound {
            continue;
        }
        let xs: Vec<Rational> = pts.iter().map(|(x, _)| x.clone()).collect();
        let keys: std::collections::BTreeSet<Monomial> =
            pts.iter().flat_map(|(_, g)| g.terms().map(|(m, _)| m.clone()).collect::<Vec<_>>()).collect();
        let mut out = MultiPoly::zero(&ctx);
        for m in keys {
            let ys: Vec<Rational> = pts.iter().map(|(_, g)| g.coeff(&m)).collect();
            for (e, c) in newton(&xs, &ys).into_iter().enumerate() {
                if !c.is_zero() {
                    let mut exps = m.exps().to_vec();
                    exps[w] = e as u32;
                    out.add_term(Monomial::from_exps(exps), c);
                }
            }
        }
        let c = content_except(&out, w);
        let g = out.exact_div(&c).expect("content divides").normalized();
        if a.exact_div(&g).is_ok() && b.exact_div(&g).is_ok() {
            return g;
        }
        pts.clear();
        best = None;
    }
}

/// Greatest common divisor, normalized (primitive, positive grevlex lead).
///
/// Zero and one arguments follow the usual conventions: `gcd(p, 0)` is the
/// normalized `p`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    assert!(a.same_ctx(b), "context mismatch in gcd");
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.ctx());
    }
    let support: Vec<usize> = (0..a.ctx().len()).filter(|&i| a.depends_on(i) || b.depends_on(i)).collect();
    if let [v] = support[..] {
        let zero = Rational::zero();
        let ua = UPoly::new(a.coeffs_in(v).iter().map(|c| c.as_constant().unwrap_or_else(|| zero.clone())).collect(), zero.clone());
        let ub = UPoly::new(b.coeffs_in(v).iter().map(|c| c.as_constant().unwrap_or_else(|| zero.clone())).collect(), zero.clone());
        return from_upoly(&gcd_q(&ua, &ub), a, v).normalized();
    }
    if certainly_coprime(a, b) {
        return MultiPoly::one(a.ctx());
    }
    if b.exact_div(a).is_ok() {
        return a.normalized();
    }
    if a.exact_div(b).is_ok() {
        return b.normalized();
    }
    let both: Vec<usize> = support.iter().copied().filter(|&i| a.depends_on(i) && b.depends_on(i)).collect();
    if both.len() >= 2 {
        let w = *both.iter().min_by_key(|&&i| (a.degree_in(i).max(b.degree_in(i)), i)).unwrap();
        let (ca, cb) = (content_except(a, w), content_except(b, w));
        let pa = a.exact_div(&ca).expect("content divides");
        let pb = b.exact_div(&cb).expect("content divides");
        return (&gcd(&ca, &cb) * &brown(&pa, &pb, w)).normalized();
    }
    let v = (0..a.ctx().len()).rev().find(|&i| a.depends_on(i) || b.depends_on(i)).unwrap();
    if !a.depends_on(v) {
        return gcd(a, &content_in(b, v));
    }
    if !b.depends_on(v) {
        return gcd(&content_in(a, v), b);
    }
    let (ca, pa) = primitive_in(a, v);
    let (cb, pb) = primitive_in(b, v);
    let d = gcd(&ca, &cb);
    let g = subresultant_gcd_core(&to_upoly(&pa, v), &to_upoly(&pb, v));
    let g = MultiPoly::from_coeffs_in(a.ctx(), v, g.coeffs());
    let (_, g) = primitive_in(&g, v);
    (&d * &g).normalized()
}

pub fn gcd_many(ps: &[MultiPoly]) -> MultiPoly {
    let mut it = ps.iter().filter(|p| !p.is_zero());
    let first = match it.next() {
        Some(p) => p.normalized(),
        None => return ps.first().map(|p| MultiPoly::zero(p.ctx())).expect("gcd of an empty list"),
    };
    let mut g = first;
    for p in it {
        if g.is_one() {
            break;
        }
        g = gcd(&g, p);
    }
    g
}

pub fn lcm(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero(a.ctx());
    }
    let g = gcd(a, b);
    (&a.exact_div(&g).expect("gcd divides") * b).normalized()
}

/// Product of the distinct irreducible factors of `p`, normalized.
pub fn squarefree_part(p: &MultiPoly) -> Result<MultiPoly, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(MultiPoly::one(p.ctx()));
    }
    if certainly_squarefree(p) {
        return Ok(p.normalized());
    }
    let mut parts = vec![p.clone()];
    parts.extend(p.support_vars().into_iter().map(|v| p.derivative(v)));
    let g = gcd_many(&parts);
    Ok(p.exact_div(&g)?.normalized())
}
