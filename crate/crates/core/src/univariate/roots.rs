use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{subresultant_gcd_core, UPoly, UnivariateError};
use crate::arith::{MultiPoly, Rational};
use crate::linalg::{Fp, FpPoly};

/// Interval containing exactly one real root of the polynomial it was
/// computed for. When `exact` is set the root is `lower == upper`;
/// otherwise the interval is open and its endpoints are not roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsolatingInterval {
    #[serde(serialize_with = "ser_rat")]
    pub lower: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub upper: Rational,
    pub exact: bool,
}

fn ser_rat<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl IsolatingInterval {
    fn exact(r: Rational) -> Self {
        IsolatingInterval { lower: r.clone(), upper: r, exact: true }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        if self.exact {
            x == &self.lower
        } else {
            &self.lower < x && x < &self.upper
        }
    }
}

/// The polynomial in `var` as a dense rational polynomial, provided it
/// involves no other indeterminate.
pub fn upoly_from_multi(p: &MultiPoly, var: usize) -> Result<UPoly<Rational>, UnivariateError> {
    if p.terms().any(|(m, _)| m.exps().iter().enumerate().any(|(i, &e)| i != var && e > 0)) {
        return Err(UnivariateError::NotUnivariate);
    }
    let coeffs = p.coeffs_in(var).into_iter().map(|c| c.as_constant().unwrap()).collect();
    Ok(UPoly::new(coeffs, Rational::zero()))
}

fn monic(p: &UPoly<Rational>) -> UPoly<Rational> {
    let lc = p.lc().clone();
    UPoly::new(p.coeffs().iter().map(|c| c / &lc).collect(), Rational::zero())
}

/// Primitive integer multiple with positive leading coefficient.
fn to_zpoly(p: &UPoly<Rational>) -> UPoly<BigInt> {
    let den = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    primitive(UPoly::new(ints, BigInt::zero()))
}

fn primitive(p: UPoly<BigInt>) -> UPoly<BigInt> {
    if p.is_zero() {
        return p;
    }
    let mut g = p.coeffs().iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if p.lc().is_negative() {
        g = -g;
    }
    p.exact_div_scalar(&g).expect("content divides")
}

fn to_qpoly(p: &UPoly<BigInt>) -> UPoly<Rational> {
    p.map(Rational::zero(), |c| Rational::from_integer(c.clone()))
}

/// Exact quotient of integer polynomials, `b` dividing `a` over the rationals
/// and `b` primitive.
fn zquo(a: &UPoly<BigInt>, b: &UPoly<BigInt>) -> UPoly<BigInt> {
    let db = b.degree().expect("division by zero polynomial");
    let Some(da) = a.degree() else { return a.clone() };
    let mut r = a.coeffs().to_vec();
    let mut q = vec![BigInt::zero(); da + 1 - db];
    for k in (db..=da).rev() {
        let c = &r[k] / b.lc();
        for j in 0..=db {
            r[k - db + j] -= &c * &b.coeffs()[j];
        }
        q[k - db] = c;
    }
    UPoly::new(q, BigInt::zero())
}

/// Image mod `f.p`, `None` when the leading coefficient vanishes.
fn mod_image(a: &UPoly<BigInt>, f: Fp) -> Option<FpPoly> {
    let v: Vec<u64> = a.coeffs().iter().map(|c| f.from_rational(&Rational::from_integer(c.clone())).unwrap()).collect();
    (*v.last()? != 0).then_some(FpPoly(v))
}

/// A constant gcd modulo a prime not dividing either leading coefficient
/// proves coprimality over the integers.
fn coprime_mod_p(a: &UPoly<BigInt>, b: &UPoly<BigInt>) -> bool {
    [2_147_483_647u64, 2_147_483_629, 2_147_483_587].into_iter().any(|p| {
        let f = Fp::new(p);
        match (mod_image(a, f), mod_image(b, f)) {
            (Some(x), Some(y)) => x.gcd(&y, f).degree() == Some(0),
            _ => false,
        }
    })
}

fn zgcd(a: &UPoly<BigInt>, b: &UPoly<BigInt>) -> UPoly<BigInt> {
    if a.is_zero() {
        return primitive(b.clone());
    }
    if b.is_zero() {
        return primitive(a.clone());
    }
    if coprime_mod_p(a, b) {
        return UPoly::constant(BigInt::one());
    }
    primitive(subresultant_gcd_core(a, b))
}

fn zsquarefree(p: &UPoly<BigInt>) -> UPoly<BigInt> {
    let g = zgcd(p, &p.derivative());
    if g.degree().unwrap_or(0) == 0 {
        return p.clone();
    }
    primitive(zquo(p, &g))
}

/// Monic gcd over the rationals.
pub fn gcd_q(a: &UPoly<Rational>, b: &UPoly<Rational>) -> UPoly<Rational> {
    let g = zgcd(&to_zpoly(a), &to_zpoly(b));
    if g.is_zero() {
        UPoly::zero(Rational::zero())
    } else {
        monic(&to_qpoly(&g))
    }
}

/// Monic squarefree part.
pub fn squarefree_q(p: &UPoly<Rational>) -> Result<UPoly<Rational>, UnivariateError> {
    if p.is_zero() {
        return Err(UnivariateError::ZeroPolynomial);
    }
    Ok(monic(&to_qpoly(&zsquarefree(&to_zpoly(p)))))
}

fn sign(r: &Rational) -> i8 {
    match r.cmp(&Rational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

pub fn sign_at(p: &UPoly<Rational>, x: &Rational) -> i8 {
    sign(&p.eval(x))
}

fn zsign_at(p: &UPoly<BigInt>, x: &Rational) -> i8 {
    // Horner on the numerator, homogenized by the denominator
    let (n, d) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut dpow = BigInt::one();
    for c in p.coeffs().iter().rev() {
        acc = acc * n + c * &dpow;
        dpow *= d;
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

fn taylor_shift_one(c: &mut [BigInt]) {
    let n = c.len();
    for i in 0..n {
        for k in (i..n - 1).rev() {
            let t = c[k + 1].clone();
            c[k] += t;
        }
    }
}

/// Descartes bound for the roots in `(0, 1)`; exact when 0 or 1.
fn descartes01(q: &[BigInt]) -> usize {
    let mut c: Vec<BigInt> = q.iter().rev().cloned().collect();
    taylor_shift_one(&mut c);
    let mut last = 0i8;
    let mut v = 0;
    for s in c.iter().filter(|x| !x.is_zero()).map(|x| if x.is_negative() { -1 } else { 1 }) {
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// `2^n q(z / 2)`, the left half of the unit interval.
fn left_half(q: &[BigInt]) -> Vec<BigInt> {
    let n = q.len() - 1;
    q.iter().enumerate().map(|(i, c)| c << (n - i)).collect()
}

/// Power of two strictly above the modulus of every root (Fujiwara).
fn root_bound(p: &UPoly<BigInt>) -> BigInt {
    let c = p.coeffs();
    let n = c.len() - 1;
    let lead = c[n].bits() as i64;
    let k = (1..=n)
        .filter(|&i| !c[n - i].is_zero())
        .map(|i| {
            let num = c[n - i].bits() as i64 - lead + 1;
            (num.max(0) + i as i64 - 1) / i as i64
        })
        .max()
        .unwrap_or(0);
    BigInt::one() << (k + 2) as usize
}

/// Moves an endpoint that is a root of `s` inwards until it is not; the
/// interval contains exactly one root in its interior.
fn clear_endpoints(s: &UPoly<BigInt>, mut lo: Rational, mut hi: Rational) -> (Rational, Rational) {
    let ds = s.derivative();
    let two = Rational::from_integer(BigInt::from(2));
    // sign of s just inside the interval next to a simple root
    if zsign_at(s, &lo) == 0 {
        let target = zsign_at(&ds, &lo);
        let mut step = (&hi - &lo) / &two;
        loop {
            let p = &lo + &step;
            if zsign_at(s, &p) == target {
                lo = p;
                break;
            }
            step /= &two;
        }
    }
    if zsign_at(s, &hi) == 0 {
        let target = -zsign_at(&ds, &hi);
        let mut step = (&hi - &lo) / &two;
        loop {
            let p = &hi - &step;
            if zsign_at(s, &p) == target {
                hi = p;
                break;
            }
            step /= &two;
        }
    }
    (lo, hi)
}

/// Isolating intervals for the distinct real roots of `p`, ascending.
pub fn isolate_real_roots(p: &UPoly<Rational>) -> Result<Vec<IsolatingInterval>, UnivariateError> {
    if p.is_zero() {
        return Err(UnivariateError::ZeroPolynomial);
    }
    Ok(isolate_z(&zsquarefree(&to_zpoly(p))))
}

/// Roots of a squarefree primitive integer polynomial.
fn isolate_z(s: &UPoly<BigInt>) -> Vec<IsolatingInterval> {
    if s.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let b = root_bound(s);
    // q(z) = s(2b z - b) on (0, 1)
    let mut c: Vec<BigInt> = s.coeffs().to_vec();
    let n = c.len();
    let nb = -b.clone();
    for i in 0..n {
        for k in (i..n - 1).rev() {
            let t = &c[k + 1] * &nb;
            c[k] += t;
        }
    }
    let w = &b << 1;
    let mut pw = BigInt::one();
    for ci in c.iter_mut() {
        *ci *= &pw;
        pw *= &w;
    }
    let to_x = |num: &BigInt, k: u32| -> Rational {
        Rational::new(num * &w, BigInt::one() << k) - Rational::from_integer(b.clone())
    };
    let mut out = Vec::new();
    let mut stack = vec![(c, BigInt::zero(), 0u32)];
    while let Some((q, pos, k)) = stack.pop() {
        if q.len() <= 1 {
            continue;
        }
        match descartes01(&q) {
            0 => {}
            1 => out.push(IsolatingInterval { lower: to_x(&pos, k), upper: to_x(&(&pos + 1), k), exact: false }),
            _ => {
                let mut ql = left_half(&q);
                let mut qr = ql.clone();
                taylor_shift_one(&mut qr);
                let left = &pos << 1;
                let right = &left + 1;
                if qr[0].is_zero() {
                    out.push(IsolatingInterval::exact(to_x(&right, k + 1)));
                    qr.remove(0);
                    // divide ql by (z - 1)
                    let m = ql.len() - 1;
                    let mut quo = vec![BigInt::zero(); m];
                    let mut carry = BigInt::zero();
                    for i in (0..m).rev() {
                        carry = &ql[i + 1] + carry;
                        quo[i] = carry.clone();
                    }
                    ql = quo;
                }
                stack.push((ql, left, k + 1));
                stack.push((qr, right, k + 1));
            }
        }
    }
    out.sort_by(|x, y| x.lower.cmp(&y.lower));
    let sq = to_qpoly(s);
    for iv in out.iter_mut().filter(|iv| !iv.exact) {
        let (lo, hi) = clear_endpoints(s, iv.lower.clone(), iv.upper.clone());
        iv.lower = lo;
        iv.upper = hi;
        // report small rational roots exactly
        if let Some(r) = rational_root_in(&sq, iv) {
            *iv = IsolatingInterval::exact(r);
        }
    }
    out
}

/// Pairwise coprime squarefree primitive polynomials with the same roots
/// as the product of `polys`.
fn coprime_basis(polys: &[UPoly<Rational>]) -> Vec<UPoly<BigInt>> {
    let mut basis: Vec<UPoly<BigInt>> = Vec::new();
    let mut queue: Vec<UPoly<BigInt>> =
        polys.iter().filter(|p| p.degree().unwrap_or(0) > 0).map(|p| zsquarefree(&to_zpoly(p))).collect();
    'next: while let Some(f) = queue.pop() {
        if f.degree().unwrap_or(0) == 0 {
            continue;
        }
        for i in 0..basis.len() {
            let g = zgcd(&f, &basis[i]);
            if g.degree().unwrap_or(0) > 0 {
                let b = basis.swap_remove(i);
                queue.push(primitive(zquo(&b, &g)));
                queue.push(primitive(zquo(&f, &g)));
                queue.push(g);
                continue 'next;
            }
        }
        basis.push(f);
    }
    basis
}

fn overlaps(a: &IsolatingInterval, b: &IsolatingInterval) -> bool {
    match (a.exact, b.exact) {
        (true, true) => a.lower == b.lower,
        (true, false) => b.lower <= a.lower && a.lower <= b.upper,
        (false, true) => a.lower <= b.lower && b.lower <= a.upper,
        (false, false) => a.lower < b.upper && b.lower < a.upper,
    }
}

/// Disjoint isolating intervals, ascending, for the distinct real roots of
/// the product of `polys`, without forming the product.
pub fn isolate_real_roots_many(polys: &[UPoly<Rational>]) -> Result<Vec<IsolatingInterval>, UnivariateError> {
    if polys.iter().any(UPoly::is_zero) {
        return Err(UnivariateError::ZeroPolynomial);
    }
    let basis = coprime_basis(polys);
    let qs: Vec<UPoly<Rational>> = basis.iter().map(to_qpoly).collect();
    let mut tagged: Vec<(IsolatingInterval, usize)> =
        basis.iter().enumerate().flat_map(|(i, b)| isolate_z(b).into_iter().map(move |iv| (iv, i))).collect();
    let two = Rational::from_integer(BigInt::from(2));
    loop {
        tagged.sort_by(|x, y| x.0.lower.cmp(&y.0.lower).then(x.0.upper.cmp(&y.0.upper)));
        let Some(k) = (1..tagged.len()).find(|&k| overlaps(&tagged[k - 1].0, &tagged[k].0)) else { break };
        for j in [k - 1, k] {
            let (iv, i) = &tagged[j];
            let width = (&iv.upper - &iv.lower) / &two;
            let r = refine(&qs[*i], iv, &width);
            tagged[j].0 = r;
        }
    }
    Ok(tagged.into_iter().map(|(iv, _)| iv).collect())
}

/// The root inside a non-exact interval when it is a small-denominator rational.
fn rational_root_in(p: &UPoly<Rational>, iv: &IsolatingInterval) -> Option<Rational> {
    let r = simplest_between(&iv.lower, &iv.upper);
    if r.denom() <= &BigInt::from(1024) && sign_at(p, &r) == 0 {
        Some(r)
    } else {
        None
    }
}

pub fn count_real_roots(p: &UPoly<Rational>) -> Result<usize, UnivariateError> {
    Ok(isolate_real_roots(p)?.len())
}

/// Shrinks a non-exact isolating interval of `p` until its width is at most `width`.
pub fn refine(p: &UPoly<Rational>, iv: &IsolatingInterval, width: &Rational) -> IsolatingInterval {
    if iv.exact {
        return iv.clone();
    }
    let two = Rational::from_integer(BigInt::from(2));
    let (mut a, mut b) = (iv.lower.clone(), iv.upper.clone());
    let sa = sign_at(p, &a);
    while &(&b - &a) > width {
        let mid = (&a + &b) / &two;
        let sm = sign_at(p, &mid);
        if sm == 0 {
            return IsolatingInterval::exact(mid);
        }
        if sm == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
    IsolatingInterval { lower: a, upper: b, exact: false }
}

fn floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

/// The rational with smallest denominator (then smallest magnitude) in
/// the open interval `(lo, hi)`; `hi = None` means `+inf`.
fn simplest_open(lo: &Rational, hi: Option<&Rational>) -> Rational {
    if let Some(h) = hi {
        if lo.is_negative() && h.is_positive() {
            return Rational::zero();
        }
        if !h.is_positive() {
            let neg_lo = -h.clone();
            let neg_hi = -lo.clone();
            return -simplest_open(&neg_lo, Some(&neg_hi));
        }
    } else if lo.is_negative() {
        return Rational::zero();
    }
    let fl = floor(lo);
    let next = Rational::from_integer(&fl + 1);
    match hi {
        None => next,
        Some(h) if &next < h => next,
        Some(h) => {
            let f = Rational::from_integer(fl);
            let new_lo = Rational::one() / (h - &f);
            let frac = lo - &f;
            let y = if frac.is_zero() {
                simplest_open(&new_lo, None)
            } else {
                let new_hi = Rational::one() / frac;
                simplest_open(&new_lo, Some(&new_hi))
            };
            f + Rational::one() / y
        }
    }
}

/// Simplest rational strictly between `lo` and `hi` (requires `lo < hi`).
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo < hi, "empty interval");
    simplest_open(lo, Some(hi))
}
