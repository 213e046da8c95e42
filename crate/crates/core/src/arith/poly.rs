use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ArithError, Rational, VarContext};
use crate::ring::Ring;

/// Exponent vector indexed by a [`VarContext`] layout.
///
/// The derived `Ord` is lexicographic with index 0 most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(vec![0; len])
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn var(len: usize, idx: usize, e: u32) -> Self {
        let mut v = vec![0; len];
        v[idx] = e;
        Monomial(v)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn degree_range(&self, range: std::ops::Range<usize>) -> u32 {
        self.0[range].iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub(crate) fn exps_mut(&mut self) -> &mut Vec<u32> {
        &mut self.0
    }
}

/// Graded reverse lexicographic comparison (index 0 is the largest variable).
pub fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

/// Sparse polynomial with rational coefficients over a [`VarContext`].
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    ctx: Arc<VarContext>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

/// The four ring operations, for callers that want context errors
/// reported instead of panics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
    ExactDiv,
}

impl MultiPoly {
    pub fn zero(ctx: &Arc<VarContext>) -> Self {
        MultiPoly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Arc<VarContext>) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &Arc<VarContext>, c: Rational) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ctx.len()), c);
        }
        p
    }

    pub fn from_int(ctx: &Arc<VarContext>, c: i64) -> Self {
        Self::constant(ctx, Rational::from_integer(BigInt::from(c)))
    }

    /// The indeterminate at layout index `idx`.
    pub fn var(ctx: &Arc<VarContext>, idx: usize) -> Self {
        Self::monomial(ctx, Monomial::var(ctx.len(), idx, 1), Rational::one())
    }

    pub fn monomial(ctx: &Arc<VarContext>, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.len(), ctx.len(), "monomial length does not match context");
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I>(ctx: &Arc<VarContext>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn same_ctx(&self, other: &MultiPoly) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().map_or(false, |c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.len(), self.ctx.len());
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m.exps()[idx]).max().unwrap_or(0)
    }

    /// Total degree restricted to a block of layout indices.
    pub fn degree_in_range(&self, range: std::ops::Range<usize>) -> u32 {
        self.terms.keys().map(|m| m.degree_range(range.clone())).max().unwrap_or(0)
    }

    pub fn depends_on(&self, idx: usize) -> bool {
        self.terms.keys().any(|m| m.exps()[idx] > 0)
    }

    /// Layout indices that occur with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ctx.len()).filter(|&i| self.depends_on(i)).collect()
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        MultiPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        MultiPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        Ring::pow_u(self, e)
    }

    fn check_ctx(&self, other: &MultiPoly) -> Result<(), ArithError> {
        if self.same_ctx(other) {
            Ok(())
        } else {
            Err(ArithError::ContextMismatch)
        }
    }

    /// Applies one of the ring operations with context checking.
    pub fn ring_op(&self, op: RingOp, other: &MultiPoly) -> Result<MultiPoly, ArithError> {
        self.check_ctx(other)?;
        Ok(match op {
            RingOp::Add => self + other,
            RingOp::Sub => self - other,
            RingOp::Mul => self * other,
            RingOp::ExactDiv => return self.exact_div(other),
        })
    }

    /// Exact quotient `self / d`; fails unless `d` divides `self`.
    pub fn exact_div(&self, d: &MultiPoly) -> Result<MultiPoly, ArithError> {
        self.check_ctx(d)?;
        let (lm, lc) = match d.terms.iter().next_back() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(ArithError::DivisionByZero),
        };
        if d.terms.len() == 1 {
            let mut q = BTreeMap::new();
            for (m, c) in &self.terms {
                let qm = m.div(&lm).ok_or(ArithError::InexactDivision)?;
                q.insert(qm, c / &lc);
            }
            return Ok(MultiPoly { ctx: self.ctx.clone(), terms: q });
        }
        let mut rem = self.terms.clone();
        let mut quo = BTreeMap::new();
        // lex-leading terms: the largest key of the map
        while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.div(&lm).ok_or(ArithError::InexactDivision)?;
            let qc = &c / &lc;
            for (dm, dc) in &d.terms {
                let key = dm.mul(&qm);
                let delta = dc * &qc;
                use std::collections::btree_map::Entry;
                match rem.entry(key) {
                    Entry::Vacant(v) => {
                        v.insert(-delta);
                    }
                    Entry::Occupied(mut o) => {
                        *o.get_mut() -= delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
            quo.insert(qm, qc);
        }
        Ok(MultiPoly { ctx: self.ctx.clone(), terms: quo })
    }

    pub fn derivative(&self, idx: usize) -> MultiPoly {
        let mut p = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let e = m.exps()[idx];
            if e > 0 {
                let mut m2 = m.clone();
                m2.exps_mut()[idx] -= 1;
                p.terms.insert(m2, c * Rational::from_integer(BigInt::from(e)));
            }
        }
        p
    }

    /// Coefficients with respect to the indeterminate `idx`, lowest power first.
    /// The coefficients stay in the same context with `idx` absent.
    pub fn coeffs_in(&self, idx: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(idx) as usize;
        let mut out = vec![Self::zero(&self.ctx); deg + 1];
        if self.is_zero() {
            return Vec::new();
        }
        for (m, c) in &self.terms {
            let e = m.exps()[idx] as usize;
            let mut m2 = m.clone();
            m2.exps_mut()[idx] = 0;
            out[e].terms.insert(m2, c.clone());
        }
        out
    }

    /// Inverse of [`MultiPoly::coeffs_in`].
    pub fn from_coeffs_in(ctx: &Arc<VarContext>, idx: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut p = Self::zero(ctx);
        for (e, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut m2 = m.clone();
                m2.exps_mut()[idx] += e as u32;
                p.add_term(m2, a.clone());
            }
        }
        p
    }

    /// Leading coefficient with respect to `idx` (a polynomial free of `idx`).
    pub fn lcoeff_in(&self, idx: usize) -> MultiPoly {
        self.coeffs_in(idx).pop().unwrap_or_else(|| Self::zero(&self.ctx))
    }

    /// Evaluates at a point given for every indeterminate of the context.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, ArithError> {
        if point.len() != self.ctx.len() {
            return Err(ArithError::LengthMismatch { expected: self.ctx.len(), got: point.len() });
        }
        if point.iter().all(Rational::is_integer) {
            return Ok(self.evaluate_integral(point));
        }
        let mut powers: Vec<Vec<Rational>> = Vec::with_capacity(point.len());
        for (i, v) in point.iter().enumerate() {
            let d = self.degree_in(i) as usize;
            let mut pw = Vec::with_capacity(d + 1);
            pw.push(Rational::one());
            for k in 1..=d {
                let next = &pw[k - 1] * v;
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t *= &powers[i][e as usize];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    // Sum over a common denominator.
    fn evaluate_integral(&self, point: &[Rational]) -> Rational {
        let powers: Vec<Vec<BigInt>> = point
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let v = v.numer();
                let mut pw = vec![BigInt::one()];
                for k in 1..=self.degree_in(i) as usize {
                    let next = &pw[k - 1] * v;
                    pw.push(next);
                }
                pw
            })
            .collect();
        let den = self.terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.numer() * (&den / c.denom());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t *= &powers[i][e as usize];
                }
            }
            acc += t;
        }
        Rational::new(acc, den)
    }

    /// Substitutes `value` for the indeterminate `idx`, keeping the context.
    pub fn substitute(&self, idx: usize, value: &Rational) -> MultiPoly {
        let mut p = Self::zero(&self.ctx);
        let mut cache: Vec<Rational> = vec![Rational::one()];
        for (m, c) in &self.terms {
            let e = m.exps()[idx] as usize;
            while cache.len() <= e {
                let next = cache.last().unwrap() * value;
                cache.push(next);
            }
            let mut m2 = m.clone();
            m2.exps_mut()[idx] = 0;
            p.add_term(m2, c * &cache[e]);
        }
        p
    }

    /// Substitutes the parameters by `eta`, returning a polynomial over the
    /// remaining variables (and the auxiliary variable, if any).
    pub fn specialize(&self, eta: &[Rational]) -> Result<MultiPoly, ArithError> {
        let t = self.ctx.nparams();
        if eta.len() != t {
            return Err(ArithError::LengthMismatch { expected: t, got: eta.len() });
        }
        let target = self.ctx.without_params();
        let first = self.ctx.first_param();
        let mut powers: Vec<Vec<Rational>> = Vec::with_capacity(t);
        for (i, v) in eta.iter().enumerate() {
            let d = self.degree_in(first + i) as usize;
            let mut pw = vec![Rational::one()];
            for k in 1..=d {
                let next = &pw[k - 1] * v;
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut p = Self::zero(&target);
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            for i in 0..t {
                let e = m.exps()[first + i] as usize;
                if e > 0 {
                    coef *= &powers[i][e];
                }
            }
            p.add_term(Monomial(m.exps()[..first].to_vec()), coef);
        }
        Ok(p)
    }

    /// Moves the polynomial into `target`; `map[i]` is the target index of
    /// source index `i`, or `None` when that indeterminate must not occur.
    pub fn map_context(&self, target: &Arc<VarContext>, map: &[Option<usize>]) -> Result<MultiPoly, ArithError> {
        let mut p = Self::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.len()];
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => exps[j] += e,
                    None => return Err(ArithError::ContextMismatch),
                }
            }
            p.add_term(Monomial(exps), c.clone());
        }
        Ok(p)
    }

    /// Moves the polynomial into another context by matching names.
    pub fn rename_into(&self, target: &Arc<VarContext>) -> Result<MultiPoly, ArithError> {
        let map: Vec<Option<usize>> = (0..self.ctx.len()).map(|i| target.index_of(self.ctx.name(i))).collect();
        self.map_context(target, &map)
    }

    /// Leading term under grevlex over the whole layout.
    pub fn lead_grevlex(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| grevlex_cmp(a.0.exps(), b.0.exps()))
    }

    /// Positive rational `c` with `self / c` having coprime integer coefficients.
    pub fn content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::one();
        }
        Rational::new(num, den)
    }

    /// Primitive integer coefficients with positive grevlex-leading coefficient.
    pub fn normalized(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lead_grevlex().unwrap().1.is_negative() {
            c = -c;
        }
        self.scale(&(Rational::one() / c))
    }

    /// Same as [`MultiPoly::normalized`] but with a positive leading
    /// coefficient with respect to the lex order on the layout.
    pub fn monic_lex(&self) -> MultiPoly {
        match self.terms.iter().next_back() {
            None => self.clone(),
            Some((_, c)) => self.scale(&(Rational::one() / c)),
        }
    }

    /// Integer coefficients after clearing denominators (no content removal).
    pub fn integer_coeffs(&self) -> Vec<(Monomial, BigInt)> {
        let den = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        self.terms
            .iter()
            .map(|(m, c)| (m.clone(), (c * Rational::from_integer(den.clone())).to_integer()))
            .collect()
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert!(self.same_ctx(rhs), "context mismatch in addition");
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut p = big.clone();
        for (m, c) in &small.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert!(self.same_ctx(rhs), "context mismatch in subtraction");
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), -c);
        }
        p
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert!(self.same_ctx(rhs), "context mismatch in multiplication");
        let mut p = MultiPoly::zero(&self.ctx);
        if self.is_zero() || rhs.is_zero() {
            return p;
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                p.add_term(m1.mul(m2), c1 * c2);
            }
        }
        p
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl Ring for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(&self.ctx)
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(&self.ctx)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn exact_quo(&self, rhs: &Self) -> Option<Self> {
        self.exact_div(rhs).ok()
    }
    fn from_int_like(&self, k: i64) -> Self {
        MultiPoly::from_int(&self.ctx, k)
    }
}
