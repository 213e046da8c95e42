use crate::ring::Ring;

/// Dense univariate polynomial over a [`Ring`], lowest degree first.
///
/// A prototype zero is kept so that constants can be built even when the
/// polynomial itself is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly<R: Ring> {
    coeffs: Vec<R>,
    zero: R,
}

impl<R: Ring> UPoly<R> {
    pub fn new(mut coeffs: Vec<R>, zero: R) -> Self {
        while coeffs.last().map_or(false, Ring::is_zero_elem) {
            coeffs.pop();
        }
        UPoly { coeffs, zero }
    }

    pub fn zero(zero: R) -> Self {
        UPoly { coeffs: Vec::new(), zero }
    }

    pub fn constant(c: R) -> Self {
        let zero = c.zero_like();
        Self::new(vec![c], zero)
    }

    /// `c * X^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        let zero = c.zero_like();
        let mut v = vec![zero.clone(); k];
        v.push(c);
        Self::new(v, zero)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn zero_elem(&self) -> &R {
        &self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> &R {
        self.coeffs.last().unwrap_or(&self.zero)
    }

    pub fn coeff(&self, i: usize) -> &R {
        self.coeffs.get(i).unwrap_or(&self.zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i).plus(rhs.coeff(i))).collect();
        Self::new(v, self.zero.clone())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i).minus(rhs.coeff(i))).collect();
        Self::new(v, self.zero.clone())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(Ring::negated).collect(), self.zero.clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.zero.clone());
        }
        let mut v = vec![self.zero.clone(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].plus(&a.times(b));
            }
        }
        Self::new(v, self.zero.clone())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.times(c)).collect(), self.zero.clone())
    }

    /// Divides every coefficient by `c`, if all divisions are exact.
    pub fn exact_div_scalar(&self, c: &R) -> Option<Self> {
        let v = self.coeffs.iter().map(|a| a.exact_quo(c)).collect::<Option<Vec<_>>>()?;
        Some(Self::new(v, self.zero.clone()))
    }

    /// Multiplication by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.zero.clone(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v, self.zero.clone())
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a.times(&a.from_int_like(i as i64)))
            .collect();
        Self::new(v, self.zero.clone())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &R) -> R {
        let mut acc = self.zero.clone();
        for a in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(a);
        }
        acc
    }

    pub fn map<S: Ring, F: Fn(&R) -> S>(&self, zero: S, f: F) -> UPoly<S> {
        UPoly::new(self.coeffs.iter().map(f).collect(), zero)
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn prem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-remainder by zero");
        let da = match self.degree() {
            Some(d) if d >= db => d,
            _ => return self.clone(),
        };
        let lb = b.lc().clone();
        let mut r = self.coeffs.clone();
        let mut e = da - db + 1;
        for k in (db..=da).rev() {
            let c = r[k].clone();
            for a in r.iter_mut().take(k + 1) {
                *a = a.times(&lb);
            }
            if !c.is_zero_elem() {
                for j in 0..db {
                    r[k - db + j] = r[k - db + j].minus(&c.times(&b.coeffs[j]));
                }
            }
            r[k] = self.zero.clone();
            e -= 1;
        }
        debug_assert_eq!(e, 0);
        r.truncate(db);
        Self::new(r, self.zero.clone())
    }
}

/// Resultant by the subresultant pseudo-remainder sequence with exact
/// divisions; valid over any integral domain.
pub fn resultant<R: Ring>(a: &UPoly<R>, b: &UPoly<R>) -> R {
    let zero = a.zero_elem().clone();
    let (mut a, mut b) = match (a.degree(), b.degree()) {
        (None, _) | (_, None) => return zero,
        (Some(da), Some(db)) if da < db => {
            let s = if da * db % 2 == 1 { -1 } else { 1 };
            return resultant(b, a).times(&zero.from_int_like(s));
        }
        _ => (a.clone(), b.clone()),
    };
    let mut s = 1i64;
    let mut g = zero.one_like();
    let mut h = zero.one_like();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        if db == 0 {
            // h^(1 - da) lc(b)^da
            let lb = b.lc().clone();
            let res = if da == 0 {
                zero.one_like()
            } else {
                lb.pow_u(da as u32).exact_quo(&h.pow_u(da as u32 - 1)).expect("inexact division in resultant")
            };
            return res.times(&zero.from_int_like(s));
        }
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = a.prem(&b);
        if r.is_zero() {
            return zero;
        }
        let div = g.times(&h.pow_u(delta as u32));
        a = b;
        b = r.exact_div_scalar(&div).expect("inexact division in resultant");
        g = a.lc().clone();
        h = if delta == 0 {
            h
        } else {
            g.pow_u(delta as u32).exact_quo(&h.pow_u(delta as u32 - 1)).expect("inexact division in resultant")
        };
    }
}

/// Last nonzero term of the subresultant sequence of two polynomials; up to a
/// factor from the coefficient ring it is their gcd.
pub fn subresultant_gcd_core<R: Ring>(a: &UPoly<R>, b: &UPoly<R>) -> UPoly<R> {
    let (mut a, mut b) = if a.degree() >= b.degree() { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    if b.is_zero() {
        return a;
    }
    let one = a.zero_elem().one_like();
    let mut g = one.clone();
    let mut h = one;
    loop {
        let delta = a.degree().unwrap() - b.degree().unwrap();
        let r = a.prem(&b);
        if r.is_zero() {
            return b;
        }
        if r.degree() == Some(0) {
            return UPoly::constant(r.lc().one_like());
        }
        let div = g.times(&h.pow_u(delta as u32));
        a = b;
        b = r.exact_div_scalar(&div).expect("inexact division in subresultant sequence");
        g = a.lc().clone();
        h = if delta == 0 {
            h
        } else {
            g.pow_u(delta as u32).exact_quo(&h.pow_u(delta as u32 - 1)).expect("inexact division in subresultant sequence")
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn zp(v: &[i64]) -> UPoly<BigInt> {
        UPoly::new(v.iter().map(|&c| BigInt::from(c)).collect(), BigInt::from(0))
    }

    #[test]
    fn prem_matches_hand_division() {
        // (x^3 + 2x + 1) prem (2x + 1) = 4 * (x^3+2x+1) mod (2x+1)
        let a = zp(&[1, 2, 0, 1]);
        let b = zp(&[1, 2]);
        let r = a.prem(&b);
        // a(-1/2) = -1/8 - 1 + 1 = -1/8; times 2^3 = -1
        assert_eq!(r, zp(&[-1]));
    }

    #[test]
    fn resultant_small_cases() {
        assert_eq!(resultant(&zp(&[-1, 0, 1]), &zp(&[0, 2])), BigInt::from(-4));
        assert_eq!(resultant(&zp(&[-1, 0, 1]), &zp(&[3])), BigInt::from(9));
        // common root
        assert_eq!(resultant(&zp(&[-1, 0, 1]), &zp(&[-1, 1])), BigInt::from(0));
        // (x-2)(x-3) vs x-1: (1-2)(1-3) = 2 with sign (-1)^(2*1)
        assert_eq!(resultant(&zp(&[6, -5, 1]), &zp(&[-1, 1])), BigInt::from(2));
    }

    #[test]
    fn gcd_core_finds_common_factor() {
        // (x-1)(x+2) and (x-1)(x-5)
        let g = subresultant_gcd_core(&zp(&[-2, 1, 1]), &zp(&[5, -6, 1]));
        assert_eq!(g.degree(), Some(1));
        assert!(g.eval(&BigInt::from(1)) == BigInt::from(0));
    }
}
