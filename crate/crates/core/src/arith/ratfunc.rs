use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{gcd, ArithError, MultiPoly, Rational, VarContext};

/// Reduced quotient of two polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if !num.same_ctx(&den) {
            return Err(ArithError::ContextMismatch);
        }
        if num.is_zero() {
            return Ok(Self::from_poly(num));
        }
        if let Some(c) = den.as_constant() {
            return Ok(Self::from_poly(num.scale(&(Rational::one() / c))));
        }
        let g = gcd(&num, &den);
        Ok(Self::finish(num.exact_div(&g)?, den.exact_div(&g)?))
    }

    /// Normalizes the denominator of an already reduced fraction.
    fn finish(mut num: MultiPoly, mut den: MultiPoly) -> Self {
        if num.is_zero() {
            return Self::from_poly(num);
        }
        if let Some(c) = den.as_constant() {
            return Self::from_poly(num.scale(&(Rational::one() / c)));
        }
        // make the denominator primitive with positive lead and push the
        // scalar into the numerator
        let dn = den.normalized();
        let lc_before = den.lead_grevlex().map(|(_, c)| c.clone()).unwrap();
        let lc_after = dn.lead_grevlex().map(|(_, c)| c.clone()).unwrap();
        num = num.scale(&(lc_after / lc_before));
        den = dn;
        RatFunc { num, den }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.ctx());
        RatFunc { num: p, den }
    }

    pub fn zero(ctx: &Arc<VarContext>) -> Self {
        Self::from_poly(MultiPoly::zero(ctx))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The numerator when the denominator is 1.
    pub fn as_poly(&self) -> Option<&MultiPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn add(&self, rhs: &RatFunc) -> Result<RatFunc, ArithError> {
        if !self.num.same_ctx(&rhs.num) {
            return Err(ArithError::ContextMismatch);
        }
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        let d = gcd(&self.den, &rhs.den);
        if d.is_constant() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return Ok(Self::finish(num, &self.den * &rhs.den));
        }
        let (a, b) = (self.den.exact_div(&d)?, rhs.den.exact_div(&d)?);
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        let g = gcd(&num, &d);
        Ok(Self::finish(num.exact_div(&g)?, (&self.den * &b).exact_div(&g)?))
    }

    pub fn sub(&self, rhs: &RatFunc) -> Result<RatFunc, ArithError> {
        self.add(&RatFunc { num: -&rhs.num, den: rhs.den.clone() })
    }

    pub fn mul(&self, rhs: &RatFunc) -> Result<RatFunc, ArithError> {
        if !self.num.same_ctx(&rhs.num) {
            return Err(ArithError::ContextMismatch);
        }
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero(self.num.ctx()));
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let num = &self.num.exact_div(&g1)? * &rhs.num.exact_div(&g2)?;
        let den = &self.den.exact_div(&g2)? * &rhs.den.exact_div(&g1)?;
        Ok(Self::finish(num, den))
    }

    pub fn div(&self, rhs: &RatFunc) -> Result<RatFunc, ArithError> {
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// Evaluation at a full point; fails where the denominator vanishes.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, ArithError> {
        let d = self.den.evaluate(point)?;
        if d.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(self.num.evaluate(point)? / d)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
