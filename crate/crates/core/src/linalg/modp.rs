use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith::Rational;

/// Arithmetic in `Z/pZ` for a word-sized prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && p < (1 << 32), "prime must fit in 32 bits");
        Fp { p }
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> Option<u64> {
        (a % self.p != 0).then(|| self.pow(a, self.p - 2))
    }

    fn reduce_int(self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    /// Image of a rational, `None` when the denominator vanishes.
    pub fn from_rational(self, r: &Rational) -> Option<u64> {
        let d = self.reduce_int(r.denom());
        self.inv(d).map(|di| self.mul(self.reduce_int(r.numer()), di))
    }

    /// Determinant by Gaussian elimination.
    pub fn det(self, mut m: Vec<Vec<u64>>) -> u64 {
        let n = m.len();
        let mut det = 1u64;
        for k in 0..n {
            let Some(piv) = (k..n).find(|&i| m[i][k] != 0) else { return 0 };
            if piv != k {
                m.swap(piv, k);
                det = self.sub(0, det);
            }
            det = self.mul(det, m[k][k]);
            let inv = self.inv(m[k][k]).unwrap();
            for i in k + 1..n {
                if m[i][k] == 0 {
                    continue;
                }
                let f = self.mul(m[i][k], inv);
                for j in k..n {
                    let t = self.mul(f, m[k][j]);
                    m[i][j] = self.sub(m[i][j], t);
                }
            }
        }
        det
    }
}

/// Dense univariate polynomial over `Z/pZ`, lowest degree first, trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly(pub Vec<u64>);

impl FpPoly {
    fn trim(mut v: Vec<u64>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        FpPoly(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Newton interpolation through `(xs[i], ys[i])`.
    pub fn interpolate(f: Fp, xs: &[u64], ys: &[u64]) -> Self {
        let n = xs.len();
        let mut c = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = f.sub(c[i], c[i - 1]);
                let den = f.sub(xs[i], xs[i - j]);
                c[i] = f.mul(num, f.inv(den).expect("distinct nodes"));
            }
        }
        let mut poly = vec![0u64; n];
        for k in (0..n).rev() {
            // poly = poly * (x - xs[k]) + c[k]
            let mut next = vec![0u64; n];
            for d in (0..n).rev() {
                if poly[d] == 0 {
                    continue;
                }
                if d + 1 < n {
                    next[d + 1] = f.add(next[d + 1], poly[d]);
                }
                next[d] = f.sub(next[d], f.mul(poly[d], xs[k]));
            }
            next[0] = f.add(next[0], c[k]);
            poly = next;
        }
        Self::trim(poly)
    }

    pub fn derivative(&self, f: Fp) -> Self {
        Self::trim(self.0.iter().enumerate().skip(1).map(|(i, &c)| f.mul(c, i as u64 % f.p)).collect())
    }

    pub fn rem(&self, b: &FpPoly, f: Fp) -> Self {
        self.divrem(b, f).1
    }

    pub fn divrem(&self, b: &FpPoly, f: Fp) -> (Self, Self) {
        let db = b.degree().expect("division by zero polynomial");
        let inv = f.inv(b.0[db]).unwrap();
        let mut r = self.0.clone();
        let mut q = vec![0u64; r.len().saturating_sub(db)];
        while r.len() > db && !r.is_empty() {
            let k = r.len() - 1 - db;
            let c = f.mul(*r.last().unwrap(), inv);
            q[k] = c;
            for (i, &bc) in b.0.iter().enumerate() {
                r[k + i] = f.sub(r[k + i], f.mul(c, bc));
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        (Self::trim(q), Self::trim(r))
    }

    pub fn gcd(&self, b: &FpPoly, f: Fp) -> Self {
        let (mut a, mut b) = (self.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a
    }

    /// Squarefree part, valid while the degree is below `p`.
    pub fn squarefree(&self, f: Fp) -> Self {
        let g = self.gcd(&self.derivative(f), f);
        if g.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        self.divrem(&g, f).0
    }
}
