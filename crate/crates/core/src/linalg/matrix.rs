use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::LinalgError;
use crate::arith::Rational;
use crate::ring::Ring;

/// Dense matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Ragged);
        }
        Ok(RationalMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v = rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
        Self::from_rows(v).expect("rectangular literal")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch);
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let data = rows.iter().flat_map(|&i| cols.iter().map(move |&j| (i, j))).map(|ij| self[ij].clone()).collect();
        RationalMatrix { rows: rows.len(), cols: cols.len(), data }
    }

    pub fn leading(&self, k: usize) -> Self {
        let idx: Vec<usize> = (0..k).collect();
        self.select(&idx, &idx)
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(ToString::to_string).collect()).collect();
        rows.serialize(s)
    }
}

/// Fraction-free determinant (Bareiss) with row pivoting.
pub fn det_bareiss<R: Ring>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        panic!("determinant of an empty matrix needs a ring element");
    }
    let mut sign = false;
    let mut prev = m[0][0].one_like();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero_elem() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero_elem()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = !sign;
                }
                None => return m[0][0].zero_like(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].times(&m[k][k]).minus(&m[i][k].times(&m[k][j]));
                m[i][j] = v.exact_quo(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.negated()
    } else {
        d
    }
}

/// Leading principal minors through pivot-free Bareiss elimination.
///
/// Valid as long as every minor except possibly the last is nonzero; the
/// first vanishing minor truncates the returned list.
pub fn bareiss_leading_minors<R: Ring>(mut m: Vec<Vec<R>>) -> Vec<R> {
    let n = m.len();
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    let mut prev = m[0][0].one_like();
    for k in 0..n {
        out.push(m[k][k].clone());
        if m[k][k].is_zero_elem() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].times(&m[k][k]).minus(&m[i][k].times(&m[k][j]));
                m[i][j] = v.exact_quo(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    out
}

/// Characteristic polynomial `det(λI - M)` by Berkowitz's division-free
/// algorithm; coefficients from the constant term up, monic.
pub fn berkowitz<R: Ring>(m: &[Vec<R>]) -> Vec<R> {
    let n = m.len();
    assert!(n > 0, "characteristic polynomial of an empty matrix");
    let zero = m[0][0].zero_like();
    let one = zero.one_like();
    // coefficient vector of the current leading block, highest degree first
    let mut c: Vec<R> = vec![one.clone(), m[0][0].negated()];
    for r in 1..n {
        // block [[A, S], [R, a]] with A the leading r x r block
        let a_rr = &m[r][r];
        let s: Vec<R> = (0..r).map(|i| m[i][r].clone()).collect();
        let rrow: Vec<R> = (0..r).map(|j| m[r][j].clone()).collect();
        // Toeplitz column: 1, -a, -R S, -R A S, -R A^2 S, ...
        let mut col = vec![one.clone(), a_rr.negated()];
        let mut v = s.clone();
        for _ in 0..r {
            let rv = rrow.iter().zip(&v).fold(zero.clone(), |acc, (x, y)| acc.plus(&x.times(y)));
            col.push(rv.negated());
            v = (0..r).map(|i| (0..r).fold(zero.clone(), |acc, k| acc.plus(&m[i][k].times(&v[k])))).collect();
        }
        // new coefficients = lower-triangular Toeplitz(col) * c
        let mut next = vec![zero.clone(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            let mut acc = zero.clone();
            for (j, cj) in c.iter().enumerate() {
                if i >= j && i - j < col.len() {
                    acc = acc.plus(&col[i - j].times(cj));
                }
            }
            *slot = acc;
        }
        c = next;
    }
    c.reverse();
    c
}

pub fn det_exact(m: &RationalMatrix) -> Result<Rational, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare);
    }
    if m.nrows() == 0 {
        return Ok(Rational::one());
    }
    Ok(det_bareiss(m.to_rows()))
}

/// Monic characteristic polynomial, constant term first.
pub fn char_poly(m: &RationalMatrix) -> Result<Vec<Rational>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare);
    }
    if m.nrows() == 0 {
        return Ok(vec![Rational::one()]);
    }
    Ok(berkowitz(&m.to_rows()))
}

fn sign_variations(seq: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for s in seq.filter(|&s| s != 0) {
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

fn sgn(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Signature of a symmetric matrix, by Descartes' rule on its (real-rooted)
/// characteristic polynomial.
pub fn signature(m: &RationalMatrix) -> Result<i64, LinalgError> {
    if !m.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let c = char_poly(m)?;
    let pos = sign_variations(c.iter().map(sgn));
    let neg = sign_variations(c.iter().enumerate().map(|(i, x)| if i % 2 == 1 { -sgn(x) } else { sgn(x) }));
    Ok(pos as i64 - neg as i64)
}

pub fn rank(m: &RationalMatrix) -> usize {
    let mut a = m.to_rows();
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &piv;
            for j in c..cols {
                let t = &f * &a[r][j];
                a[i][j] -= t;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Signs of `1, M_1, ..., M_k` turned into `k - 2 * variations`.
pub fn sylvester_jacobi(minors: &[Rational]) -> i64 {
    let signs = std::iter::once(1i8).chain(minors.iter().map(sgn));
    minors.len() as i64 - 2 * sign_variations(signs) as i64
}
