//! Exact rational and multivariate polynomial arithmetic.

mod context;
mod gcd;
mod interp;
mod parse;
mod poly;
mod ratfunc;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use context::VarContext;
pub use gcd::{content_in, gcd, gcd_many, lcm, squarefree_part};
pub use interp::{interpolate, interpolate_grid, interpolate_with, GridSpec};
pub use parse::{parse_poly, parse_poly_at, parse_rational};
pub use poly::{grevlex_cmp, Monomial, MultiPoly, RingOp};
pub use ratfunc::RatFunc;

/// Arbitrary-precision rational; the coefficient field throughout.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("polynomials live in different variable contexts")]
    ContextMismatch,
    #[error("division is not exact")]
    InexactDivision,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid identifier `{0}`")]
    InvalidName(String),
    #[error("name `{0}` declared twice")]
    DuplicateName(String),
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("undeclared identifier `{name}` at line {line}, column {column}")]
    UndeclaredIdentifier { name: String, line: usize, column: usize },
    #[error("interpolation grid is insufficient: {0}")]
    InsufficientGrid(String),
    #[error("duplicated evaluation point")]
    DuplicatePoint,
    #[error("interpolant disagrees with a held-out evaluation (degree bound {bound} too small?)")]
    ResidualMismatch { bound: u32 },
}

/// `n / d` as a rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
