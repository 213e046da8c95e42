//! End-to-end real root classification drivers and their result type.

mod cross;
mod hermite;
mod sturm;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{ArithError, MultiPoly, Rational};
use crate::grobner::GrobnerError;
use crate::hermite::HermiteError;
use crate::linalg::LinalgError;
use crate::samplepoints::SampleError;
use crate::univariate::UnivariateError;

pub use cross::{cross_validate, CrossReport};
pub use hermite::{rrc_hermite, weak_rrc_hermite};
pub use sturm::rrc_sturm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(transparent)]
    Grobner(#[from] GrobnerError),
    #[error(transparent)]
    Hermite(#[from] HermiteError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error(transparent)]
    Univariate(#[from] UnivariateError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("the Hermite determinant vanishes identically (is the ideal radical?)")]
    IdenticallyZeroDeterminant,
    #[error("pipelines disagree at {eta:?}: Hermite counts {hermite}, Sturm counts {sturm}")]
    Disagreement { eta: Vec<String>, hermite: usize, sturm: usize },
}

impl ClassifyError {
    /// True when the failure is a generically positive-dimensional fiber.
    pub fn is_not_zero_dimensional(&self) -> bool {
        matches!(
            self,
            ClassifyError::Grobner(GrobnerError::NotZeroDimensional)
                | ClassifyError::Hermite(HermiteError::Grobner(GrobnerError::NotZeroDimensional))
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Algorithm {
    #[serde(rename = "hermite-weak")]
    HermiteWeak,
    #[serde(rename = "hermite-full")]
    HermiteFull,
    #[serde(rename = "hermite-fast")]
    HermiteFast,
    #[serde(rename = "sturm")]
    Sturm,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FastMode {
    /// Fast when `2^delta <= delta^(3t)`.
    #[default]
    Auto,
    On,
    Off,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Realizability {
    /// Every listed sign condition was met by a sample point.
    Realized,
    /// Listed conditions may include unrealizable ones.
    PossibleSuperset,
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub seed: u64,
    pub fast_mode: FastMode,
    /// Interpolation degree bound; when set the matrix is built by evaluation
    /// and interpolation instead of directly.
    pub lambda: Option<u32>,
    pub congruence_attempts: usize,
    pub linear_form_attempts: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { seed: 0, fast_mode: FastMode::Auto, lambda: None, congruence_attempts: 20, linear_form_attempts: 20 }
    }
}

impl ClassifyOptions {
    pub fn with_seed(seed: u64) -> Self {
        ClassifyOptions { seed, ..Self::default() }
    }
}

/// A sample point with the signs of the classification polynomials there
/// and the number of distinct real solutions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub signs: Vec<i8>,
    #[serde(serialize_with = "ser_point")]
    pub sample: Vec<Rational>,
    pub count: usize,
}

fn ser_point<S: Serializer>(p: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(p.iter().map(|r| r.to_string()))
}

fn ser_opt_poly<S: Serializer>(p: &Option<MultiPoly>, s: S) -> Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_str(&p.to_string()),
        None => s.serialize_none(),
    }
}

fn ser_polys<S: Serializer>(ps: &[MultiPoly], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(ps.iter().map(|p| p.to_string()))
}

/// Polynomials whose zero sets bound the cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Boundary {
    #[serde(serialize_with = "ser_opt_poly")]
    pub w_infinity: Option<MultiPoly>,
    #[serde(rename = "w_H", serialize_with = "ser_opt_poly", skip_serializing_if = "Option::is_none")]
    pub w_h: Option<MultiPoly>,
    #[serde(serialize_with = "ser_polys", skip_serializing_if = "Vec::is_empty")]
    pub minors: Vec<MultiPoly>,
    #[serde(serialize_with = "ser_polys", skip_serializing_if = "Vec::is_empty")]
    pub subresultants: Vec<MultiPoly>,
}

/// Output of a classification driver.
///
/// Sign vectors in `cells` and `formulas` refer to `labels`, the
/// non-constant classification polynomials in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationResult {
    pub algorithm: Algorithm,
    pub x_order: Vec<String>,
    pub seed: u64,
    pub boundary: Boundary,
    pub labels: Vec<String>,
    #[serde(skip)]
    pub polys: Vec<MultiPoly>,
    pub cells: Vec<Cell>,
    pub formulas: BTreeMap<usize, Vec<Vec<i8>>>,
    pub realizability: Realizability,
}

impl ClassificationResult {
    pub fn counts(&self) -> BTreeSet<usize> {
        self.cells.iter().map(|c| c.count).collect()
    }

    pub fn sign_conditions(&self) -> BTreeSet<Vec<i8>> {
        self.cells.iter().map(|c| c.signs.clone()).collect()
    }

    /// Largest total degree among the classification polynomials.
    pub fn max_degree(&self) -> u32 {
        self.polys.iter().map(MultiPoly::total_degree).max().unwrap_or(0)
    }

    /// The count attached by `formulas` to a sign vector, if any.
    pub fn count_for(&self, signs: &[i8]) -> Option<usize> {
        self.formulas.iter().find(|(_, cs)| cs.iter().any(|c| c == signs)).map(|(&r, _)| r)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Human-readable summary: one line per count.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for (label, p) in self.labels.iter().zip(&self.polys) {
            out.push_str(&format!("{label} = {p}\n"));
        }
        for (r, conds) in &self.formulas {
            let parts: Vec<String> = conds
                .iter()
                .map(|c| {
                    let atoms: Vec<String> = self
                        .labels
                        .iter()
                        .zip(c)
                        .map(|(l, &s)| format!("{l} {} 0", if s > 0 { ">" } else { "<" }))
                        .collect();
                    if atoms.is_empty() {
                        "true".to_string()
                    } else {
                        format!("({})", atoms.join(" & "))
                    }
                })
                .collect();
            out.push_str(&format!("{r} real solution(s): {}\n", parts.join(" | ")));
        }
        out
    }
}

pub(crate) fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

pub(crate) fn signs_at(polys: &[MultiPoly], eta: &[Rational]) -> Result<Vec<i8>, ArithError> {
    polys.iter().map(|p| Ok(sign(&p.evaluate(eta)?))).collect()
}

/// Realized sign conditions grouped by count.
pub(crate) fn group(cells: &[Cell]) -> BTreeMap<usize, Vec<Vec<i8>>> {
    let mut out: BTreeMap<usize, BTreeSet<Vec<i8>>> = BTreeMap::new();
    for c in cells {
        out.entry(c.count).or_default().insert(c.signs.clone());
    }
    out.into_iter().map(|(r, s)| (r, s.into_iter().collect())).collect()
}
