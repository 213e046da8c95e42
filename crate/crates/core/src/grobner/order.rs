use std::cmp::Ordering;

use serde::Serialize;

use crate::arith::grevlex_cmp;

/// Admissible monomial orders on exponent vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MonomialOrder {
    Grevlex,
    /// Lexicographic with index 0 largest.
    Lex,
    /// Grevlex on the first `split` indices, ties broken by grevlex on the rest.
    Block { split: usize },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex_cmp(a, b),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Block { split } => {
                grevlex_cmp(&a[..split], &b[..split]).then_with(|| grevlex_cmp(&a[split..], &b[split..]))
            }
        }
    }
}
