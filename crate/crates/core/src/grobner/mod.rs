//! Groebner bases, normal forms over the parameter field and quotient bases.

mod buchberger;
mod elim;
mod order;
mod quotient;
mod system;

use std::sync::Arc;

use num_traits::Signed;
use thiserror::Error;

use crate::arith::{ArithError, Monomial, MultiPoly, Rational, VarContext};

pub use buchberger::{buchberger, s_polynomial};
pub use elim::{eliminating_polynomial, elimination_ideal_generator, EliminatingPoly};
pub use order::MonomialOrder;
pub use quotient::{normal_form, quotient_basis, reduce_gb_over_k, KReducer, QuotientBasis};
pub use system::{Assumptions, ParametricSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrobnerError {
    #[error("the ideal is not zero-dimensional over the parameter field")]
    NotZeroDimensional,
    #[error("the system has no solution for generic parameters")]
    GenericallyInconsistent,
    #[error("no generator free of the variables was found")]
    EmptyElimination,
    #[error("degenerate linear form: eliminating polynomial has degree {degree}, expected {expected}")]
    DegenerateLinearForm { degree: usize, expected: usize },
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A Groebner basis together with the order it was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ctx: Arc<VarContext>,
    order: MonomialOrder,
    gens: Vec<MultiPoly>,
    reduced: bool,
}

impl GroebnerBasis {
    pub(crate) fn from_parts(ctx: Arc<VarContext>, order: MonomialOrder, gens: Vec<MultiPoly>, reduced: bool) -> Self {
        GroebnerBasis { ctx, order, gens, reduced }
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gens.iter().map(|g| leading_term(g, self.order).unwrap().0).collect()
    }

    /// Remainder of `p` on division by the basis, over ℚ.
    pub fn reduce(&self, p: &MultiPoly) -> MultiPoly {
        if p.is_zero() {
            return p.clone();
        }
        let basis: Vec<buchberger::IPoly> = self.gens.iter().map(|g| buchberger::IPoly::from_multi(g, self.order)).collect();
        let refs: Vec<&buchberger::IPoly> = basis.iter().collect();
        let (r, mult) = buchberger::reduce_full(&buchberger::IPoly::from_multi(p, self.order), &refs, self.order);
        let scale = p.content() / mult;
        let scale = if leading_term(p, self.order).unwrap().1.is_negative() { -scale } else { scale };
        r.to_multi(&self.ctx).scale(&scale)
    }

    /// Whether every S-polynomial reduces to zero.
    pub fn satisfies_criterion(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, f)| {
            self.gens[i + 1..].iter().all(|g| self.reduce(&s_polynomial(f, g, self.order)).is_zero())
        })
    }
}

/// Leading monomial and coefficient of `p` for `order`.
pub fn leading_term(p: &MultiPoly, order: MonomialOrder) -> Option<(Monomial, Rational)> {
    p.terms()
        .max_by(|a, b| order.cmp(a.0.exps(), b.0.exps()))
        .map(|(m, c)| (m.clone(), c.clone()))
}
