use std::sync::Arc;

use serde::Serialize;

use super::{buchberger, GroebnerBasis, GrobnerError, MonomialOrder};
use crate::arith::{parse_poly, MultiPoly, Rational, VarContext};

/// Polynomials in the variables with coefficients polynomial in the parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricSystem {
    ctx: Arc<VarContext>,
    polys: Vec<MultiPoly>,
}

/// Structural properties read off the reduced Groebner basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Assumptions {
    /// Finitely many complex solutions for generic parameters.
    pub a: bool,
    /// Every leading coefficient with respect to the variables is constant.
    pub c: bool,
    /// Total degree equals degree in the variables for every generator.
    pub e: bool,
}

impl ParametricSystem {
    /// A system over `ctx`. Systems without parameters are accepted so that
    /// specializations remain systems.
    pub fn new(ctx: Arc<VarContext>, polys: Vec<MultiPoly>) -> Result<Self, GrobnerError> {
        if ctx.nvars() == 0 {
            return Err(GrobnerError::InvalidSystem("no variables declared".into()));
        }
        if ctx.has_aux() {
            return Err(GrobnerError::InvalidSystem("auxiliary variable in a system context".into()));
        }
        if polys.is_empty() {
            return Err(GrobnerError::InvalidSystem("no polynomials".into()));
        }
        for p in &polys {
            if p.ctx() != &ctx {
                return Err(GrobnerError::Arith(crate::arith::ArithError::ContextMismatch));
            }
            if p.is_zero() {
                return Err(GrobnerError::InvalidSystem("zero polynomial in the system".into()));
            }
        }
        Ok(ParametricSystem { ctx, polys })
    }

    /// Builds a system from names and infix polynomial text.
    pub fn from_strs(params: &[&str], vars: &[&str], polys: &[&str]) -> Result<Self, GrobnerError> {
        let ctx = VarContext::new(params, vars)?;
        let ps = polys.iter().map(|s| parse_poly(s, &ctx)).collect::<Result<Vec<_>, _>>()?;
        Self::new(ctx, ps)
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn n(&self) -> usize {
        self.ctx.nvars()
    }

    pub fn t(&self) -> usize {
        self.ctx.nparams()
    }

    pub fn m(&self) -> usize {
        self.polys.len()
    }

    /// Maximum total degree.
    pub fn d(&self) -> u32 {
        self.polys.iter().map(MultiPoly::total_degree).max().unwrap_or(0)
    }

    /// The block order ranking the variables above the parameters.
    pub fn block_order(&self) -> MonomialOrder {
        MonomialOrder::Block { split: self.n() }
    }

    pub fn groebner(&self) -> GroebnerBasis {
        buchberger(&self.polys, self.block_order())
    }

    /// The system `f(eta, x)` over the variables only.
    pub fn specialize(&self, eta: &[Rational]) -> Result<ParametricSystem, GrobnerError> {
        let ps = self.polys.iter().map(|p| p.specialize(eta)).collect::<Result<Vec<_>, _>>()?;
        let ctx = self.ctx.without_params();
        if ps.iter().all(MultiPoly::is_zero) {
            return Err(GrobnerError::InvalidSystem("specialization vanishes identically".into()));
        }
        Ok(ParametricSystem { ctx, polys: ps.into_iter().filter(|p| !p.is_zero()).collect() })
    }

    /// Reorders the variables; `perm[k]` is the old index of the new k-th variable.
    pub fn with_x_order(&self, perm: &[usize]) -> Result<ParametricSystem, GrobnerError> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
            return Err(GrobnerError::InvalidSystem("variable order is not a permutation".into()));
        }
        let ctx = self.ctx.permute_vars(perm);
        let polys = self.polys.iter().map(|p| p.rename_into(&ctx)).collect::<Result<Vec<_>, _>>()?;
        Ok(ParametricSystem { ctx, polys })
    }

    /// Parses a variable order given as names, e.g. `["x2", "x1"]`.
    pub fn x_order_from_names(&self, names: &[String]) -> Result<Vec<usize>, GrobnerError> {
        names
            .iter()
            .map(|s| {
                self.ctx
                    .vars()
                    .iter()
                    .position(|v| v == s)
                    .ok_or_else(|| GrobnerError::InvalidSystem(format!("unknown variable `{s}` in order")))
            })
            .collect()
    }
}

impl Assumptions {
    /// Reads the assumptions off a reduced basis for the block order; the
    /// leading-coefficient test uses one generator per leading monomial.
    pub fn detect(gb: &GroebnerBasis) -> Assumptions {
        let n = gb.ctx().nvars();
        let reducer = super::KReducer::new(gb);
        let a = reducer.is_ok();
        let c = reducer.map_or(false, |r| r.constant_leading_coeffs());
        let e = gb.generators().iter().all(|g| g.total_degree() == g.degree_in_range(0..n));
        Assumptions { a, c, e }
    }
}
