use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{ArithError, Monomial, MultiPoly, Rational, VarContext};

/// Newton divided differences turned into monomial coefficients.
fn newton_1d(nodes: &[Rational], values: &[Rational]) -> Vec<Rational> {
    let m = nodes.len();
    let mut c = values.to_vec();
    for j in 1..m {
        for i in (j..m).rev() {
            c[i] = (&c[i] - &c[i - 1]) / (&nodes[i] - &nodes[i - j]);
        }
    }
    let mut p = vec![Rational::zero(); m];
    let mut len = 0usize;
    for i in (0..m).rev() {
        // p <- p * (x - nodes[i]) + c[i]
        if len > 0 {
            let mut q = vec![Rational::zero(); len + 1];
            for k in 0..len {
                q[k + 1] += &p[k];
                q[k] -= &p[k] * &nodes[i];
            }
            p[..=len].clone_from_slice(&q);
        }
        p[0] += &c[i];
        len += 1;
    }
    p
}

/// Interpolates values given on a full tensor grid.
///
/// `nodes[a]` are the abscissae of axis `a` (the indeterminate `vars[a]`),
/// and `values` are listed in row-major order with axis 0 slowest. The
/// result has degree below `nodes[a].len()` in each axis variable.
pub fn interpolate_grid(
    ctx: &Arc<VarContext>,
    vars: &[usize],
    nodes: &[Vec<Rational>],
    values: &[Rational],
) -> Result<MultiPoly, ArithError> {
    let k = vars.len();
    if nodes.len() != k {
        return Err(ArithError::LengthMismatch { expected: k, got: nodes.len() });
    }
    let total: usize = nodes.iter().map(Vec::len).product();
    if values.len() != total {
        return Err(ArithError::InsufficientGrid(format!("{} values for {} grid points", values.len(), total)));
    }
    for axis in nodes {
        if axis.is_empty() {
            return Err(ArithError::InsufficientGrid("empty axis".into()));
        }
        for i in 0..axis.len() {
            if axis[..i].contains(&axis[i]) {
                return Err(ArithError::DuplicatePoint);
            }
        }
    }
    let dims: Vec<usize> = nodes.iter().map(Vec::len).collect();
    let mut data = values.to_vec();
    for a in 0..k {
        let stride: usize = dims[a + 1..].iter().product();
        let len = dims[a];
        let outer = total / (stride * len);
        for o in 0..outer {
            for s in 0..stride {
                let base = o * len * stride + s;
                let fiber: Vec<Rational> = (0..len).map(|i| data[base + i * stride].clone()).collect();
                let coeffs = newton_1d(&nodes[a], &fiber);
                for (i, c) in coeffs.into_iter().enumerate() {
                    data[base + i * stride] = c;
                }
            }
        }
    }
    let mut p = MultiPoly::zero(ctx);
    let mut idx = vec![0usize; k];
    for c in data {
        if !c.is_zero() {
            let mut exps = vec![0u32; ctx.len()];
            for a in 0..k {
                exps[vars[a]] = idx[a] as u32;
            }
            p.add_term(Monomial::from_exps(exps), c);
        }
        for a in (0..k).rev() {
            idx[a] += 1;
            if idx[a] < dims[a] {
                break;
            }
            idx[a] = 0;
        }
    }
    Ok(p)
}

fn int_coord(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

/// Interpolation from a list of evaluations.
///
/// Points whose coordinates are all integers in `0..=degree_bound` form the
/// grid, which must be complete. Every other point is held out and checked
/// against the interpolant.
pub fn interpolate(
    ctx: &Arc<VarContext>,
    vars: &[usize],
    evals: &[(Vec<Rational>, Rational)],
    degree_bound: u32,
) -> Result<MultiPoly, ArithError> {
    let side = degree_bound as usize + 1;
    let k = vars.len();
    let mut grid: HashMap<Vec<usize>, &Rational> = HashMap::new();
    let mut held = Vec::new();
    for (pt, v) in evals {
        if pt.len() != k {
            return Err(ArithError::LengthMismatch { expected: k, got: pt.len() });
        }
        let coords: Option<Vec<usize>> = pt
            .iter()
            .map(|c| int_coord(c).filter(|&i| i >= 0 && (i as usize) < side).map(|i| i as usize))
            .collect();
        match coords {
            Some(c) => {
                if grid.insert(c, v).is_some() {
                    return Err(ArithError::DuplicatePoint);
                }
            }
            None => held.push((pt, v)),
        }
    }
    let total = side.pow(k as u32);
    if grid.len() != total {
        return Err(ArithError::InsufficientGrid(format!("{} of {} grid points present", grid.len(), total)));
    }
    let nodes: Vec<Vec<Rational>> = vec![(0..side).map(|i| Rational::from_integer(BigInt::from(i))).collect(); k];
    let mut values = Vec::with_capacity(total);
    let mut idx = vec![0usize; k];
    for _ in 0..total {
        values.push(grid[&idx].clone());
        for a in (0..k).rev() {
            idx[a] += 1;
            if idx[a] < side {
                break;
            }
            idx[a] = 0;
        }
    }
    let p = interpolate_grid(ctx, vars, &nodes, &values)?;
    // keep only what the total-degree bound allows; a nonzero excess is a residual
    let excess = p.terms().any(|(m, _)| m.degree() > degree_bound);
    if excess {
        return Err(ArithError::ResidualMismatch { bound: degree_bound });
    }
    for (pt, v) in held {
        if &eval_at(&p, vars, pt)? != v {
            return Err(ArithError::ResidualMismatch { bound: degree_bound });
        }
    }
    Ok(p)
}

fn eval_at(p: &MultiPoly, vars: &[usize], pt: &[Rational]) -> Result<Rational, ArithError> {
    let mut full = vec![Rational::zero(); p.ctx().len()];
    for (a, &v) in vars.iter().enumerate() {
        full[v] = pt[a].clone();
    }
    p.evaluate(&full)
}

/// Grid description for [`interpolate_with`].
#[derive(Debug, Clone)]
pub struct GridSpec {
    /// Degree bound per axis; the axis gets `bound + 1` nodes.
    pub bounds: Vec<u32>,
    /// First abscissa of each axis; nodes are consecutive integers.
    pub starts: Vec<i64>,
    /// Number of random off-grid checks.
    pub heldout: usize,
    pub seed: u64,
}

impl GridSpec {
    pub fn uniform(k: usize, bound: u32, seed: u64) -> Self {
        GridSpec { bounds: vec![bound; k], starts: vec![0; k], heldout: 2, seed }
    }

    pub fn nodes(&self) -> Vec<Vec<Rational>> {
        self.bounds
            .iter()
            .zip(&self.starts)
            .map(|(&b, &s)| (0..=b as i64).map(|i| Rational::from_integer(BigInt::from(s + i))).collect())
            .collect()
    }

    pub fn num_points(&self) -> usize {
        self.bounds.iter().map(|&b| b as usize + 1).product()
    }
}

/// Evaluates a vector-valued function over the grid (in parallel),
/// interpolates each component and verifies the result at held-out points.
///
/// Evaluation errors at grid points are returned; callers may retry with
/// shifted starts.
pub fn interpolate_with<F, E>(
    ctx: &Arc<VarContext>,
    vars: &[usize],
    spec: &GridSpec,
    count: usize,
    f: F,
) -> Result<Vec<MultiPoly>, E>
where
    F: Fn(&[Rational]) -> Result<Vec<Rational>, E> + Sync,
    E: From<ArithError> + Send,
{
    let nodes = spec.nodes();
    let k = vars.len();
    let total = spec.num_points();
    let points: Vec<Vec<Rational>> = (0..total)
        .map(|mut flat| {
            let mut pt = vec![Rational::zero(); k];
            for a in (0..k).rev() {
                let len = nodes[a].len();
                pt[a] = nodes[a][flat % len].clone();
                flat /= len;
            }
            pt
        })
        .collect();
    let evals: Vec<Vec<Rational>> = points.par_iter().map(|pt| f(pt)).collect::<Result<_, E>>()?;
    for e in &evals {
        if e.len() != count {
            return Err(ArithError::LengthMismatch { expected: count, got: e.len() }.into());
        }
    }
    let polys: Vec<MultiPoly> = (0..count)
        .into_par_iter()
        .map(|c| {
            let values: Vec<Rational> = evals.iter().map(|e| e[c].clone()).collect();
            interpolate_grid(ctx, vars, &nodes, &values)
        })
        .collect::<Result<_, ArithError>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < spec.heldout && attempts < 10 * spec.heldout.max(1) {
        attempts += 1;
        let pt: Vec<Rational> = (0..k)
            .map(|_| Rational::new(BigInt::from(rng.gen_range(-997i64..=997)), BigInt::from(rng.gen_range(1i64..=13))))
            .collect();
        let Ok(vals) = f(&pt) else { continue };
        for (p, v) in polys.iter().zip(&vals) {
            if &eval_at(p, vars, &pt)? != v {
                let bound = spec.bounds.iter().copied().max().unwrap_or(0);
                return Err(ArithError::ResidualMismatch { bound }.into());
            }
        }
        checked += 1;
    }
    Ok(polys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, parse_poly, rat};
    use proptest::prelude::*;

    fn ctx() -> Arc<VarContext> {
        VarContext::new(&["y1", "y2", "y3"], &[]).unwrap()
    }

    fn grid_evals(p: &MultiPoly, k: usize, bound: u32) -> Vec<(Vec<Rational>, Rational)> {
        let side = bound as i64 + 1;
        let mut out = Vec::new();
        for flat in 0..side.pow(k as u32) {
            let mut f = flat;
            let mut pt = vec![int(0); k];
            for a in (0..k).rev() {
                pt[a] = int(f % side);
                f /= side;
            }
            let mut full = pt.clone();
            full.resize(p.ctx().len(), int(0));
            out.push((pt, p.evaluate(&full).unwrap()));
        }
        out
    }

    #[test]
    fn constant_and_exact() {
        let c = VarContext::new(&["y1", "y2"], &[]).unwrap();
        let seven = MultiPoly::from_int(&c, 7);
        assert_eq!(interpolate(&c, &[0, 1], &grid_evals(&seven, 2, 2), 2).unwrap(), seven);
        let p = parse_poly("y1^2 - 4*y2", &c).unwrap();
        let mut ev = grid_evals(&p, 2, 2);
        assert_eq!(interpolate(&c, &[0, 1], &ev, 2).unwrap(), p);
        ev.push((vec![rat(1, 2), int(5)], int(12)));
        assert_eq!(interpolate(&c, &[0, 1], &ev, 2), Err(ArithError::ResidualMismatch { bound: 2 }));
        ev.pop();
        ev.pop();
        assert!(matches!(interpolate(&c, &[0, 1], &ev, 2), Err(ArithError::InsufficientGrid(_))));
        let dup = ev[0].clone();
        ev.push(dup);
        assert_eq!(interpolate(&c, &[0, 1], &ev, 2), Err(ArithError::DuplicatePoint));
    }

    #[test]
    fn too_small_bound_is_detected() {
        let c = VarContext::new(&["y1"], &[]).unwrap();
        let p = parse_poly("y1^3", &c).unwrap();
        let spec = GridSpec::uniform(1, 2, 3);
        let res: Result<Vec<MultiPoly>, ArithError> =
            interpolate_with(&c, &[0], &spec, 1, |pt| Ok(vec![p.evaluate(pt).unwrap()]));
        assert!(matches!(res, Err(ArithError::ResidualMismatch { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn interpolate_evaluate_roundtrip(terms in proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3), -9i64..10), 0..8)) {
            let c = ctx();
            let mut p = MultiPoly::zero(&c);
            for ((a, b, d), k) in terms {
                if a + b + d <= 4 {
                    p.add_term(Monomial::from_exps(vec![a, b, d]), int(k));
                }
            }
            let q = interpolate(&c, &[0, 1, 2], &grid_evals(&p, 3, 4), 4).unwrap();
            prop_assert_eq!(q, p);
        }
    }
}
