use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::SampleError;
use crate::arith::{content_in, interpolate_with, squarefree_part, ArithError, GridSpec, Monomial, MultiPoly, Rational, VarContext};
use crate::linalg::det_bareiss;
use crate::univariate::{resultant, UPoly};

fn to_ints(a: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    (a.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect(), den)
}

/// Formal-degree resultant of two coefficient vectors (lowest power first).
fn sylvester_res(a: &[Rational], b: &[Rational]) -> Rational {
    let m = a.len() - 1;
    let n = b.len() - 1;
    if m + n == 0 {
        return Rational::from_integer(1.into());
    }
    let (ai, da) = to_ints(a);
    let (bi, db) = to_ints(b);
    let scale = Rational::from_integer(da.pow(n as u32) * db.pow(m as u32));
    if !ai[m].is_zero() && !bi[n].is_zero() {
        let r = resultant(&UPoly::new(ai, BigInt::zero()), &UPoly::new(bi, BigInt::zero()));
        return Rational::from_integer(r) / scale;
    }
    let size = m + n;
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (k, c) in ai.iter().rev().enumerate() {
            rows[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in bi.iter().rev().enumerate() {
            rows[n + i][i + k] = c.clone();
        }
    }
    Rational::from_integer(det_bareiss(rows)) / scale
}

/// Resultant in `var` of `p` and `q` taken with their formal degrees, by
/// evaluation over the remaining indeterminates and interpolation.
pub(crate) fn resultant_in(p: &MultiPoly, q: &MultiPoly, var: usize) -> Result<MultiPoly, ArithError> {
    let ctx = p.ctx().clone();
    let pc = p.coeffs_in(var);
    let qc = q.coeffs_in(var);
    let vars: Vec<usize> = (0..ctx.len()).filter(|&i| i != var && (p.depends_on(i) || q.depends_on(i))).collect();
    let dy = |cs: &[MultiPoly]| cs.iter().filter(|c| !c.is_zero()).map(MultiPoly::total_degree).max().unwrap_or(0);
    let bound = (qc.len() as u32 - 1) * dy(&pc) + (pc.len() as u32 - 1) * dy(&qc);
    let spec = GridSpec::uniform(vars.len(), bound, 0);
    let at = |cs: &[MultiPoly], pt: &[Rational]| -> Result<Vec<Rational>, ArithError> {
        let mut full = vec![Rational::zero(); ctx.len()];
        for (a, &v) in vars.iter().enumerate() {
            full[v] = pt[a].clone();
        }
        cs.iter().map(|c| c.evaluate(&full)).collect()
    };
    let out = interpolate_with::<_, ArithError>(&ctx, &vars, &spec, 1, |pt| Ok(vec![sylvester_res(&at(&pc, pt)?, &at(&qc, pt)?)]))?;
    Ok(out.into_iter().next().unwrap())
}

/// Splits off monomial factors, takes squarefree parts and normalizes;
/// constants are dropped and duplicates removed.
pub(crate) fn prepare(polys: impl IntoIterator<Item = MultiPoly>) -> Vec<MultiPoly> {
    let mut out: Vec<MultiPoly> = Vec::new();
    let push = |p: MultiPoly, out: &mut Vec<MultiPoly>| {
        if !p.is_constant() && !out.contains(&p) {
            out.push(p);
        }
    };
    for p in polys {
        if p.is_zero() || p.is_constant() {
            continue;
        }
        let ctx = p.ctx().clone();
        let mut low: Vec<u32> = p.terms().next().unwrap().0.exps().to_vec();
        for (m, _) in p.terms() {
            for (l, &e) in low.iter_mut().zip(m.exps()) {
                *l = (*l).min(e);
            }
        }
        let p = if low.iter().any(|&e| e > 0) {
            for (i, &e) in low.iter().enumerate() {
                if e > 0 {
                    push(MultiPoly::var(&ctx, i), &mut out);
                }
            }
            p.exact_div(&MultiPoly::monomial(&ctx, Monomial::from_exps(low), Rational::from_integer(1.into())))
                .expect("monomial divides")
        } else {
            p
        };
        if let Ok(s) = squarefree_part(&p) {
            push(s.normalized(), &mut out);
        }
    }
    out
}

/// Projection of a set of polynomials along `var`: leading coefficients,
/// discriminants (as resultants with the derivative) and pairwise
/// resultants, prepared.
pub fn project_level(polys: &[MultiPoly], var: usize) -> Result<Vec<MultiPoly>, ArithError> {
    let polys: Vec<&MultiPoly> = polys.iter().filter(|p| p.depends_on(var)).collect();
    let mut raw = Vec::new();
    for p in &polys {
        raw.push(p.lcoeff_in(var));
        raw.push(resultant_in(p, &p.derivative(var), var)?);
    }
    for (i, p) in polys.iter().enumerate() {
        for q in &polys[i + 1..] {
            raw.push(resultant_in(p, q, var)?);
        }
    }
    Ok(prepare(raw))
}

/// Polynomials grouped by the coordinate they are lifted over.
///
/// `levels[k]` depends on `order[k]` and only on `order[..=k]` otherwise;
/// `order` is the lifting order of the coordinates.
#[derive(Clone, Debug, Serialize)]
pub struct ProjectionTower {
    #[serde(skip)]
    ctx: Arc<VarContext>,
    order: Vec<usize>,
    #[serde(serialize_with = "ser_levels")]
    levels: Vec<Vec<MultiPoly>>,
}

fn ser_levels<S: serde::Serializer>(l: &[Vec<MultiPoly>], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(l.len()))?;
    for level in l {
        let v: Vec<String> = level.iter().map(|p| p.to_string()).collect();
        seq.serialize_element(&v)?;
    }
    seq.end()
}

fn elimination_cost(pool: &[MultiPoly], v: usize) -> (u64, u32) {
    let sq: u64 = pool.iter().map(|p| (p.degree_in(v) as u64).pow(2)).sum();
    let mx = pool.iter().map(|p| p.degree_in(v)).max().unwrap_or(0);
    (sq, mx)
}

impl ProjectionTower {
    /// Projects greedily, eliminating first the coordinate of least degree.
    pub fn build(ctx: &Arc<VarContext>, gs: &[MultiPoly]) -> Result<Self, SampleError> {
        if gs.iter().any(|g| g.ctx() != ctx) {
            return Err(ArithError::ContextMismatch.into());
        }
        let mut pool = prepare(gs.iter().cloned());
        let mut remaining: Vec<usize> = (0..ctx.len()).collect();
        let mut chosen = Vec::new();
        let mut levels = Vec::new();
        while !remaining.is_empty() {
            let (pos, &v) = remaining
                .iter()
                .enumerate()
                .min_by_key(|&(_, &v)| (elimination_cost(&pool, v), v))
                .unwrap();
            remaining.remove(pos);
            let (here, mut rest): (Vec<MultiPoly>, Vec<MultiPoly>) = pool.into_iter().partition(|p| p.depends_on(v));
            let mut level = Vec::new();
            for p in here {
                let c = content_in(&p, v);
                if c.is_constant() {
                    level.push(p);
                } else {
                    level.extend(prepare([p.exact_div(&c)?]));
                    rest.push(c);
                }
            }
            rest.extend(project_level(&level, v)?);
            pool = prepare(rest);
            chosen.push(v);
            levels.push(level);
        }
        chosen.reverse();
        levels.reverse();
        Ok(ProjectionTower { ctx: ctx.clone(), order: chosen, levels })
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn levels(&self) -> &[Vec<MultiPoly>] {
        &self.levels
    }

    /// Bound on the number of lifted points: the product over levels of one
    /// plus twice the total degree in the level coordinate.
    pub fn point_bound(&self) -> u128 {
        self.levels
            .iter()
            .zip(&self.order)
            .map(|(l, &v)| 1 + 2 * l.iter().map(|p| p.degree_in(v) as u128).sum::<u128>())
            .product()
    }
}
