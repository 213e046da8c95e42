use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use super::{ProjectionTower, SampleError};
use crate::arith::{MultiPoly, Rational};
use crate::univariate::{isolate_real_roots_many, upoly_from_multi, UPoly};

fn floor(r: &Rational) -> Rational {
    Rational::from_integer(r.numer().div_floor(r.denom()))
}

fn ceil(r: &Rational) -> Rational {
    Rational::from_integer(r.numer().div_ceil(r.denom()))
}

/// One rational in each open interval cut out by the real roots of the
/// product of `fibers`, plus one on either side.
fn section_points(fibers: &[UPoly<Rational>]) -> Result<Vec<Rational>, SampleError> {
    let zero = Rational::zero();
    let ivs = isolate_real_roots_many(fibers)?;
    if ivs.is_empty() {
        return Ok(vec![zero]);
    }
    let one = Rational::from_integer(1.into());
    let mut out = Vec::with_capacity(ivs.len() + 1);
    out.push(floor(&ivs[0].lower) - &one);
    for w in ivs.windows(2) {
        let lo = if w[0].exact { &w[0].lower } else { &w[0].upper };
        let hi = &w[1].lower;
        let x = if lo == hi { lo.clone() } else { crate::univariate::simplest_between(lo, hi) };
        out.push(x);
    }
    out.push(ceil(&ivs[ivs.len() - 1].upper) + &one);
    Ok(out)
}

fn fiber(p: &MultiPoly, point: &[Rational], known: &[usize], var: usize) -> Result<UPoly<Rational>, SampleError> {
    let mut q = p.clone();
    for &v in known {
        if q.depends_on(v) {
            q = q.substitute(v, &point[v]);
        }
    }
    if q.is_zero() {
        return Err(SampleError::IdenticallyZeroFiber { point: point.iter().map(|r| r.to_string()).collect() });
    }
    Ok(upoly_from_multi(&q, var)?)
}

/// Lifts the tower level by level, one point per open sector.
pub fn lift(tower: &ProjectionTower) -> Result<Vec<Vec<Rational>>, SampleError> {
    let t = tower.ctx().len();
    let mut points = vec![vec![Rational::zero(); t]];
    for (k, level) in tower.levels().iter().enumerate() {
        let var = tower.order()[k];
        let known = &tower.order()[..k];
        let next: Vec<Vec<Vec<Rational>>> = points
            .par_iter()
            .map(|pt| {
                let fibers: Vec<UPoly<Rational>> = level.iter().map(|p| fiber(p, pt, known, var)).collect::<Result<_, _>>()?;
                Ok(section_points(&fibers)?
                    .into_iter()
                    .map(|x| {
                        let mut q = pt.clone();
                        q[var] = x;
                        q
                    })
                    .collect())
            })
            .collect::<Result<_, SampleError>>()?;
        points = next.into_iter().flatten().collect();
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn qp(v: &[i64]) -> UPoly<Rational> {
        UPoly::new(v.iter().map(|&c| int(c)).collect(), int(0))
    }

    #[test]
    fn sections_of_a_line() {
        assert_eq!(section_points(&[qp(&[0, 1])]).unwrap(), vec![int(-1), int(1)]);
        assert_eq!(section_points(&[]).unwrap(), vec![int(0)]);
        assert_eq!(section_points(&[qp(&[1, 0, 1])]).unwrap(), vec![int(0)]);
        // roots -1, 0, 1 and 1/2
        let pts = section_points(&[qp(&[0, -1, 0, 1]), qp(&[-1, 2])]).unwrap();
        assert_eq!(pts.len(), 5);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        for x in &pts {
            assert!(x != &int(-1) && x != &int(0) && x != &int(1) && x != &crate::arith::rat(1, 2));
        }
    }
}
