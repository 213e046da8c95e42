use rand::Rng;
use rayon::prelude::*;

use super::{group, signs_at, Algorithm, Boundary, Cell, ClassificationResult, ClassifyError, ClassifyOptions, FastMode, Realizability};
use crate::arith::{MultiPoly, Rational};
use crate::grobner::ParametricSystem;
use crate::hermite::{drl_matrix, interp_hermite, remove_denominators, specialize_matrix, HermiteMatrix};
use crate::linalg::{clean_factors, minor_poly, random_congruence, signature, MinorRequest};
use crate::samplepoints::sample_points;

/// Matrix used for counting and its polynomial rescaling used for minors.
fn matrices(sys: &ParametricSystem, opts: &ClassifyOptions) -> Result<(HermiteMatrix, HermiteMatrix), ClassifyError> {
    let h = match opts.lambda {
        Some(l) => interp_hermite(sys, Some(l), opts.seed)?,
        None => drl_matrix(sys)?,
    };
    let hp = remove_denominators(&h);
    Ok((h, hp))
}

pub(crate) fn count_at(h: &HermiteMatrix, eta: &[Rational]) -> Result<usize, ClassifyError> {
    let m = specialize_matrix(h, eta)?;
    let s = signature(&m)?;
    Ok(s.max(0) as usize)
}

fn nonconstant(labelled: Vec<(String, MultiPoly)>) -> (Vec<String>, Vec<MultiPoly>) {
    labelled.into_iter().filter(|(_, p)| !p.is_constant()).unzip()
}

fn x_order(sys: &ParametricSystem) -> Vec<String> {
    sys.ctx().vars().to_vec()
}

fn cells_at(
    h: &HermiteMatrix,
    polys: &[MultiPoly],
    points: Vec<Vec<Rational>>,
) -> Result<Vec<Cell>, ClassifyError> {
    points
        .into_par_iter()
        .map(|eta| {
            let count = count_at(h, &eta)?;
            Ok(Cell { signs: signs_at(polys, &eta)?, sample: eta, count })
        })
        .collect()
}

/// Classification by sample points of the complement of the determinant
/// and the bad locus; cells carry the signs of `w_H` and `w_inf`.
pub fn weak_rrc_hermite(sys: &ParametricSystem, opts: &ClassifyOptions) -> Result<ClassificationResult, ClassifyError> {
    let (h, hp) = matrices(sys, opts)?;
    let det = minor_poly(&hp, &MinorRequest::leading(hp.delta()), opts.seed)?;
    if det.is_zero() {
        return Err(ClassifyError::IdenticallyZeroDeterminant);
    }
    let w_inf = h.w_infinity().clone();
    let w_h = clean_factors(&det, &w_inf)?;
    let (labels, polys) = nonconstant(vec![("w_H".into(), w_h.clone()), ("w_inf".into(), w_inf.clone())]);
    let points = sample_points(h.param_ctx(), &polys)?;
    let cells = cells_at(&h, &polys, points)?;
    Ok(ClassificationResult {
        algorithm: Algorithm::HermiteWeak,
        x_order: x_order(sys),
        seed: opts.seed,
        boundary: Boundary { w_infinity: Some(w_inf), w_h: Some(w_h), minors: Vec::new(), subresultants: Vec::new() },
        formulas: group(&cells),
        labels,
        polys,
        cells,
        realizability: Realizability::Realized,
    })
}

fn use_fast(mode: FastMode, delta: usize, t: usize) -> bool {
    match mode {
        FastMode::On => true,
        FastMode::Off => false,
        FastMode::Auto => {
            let lhs = 2f64.powi(delta as i32);
            let rhs = (delta as f64).powi(3 * t as i32);
            lhs <= rhs
        }
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 1i8;
    let mut v = 0;
    for s in signs.filter(|&s| s != 0) {
        if s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// All sign vectors of the minors with `(delta - r) / 2` variations after a
/// leading `+1`, restricted to the fixed signs of constant minors and
/// projected onto the non-constant ones.
fn phi(r: usize, consts: &[Option<i8>]) -> Vec<Vec<i8>> {
    let delta = consts.len();
    if r > delta || (delta - r) % 2 == 1 {
        return Vec::new();
    }
    let want = (delta - r) / 2;
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << delta) {
        let sigma: Vec<i8> = (0..delta).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
        if consts.iter().zip(&sigma).any(|(c, s)| c.is_some_and(|c| c != *s)) {
            continue;
        }
        if variations(sigma.iter().copied()) == want {
            out.push(sigma.iter().zip(consts).filter(|(_, c)| c.is_none()).map(|(&s, _)| s).collect());
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Moves a sample point off the zero sets of `polys` with seeded small
/// perturbations, keeping it off the bad locus.
fn nudge(eta: &[Rational], polys: &[MultiPoly], keep: &[MultiPoly], seed: u64, index: usize) -> Result<Vec<Rational>, ClassifyError> {
    let ok = |p: &[Rational]| -> Result<bool, ClassifyError> {
        Ok(signs_at(polys, p)?.iter().all(|&s| s != 0) && signs_at(keep, p)? == signs_at(keep, eta)?)
    };
    if ok(eta)? {
        return Ok(eta.to_vec());
    }
    let mut rng = crate::rng::stream(seed, &format!("nudge-{index}"));
    for k in 4..64u32 {
        let eps = Rational::new(1.into(), num_bigint::BigInt::from(1u64) << k);
        let cand: Vec<Rational> = eta.iter().map(|x| x + &eps * Rational::from_integer(rng.gen_range(-3i64..=3).into())).collect();
        if ok(&cand)? {
            return Ok(cand);
        }
    }
    Err(crate::samplepoints::SampleError::IdenticallyZeroFiber { point: eta.iter().map(|r| r.to_string()).collect() }.into())
}

/// Classification through the leading principal minors of a congruent
/// Hermite matrix.
///
/// In full mode sample points are taken on the complement of all minors and
/// the realized sign conditions are grouped by count. In fast mode sample
/// points only avoid the determinant and the bad locus; each realized count
/// `r` is described by every sign vector with the matching number of sign
/// variations.
pub fn rrc_hermite(sys: &ParametricSystem, opts: &ClassifyOptions) -> Result<ClassificationResult, ClassifyError> {
    let (h, hp) = matrices(sys, opts)?;
    let cong = random_congruence(&hp, opts.seed, opts.congruence_attempts)?;
    let minors = cong.minors;
    let delta = minors.len();
    let w_inf = h.w_infinity().clone();
    let labelled: Vec<(String, MultiPoly)> = minors.iter().enumerate().map(|(i, m)| (format!("M_{}", i + 1), m.clone())).collect();
    let (labels, polys) = nonconstant(labelled);
    let fast = use_fast(opts.fast_mode, delta, sys.t());
    let mut extra = Vec::new();
    if !w_inf.is_constant() {
        extra.push(w_inf.clone());
    }
    let (cells, formulas, algorithm, realizability) = if fast {
        let mut base = vec![minors[delta - 1].clone()];
        base.extend(extra.iter().cloned());
        let points = sample_points(h.param_ctx(), &base)?;
        let points: Vec<Vec<Rational>> = points
            .iter()
            .enumerate()
            .map(|(i, p)| nudge(p, &polys, &base, opts.seed, i))
            .collect::<Result<_, _>>()?;
        let cells = cells_at(&h, &polys, points)?;
        let consts: Vec<Option<i8>> = minors.iter().map(|m| m.as_constant().map(|c| super::sign(&c))).collect();
        let counts: std::collections::BTreeSet<usize> = cells.iter().map(|c| c.count).collect();
        let formulas = counts.into_iter().map(|r| (r, phi(r, &consts))).collect();
        (cells, formulas, Algorithm::HermiteFast, Realizability::PossibleSuperset)
    } else {
        let mut all = polys.clone();
        all.extend(extra.iter().cloned());
        let points = sample_points(h.param_ctx(), &all)?;
        let cells = cells_at(&h, &polys, points)?;
        let formulas = group(&cells);
        (cells, formulas, Algorithm::HermiteFull, Realizability::Realized)
    };
    Ok(ClassificationResult {
        algorithm,
        x_order: x_order(sys),
        seed: opts.seed,
        boundary: Boundary { w_infinity: Some(w_inf), w_h: None, minors, subresultants: Vec::new() },
        labels,
        polys,
        cells,
        formulas,
        realizability,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_sets() {
        let free = vec![None; 4];
        assert_eq!(phi(4, &free), vec![vec![1, 1, 1, 1]]);
        assert!(phi(3, &free).is_empty());
        // binomial(4, 1) vectors with one variation... and more: count by brute force
        let two = phi(2, &free);
        assert!(two.iter().all(|s| variations(s.iter().copied()) == 1));
        assert_eq!(two.len(), 4);
        let with_const = vec![Some(1), None, None, None];
        assert_eq!(phi(4, &with_const), vec![vec![1, 1, 1]]);
        assert!(phi(0, &[Some(1), None]).iter().all(|s| s == &vec![-1]));
    }

    #[test]
    fn auto_rule() {
        assert!(use_fast(FastMode::Auto, 4, 3));
        assert!(!use_fast(FastMode::Auto, 40, 1));
        assert!(!use_fast(FastMode::Off, 2, 3));
    }
}
