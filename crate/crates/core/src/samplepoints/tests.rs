use std::collections::BTreeSet;

use num_traits::Signed;
use rand::Rng;

use super::*;
use crate::arith::{int, parse_poly, rat};

fn polys(c: &Arc<VarContext>, srcs: &[&str]) -> Vec<MultiPoly> {
    srcs.iter().map(|s| parse_poly(s, c).unwrap()).collect()
}

fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn signs_at(gs: &[MultiPoly], pt: &[Rational]) -> Vec<i8> {
    gs.iter().map(|g| sign(&g.evaluate(pt).unwrap())).collect()
}

fn realized(gs: &[MultiPoly], pts: &[Vec<Rational>]) -> BTreeSet<Vec<i8>> {
    pts.iter().map(|p| signs_at(gs, p)).collect()
}

// sign vectors on the grid of step 1/8 over [-4, 4]^2, zeros skipped
fn grid_oracle(gs: &[MultiPoly]) -> BTreeSet<Vec<i8>> {
    let mut out = BTreeSet::new();
    for i in -32..=32 {
        for j in -32..=32 {
            let s = signs_at(gs, &[rat(i, 8), rat(j, 8)]);
            if s.iter().all(|&x| x != 0) {
                out.insert(s);
            }
        }
    }
    out
}

#[test]
fn one_dimensional() {
    let c = VarContext::new(&["y1"], &[]).unwrap();
    let pts = sample_points(&c, &polys(&c, &["y1"])).unwrap();
    assert_eq!(pts, vec![vec![int(-1)], vec![int(1)]]);
    let pts = sample_points(&c, &polys(&c, &["y1^2 - 2", "3*y1 - 1"])).unwrap();
    assert_eq!(pts.len(), 4);
}

#[test]
fn empty_and_constant_input() {
    let c = VarContext::new(&["y1", "y2"], &[]).unwrap();
    assert_eq!(sample_points(&c, &[]).unwrap(), vec![vec![int(0), int(0)]]);
    assert_eq!(sample_points(&c, &polys(&c, &["7"])).unwrap(), vec![vec![int(0), int(0)]]);
}

#[test]
fn toy_discriminant() {
    let c = VarContext::new(&["y1", "y2"], &[]).unwrap();
    let gs = polys(&c, &["y1^2 - 4*y2"]);
    let pts = sample_points(&c, &gs).unwrap();
    assert_eq!(realized(&gs, &pts), [vec![-1], vec![1]].into_iter().collect());
}

#[test]
fn fixture_minors() {
    let c = VarContext::new(&["y1", "y2", "y3"], &[]).unwrap();
    let gs = polys(
        &c,
        &[
            "-8*y2^2 + 4*y3^2 + 8*y1",
            "-8*y2^4 - 16*y2^2*y3^2 - 8*y3^4 - 8*y1*y2^2 - 8*y1*y3^2 + 16*y1^2",
            "-16*y1*y2^6 - 48*y1*y2^4*y3^2 - 48*y1*y2^2*y3^4 - 16*y1*y3^6 + 48*y1^2*y2^4 - 336*y1^2*y2^2*y3^2 \
             + 48*y1^2*y3^4 - 48*y1^3*y2^2 - 48*y1^3*y3^2 + 16*y1^4",
        ],
    );
    let pts = sample_points(&c, &gs).unwrap();
    let got = realized(&gs, &pts);
    let listed: BTreeSet<Vec<i8>> =
        [[-1, 1, 1], [-1, -1, 1], [1, -1, -1], [-1, -1, -1], [1, 1, -1]].iter().map(|v| v.to_vec()).collect();
    assert!(listed.is_subset(&got));
    let mut all = listed.clone();
    all.insert(vec![1, 1, 1]);
    all.insert(vec![1, -1, 1]);
    assert_eq!(got, all);
    assert_eq!(signs_at(&gs, &[int(1), int(0), int(0)]), vec![1, 1, 1]);
    assert_eq!(signs_at(&gs, &[rat(-1, 5), rat(-1, 3), int(-1)]), vec![1, -1, 1]);
    assert!(got.iter().all(|s| !s.contains(&0)));
}

#[test]
fn soundness_and_determinism() {
    let c = VarContext::new(&["y1", "y2"], &[]).unwrap();
    let gs = polys(&c, &["y1^2 + y2^2 - 4", "y1*y2 - 1", "y2 - y1^3"]);
    let a = sample_points(&c, &gs).unwrap();
    assert_eq!(a, sample_points(&c, &gs).unwrap());
    for p in &a {
        assert!(signs_at(&gs, p).iter().all(|&s| s != 0));
    }
    let tower = ProjectionTower::build(&c, &gs).unwrap();
    assert!((a.len() as u128) <= tower.point_bound());
}

// products of circles and ellipses with centers and radii on a coarse grid
fn random_family(c: &Arc<VarContext>, seed: u64) -> Vec<MultiPoly> {
    let mut rng = crate::rng::stream(seed, "sample-family");
    let count = rng.gen_range(1..=3);
    (0..count)
        .map(|_| {
            let factors = rng.gen_range(1..=3);
            let mut p = MultiPoly::one(c);
            for _ in 0..factors {
                let (a, b) = (rng.gen_range(-4..=4), rng.gen_range(-4..=4));
                let (ka, kb) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
                let r2 = rng.gen_range(1..=6);
                let q = parse_poly(&format!("{ka}*(2*y1 - {a})^2 + {kb}*(2*y2 - {b})^2 - {}", 4 * r2), c).unwrap();
                p = &p * &q;
            }
            p
        })
        .collect()
}

#[test]
fn matches_grid_oracle_on_random_families() {
    let c = VarContext::new(&["y1", "y2"], &[]).unwrap();
    for seed in 0..10 {
        let gs = random_family(&c, seed);
        let pts = sample_points(&c, &gs).unwrap();
        assert_eq!(realized(&gs, &pts), grid_oracle(&gs), "seed {seed}");
    }
}
