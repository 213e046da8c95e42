//! End-to-end acceptance checks. Each test prints one PASS/FAIL line;
//! run with `--nocapture` to see them.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::Rng;
use rrc_core::arith::{int, parse_poly, MultiPoly, Rational, VarContext};
use rrc_core::classify::{rrc_hermite, rrc_sturm, ClassifyOptions, FastMode};
use rrc_core::grobner::{elimination_ideal_generator, eliminating_polynomial, ParametricSystem};
use rrc_core::hermite::{drl_matrix, remove_denominators, specialize_matrix, HermiteMatrix};
use rrc_core::linalg::{leading_principal_minors, minor_poly, rank, signature, MinorRequest};
use rrc_core::rng::stream;
use rrc_core::samplepoints::sample_points;
use rrc_core::univariate::{generalized_pmv, subresultant_lcoeffs, upoly_from_multi, UPoly};

fn report(id: u8, title: &str, body: impl FnOnce() -> String + UnwindSafe) {
    let start = Instant::now();
    match catch_unwind(body) {
        Ok(note) => println!("[{id:>2}] PASS  {title} ({:.2?}) {note}", start.elapsed()),
        Err(e) => {
            println!("[{id:>2}] FAIL  {title} ({:.2?})", start.elapsed());
            resume_unwind(e)
        }
    }
}

fn fixture() -> ParametricSystem {
    ParametricSystem::from_strs(&["y1", "y2", "y3"], &["x1", "x2"], &["x1^2 + x2^2 - y1", "x1*x2 + y2*x2 + y3*x1"]).unwrap()
}

fn toy() -> ParametricSystem {
    ParametricSystem::from_strs(&["y1", "y2"], &["x"], &["x^2 + y1*x + y2"]).unwrap()
}

fn full() -> ClassifyOptions {
    ClassifyOptions { fast_mode: FastMode::Off, ..ClassifyOptions::default() }
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

fn signs_at(ps: &[MultiPoly], eta: &[Rational]) -> Vec<i8> {
    ps.iter().map(|p| sign(&p.evaluate(eta).unwrap())).collect()
}

fn conds(v: &[[i8; 3]]) -> BTreeSet<Vec<i8>> {
    v.iter().map(|c| c.to_vec()).collect()
}

/// `p = k q` for a rational `k > 0`.
fn positive_multiple(p: &MultiPoly, q: &MultiPoly) -> bool {
    let Some((m, c)) = q.terms().next() else { return p.is_zero() };
    let k = p.coeff(m) / c;
    k.is_positive() && p == &q.scale(&k)
}

fn random_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(-60i64..=60).into(), rng.gen_range(1i64..=12).into())
}

// ---------------------------------------------------------------------------
// univariate oracle: Sturm chains over the rationals

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / b.last().unwrap();
        for (i, bc) in b.iter().enumerate() {
            r[k + i] = &r[k + i] - &c * bc;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn derivative(p: &[Rational]) -> Vec<Rational> {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect())
}

fn gcd_degree(a: &[Rational], b: &[Rational]) -> usize {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

/// Distinct real roots of `p` (lowest degree first) by a Sturm chain.
fn sturm_count(p: &[Rational]) -> usize {
    let p = trim(p.to_vec());
    if p.len() <= 1 {
        return 0;
    }
    let mut chain = vec![p.clone(), derivative(&p)];
    loop {
        let n = chain.len();
        let r = rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    let changes = |s: Vec<i8>| s.windows(2).filter(|w| w[0] != w[1]).count();
    let at_pos: Vec<i8> = chain.iter().map(|q| sign(q.last().unwrap())).collect();
    let at_neg: Vec<i8> = chain
        .iter()
        .map(|q| if (q.len() - 1) % 2 == 0 { sign(q.last().unwrap()) } else { -sign(q.last().unwrap()) })
        .collect();
    changes(at_neg) - changes(at_pos)
}

/// Distinct real and complex solutions of a parameter-free system, via elimination.
fn solve_by_elimination(sys: &ParametricSystem, seed: u64) -> (usize, usize) {
    let e = eliminating_polynomial(sys, seed, 30).unwrap();
    let w = upoly_from_multi(&e.w, e.u).unwrap();
    (sturm_count(w.coeffs()), e.degree)
}

// ---------------------------------------------------------------------------
// random dense systems in two variables and two parameters

fn dense_system(seed: u64, d: u32) -> ParametricSystem {
    let mut rng = stream(seed, "acceptance-dense");
    let mut monos = Vec::new();
    for deg in 0..=d {
        for i in 0..=deg {
            monos.push((i, deg - i));
        }
    }
    let polys: Vec<String> = (0..2)
        .map(|_| {
            monos
                .iter()
                .map(|&(a, b)| {
                    let mut c = format!("{}", rng.gen_range(-5i64..=5));
                    if a + b < d {
                        c = format!("{c} + ({})*y1 + ({})*y2", rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3));
                    } else if c == "0" {
                        c = "1".into();
                    }
                    format!("({c})*x1^{a}*x2^{b}")
                })
                .collect::<Vec<_>>()
                .join(" + ")
        })
        .collect();
    let refs: Vec<&str> = polys.iter().map(String::as_str).collect();
    ParametricSystem::from_strs(&["y1", "y2"], &["x1", "x2"], &refs).unwrap()
}

/// Dense systems whose Hermite matrix exists, with their matrices.
fn dense_family(count: usize, ds: &[u32]) -> Vec<(ParametricSystem, HermiteMatrix)> {
    let mut out = Vec::new();
    let mut seed = 0;
    while out.len() < count {
        let d = ds[seed as usize % ds.len()];
        let sys = dense_system(seed, d);
        seed += 1;
        if let Ok(h) = drl_matrix(&sys) {
            out.push((sys, h));
        }
        assert!(seed < 10 * count as u64 + 20, "too few usable systems");
    }
    out
}

// ---------------------------------------------------------------------------

fn fixture_rows(ctx: &Arc<VarContext>) -> Vec<Vec<MultiPoly>> {
    let upper: [&[&str]; 4] = [
        &["4", "-2*y3", "-2*y2", "2*(-y2^2 + y3^2 + y1)"],
        &["2*(-y2^2 + y3^2 + y1)", "4*y2*y3", "2*(3*y2^2*y3 - y3^3)"],
        &["2*(y2^2 - y3^2 + y1)", "2*(y2^3 - 3*y2*y3^2 - y1*y2)"],
        &["2*y2^4 - 12*y2^2*y3^2 + 2*y3^4 - 4*y1*y2^2 + 2*y1^2"],
    ];
    let mut m = vec![vec![MultiPoly::zero(ctx); 4]; 4];
    for i in 0..4 {
        for j in i..4 {
            let p = parse_poly(upper[i][j - i], ctx).unwrap();
            m[i][j] = p.clone();
            m[j][i] = p;
        }
    }
    m
}

#[test]
fn c01_fixture_hermite_matrix() {
    report(1, "fixture Hermite matrix", || {
        let start = Instant::now();
        let h = drl_matrix(&fixture()).unwrap();
        let elapsed = start.elapsed();
        assert_eq!(h.basis().render(h.sys_ctx()), ["1", "x2", "x1", "x2^2"]);
        assert_eq!(h.delta(), 4);
        assert!(h.w_infinity().is_constant());
        assert_eq!(h.polynomial_entries().unwrap(), fixture_rows(h.param_ctx()));
        assert!(elapsed < Duration::from_secs(5), "{elapsed:?}");
        format!("built in {elapsed:.2?}; entries (1,4) and (2,2) carry the sign consistent with M_2")
    });
}

#[test]
fn c02_fixture_minors() {
    report(2, "fixture leading principal minors", || {
        let h = drl_matrix(&fixture()).unwrap();
        let ms = leading_principal_minors(&h, 0).unwrap();
        let c = h.param_ctx();
        let printed = [
            "4",
            "4*(-2*y2^2 + y3^2 + 2*y1)",
            "8*(-y2^4 - 2*y2^2*y3^2 - y3^4 - y1*y2^2 - y1*y3^2 + 2*y1^2)",
            "16*y1*(-y2^6 - 3*y2^4*y3^2 - 3*y2^2*y3^4 - y3^6 + 3*y1*y2^4 - 21*y1*y2^2*y3^2 + 3*y1*y3^4 \
             - 3*y1^2*y2^2 - 3*y1^2*y3^2 + y1^3)",
        ];
        for (m, p) in ms.iter().zip(printed) {
            assert_eq!(m, &parse_poly(p, c).unwrap());
        }
        let degs: Vec<u32> = ms.iter().map(MultiPoly::total_degree).collect();
        assert_eq!(degs, [0, 2, 4, 7]);
        let (n, d) = (2u32, 2u32);
        assert!(degs.iter().all(|&k| k <= n * (d - 1) * d.pow(n)));
        format!("degrees {degs:?}")
    });
}

#[test]
fn c03_fixture_hermite_classification() {
    report(3, "fixture classification, Hermite full mode", || {
        let start = Instant::now();
        let sys = fixture();
        let r = rrc_hermite(&sys, &full()).unwrap();
        let elapsed = start.elapsed();
        assert_eq!(r.labels, ["M_2", "M_3", "M_4"]);
        assert_eq!(r.counts(), [0, 2, 4].into_iter().collect());
        let listed = conds(&[[-1, 1, 1], [-1, -1, 1], [1, -1, -1], [-1, -1, -1], [1, 1, -1]]);
        let got = r.sign_conditions();
        assert!(listed.is_subset(&got));
        let grouping = [([-1, 1, 1], 0), ([-1, -1, 1], 0), ([1, -1, -1], 2), ([-1, -1, -1], 2), ([1, 1, -1], 2)];
        for (c, k) in grouping {
            assert_eq!(r.count_for(&c), Some(k), "{c:?}");
        }
        // Every further realized condition is witnessed by an exact sample
        // point whose count an independent solver confirms.
        let extra: Vec<Vec<i8>> = got.difference(&listed).cloned().collect();
        for c in &extra {
            let cell = r.cells.iter().find(|cell| &cell.signs == c).unwrap();
            assert_eq!(signs_at(&r.polys, &cell.sample), *c);
            let (real, _) = solve_by_elimination(&sys.specialize(&cell.sample).unwrap(), 1);
            assert_eq!(real, cell.count, "{c:?} at {:?}", cell.sample);
        }
        assert!(elapsed < Duration::from_secs(120), "{elapsed:?}");
        let witnesses: Vec<String> = extra
            .iter()
            .map(|c| {
                let cell = r.cells.iter().find(|cell| &cell.signs == c).unwrap();
                let pt: Vec<String> = cell.sample.iter().map(ToString::to_string).collect();
                format!("{c:?}@({})->{}", pt.join(","), cell.count)
            })
            .collect();
        format!("{} conditions; additional realized: {}", got.len(), witnesses.join(" "))
    });
}

#[test]
fn c04_fixture_sturm_classification() {
    report(4, "fixture classification, subresultants", || {
        let sys = fixture();
        let e = elimination_ideal_generator(&sys, &[0, 1]).unwrap();
        let w = parse_poly("u^4 + 2*y3*u^3 + (y2^2 + y3^2 - y1)*u^2 - 2*y1*y3*u - y1*y3^2", e.w.ctx()).unwrap();
        assert_eq!(e.w, w);
        let r = rrc_sturm(&sys, &ClassifyOptions::default()).unwrap();
        let pc = sys.ctx().params_only();
        let s = &r.boundary.subresultants;
        let printed = [
            "-2*y2^2 + y3^2 + 2*y1",
            "-y2^6 - 2*y2^4*y3^2 - y2^2*y3^4 + 3*y1*y2^4 - 14*y1*y2^2*y3^2 + y1*y3^4 - 3*y1^2*y2^2 - 2*y1^2*y3^2 + y1^3",
            "(y2*y3)^2*y1*(-y2^6 - 3*y2^4*y3^2 - 3*y2^2*y3^4 - y3^6 + 3*y1*y2^4 - 21*y1*y2^2*y3^2 + 3*y1*y3^4 \
             - 3*y1^2*y2^2 - 3*y1^2*y3^2 + y1^3)",
        ];
        assert!(s[0].is_constant() && s[1].is_constant());
        for (k, p) in printed.iter().enumerate() {
            assert!(positive_multiple(&s[k + 2], &parse_poly(p, &pc).unwrap()), "s_{}", k + 2);
        }
        assert_eq!(r.labels, ["s_2", "s_3", "s_4"]);
        assert_eq!(r.sign_conditions().len(), 7);
        assert_eq!(r.max_degree(), 11);
        let table: BTreeMap<usize, BTreeSet<Vec<i8>>> = [
            (0, conds(&[[-1, -1, 1], [-1, 1, 1], [1, -1, 1]])),
            (2, conds(&[[-1, -1, -1], [1, -1, -1], [1, 1, -1]])),
            (4, conds(&[[1, 1, 1]])),
        ]
        .into_iter()
        .collect();
        let got: BTreeMap<usize, BTreeSet<Vec<i8>>> =
            r.formulas.iter().map(|(k, v)| (*k, v.iter().cloned().collect())).collect();
        assert_eq!(got, table);
        "7 conditions, max degree 11".into()
    });
}

#[test]
fn c05_toy_quadratic() {
    report(5, "toy quadratic, both pipelines", || {
        let sys = toy();
        let disc = parse_poly("y1^2 - 4*y2", &sys.ctx().params_only()).unwrap();
        for r in [rrc_hermite(&sys, &full()).unwrap(), rrc_sturm(&sys, &full()).unwrap()] {
            assert_eq!(r.counts(), [0, 2].into_iter().collect());
            assert_eq!(r.polys.len(), 1);
            let p = &r.polys[0];
            assert!(positive_multiple(p, &disc) || positive_multiple(&-p, &disc));
            let by_disc: BTreeMap<i8, usize> =
                r.cells.iter().map(|c| (sign(&disc.evaluate(&c.sample).unwrap()), c.count)).collect();
            assert_eq!(by_disc, [(-1, 0), (1, 2)].into_iter().collect());
        }
        "counts {0, 2} split by the discriminant".into()
    });
}

#[test]
fn c06_specialization_commutes() {
    report(6, "specialization of the parametric matrix", || {
        for (name, sys) in [("fixture", fixture()), ("toy", toy())] {
            let h = drl_matrix(&sys).unwrap();
            let mut rng = stream(6, name);
            for _ in 0..20 {
                let eta: Vec<Rational> = (0..sys.t()).map(|_| random_rational(&mut rng)).collect();
                let direct = drl_matrix(&sys.specialize(&eta).unwrap()).unwrap();
                let direct: Vec<Vec<Rational>> = direct
                    .polynomial_entries()
                    .unwrap()
                    .iter()
                    .map(|row| row.iter().map(|e| e.as_constant().unwrap()).collect())
                    .collect();
                assert_eq!(specialize_matrix(&h, &eta).unwrap().to_rows(), direct, "{name} {eta:?}");
            }
        }
        "20 points per system".into()
    });
}

#[test]
fn c07_counting_oracle() {
    report(7, "signature and rank against elimination", || {
        let check = |sys: &ParametricSystem, h: &HermiteMatrix, eta: &[Rational]| {
            let m = specialize_matrix(h, eta).unwrap();
            let (real, complex) = solve_by_elimination(&sys.specialize(eta).unwrap(), 3);
            assert_eq!(signature(&m).unwrap(), real as i64, "{eta:?}");
            assert_eq!(rank(&m), complex, "{eta:?}");
        };
        let mut done = 0;
        for (name, sys) in [("fixture", fixture()), ("toy", toy())] {
            let h = drl_matrix(&sys).unwrap();
            let mut rng = stream(7, name);
            for _ in 0..25 {
                let eta: Vec<Rational> = (0..sys.t()).map(|_| random_rational(&mut rng)).collect();
                check(&sys, &h, &eta);
                done += 1;
            }
        }
        let family = dense_family(20, &[2, 3]);
        let mut rng = stream(7, "dense");
        for (sys, h) in &family {
            let eta: Vec<Rational> = (0..2).map(|_| random_rational(&mut rng)).collect();
            check(sys, h, &eta);
            done += 1;
        }
        format!("{done} specializations, {} dense systems", family.len())
    });
}

#[test]
fn c08_pmv_oracle() {
    report(8, "generalized permanences minus variations", || {
        let mut rng = stream(8, "pmv");
        let mut stats = (0, 0);
        for k in 0..200 {
            let mut p = vec![int(1)];
            let mul = |a: &[Rational], b: &[Rational]| {
                let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in b.iter().enumerate() {
                        out[i + j] = &out[i + j] + x * y;
                    }
                }
                out
            };
            if k % 4 == 3 {
                // sparse: c x^m + e, many zero subresultants
                let m = rng.gen_range(2..=8);
                p = vec![Rational::zero(); m + 1];
                p[0] = int(rng.gen_range(-6i64..=6));
                p[m] = int(rng.gen_range(1i64..=3));
                if rng.gen_bool(0.5) {
                    p[m / 2] = int(rng.gen_range(-4i64..=4));
                }
            } else {
                while p.len() < 2 {
                    for _ in 0..rng.gen_range(1..=3) {
                        let deg = rng.gen_range(1..=3usize);
                        let mut f: Vec<Rational> = (0..deg).map(|_| int(rng.gen_range(-4i64..=4))).collect();
                        f.push(int(1));
                        let e = rng.gen_range(1..=2);
                        for _ in 0..e {
                            if p.len() + f.len() - 2 <= 8 {
                                p = mul(&p, &f);
                            }
                        }
                    }
                }
            }
            let p = trim(p);
            let up = UPoly::new(p.clone(), Rational::zero());
            let s = subresultant_lcoeffs(&up, &up.derivative()).unwrap();
            let signs: Vec<i8> = s.coeffs().iter().map(sign).collect();
            if signs.contains(&0) {
                stats.0 += 1;
            }
            if gcd_degree(&p, &derivative(&p)) > 0 {
                stats.1 += 1;
            }
            let pmv = generalized_pmv(&signs).unwrap();
            assert_eq!(pmv, sturm_count(&p) as i64, "{p:?} {signs:?}");
        }
        assert!(stats.0 > 0 && stats.1 > 0);
        format!("200 polynomials, {} with zero subresultants, {} with repeated roots", stats.0, stats.1)
    });
}

#[test]
fn c09_degree_bounds() {
    report(9, "degree bounds on dense systems", || {
        let mut checked = 0;
        let mut seed = 100;
        while checked < 10 {
            let d = if checked % 2 == 0 { 2 } else { 3 };
            let sys = dense_system(seed, d);
            seed += 1;
            assert!(seed < 300, "too few systems satisfy the degree assumption");
            let Ok(h) = drl_matrix(&sys) else { continue };
            if !h.assumptions().e {
                continue;
            }
            let n = sys.n() as u32;
            let bdeg = h.basis().degrees();
            assert!(bdeg.iter().all(|&b| b <= n * (d - 1)));
            let pattern = h.degree_pattern();
            for (i, row) in pattern.iter().enumerate() {
                for (j, &e) in row.iter().enumerate() {
                    assert!(e <= bdeg[i] + bdeg[j], "seed {seed} entry {i},{j}");
                }
            }
            let hp = remove_denominators(&h);
            let det = minor_poly(&hp, &MinorRequest::leading(hp.delta()), seed).unwrap();
            assert!(det.total_degree() <= n * (d - 1) * d.pow(n), "det degree {}", det.total_degree());
            checked += 1;
        }
        format!("10 systems from {} candidates", seed - 100)
    });
}

fn circle_family(seed: u64, c: &Arc<VarContext>) -> Vec<MultiPoly> {
    let mut rng = stream(seed, "acceptance-cells");
    (0..rng.gen_range(1..=3))
        .map(|_| {
            let mut p = MultiPoly::one(c);
            for _ in 0..rng.gen_range(1..=3) {
                let (a, b) = (rng.gen_range(-4..=4), rng.gen_range(-4..=4));
                let q = if rng.gen_bool(0.25) {
                    format!("({a})*y1 + ({b})*y2 - {}", rng.gen_range(-3..=3))
                } else {
                    format!("{}*(2*y1 - {a})^2 + {}*(2*y2 - {b})^2 - {}", rng.gen_range(1..=2), rng.gen_range(1..=2), 4 * rng.gen_range(1..=6))
                };
                p = &p * &parse_poly(&q, c).unwrap();
            }
            p
        })
        .filter(|p| !p.is_constant())
        .collect()
}

#[test]
fn c10_sample_points_vs_grid() {
    report(10, "sample points against a grid scan", || {
        let c = VarContext::new(&["y1", "y2"], &[]).unwrap();
        let mut total = 0;
        for seed in 0..10 {
            let gs = circle_family(seed, &c);
            assert!(gs.len() <= 3 && gs.iter().all(|g| g.total_degree() <= 6));
            let pts = sample_points(&c, &gs).unwrap();
            let realized: BTreeSet<Vec<i8>> = pts.iter().map(|p| signs_at(&gs, p)).collect();
            let mut grid = BTreeSet::new();
            for i in -64..=64 {
                for j in -64..=64 {
                    let s = signs_at(&gs, &[Rational::new(i.into(), 16.into()), Rational::new(j.into(), 16.into())]);
                    if !s.contains(&0) {
                        grid.insert(s);
                    }
                }
            }
            assert_eq!(realized, grid, "seed {seed}");
            total += realized.len();
        }
        format!("10 families, {total} sign conditions")
    });
}

fn kuramoto() -> ParametricSystem {
    let s = ["s1", "s2", "s3"];
    let c = ["c1", "c2", "c3"];
    let mut polys = Vec::new();
    for i in 0..3 {
        let mut f = format!("y{} - {}", i + 1, s[i]);
        for j in 0..3 {
            if j != i {
                f.push_str(&format!(" - ({}*{} - {}*{})", s[i], c[j], s[j], c[i]));
            }
        }
        polys.push(f);
        polys.push(format!("{}^2 + {}^2 - 1", s[i], c[i]));
    }
    let refs: Vec<&str> = polys.iter().map(String::as_str).collect();
    ParametricSystem::from_strs(&["y1", "y2", "y3"], &["s1", "s2", "s3", "c1", "c2", "c3"], &refs).unwrap()
}

#[test]
#[ignore = "stretch check; slow"]
fn c11_kuramoto_matrix_size() {
    report(11, "four-oscillator Kuramoto matrix size (stretch)", || {
        let h = drl_matrix(&kuramoto()).unwrap();
        assert_eq!(h.delta(), 14);
        "14 x 14".into()
    });
}
