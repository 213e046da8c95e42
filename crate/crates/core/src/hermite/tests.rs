use super::*;
use crate::arith::{int, parse_poly, rat};
use crate::linalg::{rank, signature};

fn fixture() -> ParametricSystem {
    ParametricSystem::from_strs(&["y1", "y2", "y3"], &["x1", "x2"], &["x1^2 + x2^2 - y1", "x1*x2 + y2*x2 + y3*x1"]).unwrap()
}

fn toy() -> ParametricSystem {
    ParametricSystem::from_strs(&["y1", "y2"], &["x"], &["x^2 + y1*x + y2"]).unwrap()
}

fn expected(h: &HermiteMatrix, rows: &[&[&str]]) -> Vec<Vec<MultiPoly>> {
    let n = rows.len();
    let mut out = vec![vec![MultiPoly::zero(h.param_ctx()); n]; n];
    for i in 0..n {
        for j in i..n {
            let p = parse_poly(rows[i][j - i], h.param_ctx()).unwrap();
            out[i][j] = p.clone();
            out[j][i] = p;
        }
    }
    out
}

fn fixture_expected(h: &HermiteMatrix) -> Vec<Vec<MultiPoly>> {
    expected(
        h,
        &[
            &["4", "-2*y3", "-2*y2", "2*(-y2^2 + y3^2 + y1)"],
            &["2*(-y2^2 + y3^2 + y1)", "4*y2*y3", "2*(3*y2^2*y3 - y3^3)"],
            &["2*(y2^2 - y3^2 + y1)", "2*(y2^3 - 3*y2*y3^2 - y1*y2)"],
            &["2*y2^4 - 12*y2^2*y3^2 + 2*y3^4 - 4*y1*y2^2 + 2*y1^2"],
        ],
    )
}

#[test]
fn fixture_matrix() {
    let h = drl_matrix(&fixture()).unwrap();
    assert_eq!(h.basis().render(h.sys_ctx()), vec!["1", "x2", "x1", "x2^2"]);
    assert_eq!(h.polynomial_entries().unwrap(), fixture_expected(&h));
    assert!(h.w_infinity().is_one());
    assert!(h.assumption_c_holds() && h.assumptions().e);
    assert_eq!(h.degree_pattern(), vec![vec![0, 1, 1, 2], vec![1, 2, 2, 3], vec![1, 2, 2, 3], vec![2, 3, 3, 4]]);
}

#[test]
fn toy_matrix_is_newton_sums() {
    let h = drl_matrix(&toy()).unwrap();
    assert_eq!(h.polynomial_entries().unwrap(), expected(&h, &[&["2", "-y1"], &["y1^2 - 2*y2"]]));
    let m = specialize_matrix(&h, &[int(0), int(1)]).unwrap();
    assert_eq!(m, RationalMatrix::from_i64(&[&[2, 0], &[0, -2]]));
    assert_eq!(signature(&m).unwrap(), 0);
}

#[test]
fn multiplication_matrices() {
    let sys = fixture();
    let r = KReducer::new(&sys.groebner()).unwrap();
    let xs = x_matrices(&r);
    let bs = b_matrices(&r, &xs);
    let one = RatFunc::from_poly(MultiPoly::one(r.param_ctx()));
    for (i, row) in bs[0].matrix.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            assert_eq!(e.is_zero(), i != j);
            if i == j {
                assert_eq!(e, &one);
            }
        }
    }
    // multiplication maps commute
    let zero = RatFunc::zero(r.param_ctx());
    assert_eq!(rf_matmul(&xs[0].matrix, &xs[1].matrix, &zero), rf_matmul(&xs[1].matrix, &xs[0].matrix, &zero));
}

#[test]
fn specialization_at_a_point() {
    let h = drl_matrix(&fixture()).unwrap();
    let m = specialize_matrix(&h, &[int(1), int(0), int(0)]).unwrap();
    assert_eq!(m, RationalMatrix::from_i64(&[&[4, 0, 0, 2], &[0, 2, 0, 0], &[0, 0, 2, 0], &[2, 0, 0, 2]]));
    assert_eq!(signature(&m).unwrap(), 4);
    assert_eq!(rank(&m), 4);
}

#[test]
fn specialization_commutes_with_construction() {
    let sys = fixture();
    let h = drl_matrix(&sys).unwrap();
    for eta in [[rat(3, 2), int(-1), int(2)], [int(-2), rat(1, 3), int(0)], [int(5), int(1), int(-1)]] {
        let direct = drl_matrix(&sys.specialize(&eta).unwrap()).unwrap();
        let m = specialize_matrix(&h, &eta).unwrap();
        let direct: Vec<Vec<Rational>> = direct.polynomial_entries().unwrap().iter().map(|r| r.iter().map(|e| e.as_constant().unwrap()).collect()).collect();
        assert_eq!(m.to_rows(), direct);
    }
}

#[test]
fn bad_locus_is_refused() {
    let sys = ParametricSystem::from_strs(&["y1", "y2"], &["x"], &["y1*x^2 + y2*x - 1"]).unwrap();
    let h = drl_matrix(&sys).unwrap();
    assert!(!h.assumption_c_holds());
    assert_eq!(h.w_infinity().to_string(), "y1");
    assert_eq!(specialize_matrix(&h, &[int(0), int(1)]), Err(HermiteError::OnBadLocus));
    // traces of 1 and x: 2 and -y2/y1
    assert_eq!(h.entry(0, 1).to_string(), "(-y2) / (y1)");
    let s = remove_denominators(&h);
    assert_eq!(s.scales().unwrap()[1].to_string(), "y1");
    assert_eq!(s.entry(0, 1).to_string(), "-y2");
    assert!(s.is_polynomial());
    let eta = [int(2), int(3)];
    let a = signature(&specialize_matrix(&h, &eta).unwrap()).unwrap();
    let b = signature(&specialize_matrix(&s, &eta).unwrap()).unwrap();
    assert_eq!(a, b);
    assert_eq!(interp_hermite(&sys, None, 1), Err(HermiteError::AssumptionCViolated));
}

#[test]
fn polynomial_matrix_unchanged_by_denominator_removal() {
    let h = drl_matrix(&toy()).unwrap();
    assert_eq!(remove_denominators(&h), h);
}

#[test]
fn interpolation_path_agrees() {
    let sys = fixture();
    let a = drl_matrix(&sys).unwrap();
    let b = interp_hermite(&sys, Some(4), 7).unwrap();
    assert_eq!(a.entries(), b.entries());
    assert_eq!(default_lambda(&sys), 4);
    let t = toy();
    assert_eq!(interp_hermite(&t, Some(2), 7).unwrap().entries(), drl_matrix(&t).unwrap().entries());
    assert!(matches!(
        interp_hermite(&sys, Some(1), 7),
        Err(HermiteError::Arith(ArithError::ResidualMismatch { .. }))
    ));
}
