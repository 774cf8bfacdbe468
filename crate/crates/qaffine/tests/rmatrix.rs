use qaffine::fundrep::sample_points;
use qaffine::numerics::{cx, SampleSeed, Tolerance};
use qaffine::rmatrix::{
    affine_invariance, regularity_residual, solve_r, solve_r_with, weight_violation, ybe_residual, ybe_residual_of,
};
use qaffine::{build_rep, FundRep, Generator};

fn reps(seed: u64, idx: u64, n: usize) -> Vec<FundRep<f64>> {
    let (params, pts) = sample_points::<f64>(SampleSeed(seed), idx, n, cx(1.2, 0.3), cx(0.7, -0.4)).unwrap();
    pts.iter().map(|p| build_rep(p, &params).unwrap()).collect()
}

#[test]
fn unique_intertwiner_with_gap() {
    let tol = Tolerance::standard();
    for idx in 0..20 {
        let r = reps(21, idx, 2);
        let rm = solve_r(&r[0], &r[1], tol).unwrap();
        assert_eq!(rm.nullspace.dimension, 1);
        assert!(rm.nullspace.gap_ratio() > 1e6, "gap {:e}", rm.nullspace.gap_ratio());
        assert!(rm.max_residual() < 1e-9, "{:?}", rm.residuals);
        assert!(weight_violation(&rm.entries, &r[0], &r[1]).unwrap() < 1e-12);
    }
}

#[test]
fn regularity_and_ybe() {
    let tol = Tolerance::standard();
    for idx in 0..3 {
        let r = reps(31, idx, 3);
        assert!(regularity_residual(&r[0], tol).unwrap() < 1e-10);
        let y = ybe_residual(&r[0], &r[1], &r[2], tol).unwrap();
        assert!(y < 1e-9, "{y:e}");
    }
}

#[test]
fn node_four_follows_from_three_nodes() {
    let tol = Tolerance::standard();
    let r = reps(8, 0, 2);
    let sub = solve_r_with(&r[0], &r[1], &Generator::chevalley_nodes(&[1, 2, 3]), tol).unwrap();
    assert_eq!(sub.nullspace.dimension, 1);
    for g in [Generator::E(4), Generator::F(4), Generator::K(4)] {
        assert!(sub.residuals[&g] < 1e-9, "{g}: {:e}", sub.residuals[&g]);
    }
}

#[test]
fn affine_map_rescales_r() {
    let tol = Tolerance::standard();
    for idx in 0..5 {
        let r = reps(17, idx, 2);
        let rm = solve_r(&r[0], &r[1], tol).unwrap();
        let inv = affine_invariance(&rm, &r[0], &r[1], tol).unwrap();
        assert!(inv.spread < 1e-9, "{inv:?}");
    }
}

#[test]
fn ybe_residual_is_linear_in_entry_perturbation() {
    let tol = Tolerance::standard();
    let r = reps(31, 0, 3);
    let r12 = solve_r(&r[0], &r[1], tol).unwrap().as_super(&r[0], &r[1]).unwrap();
    let r13 = solve_r(&r[0], &r[2], tol).unwrap().as_super(&r[0], &r[2]).unwrap();
    let r23 = solve_r(&r[1], &r[2], tol).unwrap().as_super(&r[1], &r[2]).unwrap();
    let bump = |d: f64| {
        let mut m = r12.clone();
        m.mat[(0, 0)] = m.mat[(0, 0)] + cx(d, 0.0);
        ybe_residual_of(&m, &r13, &r23).unwrap()
    };
    let (y1, y2) = (bump(1e-6), bump(2e-6));
    assert!(y1 > 1e-8, "{y1:e}");
    assert!((y2 / y1 - 2.0).abs() < 0.05, "{y1:e} {y2:e}");
}
