use f256::f256;
use proptest::prelude::*;
use qaffine::gln::{
    build_gln_rep, chain_e, check_gln_relations, even_tensor, gln_coproduct, gln_coproduct_targets, gln_quotients, gln_yangian_limit,
};
use qaffine::numerics::{cx, real};
use qaffine::{Error, GradedSpace, Mat, Scalar, SuperMatrix};

const H_SEQ: [f64; 3] = [4e-4, 2e-4, 1e-4];

fn q0() -> Scalar<f64> {
    cx(1.3, 0.4)
}

fn z0() -> Scalar<f64> {
    cx(0.7, -0.5)
}

fn unit(n: usize, i: usize, j: usize) -> Mat<f64> {
    Mat::unit(n, i - 1, j - 1)
}

#[test]
fn two_step_chain_has_a_single_entry() {
    let rep = build_gln_rep(3, q0(), z0()).unwrap();
    let e21 = chain_e(&rep.gens, 2, 1, q0()).unwrap();
    let (e1, e2) = (unit(3, 1, 2), unit(3, 2, 3));
    let direct = &(&e2 * &e1) - &(&e1 * &e2).scale(q0());
    assert_eq!(e21.mat.max_abs_diff(&direct), 0.0);
    let nonzero = e21.mat.data().iter().filter(|x| x.norm() > 0.0).count();
    assert_eq!(nonzero, 1);
    assert!((e21.mat[(0, 2)] + q0()).norm() < 1e-15);
}

#[test]
fn relation_suites_hold_for_every_supported_n() {
    for n in 3..=6 {
        let rep = build_gln_rep(n, q0(), z0()).unwrap();
        let reports = check_gln_relations(&rep.gens, q0(), 1e-12, "generic").unwrap();
        let bad: Vec<_> = reports.iter().filter(|r| !r.pass).collect();
        assert!(bad.is_empty(), "n = {n}: {bad:?}");
    }
}

#[test]
fn cartan_sum_vanishes_exactly() {
    for n in 3..=6 {
        let rep = build_gln_rep(n, q0(), z0()).unwrap();
        let r = check_gln_relations(&rep.gens, q0(), 0.0, "generic").unwrap();
        assert!(r.iter().find(|r| r.id == "gl_h_sum").unwrap().pass);
    }
}

#[test]
fn coproduct_is_a_homomorphism() {
    for n in [3, 4] {
        let a = build_gln_rep(n, q0(), z0()).unwrap();
        let b = build_gln_rep(n, q0(), cx(-0.4, 1.1)).unwrap();
        let d = gln_coproduct(&a.gens, &b.gens, q0()).unwrap();
        let reports = check_gln_relations(&d, q0(), 1e-12, "pair").unwrap();
        let bad: Vec<_> = reports.iter().filter(|r| !r.pass).collect();
        assert!(bad.is_empty(), "n = {n}: {bad:?}");
    }
}

#[test]
fn perturbed_affine_generator_breaks_relations() {
    let mut rep = build_gln_rep(3, q0(), z0()).unwrap();
    rep.gens.f[2] = rep.gens.f[2].scale(cx(1.0 + 1e-3, 0.0));
    let reports = check_gln_relations(&rep.gens, q0(), 1e-12, "perturbed").unwrap();
    let ef = reports.iter().find(|r| r.id == "gl_ef[3,3]").unwrap();
    assert!(ef.residual > 1e-5);
}

#[test]
fn invalid_inputs_are_rejected() {
    for n in [0, 1, 2, 7] {
        assert!(matches!(build_gln_rep(n, q0(), z0()), Err(Error::Precondition(_))));
    }
    assert!(build_gln_rep(3, cx(1.0, 0.0), z0()).is_err());
    assert!(build_gln_rep(3, cx(-1.0, 0.0), z0()).is_err());
    assert!(build_gln_rep(3, q0(), cx(0.0, 0.0)).is_err());
}

#[test]
fn graded_factor_is_refused() {
    let v = GradedSpace::fundamental();
    let a = SuperMatrix::<f64>::identity(&v);
    assert!(matches!(even_tensor(&a, &a), Err(Error::Invariant(_))));
}

#[test]
fn single_site_quotient_recovers_chain_unit() {
    // The residual after extrapolation is O(h₁h₂), so 1e−8 needs finer steps.
    let rep = gln_yangian_limit::<f256>(3, real(1.0), real(0.0), &[1e-4, 5e-5, 2.5e-5]).unwrap();
    assert!(rep.single.iter().all(|r| r.pass), "{:?}", rep.single);
    assert!(rep.single[0].extrapolated_distance < 1e-8, "{:?}", rep.single[0]);
}

#[test]
fn yangian_limit_passes_for_three_and_four() {
    for n in [3, 4] {
        let rep = gln_yangian_limit::<f64>(n, cx(0.8, 0.3), cx(-0.5, 0.2), &H_SEQ).unwrap();
        for r in rep.reports() {
            assert!(r.pass, "n = {n}: {r:?}");
            let p = r.fitted_rate.unwrap();
            assert!((0.7..=1.3).contains(&p), "{r:?}");
        }
    }
}

#[test]
fn yangian_limit_extended_precision() {
    let rep = gln_yangian_limit::<f256>(4, real(0.8), real(-0.5), &H_SEQ).unwrap();
    assert!(rep.all_pass());
    assert!(rep.reports().all(|r| r.extrapolated_distance < 1e-6));
}

#[test]
fn cross_term_count() {
    for n in 3..=6 {
        let (_, _, k) = gln_coproduct_targets::<f64>(n, real(0.0), real(0.0)).unwrap();
        assert_eq!(k, n - 2);
    }
}

// Frozen from an independent decomposition of the n = 3 coproduct quotient
// into matrix units at q → 1 with u₁ = u₂ = 0.
#[test]
fn coproduct_targets_match_frozen_decomposition() {
    let (te, tf, _) = gln_coproduct_targets::<f64>(3, real(0.0), real(0.0)).unwrap();
    let k = |a: (usize, usize), b: (usize, usize)| unit(3, a.0, a.1).kron(&unit(3, b.0, b.1));
    let two = cx(2.0, 0.0);
    let e = &(&k((1, 1), (1, 3)).scale(two) + &k((1, 3), (3, 3)).scale(two)) - &k((2, 3), (1, 2)).scale(two);
    let f = &(&k((3, 1), (1, 1)).scale(two) + &k((3, 2), (2, 1)).scale(two)) + &k((3, 3), (3, 1)).scale(two);
    assert_eq!(te.mat.max_abs_diff(&e), 0.0);
    assert_eq!(tf.mat.max_abs_diff(&f), 0.0);
}

#[test]
fn flipped_cross_sign_is_detected() {
    let n = 3;
    let (u1, u2) = (real::<f64>(0.8), real::<f64>(-0.5));
    let h = 1e-5;
    let q = real::<f64>(1.0 + h);
    let a = build_gln_rep(n, q, q.powc(u1)).unwrap();
    let b = build_gln_rep(n, q, q.powc(u2)).unwrap();
    let d = gln_coproduct(&a.gens, &b.gens, q).unwrap();
    let (pe, _) = gln_quotients(&d, q).unwrap();
    let (te, _, _) = gln_coproduct_targets(n, u1, u2).unwrap();
    let cross = unit(3, 2, 3).kron(&unit(3, 1, 2)).scale(cx(4.0, 0.0));
    let flipped = &te.mat + &cross;
    assert!(pe.mat.max_abs_diff(&te.mat) < 1e-3);
    assert!(pe.mat.max_abs_diff(&flipped) > 1.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relations_hold_at_random_points(
        n in 3usize..=6,
        qr in 0.5f64..2.0, qi in -0.8f64..0.8,
        zr in -1.5f64..1.5, zi in 0.2f64..1.5,
    ) {
        let q: Scalar<f64> = cx(qr, qi);
        prop_assume!((q - cx(1.0, 0.0)).norm() > 0.05);
        let rep = build_gln_rep(n, q, cx(zr, zi)).unwrap();
        let reports = check_gln_relations(&rep.gens, q, 1e-10, "random").unwrap();
        for r in reports {
            prop_assert!(r.pass, "{:?}", r);
        }
    }

    #[test]
    fn affine_pair_scales_with_evaluation_parameter(n in 3usize..=5, s in 0.3f64..3.0) {
        let a = build_gln_rep(n, q0(), z0()).unwrap();
        let b = build_gln_rep(n, q0(), z0() * s).unwrap();
        let sc = cx(s, 0.0);
        prop_assert!(b.gens.f[n - 1].mat.max_abs_diff(&a.gens.f[n - 1].mat.scale(sc)) < 1e-12);
        prop_assert!(b.gens.e[n - 1].mat.max_abs_diff(&a.gens.e[n - 1].mat.scale(cx(1.0 / s, 0.0))) < 1e-12);
    }
}
