use f256::f256;
use proptest::prelude::*;
use qaffine::limits::appendix::{all_generator_limits, epsilon, fermion_table};
use qaffine::limits::conv::{conv_convergence_check, conv_limit_rep, perk_schultz_ratio_check};
use qaffine::limits::series::{fit_order, limit_report, richardson, validate_steps, Acceptance};
use qaffine::limits::yangian::{
    n_split_residual, spectral_expansion_check, spectral_w_alt, spectral_zw, t_matrix_relation_residual,
    yangian_coproduct_check, yangian_quotient, yangian_quotient_check, QuotientKind, YangianFrame,
};
use qaffine::limits::Brackets;
use qaffine::numerics::{cx, lower, Tolerance};
use qaffine::relations::{catalog_qhat, evaluate};
use qaffine::{Generator, Mat, Real, Scalar, SuperMatrix};

const H_SEQ: [f64; 3] = [4e-4, 2e-4, 1e-4];

fn conv<R: Real>() -> qaffine::ConvLimitRep<R> {
    conv_limit_rep(cx(0.6, 0.5), cx(1.1, 0.2), cx(0.8, -0.3), cx(1.2, 0.0), cx(0.9, 0.1)).unwrap()
}

fn frame<R: Real>(xp: (f64, f64), gamma: (f64, f64)) -> YangianFrame<R> {
    YangianFrame::new(cx(xp.0, xp.1), cx(gamma.0, gamma.1), cx(0.6, 0.1), cx(1.2, 0.1), cx(0.9, -0.2)).unwrap()
}

fn frame_a<R: Real>() -> YangianFrame<R> {
    frame((1.4, 0.9), (0.8, 0.3))
}

fn frame_b<R: Real>() -> YangianFrame<R> {
    frame((-0.7, 1.3), (1.1, -0.4))
}

#[test]
fn evaluation_representation_is_exact() {
    let c = conv::<f64>();
    for r in c.evaluation_residuals().unwrap() {
        assert!(r < 1e-12, "{r:e}");
    }
    let one = cx::<f64>(1.0, 0.0);
    let u2 = (one - c.z * c.q) / (c.q - c.z);
    assert!((c.u2 * c.u2 - u2).norm() < 1e-14);
    let e2 = c.matrix(Generator::E(2));
    let e4 = c.matrix(Generator::E(4));
    assert_eq!(e2[(0, 3)], cx(0.0, 0.0));
    assert_eq!(e4[(2, 1)], cx(0.0, 0.0));
}

#[test]
fn evaluation_representation_satisfies_catalog_at_zero_coupling() {
    let c = conv::<f64>();
    let params = c.params().unwrap();
    for rel in catalog_qhat() {
        let r = evaluate(&rel, &params, &c, Tolerance::uniform(1e-12), "g=0").unwrap();
        assert!(r.pass, "{} {:e}", r.id, r.residual);
    }
}

#[test]
fn mixed_anticommutators_vanish_at_zero_coupling() {
    let c = conv::<f64>();
    let b = Brackets::from_rep(&c).unwrap();
    let s = |x: &SuperMatrix<f64>, y: &SuperMatrix<f64>| qaffine::supercommutator(x, y).unwrap().mat.norm_max();
    assert_eq!(s(b.e(2), b.f(4)), 0.0);
    assert_eq!(s(b.e(4), b.f(2)), 0.0);
}

#[test]
fn full_representation_converges_at_first_order() {
    let c = conv::<f64>();
    let r = conv_convergence_check(&c, &[1e-2, 1e-3, 1e-4]).unwrap();
    let p = r.representation.fitted_rate.unwrap();
    assert!(r.representation.pass && (0.7..=1.3).contains(&p), "{:?}", r.representation);
    // U and z approach their limits at second order.
    assert!((r.central_u.fitted_rate.unwrap() - 2.0).abs() < 0.05);
    assert!((r.spectral_z.fitted_rate.unwrap() - 2.0).abs() < 0.05);
}

#[test]
fn gauged_r_matrix_depends_on_ratios_only() {
    let sites = [(cx(0.6, 0.5), cx(0.8, -0.3)), (cx(-0.4, 0.9), cx(1.1, 0.4)), (cx(1.3, -0.2), cx(0.5, 0.2))];
    let args = (cx(1.1, 0.2), cx(1.2, 0.0), cx(0.9, 0.1));
    let tol = Tolerance::standard();
    let r = perk_schultz_ratio_check::<f64>(args.0, args.1, args.2, sites, cx(2.0, 1.0), (cx(1.7, 0.0), cx(0.3, 1.0)), tol)
        .unwrap();
    assert!(r.ratio_residual < 1e-9, "{r:?}");
    assert!(r.ybe_residual < 1e-9, "{r:?}");
    assert!(r.route_residual < 1e-12, "{r:?}");
    let same = perk_schultz_ratio_check::<f64>(args.0, args.1, args.2, sites, cx(1.0, 0.0), (sites[0].1, sites[1].1), tol)
        .unwrap();
    assert_eq!(same.ratio_residual, 0.0);
}

#[test]
fn frame_invariants() {
    let f = frame_a::<f64>();
    assert!(f.constraint_residual() < 1e-14);
    assert!(f.c_squared_residual() < 1e-14);
    let c = f.cartan[1].mat[(0, 0)] - cx(0.5, 0.0);
    assert!((c + f.c).norm() < 1e-15);
}

#[test]
fn secret_symmetry_reformulation_is_exact() {
    for f in [frame_a::<f64>(), frame_b::<f64>()] {
        for r in f.secret_identity_residuals().unwrap() {
            assert!(r < 1e-10, "{r:e}");
        }
    }
}

#[test]
fn affine_numerator_is_first_order() {
    let f = frame_a::<f64>();
    for kind in [QuotientKind::AffineE, QuotientKind::AffineF] {
        let n1 = yangian_quotient(kind, &f, 1e-3).unwrap().mat.norm_max() * 1e-3;
        let n2 = yangian_quotient(kind, &f, 5e-4).unwrap().mat.norm_max() * 5e-4;
        assert!((n1 / n2 - 2.0).abs() < 0.01, "{}", n1 / n2);
    }
}

#[test]
fn affine_quotients_converge_in_extended_precision() {
    let f = frame_a::<f256>();
    for kind in [QuotientKind::AffineE, QuotientKind::AffineF] {
        let r = yangian_quotient_check(kind, &f, &H_SEQ).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.extrapolated_distance < 1e-6);
    }
}

#[test]
fn coproduct_quotients_converge() {
    let (a, b) = (frame_a::<f256>(), frame_b::<f256>());
    for r in yangian_coproduct_check(&a, &b, &H_SEQ).unwrap() {
        assert!(r.pass, "{r:?}");
    }
}

#[test]
fn coproduct_check_rejects_mismatched_constants() {
    let a = frame_a::<f64>();
    let b = YangianFrame::<f64>::new(cx(-0.7, 1.3), cx(1.1, -0.4), cx(0.5, 0.1), cx(1.2, 0.1), cx(0.9, -0.2)).unwrap();
    assert!(yangian_coproduct_check(&a, &b, &H_SEQ).is_err());
}

#[test]
fn spectral_parameters_expand_linearly() {
    let f = frame_a::<f64>();
    let r = spectral_expansion_check(&f, &H_SEQ).unwrap();
    assert!(r.z_coefficient.pass && r.w_coefficient.pass && r.t_matrix_quotient.pass, "{r:?}");
    let i = cx::<f64>(0.0, 1.0);
    let rep = f.deformed(1e-3).unwrap();
    let (z, w) = spectral_zw(rep.central.u2, rep.central.v2, &rep.params).unwrap();
    let one = cx::<f64>(1.0, 0.0);
    let zc = -cx::<f64>(2.0, 0.0) * i * f.g * f.u;
    let wc = i * f.g * (f.u - f.v);
    assert!(((z - one) / 1e-3 - zc).norm() < 0.05 * zc.norm());
    assert!(((w - one) / 1e-3 - wc).norm() < 0.05 * wc.norm());
}

#[test]
fn t_matrix_relation_holds_at_deformed_points() {
    let f = frame_a::<f64>();
    for h in [0.2, 1e-2, 1e-3] {
        let rep = f.deformed(h).unwrap();
        assert!(t_matrix_relation_residual(&rep).unwrap() < 1e-10);
        let (_, w) = spectral_zw(rep.central.u2, rep.central.v2, &rep.params).unwrap();
        let w2 = spectral_w_alt(rep.central.u2, rep.central.v2, &rep.params).unwrap();
        assert!((w - w2).norm() < 1e-10);
    }
    assert!(n_split_residual(&f) < 1e-12);
}

#[test]
fn fermion_table_base_cases() {
    let f = frame_a::<f64>();
    let b = f.brackets().unwrap();
    let (q, s) = fermion_table(&b, 2).unwrap();
    assert_eq!(q[1].mat, b.e(2).mat);
    assert_eq!(s[2].mat, b.f(2).mat);
    for (x, y) in [(1, 2), (2, 1), (1, 1), (2, 2)] {
        assert_eq!(epsilon(x, y), -epsilon(y, x));
    }
}

/// Pass/fail pattern of the all-generator table. The fermionic quotients
/// reach the displayed two-term targets only for the first index of Q and
/// the second of S, and reach the commutator form for every entry; the
/// `{Q̄, S}` family misses the four entries carrying `L¹¹` or `L²²`; the
/// combined `{Q̄,Q}`, `{S,S̄}` family misses eight entries.
const FAILING: [&str; 16] = [
    "fermion_s[11]",
    "fermion_q[12]",
    "fermion_s[21]",
    "fermion_q[22]",
    "boson_qs[11,21]",
    "boson_qs[12,22]",
    "boson_qs[21,11]",
    "boson_qs[22,12]",
    "boson_qq_ss[11,22]",
    "boson_qq_ss[12,11]",
    "boson_qq_ss[12,21]",
    "boson_qq_ss[12,22]",
    "boson_qq_ss[21,12]",
    "boson_qq_ss[22,11]",
    "boson_qq_ss[22,12]",
    "boson_qq_ss[22,21]",
];

#[test]
fn all_generator_table_matches_pinned_pattern() {
    let t = all_generator_limits(&frame_a::<f64>(), &H_SEQ).unwrap();
    assert_eq!(t.fermion.len() + t.fermion_secret.len() + t.boson.len(), 64);
    let failing: Vec<String> = t.pattern().into_iter().filter(|(_, p)| !p).map(|(id, _)| id).collect();
    assert_eq!(failing, FAILING.to_vec());
    assert!(t.fermion_secret.iter().all(|r| r.pass));
}

#[test]
fn series_helpers() {
    assert!(validate_steps(&[1e-3, 1e-3]).is_err());
    assert!(validate_steps(&[1e-3]).is_err());
    let a = Mat::<f64>::diag(&[cx(3.0 + 2.0 * 0.1, 0.0)]);
    let b = Mat::<f64>::diag(&[cx(3.0 + 2.0 * 0.05, 0.0)]);
    let e = richardson(0.1, &a, 0.05, &b);
    assert!((e[(0, 0)] - cx(3.0, 0.0)).norm() < 1e-14);
    let target = Mat::<f64>::diag(&[cx(3.0, 0.0)]);
    let (r, _) = limit_report("exact", &[0.1, 0.05], vec![target.clone(), target.clone()], &target, Acceptance::direct::<f64>())
        .unwrap();
    assert!(r.pass && r.fitted_rate.is_none());
}

proptest! {
    #[test]
    fn order_fit_recovers_power(c in 0.1f64..10.0, p in 0.5f64..3.0) {
        let h: [f64; 3] = [1e-2, 5e-3, 2.5e-3];
        let d: Vec<f64> = h.iter().map(|x| c * x.powf(p)).collect();
        prop_assert!((fit_order(&h, &d).unwrap() - p).abs() < 1e-9);
    }

    #[test]
    fn c_squared_invariant_at_random_frames(re in -2.0f64..2.0, im in 0.3f64..2.0, gr in 0.2f64..1.5) {
        let f = YangianFrame::<f64>::new(cx(re, im), cx(0.9, 0.2), cx(gr, 0.0), cx(1.0, 0.0), cx(1.0, 0.0));
        if let Ok(f) = f {
            prop_assert!(f.constraint_residual() < 1e-9);
            prop_assert!(f.c_squared_residual() < 1e-9 * (1.0 + f.c.norm_sqr()));
        }
    }

    #[test]
    fn secret_identity_at_random_frames(re in -2.0f64..2.0, im in 0.3f64..2.0, gr in 0.2f64..1.5) {
        if let Ok(f) = YangianFrame::<f64>::new(cx(re, im), cx(0.9, 0.2), cx(gr, 0.1), cx(1.1, 0.0), cx(0.8, 0.3)) {
            let scale = 1.0 + f.u.norm() + f.v.norm();
            for r in f.secret_identity_residuals().unwrap() {
                prop_assert!(r < 1e-10 * scale);
            }
        }
    }
}

#[test]
fn extended_frame_lowers_to_standard() {
    let a = frame_a::<f256>();
    let b = frame_a::<f64>();
    let d: Scalar<f64> = lower(a.u) - b.u;
    assert!(d.norm() < 1e-13);
}
