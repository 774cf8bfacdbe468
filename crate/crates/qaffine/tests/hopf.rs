use qaffine::fundrep::sample_points;
use qaffine::hopf::{
    antipode_check, coassociativity_residual, counit_check, reshetikhin_f, reshetikhin_f21, TensorRep,
};
use qaffine::numerics::{cx, SampleSeed, Tolerance};
use qaffine::relations::{catalog_qhat, evaluate_all};
use qaffine::superlinalg::{embed_three_site, SlotPair, SuperMatrix};
use qaffine::{build_rep, coproduct, opposite_coproduct, FundRep, Generator};

fn reps(seed: u64, idx: u64, n: usize) -> Vec<FundRep<f64>> {
    let (params, pts) = sample_points::<f64>(SampleSeed(seed), idx, n, cx(1.2, 0.3), cx(0.7, -0.4)).unwrap();
    pts.iter().map(|p| build_rep(p, &params).unwrap()).collect()
}

#[test]
fn catalog_holds_on_tensor_products() {
    let cat = catalog_qhat();
    for idx in 0..10 {
        let r = reps(11, idx, 2);
        let t = TensorRep::fundamental(&r[0], &r[1]).unwrap();
        for rep in evaluate_all(&cat, &r[0].params, &t, Tolerance::uniform(1e-9), "pair").unwrap() {
            assert!(rep.pass, "pair {idx}: {} residual {:e}", rep.id, rep.residual);
        }
    }
}

#[test]
fn coassociativity_on_three_slots() {
    for idx in 0..3 {
        let r = reps(5, idx, 3);
        let res = coassociativity_residual(&r[0], &r[1], &r[2]).unwrap();
        assert!(res < 1e-9, "{res:e}");
    }
}

#[test]
fn group_like_and_opposite_coproduct() {
    let r = reps(2, 0, 2);
    let k = coproduct(Generator::K(1), &r[0], &r[1]).unwrap();
    let kk = r[0].matrix(Generator::K(1)).kron(r[1].matrix(Generator::K(1)));
    assert_eq!(k.mat.max_abs_diff(&kk), 0.0);
    let kt = opposite_coproduct(Generator::K(1), &r[0], &r[1]).unwrap();
    assert!(kt.mat.max_abs_diff(&k.mat) < 1e-15);
    let e = coproduct(Generator::E(2), &r[0], &r[1]).unwrap();
    let et = opposite_coproduct(Generator::E(2), &r[0], &r[1]).unwrap();
    assert!(e.mat.max_abs_diff(&et.mat) > 1e-3);
}

#[test]
fn antipode_and_counit_axioms() {
    let r = reps(9, 1, 1);
    for x in Generator::chevalley() {
        let (a, b) = antipode_check(x, &r[0]).unwrap();
        assert!(a < 1e-12 && b < 1e-12, "{x}: {a:e} {b:e}");
        let (c, d) = counit_check(x, &r[0]).unwrap();
        assert!(c < 1e-15 && d < 1e-15, "{x}");
    }
}

#[test]
fn twist_is_unitary_and_a_cocycle() {
    let tol = Tolerance::standard();
    let r = reps(4, 2, 3);
    let f12 = reshetikhin_f(&r[0], &r[1], tol).unwrap().f;
    let f21 = reshetikhin_f21(&r[0], &r[1], tol).unwrap();
    let prod = f12.mul(&f21).unwrap();
    assert!(prod.mat.max_abs_diff(&SuperMatrix::identity(&prod.space_out).mat) < 1e-12);
    let f13 = reshetikhin_f(&r[0], &r[2], tol).unwrap().f;
    let f23 = reshetikhin_f(&r[1], &r[2], tol).unwrap().f;
    let a = embed_three_site(&f12, SlotPair::S12).unwrap();
    let b = embed_three_site(&f13, SlotPair::S13).unwrap();
    let c = embed_three_site(&f23, SlotPair::S23).unwrap();
    let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
    let rhs = c.mul(&b).unwrap().mul(&a).unwrap();
    assert!(lhs.mat.max_abs_diff(&rhs.mat) < 1e-12);
}
