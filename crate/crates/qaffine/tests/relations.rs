use qaffine::fundrep::{assemble_fundamental, sample_points};
use qaffine::numerics::{cx, SampleSeed, Tolerance};
use qaffine::relations::{catalog_qhat, double_image_matches, evaluate_all, RelationGroup};
use qaffine::relations::evaluate;
use qaffine::{build_rep, Relation};

fn worst(rels: &[Relation], seed: u64, idx: u64, alpha: (f64, f64), at: (f64, f64)) -> (f64, String) {
    let (params, pts) = sample_points::<f64>(SampleSeed(seed), idx, 1, cx(alpha.0, alpha.1), cx(at.0, at.1)).unwrap();
    let rep = build_rep(&pts[0], &params).unwrap();
    let reps = evaluate_all(rels, &params, &rep, Tolerance::standard(), "p").unwrap();
    reps.into_iter().map(|r| (r.residual, r.id)).fold((0.0, String::new()), |a, b| if b.0 > a.0 { b } else { a })
}

#[test]
fn catalog_has_eighty_relations_in_expected_groups() {
    let c = catalog_qhat();
    assert_eq!(c.len(), 80);
    let count = |g| c.iter().filter(|r| r.group == g).count();
    assert_eq!(count(RelationGroup::KConjugation), 32);
    assert_eq!(count(RelationGroup::EFVanishing), 10);
    assert_eq!(count(RelationGroup::CubicSerre), 8);
    assert_eq!(count(RelationGroup::QuarticSerre), 4);
}

#[test]
fn catalog_holds_on_fundamental_rep() {
    let c = catalog_qhat();
    for idx in 0..20 {
        let (r, id) = worst(&c, 7, idx, (1.3, -0.4), (0.8, 0.5));
        assert!(r < 1e-10, "point {idx}: {id} residual {r:e}");
    }
}

#[test]
fn automorphism_images_hold() {
    let c = catalog_qhat();
    for idx in 0..5 {
        for sign in [1.0, -1.0] {
            let (params, pts) = sample_points::<f64>(SampleSeed(3), idx, 1, cx(0.9, 0.2), cx(1.1, -0.3)).unwrap();
            let params = params.with_zeta_auto(sign).unwrap();
            let rep = build_rep(&pts[0], &params).unwrap();
            for rel in &c {
                let img = rel.automorphism_image(&params).unwrap();
                let d = img.difference(&params, &rep).unwrap().mat.norm_max();
                assert!(d < 1e-10, "{} residual {d:e}", img.id);
                let twice = img.automorphism_image(&params).unwrap();
                assert!(double_image_matches(&rel.lhs, &twice.lhs, &params, &rep).unwrap(), "{}", rel.id);
                assert!(double_image_matches(&rel.rhs, &twice.rhs, &params, &rep).unwrap(), "{}", rel.id);
            }
        }
    }
}

#[test]
fn perturbed_coefficient_breaks_diagonal_ef() {
    let c = catalog_qhat();
    let (params, pts) = sample_points::<f64>(SampleSeed(7), 0, 1, cx(1.3, -0.4), cx(0.8, 0.5)).unwrap();
    let mut rep = build_rep(&pts[0], &params).unwrap();
    let ef2 = c.iter().find(|r| r.id == "EF_2").unwrap().clone();
    let before = evaluate(&ef2, &params, &rep, Tolerance::standard(), "p").unwrap();
    assert!(before.residual < 1e-10);
    let mut c2 = rep.coeffs2.clone();
    c2.a = c2.a * cx(1.0 + 1e-3, 0.0);
    rep.mats = assemble_fundamental(params.q, params.sqrt_q, &c2, &rep.coeffs4).unwrap();
    let after = evaluate(&ef2, &params, &rep, Tolerance::standard(), "p").unwrap();
    assert!(after.residual > 1e-5, "{:e}", after.residual);
}
