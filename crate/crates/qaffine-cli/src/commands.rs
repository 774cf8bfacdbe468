//! One runner per subcommand, generic over the working precision.

use f256::f256;
use num_complex::Complex64;
use qaffine::fundrep::{sample_points, sample_slots, SqrtBranches};
use qaffine::gln::{build_gln_rep, check_gln_relations, gln_coproduct, gln_yangian_limit};
use qaffine::limits::appendix::all_generator_limits;
use qaffine::limits::conv::{conv_convergence_check, conv_limit_rep, perk_schultz_ratio_check};
use qaffine::limits::yangian::{yangian_coproduct_check, yangian_quotient_check, QuotientKind, YangianFrame};
use qaffine::numerics::{lift, PointSampler, SampleSeed};
use qaffine::relations::evaluate;
use qaffine::rmatrix::ybe_residual;
use qaffine::{
    build_rep, catalog_qhat, derive_constants, graded_permutation, solve_r, AlgebraParams, LimitReport, Precision, Real, RelationReport,
    RepPoint, Scalar, Tolerance, XBranch,
};
use serde::Serialize;
use serde_json::json;

use crate::config::{parse_branch, parse_complex};
use crate::{Command, Failure, RunConfig, Sink};

/// Steps of q = 1 + h for the Yangian limits.
pub const H_SEQ: [f64; 3] = [4e-4, 2e-4, 1e-4];
/// Couplings of the g → 0 family.
pub const G_SEQ: [f64; 3] = [1e-2, 1e-3, 1e-4];

pub fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<bool, Failure> {
    match cfg.precision {
        Precision::Standard => dispatch_in::<f64>(cmd, cfg),
        Precision::Extended => dispatch_in::<f256>(cmd, cfg),
    }
}

fn dispatch_in<R: Real>(cmd: &Command, cfg: &RunConfig) -> Result<bool, Failure> {
    match cmd {
        Command::VerifyRelations => verify_relations::<R>(cfg),
        Command::SolveR { specs } => solve_r_cmd::<R>(cfg, specs),
        Command::Ybe { specs } => ybe_cmd::<R>(cfg, specs),
        Command::LimitConv => limit_conv::<R>(cfg),
        Command::LimitYangian { appendix } => limit_yangian::<R>(cfg, *appendix),
        Command::Gln { n } => gln_cmd::<R>(cfg, *n),
    }
}

/// Explicit slot `(x⁺, γ, x⁻ branch)`.
pub type PointSpec = (Complex64, Complex64, XBranch);

/// Parses `XPLUS,GAMMA[,big|small]`.
pub fn parse_point_spec(s: &str, default_branch: XBranch) -> Result<PointSpec, Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    if !(2..=3).contains(&parts.len()) {
        return Err(Failure::usage(format!("point spec '{s}' must be XPLUS,GAMMA[,big|small]")));
    }
    let branch = match parts.get(2) {
        Some(b) => parse_branch(b)?,
        None => default_branch,
    };
    Ok((parse_complex(parts[0])?, parse_complex(parts[1])?, branch))
}

fn specs(raw: &[String], cfg: &RunConfig, allowed: &[usize]) -> Result<Vec<PointSpec>, Failure> {
    if !allowed.contains(&raw.len()) {
        let want: Vec<String> = allowed.iter().map(|n| n.to_string()).collect();
        return Err(Failure::usage(format!("expected {} point specs, got {}", want.join(" or "), raw.len())));
    }
    raw.iter().map(|s| parse_point_spec(s, cfg.branch)).collect()
}

fn c<R: Real>(z: Complex64) -> Scalar<R> {
    lift(z)
}

/// Constants and slots for sample `index`: explicit `--q/--g` and point
/// specs when given, otherwise drawn from the seeded stream.
fn setting<R: Real>(cfg: &RunConfig, index: u64, explicit: &[PointSpec], slots: usize) -> Result<(AlgebraParams<R>, Vec<RepPoint<R>>), Failure> {
    let seed = SampleSeed(cfg.seed);
    let (alpha, alphatilde) = (c::<R>(cfg.alpha), c::<R>(cfg.alphatilde));
    let params = match (cfg.q, cfg.g) {
        (Some(q), Some(g)) => Some(derive_constants(c(q), c(g), alpha, alphatilde)?),
        (None, None) => None,
        _ => return Err(Failure::usage("--q and --g must be given together")),
    };
    let solve = |p: &AlgebraParams<R>| -> Result<Vec<RepPoint<R>>, Failure> {
        explicit
            .iter()
            .map(|&(x, gm, b)| {
                let br = SqrtBranches { xminus: b, ..SqrtBranches::default() };
                Ok(RepPoint::solve(c(x), c(gm), br, p)?)
            })
            .collect()
    };
    Ok(match (params, explicit.is_empty()) {
        (Some(p), true) => {
            let pts = sample_slots(seed, index, slots, &p)?;
            (p, pts)
        }
        (Some(p), false) => {
            let pts = solve(&p)?;
            (p, pts)
        }
        (None, false) => {
            let (q, g) = PointSampler::new(seed, index).couplings();
            let p = derive_constants(c(q), c(g), alpha, alphatilde)?;
            let pts = solve(&p)?;
            (p, pts)
        }
        (None, true) => sample_points(seed, index, slots, alpha, alphatilde)?,
    })
}

fn cfg_point(cfg: &RunConfig) -> Vec<PointSpec> {
    match cfg.xplus {
        Some(x) => vec![(x, cfg.gamma.unwrap_or(Complex64::new(1.0, 0.0)), cfg.branch)],
        None => Vec::new(),
    }
}

fn verify_relations<R: Real>(cfg: &RunConfig) -> Result<bool, Failure> {
    let tol = Tolerance::uniform(cfg.threshold(1e-10, 1e-24));
    let catalog = catalog_qhat();
    let explicit = cfg_point(cfg);
    let n = if explicit.is_empty() { cfg.points } else { 1 };
    let mut sink = Sink::open(cfg, "verify_relations")?;
    let (mut worst, mut failed) = (0.0f64, 0usize);
    for idx in 0..n {
        let (params, pts) = setting::<R>(cfg, idx as u64, &explicit, 1)?;
        let rep = build_rep(&pts[0], &params)?;
        let label = format!("{idx}:{}", pts[0].label());
        for rel in &catalog {
            let r = evaluate(rel, &params, &rep, tol, &label)?;
            worst = worst.max(r.residual);
            failed += usize::from(!r.pass);
            sink.line(&r)?;
        }
    }
    sink.finish()?;
    eprintln!(
        "verify-relations: {} relations x {n} points, worst residual {worst:.3e}, threshold {:.1e}, {failed} failing",
        catalog.len(),
        tol.abs_eps
    );
    Ok(failed == 0)
}

fn solve_r_cmd<R: Real>(cfg: &RunConfig, raw: &[String]) -> Result<bool, Failure> {
    let explicit = specs(raw, cfg, &[0, 2])?;
    let (params, pts) = setting::<R>(cfg, 0, &explicit, 2)?;
    let rep1 = build_rep(&pts[0], &params)?;
    let rep2 = build_rep(&pts[1], &params)?;
    let rm = solve_r(&rep1, &rep2, cfg.null_tol())?;
    let threshold = cfg.threshold(1e-9, 1e-20);
    let ns = &rm.nullspace;
    eprintln!("null space dimension {}, gap ratio {:.3e}, threshold {:.3e}", ns.dimension, ns.gap_ratio(), ns.threshold);
    let tail: Vec<String> = ns.singular_values.iter().rev().take(3).map(|s| format!("{s:.3e}")).collect();
    eprintln!("smallest singular values: {}", tail.join(" "));
    eprintln!("residuals:");
    for (g, r) in &rm.residuals {
        eprintln!("  {g:<6} {r:.3e}");
    }
    if pts[0] == pts[1] {
        let p = graded_permutation::<R>(&rep1.mats.space, &rep1.mats.space);
        eprintln!("equal points: R is the graded permutation up to {:.3e}", rm.entries.max_abs_diff(&p.mat));
    }
    let mut sink = Sink::open(cfg, "solve_r")?;
    sink.line(&rm.to_json(pts[0].to_json(), pts[1].to_json()))?;
    sink.finish()?;
    Ok(rm.max_residual() <= threshold)
}

#[derive(Serialize)]
struct ResidualLine {
    check: &'static str,
    index: usize,
    residual: f64,
    pass: bool,
}

fn ybe_cmd<R: Real>(cfg: &RunConfig, raw: &[String]) -> Result<bool, Failure> {
    let explicit = specs(raw, cfg, &[0, 3])?;
    let n = if explicit.is_empty() { cfg.points } else { 1 };
    let threshold = cfg.threshold(1e-9, 1e-20);
    let mut sink = Sink::open(cfg, "ybe")?;
    let mut worst = 0.0f64;
    for idx in 0..n {
        let (params, pts) = setting::<R>(cfg, idx as u64, &explicit, 3)?;
        let reps = pts.iter().map(|p| build_rep(p, &params)).collect::<qaffine::Result<Vec<_>>>()?;
        let r = ybe_residual(&reps[0], &reps[1], &reps[2], cfg.null_tol())?;
        worst = worst.max(r);
        sink.line(&ResidualLine { check: "ybe", index: idx, residual: r, pass: r <= threshold })?;
    }
    sink.finish()?;
    let pass = worst <= threshold;
    eprintln!("ybe residual {worst:.3e} {} {threshold:.0e} over {n} triples", if pass { "<" } else { ">" });
    Ok(pass)
}

fn print_limits<'a>(reports: impl IntoIterator<Item = &'a LimitReport>) {
    eprintln!("{:<28} {:>8} {:>12} {:>5}", "check", "rate", "extrap", "pass");
    for r in reports {
        let rate = r.fitted_rate.map_or("exact".to_string(), |p| format!("{p:.3}"));
        eprintln!("{:<28} {:>8} {:>12.3e} {:>5}", r.check_id, rate, r.extrapolated_distance, r.pass);
    }
}

fn limit_conv<R: Real>(cfg: &RunConfig) -> Result<bool, Failure> {
    let q = cfg.q.unwrap_or(Complex64::new(1.1, 0.2));
    let gb = cfg.gamma.unwrap_or(Complex64::new(0.8, -0.3));
    let (alpha, alphatilde) = (c::<R>(cfg.alpha), c::<R>(cfg.alphatilde));
    let limit = conv_limit_rep(c(Complex64::new(0.6, 0.5)), c(q), c(gb), alpha, alphatilde)?;
    let eval_thr = cfg.threshold(1e-12, 1e-24);
    let mut sink = Sink::open(cfg, "limit_conv")?;
    let mut pass = true;
    for (id, r) in ["eval_e4", "eval_f4", "eval_k4"].iter().zip(limit.evaluation_residuals()?) {
        let rep = RelationReport::new(*id, r, eval_thr, "g=0");
        pass &= rep.pass;
        sink.line(&rep)?;
    }
    let conv = conv_convergence_check(&limit, &G_SEQ)?;
    let reports = [conv.representation, conv.central_u, conv.spectral_z];
    for r in &reports {
        pass &= r.pass;
        sink.line(r)?;
    }
    let sites = [
        (c(Complex64::new(0.6, 0.5)), c(gb)),
        (c(Complex64::new(-0.4, 0.9)), c(Complex64::new(1.1, 0.4))),
        (c(Complex64::new(1.3, -0.2)), c(Complex64::new(0.5, 0.2))),
    ];
    let rescaled = (c(Complex64::new(1.7, 0.0)), c(Complex64::new(0.3, 1.0)));
    let ps = perk_schultz_ratio_check(c(q), alpha, alphatilde, sites, c(Complex64::new(2.0, 1.0)), rescaled, cfg.null_tol())?;
    let ps_thr = cfg.threshold(1e-9, 1e-20);
    let ps_pass = ps.ratio_residual <= ps_thr && ps.ybe_residual <= ps_thr && ps.route_residual <= ps_thr;
    pass &= ps_pass;
    sink.line(&json!({"check": "gauged_r", "ratio_residual": ps.ratio_residual, "ybe_residual": ps.ybe_residual,
        "route_residual": ps.route_residual, "pass": ps_pass}))?;
    sink.finish()?;
    print_limits(&reports);
    eprintln!("gauged R: ratio {:.3e}, ybe {:.3e}, routes {:.3e}", ps.ratio_residual, ps.ybe_residual, ps.route_residual);
    Ok(pass)
}

fn limit_yangian<R: Real>(cfg: &RunConfig, appendix: bool) -> Result<bool, Failure> {
    let g = c::<R>(cfg.g.unwrap_or(Complex64::new(0.6, 0.1)));
    let (alpha, alphatilde) = (c::<R>(cfg.alpha), c::<R>(cfg.alphatilde));
    let xp = cfg.xplus.unwrap_or(Complex64::new(1.4, 0.9));
    let gm = cfg.gamma.unwrap_or(Complex64::new(0.8, 0.3));
    let a = YangianFrame::new(c(xp), c(gm), g, alpha, alphatilde)?;
    let b = YangianFrame::new(c(Complex64::new(-0.7, 1.3)), c(Complex64::new(1.1, -0.4)), g, alpha, alphatilde)?;
    let mut sink = Sink::open(cfg, "limit_yangian")?;
    let mut pass = true;
    let thr = cfg.threshold(1e-10, 1e-24);
    for (id, r) in ["secret_identity_e", "secret_identity_f"].iter().zip(a.secret_identity_residuals()?) {
        let rep = RelationReport::new(*id, r, thr, "q=1");
        pass &= rep.pass;
        sink.line(&rep)?;
    }
    let mut reports = vec![
        yangian_quotient_check(QuotientKind::AffineE, &a, &H_SEQ)?,
        yangian_quotient_check(QuotientKind::AffineF, &a, &H_SEQ)?,
    ];
    reports.extend(yangian_coproduct_check(&a, &b, &H_SEQ)?);
    if appendix {
        reports.extend(all_generator_limits(&a, &H_SEQ)?.reports().cloned());
    }
    for r in &reports {
        pass &= r.pass;
        sink.line(r)?;
    }
    sink.finish()?;
    print_limits(&reports);
    Ok(pass)
}

fn gln_cmd<R: Real>(cfg: &RunConfig, n: usize) -> Result<bool, Failure> {
    let q = c::<R>(cfg.q.unwrap_or(Complex64::new(1.3, 0.4)));
    let thr = cfg.threshold(1e-12, 1e-24);
    let a = build_gln_rep(n, q, c(Complex64::new(0.7, -0.5)))?;
    let b = build_gln_rep(n, q, c(Complex64::new(-0.4, 1.1)))?;
    let mut relations = check_gln_relations(&a.gens, q, thr, "single")?;
    relations.extend(check_gln_relations(&gln_coproduct(&a.gens, &b.gens, q)?, q, thr, "pair")?);
    let limit = gln_yangian_limit::<R>(n, c(Complex64::new(0.8, 0.3)), c(Complex64::new(-0.5, 0.2)), &H_SEQ)?;
    let mut sink = Sink::open(cfg, "gln")?;
    let mut pass = true;
    let mut worst = 0.0f64;
    for r in &relations {
        pass &= r.pass;
        worst = worst.max(r.residual);
        sink.line(r)?;
    }
    for r in limit.reports() {
        pass &= r.pass;
        sink.line(r)?;
    }
    sink.finish()?;
    eprintln!("gl({n}): {} relations, worst residual {worst:.3e}, threshold {thr:.0e}", relations.len());
    eprintln!("coproduct cross terms: {}", limit.cross_terms);
    print_limits(limit.reports());
    Ok(pass)
}
