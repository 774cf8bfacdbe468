//! The g → 0 limit: the exact evaluation representation, convergence of the
//! full representation towards it, and the gauged R-matrix depending only on
//! spectral-parameter ratios.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fundrep::{
    assemble_fundamental, build_rep, central_squares, derive_constants, nonzero, xminus_roots, zeta, AlgebraParams, FundRep, NodeCoefficients,
    RepPoint, Sign, SqrtBranches, XBranch,
};
use crate::generators::{Central, Generator, RepMatrices, Representation};
use crate::hopf::{gauge_transform, gauge_transform_closed};
use crate::limits::series::{limit_report, Acceptance};
use crate::limits::Brackets;
use crate::numerics::{imag_unit, inv, modulus, real, sqrt_principal, Real, Scalar, Tolerance};
use crate::report::LimitReport;
use crate::rmatrix::{solve_r, ybe_residual_of};
use crate::superlinalg::{GradedSpace, Mat, SuperMatrix};

/// The g = 0 evaluation representation with spectral parameter z.
#[derive(Clone, Debug)]
pub struct ConvLimitRep<R: Real> {
    pub z: Scalar<R>,
    pub q: Scalar<R>,
    pub gammabar: Scalar<R>,
    pub alpha: Scalar<R>,
    pub alphatilde: Scalar<R>,
    /// `U₂` with `U₂² = (1 − zq)/(q − z)`; `U₄ = 1/U₂`, `V₂ = q^{1/2} = 1/V₄`.
    pub u2: Scalar<R>,
    pub mats: RepMatrices<R>,
}

impl<R: Real> Representation<R> for ConvLimitRep<R> {
    fn space(&self) -> &GradedSpace {
        &self.mats.space
    }
    fn generator(&self, g: Generator) -> Option<&SuperMatrix<R>> {
        self.mats.gens.get(&g)
    }
    fn central(&self, c: Central) -> Option<Scalar<R>> {
        self.mats.central.get(&c).copied()
    }
}

/// Builds the g = 0 representation: `a₂ = γ̄`, `d₂ = 1/γ̄`, `b₄ = αα̃z/γ̄`,
/// `c₄ = −γ̄/(αα̃z)`, all other odd coefficients zero.
pub fn conv_limit_rep<R: Real>(
    z: Scalar<R>,
    q: Scalar<R>,
    gammabar: Scalar<R>,
    alpha: Scalar<R>,
    alphatilde: Scalar<R>,
) -> Result<ConvLimitRep<R>> {
    let zero = real::<R>(0.0);
    let one = real::<R>(1.0);
    nonzero(z, "z")?;
    nonzero(gammabar, "gammabar")?;
    nonzero(alpha * alphatilde, "alpha alphatilde")?;
    nonzero(q - z, "q - z")?;
    nonzero(one - z * q, "1 - z q")?;
    let sqrt_q = sqrt_principal(q);
    let u2 = sqrt_principal((one - z * q) / (q - z));
    let aa = alpha * alphatilde;
    let c2 = NodeCoefficients { a: gammabar, b: zero, c: zero, d: inv(gammabar), u: u2, v: sqrt_q };
    let c4 = NodeCoefficients { a: zero, b: aa * z / gammabar, c: -gammabar / (aa * z), d: zero, u: inv(u2), v: inv(sqrt_q) };
    let mats = assemble_fundamental(q, sqrt_q, &c2, &c4)?;
    Ok(ConvLimitRep { z, q, gammabar, alpha, alphatilde, u2, mats })
}

impl<R: Real> ConvLimitRep<R> {
    /// Algebra constants at g = 0.
    pub fn params(&self) -> Result<AlgebraParams<R>> {
        derive_constants(self.q, real(0.0), self.alpha, self.alphatilde)
    }

    pub fn matrix(&self, g: Generator) -> &Mat<R> {
        &self.mats.gens[&g].mat
    }

    /// Residuals of `E₄ = αα̃z[[F₃,F₂],F₁]`, `F₄ = −(αα̃z)⁻¹[[E₃,E₂],E₁]` and
    /// `K₄ = K₁⁻¹K₂⁻¹K₃⁻¹`.
    pub fn evaluation_residuals(&self) -> Result<[f64; 3]> {
        let b = Brackets::from_rep(self)?;
        let aaz = self.alpha * self.alphatilde * self.z;
        let e4 = b.f3k1(2)?.scale(aaz);
        let f4 = b.e3k1(2)?.scale(-inv(aaz));
        let kinv = |j: u8| self.matrix(Generator::KInv(j));
        let k4 = kinv(1).matmul(kinv(2)).matmul(kinv(3));
        Ok([
            self.matrix(Generator::E(4)).max_abs_diff(&e4.mat),
            self.matrix(Generator::F(4)).max_abs_diff(&f4.mat),
            self.matrix(Generator::K(4)).max_abs_diff(&k4),
        ])
    }
}

/// Expanded node variables at coupling g:
/// `x± ≈ (i/g)(q^{±1}z − 1)/(q − q⁻¹)`.
pub fn expanded_xpm<R: Real>(z: Scalar<R>, q: Scalar<R>, g: Scalar<R>) -> (Scalar<R>, Scalar<R>) {
    let w = imag_unit::<R>() / g / (q - inv(q));
    let one = real::<R>(1.0);
    (w * (q * z - one), w * (z / q - one))
}

/// Full representation at coupling `g` approaching `limit`, with x⁻ the root
/// nearest its expansion and the `U₂`, `V₂` signs matching the limit.
pub fn conv_family_member<R: Real>(limit: &ConvLimitRep<R>, g: f64) -> Result<(FundRep<R>, XBranch)> {
    let gs = real::<R>(g);
    let params = derive_constants(limit.q, gs, limit.alpha, limit.alphatilde)?;
    let (xp, xm0) = expanded_xpm(limit.z, limit.q, gs);
    let (big, small) = xminus_roots(xp, &params)?;
    let (db, ds) = (modulus(big - xm0).to_f64(), modulus(small - xm0).to_f64());
    let (xm, branch) = if db <= ds { (big, XBranch::Big) } else { (small, XBranch::Small) };
    if db.max(ds) < 2.0 * db.min(ds) {
        return Err(Error::Continuity(format!("x- roots not separated at g = {g:e}")));
    }
    let (u2s, v2s) = central_squares(xp, xm, &params)?;
    let branches = SqrtBranches {
        xminus: branch,
        u2: Sign::nearest(sqrt_principal(u2s), limit.u2),
        v2: Sign::nearest(sqrt_principal(v2s), sqrt_principal(limit.q)),
        pair: Sign::Plus,
    };
    let gamma = limit.gammabar / sqrt_principal(gs);
    Ok((build_rep(&RepPoint::explicit(xp, xm, gamma, branches), &params)?, branch))
}

fn stacked<R: Real>(rep: &dyn Representation<R>) -> Result<Mat<R>> {
    let blocks = Generator::chevalley().into_iter().map(|g| rep.gen(g).map(|m| m.mat.clone())).collect::<Result<Vec<_>>>()?;
    Mat::vstack(&blocks)
}

fn one_by_one<R: Real>(z: Scalar<R>) -> Mat<R> {
    Mat::diag(&[z])
}

/// Convergence of the full representation, of `U₂` and of the evaluation
/// parameter `ζ(x⁺)/q` towards the g = 0 data.
#[derive(Clone, Debug, Serialize)]
pub struct ConvConvergence {
    pub representation: LimitReport,
    pub central_u: LimitReport,
    pub spectral_z: LimitReport,
}

/// Runs the g → 0 family over a decreasing coupling sequence. The generator
/// matrices converge at first order; `U₂` and z converge at second order.
pub fn conv_convergence_check<R: Real>(limit: &ConvLimitRep<R>, g_seq: &[f64]) -> Result<ConvConvergence> {
    let mut reps = Vec::new();
    let mut us = Vec::new();
    let mut zs = Vec::new();
    let mut first_branch = None;
    for &g in g_seq {
        let (rep, branch) = conv_family_member(limit, g)?;
        if *first_branch.get_or_insert(branch) != branch {
            return Err(Error::Continuity(format!("x- branch changes along the coupling sequence at g = {g:e}")));
        }
        reps.push(stacked(&rep)?);
        us.push(one_by_one(rep.central.u2));
        zs.push(one_by_one(inv(rep.params.q) * zeta(rep.point.xplus, &rep.params)?));
    }
    let first = Acceptance::direct::<R>();
    let second = first.with_order_band(1.7, 2.3);
    let (representation, _) = limit_report("conv_rep_distance", g_seq, reps, &stacked(limit)?, first)?;
    let (central_u, _) = limit_report("conv_central_u", g_seq, us, &one_by_one(limit.u2), second)?;
    let (spectral_z, _) = limit_report("conv_spectral_z", g_seq, zs, &one_by_one(limit.z), second)?;
    Ok(ConvConvergence { representation, central_u, spectral_z })
}

/// Twisted and gauged R-matrix of two g = 0 representations, normalized to 1
/// at `e₁⊗e₁`, by the two-step route and by the combined closed form.
pub fn gauged_r<R: Real>(rep1: &ConvLimitRep<R>, rep2: &ConvLimitRep<R>, tol: Tolerance) -> Result<(Mat<R>, Mat<R>)> {
    let r = solve_r(rep1, rep2, tol)?;
    let gb = (rep1.gammabar, rep2.gammabar);
    let stepwise = gauge_transform(&r.entries, rep1, rep2, gb, tol)?;
    let closed = gauge_transform_closed(&r.entries, rep1, rep2, gb, tol)?;
    let norm = |m: Mat<R>| -> Result<Mat<R>> {
        let s = nonzero(m[(0, 0)], "gauged R at e1 e1")?;
        Ok(m.scale(inv(s)))
    };
    Ok((norm(stepwise)?, norm(closed)?))
}

/// Residuals of the gauged R-matrix checks at g = 0.
#[derive(Clone, Debug, Serialize)]
pub struct PerkSchultzCheck {
    /// `R̄(cz₁, cz₂) − R̄(z₁, z₂)`, with different γ̄ in the rescaled pair.
    pub ratio_residual: f64,
    /// Yang–Baxter residual of `R̄₁₂, R̄₁₃, R̄₂₃`.
    pub ybe_residual: f64,
    /// Disagreement between the two gauge routes.
    pub route_residual: f64,
}

/// Spectral data `(z, γ̄)` of one site.
pub type Site<R> = (Scalar<R>, Scalar<R>);

/// Ratio invariance and Yang–Baxter for the gauged g = 0 R-matrix.
/// `rescaled` supplies the γ̄ values used at `(c·z₁, c·z₂)`.
pub fn perk_schultz_ratio_check<R: Real>(
    q: Scalar<R>,
    alpha: Scalar<R>,
    alphatilde: Scalar<R>,
    sites: [Site<R>; 3],
    c: Scalar<R>,
    rescaled: (Scalar<R>, Scalar<R>),
    tol: Tolerance,
) -> Result<PerkSchultzCheck> {
    let rep = |(z, gb): Site<R>| conv_limit_rep(z, q, gb, alpha, alphatilde);
    let reps = sites.iter().map(|&s| rep(s)).collect::<Result<Vec<_>>>()?;
    let (r12, r12c) = gauged_r(&reps[0], &reps[1], tol)?;
    let (r13, r13c) = gauged_r(&reps[0], &reps[2], tol)?;
    let (r23, r23c) = gauged_r(&reps[1], &reps[2], tol)?;
    let route_residual = r12.max_abs_diff(&r12c).max(r13.max_abs_diff(&r13c)).max(r23.max_abs_diff(&r23c));
    let s1 = rep((c * sites[0].0, rescaled.0))?;
    let s2 = rep((c * sites[1].0, rescaled.1))?;
    let (r12s, _) = gauged_r(&s1, &s2, tol)?;
    let ratio_residual = r12.max_abs_diff(&r12s);
    let space = GradedSpace::fundamental().tensor(&GradedSpace::fundamental());
    let wrap = |m: Mat<R>| SuperMatrix::endo(&space, m);
    let ybe_residual = ybe_residual_of(&wrap(r12)?, &wrap(r13)?, &wrap(r23)?)?;
    Ok(PerkSchultzCheck { ratio_residual, ybe_residual, route_residual })
}
