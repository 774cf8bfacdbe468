//! The four-dimensional fundamental representation in the x± parametrization,
//! including the node-4 copy of node 2, and its coefficient constraints.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::generators::{Central, Generator, RepMatrices, Representation};
use crate::numerics::{
    imag_unit, inv, lift, lower, modulus, powi, real, sqrt_principal, PointSampler, Real, SampleSeed, Scalar, Tolerance, EXCLUSION,
};
use crate::report::RelationReport;
use crate::superlinalg::{Degree, GradedSpace, Mat, SuperMatrix};

/// Rejects values whose modulus is at rounding level.
pub(crate) fn nonzero<R: Real>(z: Scalar<R>, what: &str) -> Result<Scalar<R>> {
    if modulus(z) <= R::epsilon() * R::from_f64(64.0) {
        Err(Error::Degenerate(format!("pole: {what} vanishes")))
    } else {
        Ok(z)
    }
}

/// Algebra constants and their derived companions.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraParams<R: Real> {
    pub q: Scalar<R>,
    pub g: Scalar<R>,
    pub alpha: Scalar<R>,
    pub alphatilde: Scalar<R>,
    pub gtilde: Scalar<R>,
    pub qtilde: Scalar<R>,
    pub xi: Scalar<R>,
    pub g2: Scalar<R>,
    pub g4: Scalar<R>,
    pub alpha2: Scalar<R>,
    pub alpha4: Scalar<R>,
    pub sqrt_q: Scalar<R>,
    pub sqrt_g: Scalar<R>,
    /// Fourth root entering the node-2↔4 automorphism; ±1 once the
    /// constrained parameter family is imposed.
    pub zeta_auto: Scalar<R>,
}

pub fn derive_constants<R: Real>(
    q: Scalar<R>,
    g: Scalar<R>,
    alpha: Scalar<R>,
    alphatilde: Scalar<R>,
) -> Result<AlgebraParams<R>> {
    let one = real::<R>(1.0);
    nonzero(q, "q")?;
    nonzero(q - one, "q - 1")?;
    nonzero(q + one, "q + 1")?;
    nonzero(alpha, "alpha")?;
    nonzero(alphatilde, "alphatilde")?;
    let qq = q - inv(q);
    let pole = nonzero(one - g * g * qq * qq, "1 - g^2 (q - 1/q)^2")?;
    let gtilde = sqrt_principal(g * g / pole);
    let xi = -imag_unit::<R>() * gtilde * qq;
    // qtilde² − 2ig(q−q⁻¹)·qtilde − 1 = 0. The two roots r and −1/r give
    // gtilde = −2g/(qtilde + 1/qtilde) with opposite signs; keep the root
    // reproducing the principal gtilde.
    let bq = real::<R>(2.0) * imag_unit::<R>() * g * qq;
    let disc = sqrt_principal(bq * bq + real(4.0));
    let r1 = (bq + disc) / real(2.0);
    let r2 = (bq - disc) / real(2.0);
    let gt_of = |r: Scalar<R>| imag_unit::<R>() * (r - inv(r)) / (qq * (r + inv(r)));
    let qtilde = if modulus(gt_of(r1) - gtilde) <= modulus(gt_of(r2) - gtilde) { r1 } else { r2 };
    Ok(AlgebraParams {
        q,
        g,
        alpha,
        alphatilde,
        gtilde,
        qtilde,
        xi,
        g2: g,
        g4: g,
        alpha2: alpha,
        alpha4: alpha * alphatilde * alphatilde,
        sqrt_q: sqrt_principal(q),
        sqrt_g: sqrt_principal(g),
        zeta_auto: one,
    })
}

impl<R: Real> AlgebraParams<R> {
    /// Constants with `α = α̃ = 1`.
    pub fn new(q: Scalar<R>, g: Scalar<R>) -> Result<Self> {
        derive_constants(q, g, real(1.0), real(1.0))
    }

    pub fn with_zeta_auto(mut self, sign: f64) -> Result<Self> {
        if sign != 1.0 && sign != -1.0 {
            return Err(Error::Precondition("automorphism root must be +1 or -1".into()));
        }
        self.zeta_auto = real(sign);
        Ok(self)
    }

    pub fn alpha_k(&self, k: u8) -> Scalar<R> {
        if k == 4 {
            self.alpha4
        } else {
            self.alpha2
        }
    }

    pub fn g_k(&self, k: u8) -> Scalar<R> {
        if k == 4 {
            self.g4
        } else {
            self.g2
        }
    }

    /// Constants after `α → αα̃²`, `α̃ → −1/α̃`.
    pub fn mapped(&self) -> Result<Self> {
        let mut p = derive_constants(self.q, self.g, self.alpha4, -inv(self.alphatilde))?;
        p.zeta_auto = self.zeta_auto;
        Ok(p)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "precision": R::LABEL,
            "q": pair(self.q), "g": pair(self.g), "alpha": pair(self.alpha),
            "alphatilde": pair(self.alphatilde), "gtilde": pair(self.gtilde),
            "qtilde": pair(self.qtilde), "xi": pair(self.xi), "zeta_auto": pair(self.zeta_auto),
        })
    }
}

pub(crate) fn pair<R: Real>(z: Scalar<R>) -> [f64; 2] {
    let w = lower(z);
    [w.re, w.im]
}

/// `ζ(x) = −(x + 1/x + ξ + 1/ξ)/(ξ − 1/ξ)`.
pub fn zeta<R: Real>(x: Scalar<R>, params: &AlgebraParams<R>) -> Result<Scalar<R>> {
    let xi = nonzero(params.xi, "xi")?;
    nonzero(x, "x")?;
    let den = nonzero(xi - inv(xi), "xi - 1/xi")?;
    Ok(-(x + inv(x) + xi + inv(xi)) / den)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum XBranch {
    Big,
    Small,
}

impl XBranch {
    pub fn flip(self) -> Self {
        match self {
            Self::Big => Self::Small,
            Self::Small => Self::Big,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value<R: Real>(self) -> Scalar<R> {
        match self {
            Self::Plus => real(1.0),
            Self::Minus => real(-1.0),
        }
    }

    /// Sign `s` minimizing `|s·a − b|`.
    pub fn nearest<R: Real>(a: Scalar<R>, b: Scalar<R>) -> Self {
        if modulus(a - b) <= modulus(a + b) {
            Self::Plus
        } else {
            Self::Minus
        }
    }
}

/// Every sign choice needed to rebuild a representation exactly. `√g` and
/// `q^{1/2}` always take the principal branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqrtBranches {
    pub xminus: XBranch,
    /// `U₂ = u2 · sqrt_principal(U₂²)`.
    pub u2: Sign,
    /// `V₂ = v2 · sqrt_principal(V₂²)`.
    pub v2: Sign,
    /// `U₄U₂ = V₄V₂ = pair`.
    pub pair: Sign,
}

impl Default for SqrtBranches {
    fn default() -> Self {
        Self { xminus: XBranch::Big, u2: Sign::Plus, v2: Sign::Plus, pair: Sign::Plus }
    }
}

/// Roots of `x + 1/x = s` with `s = −q⁻²ζ(x⁺)(ξ−1/ξ) − ξ − 1/ξ`.
pub fn solve_xminus<R: Real>(xplus: Scalar<R>, params: &AlgebraParams<R>, branch: XBranch) -> Result<Scalar<R>> {
    let (big, small) = xminus_roots(xplus, params)?;
    Ok(match branch {
        XBranch::Big => big,
        XBranch::Small => small,
    })
}

/// Both roots, larger modulus first.
pub fn xminus_roots<R: Real>(xplus: Scalar<R>, params: &AlgebraParams<R>) -> Result<(Scalar<R>, Scalar<R>)> {
    let xi = params.xi;
    let s = -powi(params.q, -2) * zeta(xplus, params)? * (xi - inv(xi)) - xi - inv(xi);
    let disc = s * s - real(4.0);
    if modulus(disc) <= R::epsilon() * R::from_f64(1e4) {
        return Err(Error::Degenerate("double root x- = ±1".into()));
    }
    let d = sqrt_principal(disc);
    let (r1, r2) = ((s + d) / real(2.0), (s - d) / real(2.0));
    let big = if modulus(r1) >= modulus(r2) { r1 } else { r2 };
    Ok((big, inv(big)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepPoint<R: Real> {
    pub xplus: Scalar<R>,
    pub xminus: Scalar<R>,
    pub gamma: Scalar<R>,
    pub branches: SqrtBranches,
}

impl<R: Real> RepPoint<R> {
    /// Point with x⁻ solved on the branch in `branches`.
    pub fn solve(
        xplus: Scalar<R>,
        gamma: Scalar<R>,
        branches: SqrtBranches,
        params: &AlgebraParams<R>,
    ) -> Result<Self> {
        let xminus = solve_xminus(xplus, params, branches.xminus)?;
        Ok(Self { xplus, xminus, gamma, branches })
    }

    /// Point with an explicitly supplied x⁻ (used when x⁻ is transported by
    /// continuity rather than by branch label).
    pub fn explicit(xplus: Scalar<R>, xminus: Scalar<R>, gamma: Scalar<R>, branches: SqrtBranches) -> Self {
        Self { xplus, xminus, gamma, branches }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "xplus": pair(self.xplus), "xminus": pair(self.xminus), "gamma": pair(self.gamma),
            "branches": self.branches,
        })
    }

    pub fn label(&self) -> String {
        let x = lower(self.xplus);
        let g = lower(self.gamma);
        format!("x+={:.6}{:+.6}i,gamma={:.6}{:+.6}i", x.re, x.im, g.re, g.im)
    }
}

/// `(U², V²)` for node variables `(x⁺, x⁻)`, first closed forms.
pub fn central_squares<R: Real>(
    xp: Scalar<R>,
    xm: Scalar<R>,
    params: &AlgebraParams<R>,
) -> Result<(Scalar<R>, Scalar<R>)> {
    let (q, xi) = (params.q, params.xi);
    let u = inv(q) * (xp + xi) / nonzero(xm + xi, "x- + xi")?;
    let v = inv(q) * (xi * xp + real(1.0)) / nonzero(xi * xm + real(1.0), "xi x- + 1")?;
    Ok((u, v))
}

/// `(U², V²)` from the second closed forms.
pub fn central_squares_alt<R: Real>(
    xp: Scalar<R>,
    xm: Scalar<R>,
    params: &AlgebraParams<R>,
) -> Result<(Scalar<R>, Scalar<R>)> {
    let (q, xi) = (params.q, params.xi);
    let r = xp / nonzero(xm, "x-")?;
    let u = q * r * (xi * xm + real(1.0)) / nonzero(xi * xp + real(1.0), "xi x+ + 1")?;
    let v = q * r * (xm + xi) / nonzero(xp + xi, "x+ + xi")?;
    Ok((u, v))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CentralValues<R: Real> {
    pub u2: Scalar<R>,
    pub v2: Scalar<R>,
    pub u4: Scalar<R>,
    pub v4: Scalar<R>,
}

impl<R: Real> CentralValues<R> {
    pub fn u(&self, k: u8) -> Scalar<R> {
        if k == 4 {
            self.u4
        } else {
            self.u2
        }
    }
    pub fn v(&self, k: u8) -> Scalar<R> {
        if k == 4 {
            self.v4
        } else {
            self.v2
        }
    }
}

pub fn central_values<R: Real>(point: &RepPoint<R>, params: &AlgebraParams<R>) -> Result<CentralValues<R>> {
    let (u2s, v2s) = central_squares(point.xplus, point.xminus, params)?;
    let b = point.branches;
    let u2 = b.u2.value::<R>() * sqrt_principal(u2s);
    let v2 = b.v2.value::<R>() * sqrt_principal(v2s);
    let t = b.pair.value::<R>();
    Ok(CentralValues { u2, v2, u4: t / nonzero(u2, "U2")?, v4: t / nonzero(v2, "V2")? })
}

/// Node variables `(x⁺_k, x⁻_k, γ_k, α_k)`.
pub fn node_variables<R: Real>(
    k: u8,
    point: &RepPoint<R>,
    params: &AlgebraParams<R>,
) -> Result<(Scalar<R>, Scalar<R>, Scalar<R>, Scalar<R>)> {
    match k {
        2 => Ok((point.xplus, point.xminus, point.gamma, params.alpha2)),
        4 => {
            let xp = nonzero(point.xplus, "x+")?;
            let xm = nonzero(point.xminus, "x-")?;
            Ok((inv(xp), inv(xm), imag_unit::<R>() * params.alphatilde * point.gamma / xp, params.alpha4))
        }
        _ => Err(Error::Precondition(format!("node {k} carries no x-parametrized coefficients"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NodeCoefficients<R: Real> {
    pub a: Scalar<R>,
    pub b: Scalar<R>,
    pub c: Scalar<R>,
    pub d: Scalar<R>,
    pub u: Scalar<R>,
    pub v: Scalar<R>,
}

/// Coefficients from node variables and the node's `V`.
pub fn node_coefficients<R: Real>(
    xp: Scalar<R>,
    xm: Scalar<R>,
    gamma: Scalar<R>,
    alpha: Scalar<R>,
    v: Scalar<R>,
    u: Scalar<R>,
    params: &AlgebraParams<R>,
) -> Result<NodeCoefficients<R>> {
    let i = imag_unit::<R>();
    let (sg, sq, g, gt, xi) = (params.sqrt_g, params.sqrt_q, params.g, params.gtilde, params.xi);
    let gamma = nonzero(gamma, "gamma")?;
    let g = nonzero(g, "g")?;
    let a = sg * gamma;
    let b = sg * alpha / gamma * (xm - xp) / nonzero(xm, "x-")?;
    let c = sg * gamma / alpha * i * sq * gt / (nonzero(v, "V")? * g * nonzero(xp + xi, "x+ + xi")?);
    let d = sg / gamma * v * gt * sq * (xp - xm) / (i * g * nonzero(xi * xp + real(1.0), "xi x+ + 1")?);
    Ok(NodeCoefficients { a, b, c, d, u, v })
}

/// Coefficients `(a, b, c, d, U, V)` of node `k ∈ {2, 4}`.
pub fn coefficients<R: Real>(k: u8, point: &RepPoint<R>, params: &AlgebraParams<R>) -> Result<NodeCoefficients<R>> {
    let cv = central_values(point, params)?;
    let (xp, xm, gamma, alpha) = node_variables(k, point, params)?;
    node_coefficients(xp, xm, gamma, alpha, cv.v(k), cv.u(k), params)
}

/// Matrix unit `e_{ij}` on the four-dimensional space, 1-based.
pub fn e_unit<R: Real>(i: usize, j: usize) -> Mat<R> {
    Mat::unit(4, i - 1, j - 1)
}

/// Raising and lowering matrices of an odd node from its coefficients.
pub fn odd_node_matrices<R: Real>(c: &NodeCoefficients<R>) -> (Mat<R>, Mat<R>) {
    let e = &e_unit::<R>(1, 4).scale(c.b) + &e_unit::<R>(3, 2).scale(c.a);
    let f = &e_unit::<R>(2, 3).scale(c.d) + &e_unit::<R>(4, 1).scale(c.c);
    (e, f)
}

/// Cartan matrices: `K₁ = diag(q⁻¹, q, 1, 1)`, `K₃ = diag(1, 1, q, q⁻¹)`,
/// `K_k = (q^{1/2}/V_k)·diag(1, q⁻¹, q⁻¹, 1)`.
pub fn cartan_matrices<R: Real>(q: Scalar<R>, sqrt_q: Scalar<R>, v2: Scalar<R>, v4: Scalar<R>) -> [Mat<R>; 4] {
    let one = real::<R>(1.0);
    let qi = inv(q);
    let kk = |v: Scalar<R>| Mat::diag(&[one, qi, qi, one]).scale(sqrt_q / v);
    [Mat::diag(&[qi, q, one, one]), kk(v2), Mat::diag(&[one, one, q, qi]), kk(v4)]
}

/// Fills a generator bundle on the fundamental space.
pub fn assemble_fundamental<R: Real>(
    q: Scalar<R>,
    sqrt_q: Scalar<R>,
    c2: &NodeCoefficients<R>,
    c4: &NodeCoefficients<R>,
) -> Result<RepMatrices<R>> {
    let space = GradedSpace::fundamental();
    let mut m = RepMatrices::new(space.clone());
    let wrap = |x: Mat<R>| SuperMatrix::endo(&space, x);
    m.gens.insert(Generator::E(1), wrap(e_unit(2, 1))?);
    m.gens.insert(Generator::F(1), wrap(e_unit(1, 2))?);
    m.gens.insert(Generator::E(3), wrap(e_unit(4, 3))?);
    m.gens.insert(Generator::F(3), wrap(e_unit(3, 4))?);
    for (k, c) in [(2u8, c2), (4u8, c4)] {
        let (e, f) = odd_node_matrices(c);
        m.gens.insert(Generator::E(k), SuperMatrix::with_degree(space.clone(), space.clone(), e, Degree::Odd)?);
        m.gens.insert(Generator::F(k), SuperMatrix::with_degree(space.clone(), space.clone(), f, Degree::Odd)?);
    }
    let ks = cartan_matrices(q, sqrt_q, c2.v, c4.v);
    for (j, k) in ks.into_iter().enumerate() {
        m.insert_cartan(j as u8 + 1, wrap(k)?)?;
    }
    m.central.insert(Central::U(2), c2.u);
    m.central.insert(Central::V(2), c2.v);
    m.central.insert(Central::U(4), c4.u);
    m.central.insert(Central::V(4), c4.v);
    Ok(m)
}

#[derive(Clone, Debug)]
pub struct FundRep<R: Real> {
    pub params: AlgebraParams<R>,
    pub point: RepPoint<R>,
    pub mats: RepMatrices<R>,
    pub coeffs2: NodeCoefficients<R>,
    pub coeffs4: NodeCoefficients<R>,
    pub central: CentralValues<R>,
    /// Evaluation parameter `z = q⁻¹ζ(x⁺)`.
    pub z: Scalar<R>,
    /// Set when x⁻ = x⁺ (then b_k = d_k = 0).
    pub flagged_coincident: bool,
}

pub fn build_rep<R: Real>(point: &RepPoint<R>, params: &AlgebraParams<R>) -> Result<FundRep<R>> {
    let central = central_values(point, params)?;
    let coeffs2 = coefficients(2, point, params)?;
    let coeffs4 = coefficients(4, point, params)?;
    let mats = assemble_fundamental(params.q, params.sqrt_q, &coeffs2, &coeffs4)?;
    let z = inv(params.q) * zeta(point.xplus, params)?;
    let flagged_coincident = modulus(point.xplus - point.xminus) <= R::epsilon() * R::from_f64(64.0);
    Ok(FundRep {
        params: params.clone(),
        point: point.clone(),
        mats,
        coeffs2,
        coeffs4,
        central,
        z,
        flagged_coincident,
    })
}

impl<R: Real> Representation<R> for FundRep<R> {
    fn space(&self) -> &GradedSpace {
        &self.mats.space
    }
    fn generator(&self, g: Generator) -> Option<&SuperMatrix<R>> {
        self.mats.generator(g)
    }
    fn central(&self, c: Central) -> Option<Scalar<R>> {
        self.mats.central(c)
    }
}

impl<R: Real> FundRep<R> {
    pub fn new(xplus: Scalar<R>, gamma: Scalar<R>, params: &AlgebraParams<R>) -> Result<Self> {
        let p = RepPoint::solve(xplus, gamma, SqrtBranches::default(), params)?;
        build_rep(&p, params)
    }

    pub fn coeffs(&self, k: u8) -> &NodeCoefficients<R> {
        if k == 4 {
            &self.coeffs4
        } else {
            &self.coeffs2
        }
    }

    pub fn matrix(&self, g: Generator) -> &Mat<R> {
        &self.mats.gens[&g].mat
    }

    /// The point and constants under `x± → 1/x±`, `γ → iα̃γ/x⁺`, `α → αα̃²`,
    /// `α̃ → −1/α̃`, with branches chosen so the mapped node 2 carries this
    /// representation's node-4 central values.
    pub fn mapped_point(&self) -> Result<(RepPoint<R>, AlgebraParams<R>)> {
        let params = self.params.mapped()?;
        let xp = inv(self.point.xplus);
        let xm = inv(self.point.xminus);
        let gamma = imag_unit::<R>() * self.params.alphatilde * self.point.gamma / self.point.xplus;
        let (u2s, v2s) = central_squares(xp, xm, &params)?;
        let branches = SqrtBranches {
            xminus: self.point.branches.xminus.flip(),
            u2: Sign::nearest(sqrt_principal(u2s), self.central.u4),
            v2: Sign::nearest(sqrt_principal(v2s), self.central.v4),
            pair: self.point.branches.pair,
        };
        Ok((RepPoint::explicit(xp, xm, gamma, branches), params))
    }

    pub fn to_json(&self) -> Value {
        let mut matrices = serde_json::Map::new();
        for (g, m) in &self.mats.gens {
            if matches!(g, Generator::KInv(_)) {
                continue;
            }
            let rows: Vec<Vec<[f64; 2]>> =
                (0..m.mat.rows()).map(|i| (0..m.mat.cols()).map(|j| pair(m.mat[(i, j)])).collect()).collect();
            matrices.insert(g.to_string(), json!(rows));
        }
        json!({
            "params": self.params.to_json(),
            "point": self.point.to_json(),
            "branches": self.point.branches,
            "matrices": matrices,
            "U2": pair(self.central.u2), "V2": pair(self.central.v2),
            "U4": pair(self.central.u4), "V4": pair(self.central.v4),
            "z": pair(self.z),
        })
    }
}

/// Residuals of every coefficient constraint of the representation.
pub fn check_rep_constraints<R: Real>(rep: &FundRep<R>, tol: Tolerance) -> Vec<RelationReport> {
    let p = &rep.params;
    let (q, sq, g, gt, at) = (p.q, p.sqrt_q, p.g, p.gtilde, p.alphatilde);
    let qq = q - inv(q);
    let one = real::<R>(1.0);
    let label = rep.point.label();
    let mut out = Vec::new();
    let mut push = |id: String, r: Scalar<R>| out.push(RelationReport::new(id, modulus(r).to_f64(), tol.abs_eps, label.clone()));
    for k in [2u8, 4] {
        let c = rep.coeffs(k);
        let (u, v) = (c.u, c.v);
        let al = p.alpha_k(k);
        push(format!("FundCond_ad_{k}"), c.a * c.d - (sq * v - inv(sq) * inv(v)) / qq);
        push(format!("FundCond_bc_{k}"), c.b * c.c - (inv(sq) * v - sq * inv(v)) / qq);
        push(format!("FundCond_ab_{k}"), c.a * c.b - p.g_k(k) * al * (one - u * u * v * v));
        push(format!("FundCond_cd_{k}"), c.c * c.d - p.g_k(k) * inv(al) * (powi(v, -2) - powi(u, -2)));
        push(
            format!("FundCond2_{k}"),
            g * g * (powi(v, -2) - powi(u, -2)) * (one - u * u * v * v)
                - (v - q * inv(v)) * (v - inv(q) * inv(v)) / (qq * qq),
        );
        push(format!("constr_{k}"), (c.a * c.d - q * c.b * c.c) * (c.a * c.d - inv(q) * c.b * c.c) - one);
        if let Ok((xp, xm, _, _)) = node_variables(k, &rep.point, p) {
            if let (Ok((u1, v1)), Ok((u2, v2))) = (central_squares(xp, xm, p), central_squares_alt(xp, xm, p)) {
                push(format!("u2v2_U_{k}"), u1 - u2);
                push(format!("u2v2_V_{k}"), v1 - v2);
                push(format!("u2v2_value_U_{k}"), u * u - u1);
                push(format!("u2v2_value_V_{k}"), v * v - v1);
            }
        }
    }
    let (c2, c4) = (&rep.coeffs2, &rep.coeffs4);
    let (u2, v2, u4, v4) = (c2.u, c2.v, c4.u, c4.v);
    push("FundCond3_a2d4".into(), c2.a * c4.d - gt * inv(at) * (sq * u2 * inv(u4) * v2 - inv(sq) * inv(v4)));
    push("FundCond3_b2c4".into(), c2.b * c4.c - gt * inv(at) * (inv(sq) * u2 * inv(u4) * v2 - sq * inv(v4)));
    push("FundCond3_c2b4".into(), c2.c * c4.b - gt * at * (sq * inv(v2) - inv(sq) * inv(u2) * u4 * v4));
    push("FundCond3_d2a4".into(), c2.d * c4.a - gt * at * (inv(sq) * inv(v2) - sq * inv(u2) * u4 * v4));
    let t = rep.point.branches.pair.value::<R>();
    push("inv_U".into(), u4 * u2 - t);
    push("inv_V".into(), v4 * v2 - t);
    if let (Ok(zp), Ok(zm)) = (zeta(rep.point.xplus, p), zeta(rep.point.xminus, p)) {
        push("eval1".into(), inv(q) * zp - q * zm);
    }
    out
}

/// Draws a generic point pair-compatible stream: couplings from
/// `(seed, index)` and `slots` slot values from the same stream, each slot
/// kept away from the poles of the parametrization.
pub fn sample_points<R: Real>(
    seed: SampleSeed,
    index: u64,
    slots: usize,
    alpha: Scalar<R>,
    alphatilde: Scalar<R>,
) -> Result<(AlgebraParams<R>, Vec<RepPoint<R>>)> {
    let mut s = PointSampler::new(seed, index);
    let (q, g) = s.couplings();
    let params = derive_constants(lift(q), lift(g), alpha, alphatilde)?;
    let points = draw_slots(&mut s, slots, &params)?;
    Ok((params, points))
}

/// Generic slots for fixed constants, drawn from the `(seed, index)` stream.
pub fn sample_slots<R: Real>(seed: SampleSeed, index: u64, slots: usize, params: &AlgebraParams<R>) -> Result<Vec<RepPoint<R>>> {
    draw_slots(&mut PointSampler::new(seed, index), slots, params)
}

fn draw_slots<R: Real>(s: &mut PointSampler, slots: usize, params: &AlgebraParams<R>) -> Result<Vec<RepPoint<R>>> {
    let p64 = derive_constants::<f64>(lower(params.q), lower(params.g), lower(params.alpha), lower(params.alphatilde))?;
    let mut points = Vec::with_capacity(slots);
    for _ in 0..slots {
        let (x, gamma) = s.slot_where(p64.xi, |x, _| slot_is_generic(x, &p64));
        points.push(RepPoint::solve(lift(x), lift(gamma), SqrtBranches::default(), params)?);
    }
    Ok(points)
}

/// Keeps x⁻ and the node-4 variables away from their poles as well.
fn slot_is_generic(x: Scalar<f64>, p: &AlgebraParams<f64>) -> bool {
    let Ok((big, small)) = xminus_roots(x, p) else { return false };
    let xi = p.xi;
    let far = |z: Scalar<f64>| z.norm() >= EXCLUSION;
    far(big - small)
        && [big, small].iter().all(|&m| far(m + xi) && far(xi * m + 1.0) && far(m) && far(m - x))
        && far(xi * x + 1.0)
        && far(x + xi)
        && far(1.0 / x + xi)
        && far(xi / x + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::cx;

    fn params() -> AlgebraParams<f64> {
        AlgebraParams::new(cx(1.1, 0.2), cx(0.7, -0.1)).unwrap()
    }

    #[test]
    fn gtilde_square_and_xi_definition() {
        let p = AlgebraParams::<f64>::new(cx(1.1, 0.0), cx(0.7, 0.0)).unwrap();
        let qq = p.q - 1.0 / p.q;
        let r = p.gtilde * p.gtilde - p.g * p.g / (1.0 - p.g * p.g * qq * qq);
        assert!(r.norm() < 1e-12);
        assert_eq!(p.xi, -imag_unit::<f64>() * p.gtilde * qq);
    }

    #[test]
    fn qtilde_reproduces_both_parameter_formulas() {
        let p = params();
        let qq = p.q - 1.0 / p.q;
        let g = (p.qtilde - 1.0 / p.qtilde) / (2.0 * imag_unit::<f64>() * qq);
        let gt = imag_unit::<f64>() * (p.qtilde - 1.0 / p.qtilde) / (qq * (p.qtilde + 1.0 / p.qtilde));
        assert!((g - p.g).norm() < 1e-13);
        assert!((gt - p.gtilde).norm() < 1e-13);
    }

    #[test]
    fn zeta_zeros_and_symmetry() {
        let p = params();
        assert!(zeta(-p.xi, &p).unwrap().norm() < 1e-14);
        assert!(zeta(-1.0 / p.xi, &p).unwrap().norm() < 1e-14);
        let x = cx(0.3, 1.2);
        assert!((zeta(x, &p).unwrap() - zeta(1.0 / x, &p).unwrap()).norm() < 1e-13);
    }

    #[test]
    fn degenerate_q_rejected() {
        assert!(AlgebraParams::<f64>::new(cx(1.0, 0.0), cx(0.5, 0.0)).is_err());
        assert!(AlgebraParams::<f64>::new(cx(-1.0, 0.0), cx(0.5, 0.0)).is_err());
    }
}
