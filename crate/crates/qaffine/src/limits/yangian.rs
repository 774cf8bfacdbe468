//! The q → 1 limit at fixed (x⁺, γ, g, α, α̃): undeformed frames, difference
//! quotients of the affine generators, their coproducts, and the spectral
//! parameter expansions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fundrep::{
    build_rep, central_squares, derive_constants, node_coefficients, nonzero, xminus_roots, AlgebraParams, FundRep,
    NodeCoefficients, RepPoint, Sign, SqrtBranches, XBranch,
};
use crate::generators::{Generator, RepMatrices};
use crate::hopf::TensorRep;
use crate::limits::series::{limit_report, Acceptance};
use crate::limits::{lin, Brackets};
use crate::numerics::{imag_unit, inv, modulus, powi, real, sqrt_principal, Real, Scalar};
use crate::report::LimitReport;
use crate::superlinalg::{graded_tensor, supercommutator, Degree, GradedSpace, Mat, SuperMatrix};

/// Undeformed point at q = 1 together with its q = 1 matrices.
#[derive(Clone, Debug)]
pub struct YangianFrame<R: Real> {
    pub xplus: Scalar<R>,
    /// Larger-modulus root of `x + 1/x = x⁺ + 1/x⁺ − i/g`.
    pub xminus: Scalar<R>,
    pub gamma: Scalar<R>,
    pub g: Scalar<R>,
    pub alpha: Scalar<R>,
    pub alphatilde: Scalar<R>,
    /// `U = (x⁺/x⁻)^{1/2}`, principal branch.
    pub u_central: Scalar<R>,
    pub c: Scalar<R>,
    /// `u = ½(x⁺+x⁻)(1 + 1/x⁺x⁻)`.
    pub u: Scalar<R>,
    /// `v = ½(x⁺+x⁻)(1 − 1/x⁺x⁻)`.
    pub v: Scalar<R>,
    pub coeffs2: NodeCoefficients<R>,
    pub coeffs4: NodeCoefficients<R>,
    /// Raising and lowering matrices at q = 1.
    pub mats: RepMatrices<R>,
    /// `H₁ = diag(−1,1,0,0)`, `H₂ = diag(½−C, −½−C, −½−C, ½−C)`,
    /// `H₃ = diag(0,0,1,−1)`.
    pub cartan: [SuperMatrix<R>; 3],
}

/// Constants with q = 1 substituted: ξ = 0, g̃ = g.
fn undeformed_params<R: Real>(g: Scalar<R>, alpha: Scalar<R>, alphatilde: Scalar<R>) -> AlgebraParams<R> {
    let one = real::<R>(1.0);
    AlgebraParams {
        q: one,
        g,
        alpha,
        alphatilde,
        gtilde: g,
        qtilde: one,
        xi: real(0.0),
        g2: g,
        g4: g,
        alpha2: alpha,
        alpha4: alpha * alphatilde * alphatilde,
        sqrt_q: one,
        sqrt_g: sqrt_principal(g),
        zeta_auto: one,
    }
}

impl<R: Real> YangianFrame<R> {
    pub fn new(xplus: Scalar<R>, gamma: Scalar<R>, g: Scalar<R>, alpha: Scalar<R>, alphatilde: Scalar<R>) -> Result<Self> {
        let one = real::<R>(1.0);
        let half = real::<R>(0.5);
        let i = imag_unit::<R>();
        nonzero(xplus, "x+")?;
        nonzero(g, "g")?;
        nonzero(gamma, "gamma")?;
        nonzero(alpha * alphatilde, "alpha alphatilde")?;
        let s = xplus + inv(xplus) - i / g;
        let d = sqrt_principal(s * s - real(4.0));
        let (r1, r2) = ((s + d) * half, (s - d) * half);
        let xminus = if modulus(r1) >= modulus(r2) { r1 } else { r2 };
        let w = inv(xplus * xminus);
        nonzero(one - w, "1 - 1/(x+ x-)")?;
        let u_central = sqrt_principal(xplus / xminus);
        let c = half * (one + w) / (one - w);
        let u = half * (xplus + xminus) * (one + w);
        let v = half * (xplus + xminus) * (one - w);
        let p = undeformed_params(g, alpha, alphatilde);
        let coeffs2 = node_coefficients(xplus, xminus, gamma, alpha, one, u_central, &p)?;
        let g4 = i * alphatilde * gamma / xplus;
        let coeffs4 = node_coefficients(inv(xplus), inv(xminus), g4, p.alpha4, one, inv(u_central), &p)?;
        let space = GradedSpace::fundamental();
        let mut mats = RepMatrices::new(space.clone());
        let unit = |a: usize, b: usize| crate::fundrep::e_unit::<R>(a, b);
        let even = |m: Mat<R>| SuperMatrix::with_degree(space.clone(), space.clone(), m, Degree::Even);
        let odd = |m: Mat<R>| SuperMatrix::with_degree(space.clone(), space.clone(), m, Degree::Odd);
        mats.gens.insert(Generator::E(1), even(unit(2, 1))?);
        mats.gens.insert(Generator::F(1), even(unit(1, 2))?);
        mats.gens.insert(Generator::E(3), even(unit(4, 3))?);
        mats.gens.insert(Generator::F(3), even(unit(3, 4))?);
        for (k, co) in [(2u8, &coeffs2), (4u8, &coeffs4)] {
            let (e, f) = crate::fundrep::odd_node_matrices(co);
            mats.gens.insert(Generator::E(k), odd(e)?);
            mats.gens.insert(Generator::F(k), odd(f)?);
        }
        let zero = real::<R>(0.0);
        let cartan = [
            even(Mat::diag(&[-one, one, zero, zero]))?,
            even(Mat::diag(&[half - c, -half - c, -half - c, half - c]))?,
            even(Mat::diag(&[zero, zero, one, -one]))?,
        ];
        Ok(Self { xplus, xminus, gamma, g, alpha, alphatilde, u_central, c, u, v, coeffs2, coeffs4, mats, cartan })
    }

    /// `(x⁺ − x⁻)(1 − 1/x⁺x⁻) − i/g`.
    pub fn constraint_residual(&self) -> f64 {
        let one = real::<R>(1.0);
        let r = (self.xplus - self.xminus) * (one - inv(self.xplus * self.xminus)) - imag_unit::<R>() / self.g;
        modulus(r).to_f64()
    }

    /// `C² − ¼ + g²(U − U⁻¹)²`.
    pub fn c_squared_residual(&self) -> f64 {
        let w = self.u_central - inv(self.u_central);
        modulus(self.c * self.c - real(0.25) + self.g * self.g * w * w).to_f64()
    }

    pub fn brackets(&self) -> Result<Brackets<R>> {
        Brackets::from_rep(&self.mats)
    }

    pub fn h(&self, j: u8) -> &SuperMatrix<R> {
        &self.cartan[j as usize - 1]
    }

    /// `H₁ + H₂ + H₃`.
    pub fn h_sum(&self) -> Result<SuperMatrix<R>> {
        self.cartan[0].add(&self.cartan[1])?.add(&self.cartan[2])
    }

    /// `B̂ = (v/2)·diag(1,1,−1,−1)`.
    pub fn secret_b(&self) -> Result<SuperMatrix<R>> {
        let w = self.v * real(0.5);
        SuperMatrix::with_degree(
            GradedSpace::fundamental(),
            GradedSpace::fundamental(),
            Mat::diag(&[w, w, -w, -w]),
            Degree::Even,
        )
    }

    /// Constants at `q = 1 + h`.
    pub fn deformed_params(&self, h: f64) -> Result<AlgebraParams<R>> {
        derive_constants(real::<R>(1.0 + h), self.g, self.alpha, self.alphatilde)
    }

    /// Representation at `q = 1 + h` with x⁻ transported by continuity and the
    /// `U₂` sign nearest the undeformed U.
    pub fn deformed(&self, h: f64) -> Result<FundRep<R>> {
        let params = self.deformed_params(h)?;
        let (big, small) = xminus_roots(self.xplus, &params)?;
        let (db, ds) = (modulus(big - self.xminus).to_f64(), modulus(small - self.xminus).to_f64());
        let (xm, branch) = if db <= ds { (big, XBranch::Big) } else { (small, XBranch::Small) };
        if db.max(ds) < 2.0 * db.min(ds) {
            return Err(Error::Continuity(format!("x- roots not separated at h = {h:e}")));
        }
        let (u2s, v2s) = central_squares(self.xplus, xm, &params)?;
        let branches = SqrtBranches {
            xminus: branch,
            u2: Sign::nearest(sqrt_principal(u2s), self.u_central),
            v2: Sign::nearest(sqrt_principal(v2s), real(1.0)),
            pair: Sign::Plus,
        };
        build_rep(&RepPoint::explicit(self.xplus, xm, self.gamma, branches), &params)
    }

    fn aa(&self) -> Scalar<R> {
        self.alpha * self.alphatilde
    }

    /// `2uE₃₂₁ + iα(1+U²)F₂`.
    pub fn e_target(&self) -> Result<SuperMatrix<R>> {
        let b = self.brackets()?;
        let i = imag_unit::<R>();
        let one = real::<R>(1.0);
        let uu = self.u_central * self.u_central;
        lin(&[(self.u * real(2.0), &b.e3k1(2)?), (i * self.alpha * (one + uu), b.f(2))])
    }

    /// `−2uF₃₂₁ + iα⁻¹(1+U⁻²)E₂`.
    pub fn f_target(&self) -> Result<SuperMatrix<R>> {
        let b = self.brackets()?;
        let i = imag_unit::<R>();
        let one = real::<R>(1.0);
        let uu = powi(self.u_central, -2);
        lin(&[(-self.u * real(2.0), &b.f3k1(2)?), (i / self.alpha * (one + uu), b.e(2))])
    }

    /// Residuals of `e_target = uE₃₂₁ − [B̂, E₃₂₁]` and
    /// `f_target = −uF₃₂₁ − [B̂, F₃₂₁]`.
    pub fn secret_identity_residuals(&self) -> Result<[f64; 2]> {
        let b = self.brackets()?;
        let bh = self.secret_b()?;
        let (e321, f321) = (b.e3k1(2)?, b.f3k1(2)?);
        let one = real::<R>(1.0);
        let se = lin(&[(self.u, &e321), (-one, &supercommutator(&bh, &e321)?)])?;
        let sf = lin(&[(-self.u, &f321), (-one, &supercommutator(&bh, &f321)?)])?;
        Ok([self.e_target()?.mat.max_abs_diff(&se.mat), self.f_target()?.mat.max_abs_diff(&sf.mat)])
    }
}

/// Which affine-generator quotient to form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QuotientKind {
    /// `(−αα̃F₄ − E₃₂₁)/(ig(q−1))`.
    AffineE,
    /// `((αα̃)⁻¹E₄ − F₃₂₁)/(ig(q−1))`.
    AffineF,
}

impl QuotientKind {
    pub fn check_id(self) -> &'static str {
        match self {
            Self::AffineE => "affine_e_quotient",
            Self::AffineF => "affine_f_quotient",
        }
    }
}

fn quotient_from<R: Real>(kind: QuotientKind, b: &Brackets<R>, g: Scalar<R>, aa: Scalar<R>, h: f64) -> Result<SuperMatrix<R>> {
    let s = inv(imag_unit::<R>() * g * real(h));
    match kind {
        QuotientKind::AffineE => lin(&[(-aa * s, b.f(4)), (-s, &b.e3k1(2)?)]),
        QuotientKind::AffineF => lin(&[(s / aa, b.e(4)), (-s, &b.f3k1(2)?)]),
    }
}

/// Quotient matrix at `q = 1 + h`.
pub fn yangian_quotient<R: Real>(kind: QuotientKind, frame: &YangianFrame<R>, h: f64) -> Result<SuperMatrix<R>> {
    let rep = frame.deformed(h)?;
    quotient_from(kind, &Brackets::from_rep(&rep)?, frame.g, frame.aa(), h)
}

/// Convergence of one affine-generator quotient to its target.
pub fn yangian_quotient_check<R: Real>(kind: QuotientKind, frame: &YangianFrame<R>, h_seq: &[f64]) -> Result<LimitReport> {
    let values = h_seq.iter().map(|&h| yangian_quotient(kind, frame, h).map(|m| m.mat)).collect::<Result<Vec<_>>>()?;
    let target = match kind {
        QuotientKind::AffineE => frame.e_target()?,
        QuotientKind::AffineF => frame.f_target()?,
    };
    let acc = Acceptance::quotient::<R>(*h_seq.last().unwrap_or(&1.0));
    Ok(limit_report(kind.check_id(), h_seq, values, &target.mat, acc)?.0)
}

fn same_constants<R: Real>(a: &YangianFrame<R>, b: &YangianFrame<R>) -> Result<()> {
    if a.g != b.g || a.alpha != b.alpha || a.alphatilde != b.alphatilde {
        return Err(Error::Precondition("frames carry different constants".into()));
    }
    Ok(())
}

/// Undeformed two-site targets for the coproduct quotients, assembled from
/// the single-site matrices with the affine central terms dropped.
pub fn coproduct_targets<R: Real>(a: &YangianFrame<R>, b: &YangianFrame<R>) -> Result<(SuperMatrix<R>, SuperMatrix<R>)> {
    same_constants(a, b)?;
    let (ba, bb) = (a.brackets()?, b.brackets()?);
    let id = SuperMatrix::identity(&GradedSpace::fundamental());
    let t = |x: &SuperMatrix<R>, y: &SuperMatrix<R>| graded_tensor(x, y);
    let i = imag_unit::<R>();
    let one = real::<R>(1.0);
    let ua = a.u_central;
    let k = i / a.g;
    let (hs_a, hs_b) = (a.h_sum()?, b.h_sum()?);
    let rhs_e = lin(&[
        (one, &t(&a.e_target()?, &id)?),
        (ua, &t(&id, &b.e_target()?)?),
        (k, &t(&ba.e3k1(2)?, &hs_b)?),
        (-k * ua, &t(&hs_a, &bb.e3k1(2)?)?),
        (-k, &t(&ba.e3k(2)?, bb.e(1))?),
        (k * ua, &t(ba.e(1), &bb.e3k(2)?)?),
        (k * ua, &t(ba.e(3), &bb.ek1(2)?)?),
        (-k, &t(&ba.ek1(2)?, bb.e(3))?),
    ])?;
    let ui = inv(ua);
    let rhs_f = lin(&[
        (one, &t(&a.f_target()?, &id)?),
        (ui, &t(&id, &b.f_target()?)?),
        (k, &t(&ba.f3k1(2)?, &hs_b)?),
        (-k * ui, &t(&hs_a, &bb.f3k1(2)?)?),
        (k, &t(&ba.f3k(2)?, bb.f(1))?),
        (-k * ui, &t(ba.f(1), &bb.f3k(2)?)?),
        (-k * ui, &t(ba.f(3), &bb.fk1(2)?)?),
        (k, &t(&ba.fk1(2)?, bb.f(3))?),
    ])?;
    Ok((rhs_e, rhs_f))
}

/// Quotients of the coproduct images on two sites converging to
/// [`coproduct_targets`].
pub fn yangian_coproduct_check<R: Real>(a: &YangianFrame<R>, b: &YangianFrame<R>, h_seq: &[f64]) -> Result<[LimitReport; 2]> {
    let (te, tf) = coproduct_targets(a, b)?;
    let mut qe = Vec::new();
    let mut qf = Vec::new();
    for &h in h_seq {
        let (ra, rb) = (a.deformed(h)?, b.deformed(h)?);
        let t = TensorRep::fundamental(&ra, &rb)?;
        let br = Brackets::from_rep(&t)?;
        qe.push(quotient_from(QuotientKind::AffineE, &br, a.g, a.aa(), h)?.mat);
        qf.push(quotient_from(QuotientKind::AffineF, &br, a.g, a.aa(), h)?.mat);
    }
    let acc = Acceptance::quotient::<R>(*h_seq.last().unwrap_or(&1.0));
    let (re, _) = limit_report("coproduct_e_quotient", h_seq, qe, &te.mat, acc)?;
    let (rf, _) = limit_report("coproduct_f_quotient", h_seq, qf, &tf.mat, acc)?;
    Ok([re, rf])
}

/// Spectral parameters of a node-2 central pair:
/// `z = (VU − 1/VU)/(U/V − V/U)`, `w = (g̃/g)(q^{1/2}U − 1/(q^{1/2}U))/(VU − 1/VU)`.
pub fn spectral_zw<R: Real>(u: Scalar<R>, v: Scalar<R>, p: &AlgebraParams<R>) -> Result<(Scalar<R>, Scalar<R>)> {
    let vu = v * u;
    let den = nonzero(vu - inv(vu), "VU - 1/(VU)")?;
    let z = den / nonzero(u / v - v / u, "U/V - V/U")?;
    let squ = p.sqrt_q * u;
    let w = p.gtilde / p.g * (squ - inv(squ)) / den;
    Ok((z, w))
}

/// Second form `w = (g/g̃)(U/V − V/U)/(U/q^{1/2} − q^{1/2}/U)`.
pub fn spectral_w_alt<R: Real>(u: Scalar<R>, v: Scalar<R>, p: &AlgebraParams<R>) -> Result<Scalar<R>> {
    let den = nonzero(u / p.sqrt_q - p.sqrt_q / u, "U/sqrt(q) - sqrt(q)/U")?;
    Ok(p.g / p.gtilde * (u / v - v / u) / den)
}

/// `T_k = [[a, −b], [−c, d]]`.
pub fn t_matrix<R: Real>(c: &NodeCoefficients<R>) -> Mat<R> {
    Mat::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => c.a,
        (0, 1) => -c.b,
        (1, 0) => -c.c,
        _ => c.d,
    })
}

/// `M = [[0, αα̃], [−1/(αα̃), 0]]`.
pub fn m_matrix<R: Real>(p: &AlgebraParams<R>) -> Mat<R> {
    let aa = p.alpha * p.alphatilde;
    let zero = real::<R>(0.0);
    Mat::from_fn(2, 2, |i, j| match (i, j) {
        (0, 1) => aa,
        (1, 0) => -inv(aa),
        _ => zero,
    })
}

/// Residual of `M·T₄ = diag(z⁻¹,1)·T₂·diag(w⁻¹, wz)` at a deformed point.
pub fn t_matrix_relation_residual<R: Real>(rep: &FundRep<R>) -> Result<f64> {
    let p = &rep.params;
    let (z, w) = spectral_zw(rep.central.u2, rep.central.v2, p)?;
    let one = real::<R>(1.0);
    let lhs = m_matrix(p).matmul(&t_matrix(&rep.coeffs4));
    let rhs = Mat::diag(&[inv(z), one]).matmul(&t_matrix(&rep.coeffs2)).matmul(&Mat::diag(&[inv(w), w * z]));
    Ok(lhs.max_abs_diff(&rhs))
}

/// `N = [[2u, −iα(1+U²)], [−iα⁻¹(1+U⁻²), −2u]]` at the frame.
pub fn n_matrix<R: Real>(f: &YangianFrame<R>) -> Mat<R> {
    let i = imag_unit::<R>();
    let one = real::<R>(1.0);
    let uu = f.u_central * f.u_central;
    Mat::from_fn(2, 2, |r, c| match (r, c) {
        (0, 0) => f.u * real(2.0),
        (0, 1) => -i * f.alpha * (one + uu),
        (1, 0) => -i / f.alpha * (one + inv(uu)),
        _ => -f.u * real(2.0),
    })
}

/// Residual of `N·T₂ = diag(u,−u)·T₂ + T₂·diag(v,−v)` at the frame.
pub fn n_split_residual<R: Real>(f: &YangianFrame<R>) -> f64 {
    let t = t_matrix(&f.coeffs2);
    let lhs = n_matrix(f).matmul(&t);
    let rhs = &Mat::diag(&[f.u, -f.u]).matmul(&t) + &t.matmul(&Mat::diag(&[f.v, -f.v]));
    lhs.max_abs_diff(&rhs)
}

/// First-order coefficients of z and w and the T-matrix quotient
/// `(M·T₄ − T₂)/(ig(q−1)) → N·T₂`.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralExpansion {
    /// `(z − 1)/h → −2igu`.
    pub z_coefficient: LimitReport,
    /// `(w − 1)/h → ig(u − v)`.
    pub w_coefficient: LimitReport,
    pub t_matrix_quotient: LimitReport,
}

pub fn spectral_expansion_check<R: Real>(f: &YangianFrame<R>, h_seq: &[f64]) -> Result<SpectralExpansion> {
    let i = imag_unit::<R>();
    let one = real::<R>(1.0);
    let mut zq = Vec::new();
    let mut wq = Vec::new();
    let mut tq = Vec::new();
    for &h in h_seq {
        let rep = f.deformed(h)?;
        let (z, w) = spectral_zw(rep.central.u2, rep.central.v2, &rep.params)?;
        let hs = real::<R>(h);
        zq.push(Mat::diag(&[(z - one) / hs]));
        wq.push(Mat::diag(&[(w - one) / hs]));
        let mt4 = m_matrix(&rep.params).matmul(&t_matrix(&rep.coeffs4));
        tq.push((&mt4 - &t_matrix(&rep.coeffs2)).scale(inv(i * f.g * hs)));
    }
    let acc = Acceptance::quotient::<R>(*h_seq.last().unwrap_or(&1.0));
    let zt = Mat::diag(&[-real::<R>(2.0) * i * f.g * f.u]);
    let wt = Mat::diag(&[i * f.g * (f.u - f.v)]);
    let tt = n_matrix(f).matmul(&t_matrix(&f.coeffs2));
    Ok(SpectralExpansion {
        z_coefficient: limit_report("z_expansion", h_seq, zq, &zt, acc)?.0,
        w_coefficient: limit_report("w_expansion", h_seq, wq, &wt, acc)?.0,
        t_matrix_quotient: limit_report("t_matrix_quotient", h_seq, tq, &tt, acc)?.0,
    })
}
