//! Coproduct, opposite coproduct, antipode and counit on tensor products of
//! representations, plus the Reshetikhin twist and gauge transformation of
//! the fundamental R-matrix.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fundrep::FundRep;
use crate::generators::{Central, Generator, RepMatrices, Representation};
use crate::numerics::{inv, modulus, powi, real, sqrt_principal, Real, Scalar, Tolerance};
use crate::superlinalg::{graded_permutation, graded_tensor, Mat, SuperMatrix};

/// One leg of a two-term coproduct: `U_k^p · X` with `X` a generator or 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Leg {
    pub gen: Option<Generator>,
    pub u_node: Option<u8>,
    pub u_power: i32,
}

impl Leg {
    fn gen(g: Generator) -> Self {
        Self { gen: Some(g), u_node: None, u_power: 0 }
    }

    fn one() -> Self {
        Self { gen: None, u_node: None, u_power: 0 }
    }

    fn u_times(node: Option<u8>, power: i32, g: Option<Generator>) -> Self {
        Self { gen: g, u_node: node, u_power: if node.is_some() { power } else { 0 } }
    }

    pub fn matrix<R: Real>(&self, rep: &dyn Representation<R>) -> Result<SuperMatrix<R>> {
        let m = match self.gen {
            Some(g) => rep.gen(g)?.clone(),
            None => SuperMatrix::identity(rep.space()),
        };
        match self.u_node {
            Some(k) if self.u_power != 0 => Ok(m.scale(powi(rep.central_value(Central::U(k))?, self.u_power))),
            _ => Ok(m),
        }
    }

    /// Antipode image of the leg.
    pub fn antipode<R: Real>(&self, rep: &dyn Representation<R>) -> Result<SuperMatrix<R>> {
        let u_inv = match self.u_node {
            Some(k) if self.u_power != 0 => powi(rep.central_value(Central::U(k))?, -self.u_power),
            _ => real(1.0),
        };
        let s = match self.gen {
            None => SuperMatrix::identity(rep.space()),
            Some(g) => antipode(g, rep)?,
        };
        Ok(s.scale(u_inv))
    }

    pub fn counit(&self) -> f64 {
        match self.gen {
            None | Some(Generator::K(_)) | Some(Generator::KInv(_)) => 1.0,
            Some(_) => 0.0,
        }
    }
}

fn odd_node(j: u8) -> Option<u8> {
    matches!(j, 2 | 4).then_some(j)
}

/// The explicit terms `Σ X₍₁₎ ⊗ X₍₂₎` of `Δ(X)`.
pub fn coproduct_terms(x: Generator) -> Vec<(Leg, Leg)> {
    use Generator::*;
    match x {
        E(j) => vec![(Leg::gen(E(j)), Leg::one()), (Leg::u_times(odd_node(j), 1, Some(KInv(j))), Leg::gen(E(j)))],
        F(j) => vec![(Leg::gen(F(j)), Leg::gen(K(j))), (Leg::u_times(odd_node(j), -1, None), Leg::gen(F(j)))],
        K(_) | KInv(_) => vec![(Leg::gen(x), Leg::gen(x))],
    }
}

/// `Δ(X)` on `rep1 ⊗ rep2` with Koszul signs; central factors are read from
/// the first slot.
pub fn coproduct<R: Real>(x: Generator, rep1: &dyn Representation<R>, rep2: &dyn Representation<R>) -> Result<SuperMatrix<R>> {
    let mut acc: Option<SuperMatrix<R>> = None;
    for (l, r) in coproduct_terms(x) {
        let t = graded_tensor(&l.matrix(rep1)?, &r.matrix(rep2)?)?;
        acc = Some(match acc {
            None => t,
            Some(a) => a.add(&t)?,
        });
    }
    Ok(acc.expect("coproduct has at least one term"))
}

/// `Δ̃(X) = P·Δ_{(rep2,rep1)}(X)·P` with the graded permutation.
pub fn opposite_coproduct<R: Real>(
    x: Generator,
    rep1: &dyn Representation<R>,
    rep2: &dyn Representation<R>,
) -> Result<SuperMatrix<R>> {
    let swapped = coproduct(x, rep2, rep1)?;
    let p_in = graded_permutation::<R>(rep1.space(), rep2.space());
    let p_out = graded_permutation::<R>(rep2.space(), rep1.space());
    p_out.mul(&swapped)?.mul(&p_in)
}

/// `S(X)` for a single generator.
pub fn antipode<R: Real>(x: Generator, rep: &dyn Representation<R>) -> Result<SuperMatrix<R>> {
    use Generator::*;
    let u = |j: u8| -> Result<Scalar<R>> {
        match odd_node(j) {
            Some(k) => rep.central_value(Central::U(k)),
            None => Ok(real(1.0)),
        }
    };
    match x {
        E(j) => Ok(rep.gen(K(j))?.mul(rep.gen(E(j))?)?.scale(-inv(u(j)?))),
        F(j) => Ok(rep.gen(F(j))?.mul(rep.gen(KInv(j))?)?.scale(-u(j)?)),
        K(j) => Ok(rep.gen(KInv(j))?.clone()),
        KInv(j) => Ok(rep.gen(K(j))?.clone()),
    }
}

/// Max-abs residuals of `Σ S(X₍₁₎)X₍₂₎ − ε(X)` and `Σ X₍₁₎S(X₍₂₎) − ε(X)`.
pub fn antipode_check<R: Real>(x: Generator, rep: &dyn Representation<R>) -> Result<(f64, f64)> {
    let id = SuperMatrix::identity(rep.space());
    let eps = Leg::gen(x).counit();
    let mut left = id.scale(real(-eps));
    let mut right = left.clone();
    for (a, b) in coproduct_terms(x) {
        left = left.add(&a.antipode(rep)?.mul(&b.matrix(rep)?)?)?;
        right = right.add(&a.matrix(rep)?.mul(&b.antipode(rep)?)?)?;
    }
    Ok((left.mat.norm_max(), right.mat.norm_max()))
}

/// Max-abs residuals of `(ε⊗id)Δ(X) − X` and `(id⊗ε)Δ(X) − X`, with
/// `ε(U_k) = 1`.
pub fn counit_check<R: Real>(x: Generator, rep: &dyn Representation<R>) -> Result<(f64, f64)> {
    let target = Leg::gen(x).matrix(rep)?;
    let mut left = target.scale(real(-1.0));
    let mut right = left.clone();
    for (a, b) in coproduct_terms(x) {
        left = left.add(&b.matrix(rep)?.scale(real(a.counit())))?;
        right = right.add(&a.matrix(rep)?.scale(real(b.counit())))?;
    }
    Ok((left.mat.norm_max(), right.mat.norm_max()))
}

/// Tensor product representation: every generator through `Δ`, central
/// elements as products of slot values.
#[derive(Clone, Debug)]
pub struct TensorRep<R: Real> {
    pub mats: RepMatrices<R>,
}

impl<R: Real> TensorRep<R> {
    pub fn new(rep1: &dyn Representation<R>, rep2: &dyn Representation<R>) -> Result<Self> {
        let space = rep1.space().tensor(rep2.space());
        let mut mats = RepMatrices::new(space);
        for j in 1..=4u8 {
            for g in [Generator::E(j), Generator::F(j), Generator::K(j), Generator::KInv(j)] {
                mats.gens.insert(g, coproduct(g, rep1, rep2)?);
            }
        }
        for k in [2u8, 4] {
            for c in [Central::U(k), Central::V(k)] {
                if let (Some(a), Some(b)) = (rep1.central(c), rep2.central(c)) {
                    mats.central.insert(c, a * b);
                }
            }
        }
        Ok(Self { mats })
    }

    /// Tensor product of two fundamental representations sharing constants.
    pub fn fundamental(rep1: &FundRep<R>, rep2: &FundRep<R>) -> Result<Self> {
        if rep1.params != rep2.params {
            return Err(Error::Precondition("tensor slots carry different algebra constants".into()));
        }
        Self::new(rep1, rep2)
    }
}

impl<R: Real> Representation<R> for TensorRep<R> {
    fn space(&self) -> &crate::superlinalg::GradedSpace {
        &self.mats.space
    }
    fn generator(&self, g: Generator) -> Option<&SuperMatrix<R>> {
        self.mats.gens.get(&g)
    }
    fn central(&self, c: Central) -> Option<Scalar<R>> {
        self.mats.central.get(&c).copied()
    }
}

/// Max over Chevalley generators of `(Δ⊗id)Δ(X) − (id⊗Δ)Δ(X)` on three slots.
pub fn coassociativity_residual<R: Real>(
    r1: &dyn Representation<R>,
    r2: &dyn Representation<R>,
    r3: &dyn Representation<R>,
) -> Result<f64> {
    let left = TensorRep::new(r1, r2)?;
    let right = TensorRep::new(r2, r3)?;
    let mut worst = 0.0f64;
    for x in Generator::chevalley() {
        let a = coproduct(x, &left, r3)?;
        let b = coproduct(x, r1, &right)?;
        worst = worst.max(a.mat.max_abs_diff(&b.mat));
    }
    Ok(worst)
}

/// Fermion number `B = diag(0,0,1,1)` read off the parity of the space.
fn fermion_number(rep: &dyn Representation<impl Real>) -> Vec<i32> {
    rep.space().parity().iter().map(|&p| p as i32).collect()
}

/// Diagonal twist with its description.
#[derive(Clone, Debug)]
pub struct TwistOp<R: Real> {
    pub f: SuperMatrix<R>,
    pub description: String,
}

/// `U` eigenvalue of `U₂ ≃ U₄⁻¹` on a slot; errors unless `U₂U₄ = 1`.
pub fn twist_u<R: Real>(rep: &dyn Representation<R>, tol: Tolerance) -> Result<Scalar<R>> {
    let u2 = rep.central_value(Central::U(2))?;
    let u4 = rep.central_value(Central::U(4))?;
    let r = modulus(u2 * u4 - real(1.0)).to_f64();
    if r > tol.abs_eps {
        return Err(Error::Precondition(format!("twist needs U2 U4 = 1, residual {r:e}")));
    }
    Ok(u2)
}

fn diag_from_weights<R: Real>(
    rep1: &dyn Representation<R>,
    rep2: &dyn Representation<R>,
    w: impl Fn(i32, i32) -> Scalar<R>,
) -> Result<SuperMatrix<R>> {
    let (b1, b2) = (fermion_number(rep1), fermion_number(rep2));
    let entries: Vec<Scalar<R>> = b1.iter().flat_map(|&x| b2.iter().map(move |&y| (x, y))).map(|(x, y)| w(x, y)).collect();
    SuperMatrix::endo(&rep1.space().tensor(rep2.space()), Mat::diag(&entries))
}

/// `F = U₂(2)^{−B/2} ⊗ U₁(1)^{+B/2}`: the first tensor slot carries the
/// second site's U and vice versa.
pub fn reshetikhin_f<R: Real>(rep1: &dyn Representation<R>, rep2: &dyn Representation<R>, tol: Tolerance) -> Result<TwistOp<R>> {
    let s1 = sqrt_principal(twist_u(rep1, tol)?);
    let s2 = sqrt_principal(twist_u(rep2, tol)?);
    let f = diag_from_weights(rep1, rep2, |b1, b2| powi(s2, -b1) * powi(s1, b2))?;
    Ok(TwistOp { f, description: "U(site2)^(-B/2) (x) U(site1)^(+B/2)".into() })
}

/// `F₂₁ = P·F(rep2, rep1)·P`.
pub fn reshetikhin_f21<R: Real>(rep1: &dyn Representation<R>, rep2: &dyn Representation<R>, tol: Tolerance) -> Result<SuperMatrix<R>> {
    let f = reshetikhin_f(rep2, rep1, tol)?.f;
    let p_in = graded_permutation::<R>(rep1.space(), rep2.space());
    let p_out = graded_permutation::<R>(rep2.space(), rep1.space());
    p_out.mul(&f)?.mul(&p_in)
}

/// `Δ^{(F)}(X) = F⁻¹Δ(X)F`.
pub fn twisted_coproduct<R: Real>(x: Generator, rep1: &dyn Representation<R>, rep2: &dyn Representation<R>, tol: Tolerance) -> Result<SuperMatrix<R>> {
    let f = reshetikhin_f(rep1, rep2, tol)?.f;
    f.inverse()?.mul(&coproduct(x, rep1, rep2)?)?.mul(&f)
}

/// `R^{(F)} = F·R·F`.
pub fn twisted_r<R: Real>(r: &Mat<R>, rep1: &dyn Representation<R>, rep2: &dyn Representation<R>, tol: Tolerance) -> Result<Mat<R>> {
    let f = reshetikhin_f(rep1, rep2, tol)?.f;
    Ok(f.mat.matmul(r).matmul(&f.mat))
}

/// `R̄ = (G₁⊗G₂)R^{(F)}(G₁⊗G₂)⁻¹` with `G_i = U_i^{B/2}γ̄_i^{−B}`.
pub fn gauge_transform<R: Real>(
    r: &Mat<R>,
    rep1: &dyn Representation<R>,
    rep2: &dyn Representation<R>,
    gammabar: (Scalar<R>, Scalar<R>),
    tol: Tolerance,
) -> Result<Mat<R>> {
    let rf = twisted_r(r, rep1, rep2, tol)?;
    let s1 = sqrt_principal(twist_u(rep1, tol)?);
    let s2 = sqrt_principal(twist_u(rep2, tol)?);
    let g = diag_from_weights(rep1, rep2, |b1, b2| powi(s1 * inv(gammabar.0), b1) * powi(s2 * inv(gammabar.1), b2))?;
    Ok(g.mat.matmul(&rf).matmul(&g.mat.inverse()?))
}

/// The same transformation in its combined closed form
/// `[(√(U₁/U₂)/γ̄₁)^B ⊗ (√(U₁U₂)/γ̄₂)^B] R [(γ̄₁/√(U₁U₂))^B ⊗ (γ̄₂√(U₁/U₂))^B]`.
pub fn gauge_transform_closed<R: Real>(
    r: &Mat<R>,
    rep1: &dyn Representation<R>,
    rep2: &dyn Representation<R>,
    gammabar: (Scalar<R>, Scalar<R>),
    tol: Tolerance,
) -> Result<Mat<R>> {
    let s1 = sqrt_principal(twist_u(rep1, tol)?);
    let s2 = sqrt_principal(twist_u(rep2, tol)?);
    let (g1, g2) = gammabar;
    let (l1, l2) = (s1 / s2 / g1, s1 * s2 / g2);
    let (r1, r2) = (g1 / (s1 * s2), g2 * s1 / s2);
    let left = diag_from_weights(rep1, rep2, |b1, b2| powi(l1, b1) * powi(l2, b2))?;
    let right = diag_from_weights(rep1, rep2, |b1, b2| powi(r1, b1) * powi(r2, b2))?;
    Ok(left.mat.matmul(r).matmul(&right.mat))
}

/// Coproduct matrices of the twelve Chevalley generators.
pub fn coproduct_table<R: Real>(rep1: &dyn Representation<R>, rep2: &dyn Representation<R>) -> Result<BTreeMap<Generator, SuperMatrix<R>>> {
    Generator::chevalley().into_iter().map(|g| Ok((g, coproduct(g, rep1, rep2)?))).collect()
}
