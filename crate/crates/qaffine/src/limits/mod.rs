//! Degeneration limits: the conventional quantum affine limit g → 0 and the
//! Yangian limit q → 1, each reported as convergence evidence.

pub mod appendix;
pub mod conv;
pub mod series;
pub mod yangian;

use crate::error::Result;
use crate::generators::{Generator, Representation};
use crate::numerics::{Real, Scalar};
use crate::superlinalg::{supercommutator, SuperMatrix};

pub use appendix::{all_generator_limits, AllGeneratorLimits};
pub use conv::{conv_convergence_check, conv_limit_rep, perk_schultz_ratio_check, ConvLimitRep};
pub use series::{fit_order, limit_report, richardson, Acceptance, QuotientSeries};
pub use yangian::{yangian_coproduct_check, yangian_quotient, QuotientKind, YangianFrame};

/// Raising and lowering generators of one representation with the nested
/// brackets built from them.
#[derive(Clone, Debug)]
pub struct Brackets<R: Real> {
    e: Vec<SuperMatrix<R>>,
    f: Vec<SuperMatrix<R>>,
}

impl<R: Real> Brackets<R> {
    pub fn from_rep(rep: &dyn Representation<R>) -> Result<Self> {
        let e = (1..=4u8).map(|j| rep.gen(Generator::E(j)).cloned()).collect::<Result<_>>()?;
        let f = (1..=4u8).map(|j| rep.gen(Generator::F(j)).cloned()).collect::<Result<_>>()?;
        Ok(Self { e, f })
    }

    pub fn e(&self, j: u8) -> &SuperMatrix<R> {
        &self.e[j as usize - 1]
    }

    pub fn f(&self, j: u8) -> &SuperMatrix<R> {
        &self.f[j as usize - 1]
    }

    /// `[E₃, E_k]`.
    pub fn e3k(&self, k: u8) -> Result<SuperMatrix<R>> {
        supercommutator(self.e(3), self.e(k))
    }

    /// `[E_k, E₁]`.
    pub fn ek1(&self, k: u8) -> Result<SuperMatrix<R>> {
        supercommutator(self.e(k), self.e(1))
    }

    /// `[[E₃, E_k], E₁]`.
    pub fn e3k1(&self, k: u8) -> Result<SuperMatrix<R>> {
        supercommutator(&self.e3k(k)?, self.e(1))
    }

    pub fn f3k(&self, k: u8) -> Result<SuperMatrix<R>> {
        supercommutator(self.f(3), self.f(k))
    }

    pub fn fk1(&self, k: u8) -> Result<SuperMatrix<R>> {
        supercommutator(self.f(k), self.f(1))
    }

    pub fn f3k1(&self, k: u8) -> Result<SuperMatrix<R>> {
        supercommutator(&self.f3k(k)?, self.f(1))
    }
}

/// `Σ cᵢ·Mᵢ` over same-space terms.
pub(crate) fn lin<R: Real>(terms: &[(Scalar<R>, &SuperMatrix<R>)]) -> Result<SuperMatrix<R>> {
    let (c0, m0) = terms[0];
    let mut acc = m0.scale(c0);
    for &(c, m) in &terms[1..] {
        acc = acc.add(&m.scale(c))?;
    }
    Ok(acc)
}
