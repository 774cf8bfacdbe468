//! Complex scalars at two working precisions, tolerance policy and seeded
//! sampling of generic parameter points.

use std::fmt::{Debug, Display, LowerExp};
use std::ops::Neg;

use f256::f256;
use num_complex::Complex;
use num_traits::Num;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Real field underlying [`Scalar`]. Implemented for `f64` and the 256-bit
/// `f256` (237-bit significand).
pub trait Real:
    Copy + Debug + Display + LowerExp + PartialOrd + Num + Neg<Output = Self> + Send + Sync + 'static
{
    const LABEL: &'static str;
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn sqrt(self) -> Self;
    fn abs(self) -> Self;
    fn hypot(self, other: Self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn atan2(self, x: Self) -> Self;
    fn epsilon() -> Self;
    fn is_finite(self) -> bool;
}

impl Real for f64 {
    const LABEL: &'static str = "standard";
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn hypot(self, other: Self) -> Self {
        f64::hypot(self, other)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn atan2(self, x: Self) -> Self {
        f64::atan2(self, x)
    }
    fn epsilon() -> Self {
        f64::EPSILON
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

impl Real for f256 {
    const LABEL: &'static str = "extended";
    fn from_f64(x: f64) -> Self {
        f256::from(x)
    }
    fn to_f64(self) -> f64 {
        // f256 offers no narrowing conversion; its shortest round-trip
        // decimal form parses back exactly enough for reporting.
        format!("{:e}", self).parse().unwrap_or(f64::NAN)
    }
    fn sqrt(self) -> Self {
        f256::sqrt(self)
    }
    fn abs(self) -> Self {
        f256::abs(&self)
    }
    fn hypot(self, other: Self) -> Self {
        f256::hypot(self, other)
    }
    fn exp(self) -> Self {
        f256::exp(&self)
    }
    fn ln(self) -> Self {
        f256::ln(&self)
    }
    fn sin(self) -> Self {
        f256::sin(&self)
    }
    fn cos(self) -> Self {
        f256::cos(&self)
    }
    fn atan2(self, x: Self) -> Self {
        f256::atan2(&self, &x)
    }
    fn epsilon() -> Self {
        f256::EPSILON
    }
    fn is_finite(self) -> bool {
        f256::is_finite(self)
    }
}

/// Complex number at working precision `R`.
pub type Scalar<R> = Complex<R>;

/// Selects the working precision of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    Standard,
    Extended,
}

impl Precision {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "standard" => Some(Self::Standard),
            "extended" => Some(Self::Extended),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Standard => "standard",
            Self::Extended => "extended",
        }
    }
}

pub fn cx<R: Real>(re: f64, im: f64) -> Scalar<R> {
    Complex::new(R::from_f64(re), R::from_f64(im))
}

pub fn real<R: Real>(re: f64) -> Scalar<R> {
    Complex::new(R::from_f64(re), R::zero())
}

pub fn imag_unit<R: Real>() -> Scalar<R> {
    Complex::new(R::zero(), R::one())
}

/// Lifts an `f64` complex value exactly to precision `R`.
pub fn lift<R: Real>(z: Scalar<f64>) -> Scalar<R> {
    cx(z.re, z.im)
}

/// Rounds a value at precision `R` to `f64`.
pub fn lower<R: Real>(z: Scalar<R>) -> Scalar<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

pub fn modulus<R: Real>(z: Scalar<R>) -> R {
    z.re.hypot(z.im)
}

pub fn is_finite<R: Real>(z: Scalar<R>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Square root with `Re(w) ≥ 0`, and `Im(w) ≥ 0` when `Re(w) = 0`.
pub fn sqrt_principal<R: Real>(z: Scalar<R>) -> Scalar<R> {
    let zero = R::zero();
    if z.re == zero && z.im == zero {
        return Complex::new(zero, zero);
    }
    let two = R::one() + R::one();
    let t = ((modulus(z) + z.re.abs()) / two).sqrt();
    if z.re >= zero {
        Complex::new(t, z.im / (two * t))
    } else {
        let im = if z.im < zero { -t } else { t };
        Complex::new(z.im.abs() / (two * t), im)
    }
}

pub fn exp<R: Real>(z: Scalar<R>) -> Scalar<R> {
    let m = z.re.exp();
    Complex::new(m * z.im.cos(), m * z.im.sin())
}

/// Principal logarithm.
pub fn ln<R: Real>(z: Scalar<R>) -> Scalar<R> {
    Complex::new(modulus(z).ln(), z.im.atan2(z.re))
}

/// `base^exponent` on the principal branch of the logarithm.
pub fn powc<R: Real>(base: Scalar<R>, exponent: Scalar<R>) -> Scalar<R> {
    exp(ln(base) * exponent)
}

pub fn powi<R: Real>(z: Scalar<R>, n: i32) -> Scalar<R> {
    let mut acc = Complex::new(R::one(), R::zero());
    let step = if n < 0 { inv(z) } else { z };
    for _ in 0..n.unsigned_abs() {
        acc = acc * step;
    }
    acc
}

pub fn inv<R: Real>(z: Scalar<R>) -> Scalar<R> {
    Complex::new(R::one(), R::zero()) / z
}

/// Absolute/relative tolerance pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs_eps: f64,
    pub rel_eps: f64,
}

impl Tolerance {
    pub fn new(abs_eps: f64, rel_eps: f64) -> Result<Self> {
        if !(abs_eps > 0.0 && rel_eps > 0.0) {
            return Err(Error::Usage(format!(
                "tolerances must be positive (abs_eps={abs_eps}, rel_eps={rel_eps})"
            )));
        }
        Ok(Self { abs_eps, rel_eps })
    }

    pub const fn standard() -> Self {
        Self { abs_eps: 1e-10, rel_eps: 1e-10 }
    }

    pub const fn extended() -> Self {
        Self { abs_eps: 1e-24, rel_eps: 1e-24 }
    }

    pub fn for_precision(p: Precision) -> Self {
        match p {
            Precision::Standard => Self::standard(),
            Precision::Extended => Self::extended(),
        }
    }

    pub const fn uniform(eps: f64) -> Self {
        Self { abs_eps: eps, rel_eps: eps }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::standard()
    }
}

/// `|a−b| ≤ abs_eps + rel_eps·max(|a|,|b|)`.
pub fn approx_eq<R: Real>(a: Scalar<R>, b: Scalar<R>, tol: Tolerance) -> bool {
    let d = modulus(a - b).to_f64();
    let m = modulus(a).to_f64().max(modulus(b).to_f64());
    d <= tol.abs_eps + tol.rel_eps * m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSeed(pub u64);

/// Minimum modulus distance kept from every degenerate locus.
pub const EXCLUSION: f64 = 0.05;

/// A sampled generic point: couplings and one slot's (x⁺, γ).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenericPoint {
    pub q: Scalar<f64>,
    pub g: Scalar<f64>,
    pub xplus: Scalar<f64>,
    pub gamma: Scalar<f64>,
}

/// Deterministic stream of generic values; one ChaCha stream per
/// `(seed, index)`.
pub struct PointSampler {
    rng: ChaCha8Rng,
}

impl PointSampler {
    pub fn new(seed: SampleSeed, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
        rng.set_stream(index);
        Self { rng }
    }

    /// Complex value with modulus in `[0.5, 2]` and uniform phase.
    pub fn draw(&mut self) -> Scalar<f64> {
        let r: f64 = self.rng.gen_range(0.5..=2.0);
        let t: f64 = self.rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        Complex::from_polar(r, t)
    }

    /// Couplings `(q, g)` away from `q = ±1`, `g = 0`, the pole of g̃ and
    /// `ξ ∈ {0, ±1}`.
    pub fn couplings(&mut self) -> (Scalar<f64>, Scalar<f64>) {
        loop {
            let q = self.draw();
            let g = self.draw();
            let qq = q - 1.0 / q;
            let pole = Complex::new(1.0, 0.0) - g * g * qq * qq;
            if (q - 1.0).norm() < EXCLUSION || (q + 1.0).norm() < EXCLUSION || pole.norm() < EXCLUSION {
                continue;
            }
            let xi = xi_of(q, g);
            if xi.norm() < EXCLUSION || (xi - 1.0).norm() < EXCLUSION || (xi + 1.0).norm() < EXCLUSION {
                continue;
            }
            return (q, g);
        }
    }

    /// Slot values `(x⁺, γ)` away from `x⁺ ∈ {0, ±ξ, ±1/ξ}` and passing
    /// the extra predicate.
    pub fn slot_where(
        &mut self,
        xi: Scalar<f64>,
        mut accept: impl FnMut(Scalar<f64>, Scalar<f64>) -> bool,
    ) -> (Scalar<f64>, Scalar<f64>) {
        loop {
            let x = self.draw();
            let gamma = self.draw();
            let bad = [Complex::new(0.0, 0.0), xi, -xi, 1.0 / xi, -1.0 / xi]
                .iter()
                .any(|&p| (x - p).norm() < EXCLUSION);
            if !bad && accept(x, gamma) {
                return (x, gamma);
            }
        }
    }
}

/// ξ from the couplings, computed in `f64` for the sampler's exclusion test.
pub fn xi_of(q: Scalar<f64>, g: Scalar<f64>) -> Scalar<f64> {
    let qq = q - 1.0 / q;
    let gt = sqrt_principal(g * g / (Complex::new(1.0, 0.0) - g * g * qq * qq));
    -Complex::<f64>::i() * gt * qq
}

pub fn sample_generic_point(seed: SampleSeed, index: u64) -> GenericPoint {
    let mut s = PointSampler::new(seed, index);
    let (q, g) = s.couplings();
    let (xplus, gamma) = s.slot_where(xi_of(q, g), |_, _| true);
    GenericPoint { q, g, xplus, gamma }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_branch_examples() {
        let w = sqrt_principal::<f64>(cx(4.0, 0.0));
        assert_eq!(w, cx(2.0, 0.0));
        let w = sqrt_principal::<f64>(cx(-1.0, 0.0));
        assert_eq!(w, cx(0.0, 1.0));
        let w = sqrt_principal::<f64>(cx(3.0, 4.0));
        assert!((w - cx(2.0, 1.0)).norm() < 1e-15);
        assert_eq!(sqrt_principal::<f64>(cx(0.0, 0.0)), cx(0.0, 0.0));
    }

    #[test]
    fn approx_eq_examples() {
        assert!(approx_eq::<f64>(real(1.0), real(1.0), Tolerance::default()));
        assert!(approx_eq::<f64>(real(1.0), real(1.0 + 1e-20), Tolerance::new(1e-12, 1e-10).unwrap()));
        assert!(!approx_eq::<f64>(real(0.0), real(1e-3), Tolerance::uniform(1e-12)));
    }

    #[test]
    fn extended_roundtrip_to_f64() {
        let x = <f256 as Real>::from_f64(0.1);
        assert_eq!(x.to_f64(), 0.1);
        let y = <f256 as Real>::from_f64(-3.25e-7);
        assert_eq!(y.to_f64(), -3.25e-7);
    }

    #[test]
    fn tolerance_rejects_nonpositive() {
        assert!(Tolerance::new(0.0, 1.0).is_err());
        assert!(Tolerance::new(1.0, -1.0).is_err());
    }
}
