//! Graded spaces, supermatrices, Koszul-signed tensor products, the graded
//! permutation and a spectral null-space solver.

mod matrix;
mod svd;

pub use matrix::Mat;
pub use svd::{jacobi_svd, null_space, NullSpaceResult, Svd};

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{Real, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedSpace {
    parity: Vec<u8>,
}

impl GradedSpace {
    pub fn new(parity: Vec<u8>) -> Result<Self> {
        if parity.iter().any(|&p| p > 1) {
            return Err(Error::Precondition("parity entries must be 0 or 1".into()));
        }
        Ok(Self { parity })
    }

    /// The (2|2)-dimensional space: two bosons, then two fermions.
    pub fn fundamental() -> Self {
        Self { parity: vec![0, 0, 1, 1] }
    }

    pub fn even(dim: usize) -> Self {
        Self { parity: vec![0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self) -> &[u8] {
        &self.parity
    }

    pub fn is_purely_even(&self) -> bool {
        self.parity.iter().all(|&p| p == 0)
    }

    /// Parity of `V⊗W` in row-major basis order `(a, b) ↦ a·dim W + b`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut parity = Vec::with_capacity(self.dim() * other.dim());
        for &a in &self.parity {
            for &b in &other.parity {
                parity.push((a + b) % 2);
            }
        }
        Self { parity }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Degree {
    Even,
    Odd,
    Mixed,
}

impl Degree {
    pub fn from_bit(b: u8) -> Self {
        if b % 2 == 0 {
            Self::Even
        } else {
            Self::Odd
        }
    }

    pub fn bit(self) -> Option<u8> {
        match self {
            Self::Even => Some(0),
            Self::Odd => Some(1),
            Self::Mixed => None,
        }
    }

    pub fn add(self, other: Self) -> Self {
        match (self.bit(), other.bit()) {
            (Some(a), Some(b)) => Self::from_bit(a + b),
            _ => Self::Mixed,
        }
    }
}

/// Dense complex matrix between graded spaces with its parity degree.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperMatrix<R: Real> {
    pub space_out: GradedSpace,
    pub space_in: GradedSpace,
    pub mat: Mat<R>,
    pub degree: Degree,
}

fn detect_degree<R: Real>(out: &GradedSpace, inp: &GradedSpace, m: &Mat<R>) -> Degree {
    let (mut even, mut odd) = (false, false);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m[(i, j)].is_zero() {
                if out.parity[i] == inp.parity[j] {
                    even = true;
                } else {
                    odd = true;
                }
            }
        }
    }
    match (even, odd) {
        (_, false) => Degree::Even,
        (false, true) => Degree::Odd,
        (true, true) => Degree::Mixed,
    }
}

impl<R: Real> SuperMatrix<R> {
    /// Wraps a matrix, reading the degree off its nonzero pattern. The zero
    /// matrix is classified even.
    pub fn new(space_out: GradedSpace, space_in: GradedSpace, mat: Mat<R>) -> Result<Self> {
        if mat.rows() != space_out.dim() || mat.cols() != space_in.dim() {
            return Err(Error::Shape {
                op: "SuperMatrix::new",
                detail: format!("{}x{} on spaces {}x{}", mat.rows(), mat.cols(), space_out.dim(), space_in.dim()),
            });
        }
        let degree = detect_degree(&space_out, &space_in, &mat);
        Ok(Self { space_out, space_in, mat, degree })
    }

    /// Wraps a matrix whose degree is known; the pattern is validated.
    pub fn with_degree(space_out: GradedSpace, space_in: GradedSpace, mat: Mat<R>, degree: Degree) -> Result<Self> {
        let mut s = Self::new(space_out, space_in, mat)?;
        let seen = s.degree;
        let zero = s.mat.data().iter().all(|z| z.is_zero());
        if seen != degree && !zero {
            return Err(Error::Invariant(format!("declared degree {degree:?} but entry pattern is {seen:?}")));
        }
        s.degree = degree;
        Ok(s)
    }

    /// Endomorphism of `space` with detected degree.
    pub fn endo(space: &GradedSpace, mat: Mat<R>) -> Result<Self> {
        Self::new(space.clone(), space.clone(), mat)
    }

    pub fn identity(space: &GradedSpace) -> Self {
        Self {
            space_out: space.clone(),
            space_in: space.clone(),
            mat: Mat::identity(space.dim()),
            degree: Degree::Even,
        }
    }

    pub fn zero(space: &GradedSpace, degree: Degree) -> Self {
        Self { space_out: space.clone(), space_in: space.clone(), mat: Mat::zeros(space.dim(), space.dim()), degree }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree != Degree::Mixed
    }

    /// Splits into (even part, odd part) by entry parity pattern.
    pub fn split_homogeneous(&self) -> (Self, Self) {
        let pick = |want: u8| {
            let m = Mat::from_fn(self.mat.rows(), self.mat.cols(), |i, j| {
                if (self.space_out.parity[i] + self.space_in.parity[j]) % 2 == want {
                    self.mat[(i, j)]
                } else {
                    Complex::zero()
                }
            });
            Self { space_out: self.space_out.clone(), space_in: self.space_in.clone(), mat: m, degree: Degree::from_bit(want) }
        };
        (pick(0), pick(1))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.space_in != other.space_out {
            return Err(Error::Shape { op: "SuperMatrix::mul", detail: "inner spaces differ".into() });
        }
        Ok(Self {
            space_out: self.space_out.clone(),
            space_in: other.space_in.clone(),
            mat: self.mat.matmul(&other.mat),
            degree: self.degree.add(other.degree),
        })
    }

    fn combine(&self, other: &Self, op: impl Fn(&Mat<R>, &Mat<R>) -> Mat<R>) -> Result<Self> {
        if self.space_in != other.space_in || self.space_out != other.space_out {
            return Err(Error::Shape { op: "SuperMatrix::combine", detail: "spaces differ".into() });
        }
        let degree = if self.degree == other.degree {
            self.degree
        } else {
            let mut d = detect_degree(&self.space_out, &self.space_in, &op(&self.mat, &other.mat));
            if d == Degree::Even && self.degree != Degree::Even && other.degree != Degree::Even {
                d = Degree::Mixed;
            }
            d
        };
        Ok(Self { space_out: self.space_out.clone(), space_in: self.space_in.clone(), mat: op(&self.mat, &other.mat), degree })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a - b)
    }

    pub fn scale(&self, s: Scalar<R>) -> Self {
        Self { space_out: self.space_out.clone(), space_in: self.space_in.clone(), mat: self.mat.scale(s), degree: self.degree }
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(Self {
            space_out: self.space_in.clone(),
            space_in: self.space_out.clone(),
            mat: self.mat.inverse()?,
            degree: self.degree,
        })
    }
}

/// Koszul-signed tensor product:
/// `(A⊗B)(v⊗w) = (−1)^{deg B · |v|} (Av)⊗(Bw)`.
pub fn graded_tensor<R: Real>(a: &SuperMatrix<R>, b: &SuperMatrix<R>) -> Result<SuperMatrix<R>> {
    let db = b.degree.bit().ok_or(Error::MixedDegree("graded_tensor"))?;
    let da = a.degree.bit().ok_or(Error::MixedDegree("graded_tensor"))?;
    let (n1o, n1i) = (a.mat.rows(), a.mat.cols());
    let (n2o, n2i) = (b.mat.rows(), b.mat.cols());
    let mut out = Mat::zeros(n1o * n2o, n1i * n2i);
    for i in 0..n1o {
        for j in 0..n1i {
            let mut x = a.mat[(i, j)];
            if x.is_zero() {
                continue;
            }
            if db * a.space_in.parity[j] == 1 {
                x = -x;
            }
            for k in 0..n2o {
                for l in 0..n2i {
                    let y = b.mat[(k, l)];
                    if !y.is_zero() {
                        out[(i * n2o + k, j * n2i + l)] = x * y;
                    }
                }
            }
        }
    }
    Ok(SuperMatrix {
        space_out: a.space_out.tensor(&b.space_out),
        space_in: a.space_in.tensor(&b.space_in),
        mat: out,
        degree: Degree::from_bit(da + db),
    })
}

/// Tensor product accepting mixed-degree factors by splitting each into
/// homogeneous parts first.
pub fn graded_tensor_split<R: Real>(a: &SuperMatrix<R>, b: &SuperMatrix<R>) -> Result<SuperMatrix<R>> {
    let parts = |m: &SuperMatrix<R>| -> Vec<SuperMatrix<R>> {
        if m.is_homogeneous() {
            vec![m.clone()]
        } else {
            let (e, o) = m.split_homogeneous();
            vec![e, o]
        }
    };
    let mut acc: Option<SuperMatrix<R>> = None;
    for pa in parts(a) {
        for pb in parts(b) {
            let t = graded_tensor(&pa, &pb)?;
            acc = Some(match acc {
                None => t,
                Some(s) => s.add(&t)?,
            });
        }
    }
    Ok(acc.expect("at least one part"))
}

/// `P(v⊗w) = (−1)^{|v||w|} w⊗v`, mapping `V⊗W → W⊗V`.
pub fn graded_permutation<R: Real>(v: &GradedSpace, w: &GradedSpace) -> SuperMatrix<R> {
    let (n1, n2) = (v.dim(), w.dim());
    let mut m = Mat::zeros(n1 * n2, n1 * n2);
    for a in 0..n1 {
        for b in 0..n2 {
            let s = if v.parity[a] * w.parity[b] == 1 { -Complex::<R>::one() } else { Complex::one() };
            m[(b * n1 + a, a * n2 + b)] = s;
        }
    }
    SuperMatrix { space_out: w.tensor(v), space_in: v.tensor(w), mat: m, degree: Degree::Even }
}

/// `AB − (−1)^{|A||B|} BA`.
pub fn supercommutator<R: Real>(a: &SuperMatrix<R>, b: &SuperMatrix<R>) -> Result<SuperMatrix<R>> {
    let da = a.degree.bit().ok_or(Error::MixedDegree("supercommutator"))?;
    let db = b.degree.bit().ok_or(Error::MixedDegree("supercommutator"))?;
    let ab = a.mul(b)?;
    let ba = b.mul(a)?;
    let mat = if da * db == 1 { &ab.mat + &ba.mat } else { &ab.mat - &ba.mat };
    Ok(SuperMatrix { space_out: ab.space_out, space_in: ab.space_in, mat, degree: Degree::from_bit(da + db) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SlotPair {
    S12,
    S13,
    S23,
}

/// Embeds an operator on `V⊗V` into `V⊗V⊗V` on the given slot pair. `V` is
/// read off the first row of the tensor basis, so its first basis vector
/// must be even.
pub fn embed_three_site<R: Real>(r: &SuperMatrix<R>, slots: SlotPair) -> Result<SuperMatrix<R>> {
    let n = (r.space_in.dim() as f64).sqrt().round() as usize;
    let v = GradedSpace { parity: r.space_in.parity[..n].to_vec() };
    if v.tensor(&v) != r.space_in || r.space_in != r.space_out {
        return Err(Error::Precondition("embed_three_site needs an endomorphism of V⊗V".into()));
    }
    let id = SuperMatrix::identity(&v);
    match slots {
        SlotPair::S12 => graded_tensor_split(r, &id),
        SlotPair::S23 => graded_tensor_split(&id, r),
        SlotPair::S13 => {
            let p12 = graded_tensor(&graded_permutation(&v, &v), &id)?;
            let r23 = graded_tensor_split(&id, r)?;
            p12.mul(&r23)?.mul(&p12)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::cx;

    fn v() -> GradedSpace {
        GradedSpace::fundamental()
    }

    #[test]
    fn identity_tensor_identity() {
        let i = SuperMatrix::<f64>::identity(&v());
        let t = graded_tensor(&i, &i).unwrap();
        assert_eq!(t.mat, Mat::identity(16));
    }

    #[test]
    fn koszul_sign_on_fermionic_first_slot() {
        let i = SuperMatrix::<f64>::identity(&v());
        let mut e = Mat::zeros(4, 4);
        e[(0, 3)] = cx(1.5, 0.0);
        e[(2, 1)] = cx(0.0, 2.0);
        let e = SuperMatrix::endo(&v(), e).unwrap();
        assert_eq!(e.degree, Degree::Odd);
        let t = graded_tensor(&i, &e).unwrap();
        // First slot e₃ (fermionic): sign −1.
        assert_eq!(t.mat[(2 * 4, 2 * 4 + 3)], cx(-1.5, 0.0));
        assert_eq!(t.mat[(0, 3)], cx(1.5, 0.0));
    }

    #[test]
    fn permutation_examples() {
        let p = graded_permutation::<f64>(&v(), &v());
        // e₁⊗e₃ ↦ e₃⊗e₁
        assert_eq!(p.mat[(2 * 4, 2)], cx(1.0, 0.0));
        // e₃⊗e₄ ↦ −e₄⊗e₃
        assert_eq!(p.mat[(3 * 4 + 2, 2 * 4 + 3)], cx(-1.0, 0.0));
        assert_eq!(p.mat.matmul(&p.mat), Mat::identity(16));
    }

    #[test]
    fn mixed_degree_rejected() {
        let mut m = Mat::<f64>::identity(4);
        m[(0, 3)] = cx(1.0, 0.0);
        let s = SuperMatrix::endo(&v(), m).unwrap();
        assert_eq!(s.degree, Degree::Mixed);
        let i = SuperMatrix::identity(&v());
        assert!(graded_tensor(&s, &i).is_err());
        assert!(supercommutator(&s, &i).is_err());
        assert!(graded_tensor_split(&s, &i).is_ok());
    }

    #[test]
    fn braid_relation_for_embedded_permutation() {
        let p = graded_permutation::<f64>(&v(), &v());
        let p12 = embed_three_site(&p, SlotPair::S12).unwrap();
        let p23 = embed_three_site(&p, SlotPair::S23).unwrap();
        let l = p12.mul(&p23).unwrap().mul(&p12).unwrap();
        let r = p23.mul(&p12).unwrap().mul(&p23).unwrap();
        assert_eq!(l.mat.max_abs_diff(&r.mat), 0.0);
    }
}
