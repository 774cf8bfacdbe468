//! The fundamental R-matrix as the one-dimensional null space of the stacked
//! intertwining system `R·Δ(X) = Δ̃(X)·R`, with Yang–Baxter, regularity and
//! affine-map checks.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fundrep::{build_rep, FundRep};
use crate::generators::{Generator, Representation};
use crate::hopf::{coproduct, opposite_coproduct};
use crate::numerics::{lower, modulus, Real, Scalar, Tolerance};
use crate::superlinalg::{embed_three_site, graded_permutation, null_space, Mat, NullSpaceResult, SlotPair, SuperMatrix};

/// Which entry was scaled to 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Normalization {
    pub row: usize,
    pub col: usize,
    /// Entry value before scaling.
    pub value: [f64; 2],
    /// True when the (0,0) entry vanished and the first nonzero diagonal
    /// entry was used instead.
    pub fallback: bool,
}

#[derive(Clone, Debug)]
pub struct RMatrix<R: Real> {
    pub entries: Mat<R>,
    pub normalization: Normalization,
    pub nullspace: NullSpaceResult<R>,
    /// Max-abs of `RΔ(X) − Δ̃(X)R` per generator after normalization.
    pub residuals: BTreeMap<Generator, f64>,
}

impl<R: Real> RMatrix<R> {
    pub fn as_super(&self, rep1: &dyn Representation<R>, rep2: &dyn Representation<R>) -> Result<SuperMatrix<R>> {
        SuperMatrix::endo(&rep1.space().tensor(rep2.space()), self.entries.clone())
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.values().copied().fold(0.0, f64::max)
    }

    /// `{point1, point2, normalization, entries: [[row, col, re, im], ...]}`
    /// listing nonzero entries; index `(a−1)·4 + (b−1)` encodes `e_a⊗e_b`.
    pub fn to_json(&self, point1: Value, point2: Value) -> Value {
        let mut entries = Vec::new();
        for i in 0..self.entries.rows() {
            for j in 0..self.entries.cols() {
                let z = lower(self.entries[(i, j)]);
                if z.re != 0.0 || z.im != 0.0 {
                    entries.push(json!([i, j, z.re, z.im]));
                }
            }
        }
        json!({
            "point1": point1,
            "point2": point2,
            "normalization": self.normalization,
            "nullspace_dim": self.nullspace.dimension,
            "entries": entries,
        })
    }
}

/// Stacked blocks `Δ(X)ᵀ⊗I − I⊗Δ̃(X)` acting on the column-major vectorization
/// of R.
pub fn intertwiner_system<R: Real>(
    rep1: &dyn Representation<R>,
    rep2: &dyn Representation<R>,
    generators: &[Generator],
) -> Result<Mat<R>> {
    let n = rep1.space().dim() * rep2.space().dim();
    let id = Mat::identity(n);
    let mut blocks = Vec::with_capacity(generators.len());
    for &x in generators {
        let d = coproduct(x, rep1, rep2)?;
        let dt = opposite_coproduct(x, rep1, rep2)?;
        blocks.push(&d.mat.transpose().kron(&id) - &id.kron(&dt.mat));
    }
    Mat::vstack(&blocks)
}

/// Max-abs of `RΔ(X) − Δ̃(X)R` per generator.
pub fn cocommutativity_residuals<R: Real>(
    r: &Mat<R>,
    rep1: &dyn Representation<R>,
    rep2: &dyn Representation<R>,
    generators: &[Generator],
) -> Result<BTreeMap<Generator, f64>> {
    let mut out = BTreeMap::new();
    for &x in generators {
        let d = coproduct(x, rep1, rep2)?;
        let dt = opposite_coproduct(x, rep1, rep2)?;
        out.insert(x, r.matmul(&d.mat).max_abs_diff(&dt.mat.matmul(r)));
    }
    Ok(out)
}

fn normalize<R: Real>(r: &Mat<R>) -> Result<(Mat<R>, Normalization)> {
    let floor = r.max_abs() * R::epsilon() * R::from_f64(1e4);
    let mut fallback = false;
    let mut idx = None;
    for i in 0..r.rows() {
        if modulus(r[(i, i)]) > floor {
            idx = Some(i);
            break;
        }
        fallback = true;
    }
    let i = idx.ok_or_else(|| Error::Degenerate("R has a vanishing diagonal".into()))?;
    let v = r[(i, i)];
    let w = lower(v);
    let scaled = r.scale(Scalar::new(R::from_f64(1.0), R::from_f64(0.0)) / v);
    Ok((scaled, Normalization { row: i, col: i, value: [w.re, w.im], fallback }))
}

/// Solves for R from a generator set; the result is normalized so that
/// `⟨e₁⊗e₁|R|e₁⊗e₁⟩ = 1`.
pub fn solve_r_with<R: Real>(
    rep1: &dyn Representation<R>,
    rep2: &dyn Representation<R>,
    generators: &[Generator],
    tol: Tolerance,
) -> Result<RMatrix<R>> {
    let system = intertwiner_system(rep1, rep2, generators)?;
    let ns = null_space(&system, tol)?;
    match ns.dimension {
        0 => {
            let s = &ns.singular_values;
            let ratio = s.last().copied().unwrap_or(0.0) / s.first().copied().unwrap_or(1.0);
            return Err(Error::NoIntertwiner { ratio });
        }
        1 => {}
        d => {
            return Err(Error::DegenerateNullSpace { dimension: d, singular_values: ns.singular_values.clone() });
        }
    }
    let n = rep1.space().dim() * rep2.space().dim();
    let raw = Mat::from_col_major(n, n, &ns.basis[0]);
    let (entries, normalization) = normalize(&raw)?;
    let residuals = cocommutativity_residuals(&entries, rep1, rep2, &Generator::chevalley())?;
    Ok(RMatrix { entries, normalization, nullspace: ns, residuals })
}

/// Solves for R from all twelve Chevalley generators.
pub fn solve_r<R: Real>(rep1: &dyn Representation<R>, rep2: &dyn Representation<R>, tol: Tolerance) -> Result<RMatrix<R>> {
    solve_r_with(rep1, rep2, &Generator::chevalley(), tol)
}

/// Largest R entry connecting basis states whose `Δ(K_j)` eigenvalues differ
/// for some j.
pub fn weight_violation<R: Real>(r: &Mat<R>, rep1: &dyn Representation<R>, rep2: &dyn Representation<R>) -> Result<f64> {
    let ks: Vec<Vec<Scalar<R>>> =
        (1..=4u8).map(|j| coproduct(Generator::K(j), rep1, rep2).map(|k| k.mat.diagonal())).collect::<Result<_>>()?;
    let same = |a: usize, b: usize| {
        ks.iter().all(|d| modulus(d[a] - d[b]).to_f64() <= 1e-8 * (1.0 + modulus(d[a]).to_f64()))
    };
    let mut worst = 0.0f64;
    for i in 0..r.rows() {
        for j in 0..r.cols() {
            if !same(i, j) {
                worst = worst.max(modulus(r[(i, j)]).to_f64());
            }
        }
    }
    Ok(worst)
}

/// Max-abs of `R(p,p) − P`; R normalized at (0,0) where P has entry 1.
pub fn regularity_residual<R: Real>(rep: &dyn Representation<R>, tol: Tolerance) -> Result<f64> {
    let r = solve_r(rep, rep, tol)?;
    let p = graded_permutation::<R>(rep.space(), rep.space());
    Ok(r.entries.max_abs_diff(&p.mat))
}

/// `R₁₂R₁₃R₂₃ − R₂₃R₁₃R₁₂` on `V⊗V⊗V` for three pairwise R-matrices.
pub fn ybe_residual_of<R: Real>(r12: &SuperMatrix<R>, r13: &SuperMatrix<R>, r23: &SuperMatrix<R>) -> Result<f64> {
    let a = embed_three_site(r12, SlotPair::S12)?;
    let b = embed_three_site(r13, SlotPair::S13)?;
    let c = embed_three_site(r23, SlotPair::S23)?;
    let lhs = a.mul(&b)?.mul(&c)?;
    let rhs = c.mul(&b)?.mul(&a)?;
    Ok(lhs.mat.max_abs_diff(&rhs.mat))
}

/// YBE residual with every `R_ij` solved from slots i and j.
pub fn ybe_residual<R: Real>(
    rep1: &dyn Representation<R>,
    rep2: &dyn Representation<R>,
    rep3: &dyn Representation<R>,
    tol: Tolerance,
) -> Result<f64> {
    let r12 = solve_r(rep1, rep2, tol)?.as_super(rep1, rep2)?;
    let r13 = solve_r(rep1, rep3, tol)?.as_super(rep1, rep3)?;
    let r23 = solve_r(rep2, rep3, tol)?.as_super(rep2, rep3)?;
    ybe_residual_of(&r12, &r13, &r23)
}

/// Outcome of the x → 1/x comparison.
#[derive(Clone, Debug, Serialize)]
pub struct AffineInvariance {
    /// Common ratio R′/R over nonzero entries, both normalized at the same
    /// reference entry.
    pub factor: [f64; 2],
    /// Largest deviation of an entrywise ratio from `factor`.
    pub spread: f64,
    /// Largest |R′| entry where R vanishes.
    pub support_leak: f64,
}

/// Representation at the image of `x± → 1/x±, γ → iα̃γ/x⁺, α → αα̃², α̃ → −1/α̃`.
pub fn mapped_rep<R: Real>(rep: &FundRep<R>) -> Result<FundRep<R>> {
    let (point, params) = rep.mapped_point()?;
    build_rep(&point, &params)
}

/// Solves R′ at the mapped points and compares it entrywise with `r`.
pub fn affine_invariance<R: Real>(r: &RMatrix<R>, rep1: &FundRep<R>, rep2: &FundRep<R>, tol: Tolerance) -> Result<AffineInvariance> {
    let m1 = mapped_rep(rep1)?;
    let m2 = mapped_rep(rep2)?;
    let rp = solve_r(&m1, &m2, tol)?;
    compare_entrywise(&r.entries, &rp.entries, tol)
}

/// Entrywise ratio of `b` to `a`; errors if the ratio is not constant.
pub fn compare_entrywise<R: Real>(a: &Mat<R>, b: &Mat<R>, tol: Tolerance) -> Result<AffineInvariance> {
    let floor = a.max_abs().to_f64() * 1e-12;
    let mut ratios = Vec::new();
    let mut leak = 0.0f64;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let (x, y) = (a[(i, j)], b[(i, j)]);
            if modulus(x).to_f64() > floor {
                ratios.push(y / x);
            } else {
                leak = leak.max(modulus(y).to_f64());
            }
        }
    }
    let f = *ratios.first().ok_or_else(|| Error::Degenerate("R has no nonzero entries".into()))?;
    let spread = ratios.iter().map(|&z| modulus(z - f).to_f64()).fold(0.0, f64::max);
    let w = lower(f);
    let out = AffineInvariance { factor: [w.re, w.im], spread, support_leak: leak };
    if spread > tol.abs_eps.max(1e-9) {
        return Err(Error::Invariant(format!("entrywise ratio not constant, spread {spread:e}")));
    }
    Ok(out)
}
