//! One-sided (Hestenes) Jacobi SVD and the spectral null-space solver.
//!
//! The solver first splits the matrix into independent blocks: columns that
//! share a nonzero row are joined, and every row then lies in exactly one
//! block. The singular values of the whole matrix are the union of the
//! block singular values, so each block is decomposed separately.

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::Serialize;

use super::matrix::Mat;
use crate::error::{Error, Result};
use crate::numerics::{Real, Scalar, Tolerance};

const MAX_SWEEPS: usize = 80;

/// Right singular data of a (tall or wide) block.
pub struct Svd<R: Real> {
    /// Singular value per column of `v`, unsorted.
    pub sigma: Vec<R>,
    /// Columns are right singular vectors.
    pub v: Mat<R>,
}

fn norm_sq<R: Real>(col: &[Scalar<R>]) -> R {
    col.iter().fold(R::zero(), |acc, z| acc + z.re * z.re + z.im * z.im)
}

/// Hestenes one-sided Jacobi on the columns of `a`.
pub fn jacobi_svd<R: Real>(a: &Mat<R>) -> Result<Svd<R>> {
    let (m, n) = (a.rows(), a.cols());
    // Column-major working copies.
    let mut w: Vec<Vec<Scalar<R>>> = (0..n).map(|j| (0..m).map(|i| a[(i, j)]).collect()).collect();
    let mut v: Vec<Vec<Scalar<R>>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { Complex::one() } else { Complex::zero() }).collect())
        .collect();
    let eps = R::epsilon() * R::from_f64(m.max(1) as f64);
    let two = R::one() + R::one();
    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = norm_sq(&w[p]);
                let beta = norm_sq(&w[q]);
                if alpha == R::zero() || beta == R::zero() {
                    continue;
                }
                let gamma = w[p].iter().zip(&w[q]).fold(Complex::<R>::zero(), |acc, (x, y)| acc + x.conj() * y);
                let g = gamma.re.hypot(gamma.im);
                if g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma.unscale(g).conj();
                let zeta = (beta - alpha) / (two * g);
                let t = {
                    let s = if zeta < R::zero() { -R::one() } else { R::one() };
                    s / (zeta.abs() + (R::one() + zeta * zeta).sqrt())
                };
                let c = R::one() / (R::one() + t * t).sqrt();
                let s = c * t;
                for col in [&mut w, &mut v] {
                    let (lo, hi) = col.split_at_mut(q);
                    let (cp, cq) = (&mut lo[p], &mut hi[0]);
                    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
                        let yb = *y * phase;
                        let nx = x.scale(c) - yb.scale(s);
                        let ny = x.scale(s) + yb.scale(c);
                        *x = nx;
                        *y = ny;
                    }
                }
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }
    let sigma = w.iter().map(|c| norm_sq(c).sqrt()).collect();
    let vm = Mat::from_fn(n, n, |i, j| v[j][i]);
    Ok(Svd { sigma, v: vm })
}

#[derive(Clone, Debug, Serialize)]
pub struct NullSpaceResult<R: Real> {
    pub dimension: usize,
    #[serde(skip)]
    pub basis: Vec<Vec<Scalar<R>>>,
    /// All singular values, descending.
    pub singular_values: Vec<f64>,
    pub threshold: f64,
}

impl<R: Real> NullSpaceResult<R> {
    /// Ratio of the smallest singular value above the null space to the
    /// largest one inside it (second-smallest over smallest when the null
    /// space is one-dimensional).
    pub fn gap_ratio(&self) -> f64 {
        let n = self.singular_values.len();
        if self.dimension == 0 || self.dimension >= n {
            return 0.0;
        }
        let inside = self.singular_values[n - self.dimension];
        let outside = self.singular_values[n - self.dimension - 1];
        if inside == 0.0 {
            f64::MAX
        } else {
            outside / inside
        }
    }
}

/// Union–find over column indices.
struct Components {
    parent: Vec<usize>,
}

impl Components {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn join(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Null space by singular value decomposition: dimension is the count of
/// singular values `≤ tol.abs_eps · σ_max`.
pub fn null_space<R: Real>(m: &Mat<R>, tol: Tolerance) -> Result<NullSpaceResult<R>> {
    let (rows, cols) = (m.rows(), m.cols());
    if m.data().iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::Precondition("null_space input has non-finite entries".into()));
    }
    let mut comp = Components::new(cols);
    let mut row_support: Vec<Vec<usize>> = Vec::with_capacity(rows);
    for i in 0..rows {
        let nz: Vec<usize> = (0..cols).filter(|&j| !m[(i, j)].is_zero()).collect();
        for w in nz.windows(2) {
            comp.join(w[0], w[1]);
        }
        row_support.push(nz);
    }
    let mut blocks: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut block_of = vec![usize::MAX; cols];
    for j in 0..cols {
        let r = comp.find(j);
        if block_of[r] == usize::MAX {
            block_of[r] = blocks.len();
            blocks.push((Vec::new(), Vec::new()));
        }
        let b = block_of[r];
        blocks[b].0.push(j);
        block_of[j] = b;
    }
    for (i, nz) in row_support.iter().enumerate() {
        if let Some(&j) = nz.first() {
            blocks[block_of[j]].1.push(i);
        }
    }

    let mut spectrum: Vec<(R, Vec<Scalar<R>>)> = Vec::with_capacity(cols);
    for (bcols, brows) in &blocks {
        let sub = Mat::from_fn(brows.len(), bcols.len(), |i, j| m[(brows[i], bcols[j])]);
        let svd = jacobi_svd(&sub)?;
        for (k, &s) in svd.sigma.iter().enumerate() {
            let mut full = vec![Complex::zero(); cols];
            for (local, &global) in bcols.iter().enumerate() {
                full[global] = svd.v[(local, k)];
            }
            spectrum.push((s, full));
        }
    }
    spectrum.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));
    let smax = spectrum.first().map_or(R::zero(), |s| s.0);
    let threshold = R::from_f64(tol.abs_eps) * smax;
    let singular_values: Vec<f64> = spectrum.iter().map(|s| s.0.to_f64()).collect();
    let basis: Vec<Vec<Scalar<R>>> = spectrum.into_iter().filter(|s| s.0 <= threshold).map(|s| s.1).collect();
    Ok(NullSpaceResult { dimension: basis.len(), basis, singular_values, threshold: threshold.to_f64() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::cx;

    #[test]
    fn identity_has_trivial_null_space() {
        let r = null_space(&Mat::<f64>::identity(16), Tolerance::default()).unwrap();
        assert_eq!(r.dimension, 0);
    }

    #[test]
    fn zero_matrix_null_space_is_everything() {
        let r = null_space(&Mat::<f64>::zeros(4, 4), Tolerance::default()).unwrap();
        assert_eq!(r.dimension, 4);
    }

    #[test]
    fn rank_one_outer_product() {
        let u = [cx::<f64>(1.0, 0.5), cx(-2.0, 0.0), cx(0.3, 1.0)];
        let w = [cx::<f64>(0.7, 0.0), cx(1.0, -1.0), cx(2.0, 0.25)];
        let m = Mat::from_fn(3, 3, |i, j| u[i] * w[j]);
        let r = null_space(&m, Tolerance::default()).unwrap();
        assert_eq!(r.dimension, 2);
        for b in &r.basis {
            let mb = m.apply(b);
            assert!(mb.iter().all(|z| z.norm() < 1e-13));
        }
    }
}
