//! Quantum affine gl(n) in its fundamental evaluation representation and the
//! q → 1 limit to the gl(n) Yangian, as a control for the superalgebra.
//!
//! The affine pair is normalized as `F_n = z q^{−J₁−J_n} Ẽ_{n−1⋯1}` with
//! `Ẽ_{n−1⋯1} = (−q)^{2−n} E_{n−1⋯1}`, which makes `[E_n, F_n]` hold with the
//! standard right-hand side. At q = 1 every normalized chain `Ẽ_{h⋯l}` is the
//! matrix unit `e_{l,h+1}` and every chain `F_{h⋯l}` is `e_{h+1,l}`.

use serde::Serialize;

use crate::cartan::cartan_affine_gln;
use crate::error::{Error, Result};
use crate::limits::series::{limit_report, Acceptance};
use crate::numerics::{inv, modulus, powc, powi, real, Real, Scalar};
use crate::report::{LimitReport, RelationReport};
use crate::superlinalg::{graded_tensor, Degree, supercommutator, GradedSpace, Mat, SuperMatrix};

/// Largest supported n.
pub const GLN_MAX_N: usize = 6;

/// Chevalley generators `E_i, F_i, H_i` and the diagonal units `J_i`
/// (i = 1..n) acting on one purely even space.
#[derive(Clone, Debug)]
pub struct GlnGenerators<R: Real> {
    pub n: usize,
    pub space: GradedSpace,
    pub e: Vec<SuperMatrix<R>>,
    pub f: Vec<SuperMatrix<R>>,
    pub h: Vec<SuperMatrix<R>>,
    pub j: Vec<SuperMatrix<R>>,
}

impl<R: Real> GlnGenerators<R> {
    pub fn e(&self, i: usize) -> &SuperMatrix<R> {
        &self.e[i - 1]
    }

    pub fn f(&self, i: usize) -> &SuperMatrix<R> {
        &self.f[i - 1]
    }

    pub fn h(&self, i: usize) -> &SuperMatrix<R> {
        &self.h[i - 1]
    }

    pub fn j(&self, i: usize) -> &SuperMatrix<R> {
        &self.j[i - 1]
    }

    /// `J₁ + J_n`.
    pub fn j_ends(&self) -> Result<SuperMatrix<R>> {
        self.j(1).add(self.j(self.n))
    }
}

/// Fundamental evaluation representation with evaluation parameter z.
#[derive(Clone, Debug)]
pub struct GlnRep<R: Real> {
    pub n: usize,
    pub q: Scalar<R>,
    pub z: Scalar<R>,
    pub gens: GlnGenerators<R>,
}

/// `E_{h⋯l} = [[E_h, E_{h−1}]_q, …, E_l]_q` with `[A,B]_q = AB − qBA`.
pub fn chain_e<R: Real>(g: &GlnGenerators<R>, hi: usize, lo: usize, q: Scalar<R>) -> Result<SuperMatrix<R>> {
    chain(&g.e, hi, lo, q)
}

/// `F_{h⋯l} = [[F_h, F_{h−1}]_{q⁻¹}, …, F_l]_{q⁻¹}`.
pub fn chain_f<R: Real>(g: &GlnGenerators<R>, hi: usize, lo: usize, q: Scalar<R>) -> Result<SuperMatrix<R>> {
    chain(&g.f, hi, lo, inv(q))
}

/// `Ẽ_{h⋯l} = (−q)^{l−h} E_{h⋯l}`.
pub fn chain_e_normalized<R: Real>(g: &GlnGenerators<R>, hi: usize, lo: usize, q: Scalar<R>) -> Result<SuperMatrix<R>> {
    Ok(chain_e(g, hi, lo, q)?.scale(powi(-q, lo as i32 - hi as i32)))
}

fn chain<R: Real>(xs: &[SuperMatrix<R>], hi: usize, lo: usize, c: Scalar<R>) -> Result<SuperMatrix<R>> {
    if lo == 0 || lo > hi || hi > xs.len() {
        return Err(Error::Precondition(format!("chain range {hi}..{lo} out of bounds")));
    }
    let mut x = xs[hi - 1].clone();
    for k in (lo..hi).rev() {
        let y = &xs[k - 1];
        x = x.mul(y)?.sub(&y.mul(&x)?.scale(c))?;
    }
    Ok(x)
}

/// `q^D` for a diagonal D with integer entries.
pub fn q_power<R: Real>(q: Scalar<R>, d: &SuperMatrix<R>) -> Result<SuperMatrix<R>> {
    if !d.mat.is_diagonal() {
        return Err(Error::Invariant("q-power of a non-diagonal matrix".into()));
    }
    let mut out = Vec::with_capacity(d.mat.rows());
    for x in d.mat.diagonal() {
        let k = x.re.to_f64().round();
        if modulus(x - real::<R>(k)).to_f64() > 1e-9 {
            return Err(Error::Invariant("q-power exponent is not an integer".into()));
        }
        out.push(powi(q, k as i32));
    }
    SuperMatrix::endo(&d.space_out, Mat::diag(&out))
}

fn check_n(n: usize) -> Result<()> {
    if !(3..=GLN_MAX_N).contains(&n) {
        return Err(Error::Precondition(format!("gl(n) needs 3 <= n <= {GLN_MAX_N}, got {n}")));
    }
    Ok(())
}

fn unit<R: Real>(space: &GradedSpace, n: usize, i: usize, j: usize) -> Result<SuperMatrix<R>> {
    SuperMatrix::endo(space, Mat::unit(n, i - 1, j - 1))
}

/// Builds `E_i = e_{i,i+1}`, `F_i = e_{i+1,i}`, `H_i = e_{ii} − e_{i+1,i+1}`
/// for i < n and the affine triple
/// `E_n = z⁻¹q^{J₁+J_n}F_{n−1⋯1}`, `F_n = zq^{−J₁−J_n}Ẽ_{n−1⋯1}`,
/// `H_n = −H₁ − ⋯ − H_{n−1}`.
pub fn build_gln_rep<R: Real>(n: usize, q: Scalar<R>, z: Scalar<R>) -> Result<GlnRep<R>> {
    check_n(n)?;
    let one = real::<R>(1.0);
    if modulus(q).to_f64() == 0.0 || modulus(q - one).to_f64() == 0.0 || modulus(q + one).to_f64() == 0.0 {
        return Err(Error::Precondition("q must avoid 0 and ±1".into()));
    }
    if modulus(z).to_f64() == 0.0 {
        return Err(Error::Precondition("z must be nonzero".into()));
    }
    let space = GradedSpace::even(n);
    let mut e = Vec::with_capacity(n);
    let mut f = Vec::with_capacity(n);
    let mut h = Vec::with_capacity(n);
    let j = (1..=n).map(|i| unit(&space, n, i, i)).collect::<Result<Vec<_>>>()?;
    for i in 1..n {
        e.push(unit(&space, n, i, i + 1)?);
        f.push(unit(&space, n, i + 1, i)?);
        h.push(j[i - 1].sub(&j[i])?);
    }
    let mut gens = GlnGenerators { n, space, e, f, h, j };
    let je = gens.j_ends()?;
    let en = q_power(q, &je)?.mul(&chain_f(&gens, n - 1, 1, q)?)?.scale(inv(z));
    let fn_ = q_power(q, &je.scale(-one))?.mul(&chain_e_normalized(&gens, n - 1, 1, q)?)?.scale(z);
    let mut hn = gens.h[0].scale(-one);
    for x in &gens.h[1..] {
        hn = hn.sub(x)?;
    }
    gens.e.push(en);
    gens.f.push(fn_);
    gens.h.push(hn);
    Ok(GlnRep { n, q, z, gens })
}

/// Tensor product that refuses any Koszul sign other than +1.
pub fn even_tensor<R: Real>(a: &SuperMatrix<R>, b: &SuperMatrix<R>) -> Result<SuperMatrix<R>> {
    if !(a.space_in.is_purely_even() && b.space_in.is_purely_even()) {
        return Err(Error::Invariant("gl(n) tensor factor on a graded space".into()));
    }
    let t = graded_tensor(a, b)?;
    if t.mat.max_abs_diff(&a.mat.kron(&b.mat)) != 0.0 {
        return Err(Error::Invariant("nontrivial Koszul sign in an ungraded tensor".into()));
    }
    Ok(t)
}

/// Coproduct image of every generator:
/// `Δ(E_i) = E_i⊗1 + q^{−H_i}⊗E_i`, `Δ(F_i) = F_i⊗q^{H_i} + 1⊗F_i`,
/// `Δ(H_i) = H_i⊗1 + 1⊗H_i`, and likewise for `J_i`.
pub fn gln_coproduct<R: Real>(a: &GlnGenerators<R>, b: &GlnGenerators<R>, q: Scalar<R>) -> Result<GlnGenerators<R>> {
    if a.n != b.n {
        return Err(Error::Precondition("coproduct of gl(n) factors with different n".into()));
    }
    let (ia, ib) = (SuperMatrix::identity(&a.space), SuperMatrix::identity(&b.space));
    let prim = |x: &SuperMatrix<R>, y: &SuperMatrix<R>| even_tensor(x, &ib)?.add(&even_tensor(&ia, y)?);
    let mut e = Vec::with_capacity(a.n);
    let mut f = Vec::with_capacity(a.n);
    let mut h = Vec::with_capacity(a.n);
    for i in 1..=a.n {
        let ki = q_power(inv(q), a.h(i))?;
        e.push(even_tensor(a.e(i), &ib)?.add(&even_tensor(&ki, b.e(i))?)?);
        f.push(even_tensor(a.f(i), &q_power(q, b.h(i))?)?.add(&even_tensor(&ia, b.f(i))?)?);
        h.push(prim(a.h(i), b.h(i))?);
    }
    let j = (1..=a.n).map(|i| prim(a.j(i), b.j(i))).collect::<Result<Vec<_>>>()?;
    Ok(GlnGenerators { n: a.n, space: a.space.tensor(&b.space), e, f, h, j })
}

/// Defining relations with adjacency modulo n: Cartan action, `[E_i, F_j]`,
/// both Serre families, commuting Cartan elements and `H₁ + ⋯ + H_n = 0`.
pub fn check_gln_relations<R: Real>(g: &GlnGenerators<R>, q: Scalar<R>, threshold: f64, point: &str) -> Result<Vec<RelationReport>> {
    let n = g.n;
    let cartan = cartan_affine_gln(n)?;
    let space = &g.space;
    let zero = SuperMatrix::zero(space, Degree::Even);
    let mut out = Vec::new();
    let mut push = |id: String, diff: SuperMatrix<R>| out.push(RelationReport::new(id, diff.mat.norm_max(), threshold, point));
    let serre = q - real(2.0) + inv(q);
    for i in 1..=n {
        for jn in 1..=n {
            let a = real::<R>(cartan.a[i - 1][jn - 1] as f64);
            push(format!("gl_hh[{i},{jn}]"), supercommutator(g.h(i), g.h(jn))?);
            push(format!("gl_he[{i},{jn}]"), supercommutator(g.h(i), g.e(jn))?.sub(&g.e(jn).scale(a))?);
            push(format!("gl_hf[{i},{jn}]"), supercommutator(g.h(i), g.f(jn))?.add(&g.f(jn).scale(a))?);
            let rhs = if i == jn {
                q_power(q, g.h(i))?.sub(&q_power(inv(q), g.h(i))?)?.scale(inv(q - inv(q)))
            } else {
                zero.clone()
            };
            push(format!("gl_ef[{i},{jn}]"), supercommutator(g.e(i), g.f(jn))?.sub(&rhs)?);
            if i == jn {
                continue;
            }
            for (tag, xs) in [("e", &g.e), ("f", &g.f)] {
                let (xi, xj) = (&xs[i - 1], &xs[jn - 1]);
                let diff = if cartan.a[i - 1][jn - 1] == -1 {
                    let lhs = supercommutator(xi, &supercommutator(xi, xj)?)?;
                    lhs.sub(&xi.mul(xj)?.mul(xi)?.scale(serre))?
                } else {
                    supercommutator(xi, xj)?
                };
                push(format!("gl_serre_{tag}[{i},{jn}]"), diff);
            }
        }
    }
    let mut hsum = g.h(1).clone();
    for i in 2..=n {
        hsum = hsum.add(g.h(i))?;
    }
    push("gl_h_sum".into(), hsum);
    Ok(out)
}

/// `(F_n − q^{−J₁−J_n}Ẽ_{n−1⋯1})/(q−1)` and `(q^{J₁+J_n}F_{n−1⋯1} − E_n)/(q−1)`.
pub fn gln_quotients<R: Real>(g: &GlnGenerators<R>, q: Scalar<R>) -> Result<(SuperMatrix<R>, SuperMatrix<R>)> {
    let n = g.n;
    let one = real::<R>(1.0);
    let je = g.j_ends()?;
    let d = inv(q - one);
    let qe = g.f(n).sub(&q_power(inv(q), &je)?.mul(&chain_e_normalized(g, n - 1, 1, q)?)?)?.scale(d);
    let qf = q_power(q, &je)?.mul(&chain_f(g, n - 1, 1, q)?)?.sub(g.e(n))?.scale(d);
    Ok((qe, qf))
}

/// q = 1 data of one site: generators with `z = 1` at a dummy q (only the
/// q-independent parts `E_i, F_i, J_i` for i < n are used).
fn undeformed<R: Real>(n: usize) -> Result<GlnGenerators<R>> {
    Ok(build_gln_rep(n, real::<R>(2.0), real::<R>(1.0))?.gens)
}

/// Normalized chains at q = 1: `(−1)^{h−l}E_{h⋯l} = e_{l,h+1}`.
fn e_hat<R: Real>(g: &GlnGenerators<R>, hi: usize, lo: usize) -> Result<SuperMatrix<R>> {
    chain_e_normalized(g, hi, lo, real(1.0))
}

fn f_hat<R: Real>(g: &GlnGenerators<R>, hi: usize, lo: usize) -> Result<SuperMatrix<R>> {
    chain_f(g, hi, lo, real(1.0))
}

/// Yangian coproduct of the affine pair at q = 1 on sites with evaluation
/// parameters `u₁, u₂`:
/// `ΔÊ = u₁Ẽ⊗1 + u₂1⊗Ẽ + 2[Ẽ⊗J_n + J₁⊗Ẽ − Σ_k Ẽ_{n−1⋯k+1}⊗Ẽ_{k⋯1}]`,
/// `ΔF̂ = u₁F⊗1 + u₂1⊗F + 2[F⊗J₁ + J_n⊗F + Σ_k F_{n−1⋯k+1}⊗F_{k⋯1}]`,
/// with k = 1..n−2. Returns the two targets and the number of cross terms.
pub fn gln_coproduct_targets<R: Real>(n: usize, u1: Scalar<R>, u2: Scalar<R>) -> Result<(SuperMatrix<R>, SuperMatrix<R>, usize)> {
    check_n(n)?;
    let g = undeformed::<R>(n)?;
    let id = SuperMatrix::identity(&g.space);
    let two = real::<R>(2.0);
    let (e0, f0) = (e_hat(&g, n - 1, 1)?, f_hat(&g, n - 1, 1)?);
    let (j1, jn) = (g.j(1), g.j(n));
    let mut te = even_tensor(&e0, &id)?.scale(u1).add(&even_tensor(&id, &e0)?.scale(u2))?;
    te = te.add(&even_tensor(&e0, jn)?.add(&even_tensor(j1, &e0)?)?.scale(two))?;
    let mut tf = even_tensor(&f0, &id)?.scale(u1).add(&even_tensor(&id, &f0)?.scale(u2))?;
    tf = tf.add(&even_tensor(&f0, j1)?.add(&even_tensor(jn, &f0)?)?.scale(two))?;
    let mut cross = 0;
    for k in 1..=n - 2 {
        te = te.sub(&even_tensor(&e_hat(&g, n - 1, k + 1)?, &e_hat(&g, k, 1)?)?.scale(two))?;
        tf = tf.add(&even_tensor(&f_hat(&g, n - 1, k + 1)?, &f_hat(&g, k, 1)?)?.scale(two))?;
        cross += 1;
    }
    Ok((te, tf, cross))
}

/// Relation suite and Yangian-limit evidence for one n.
#[derive(Clone, Debug, Serialize)]
pub struct GlnLimitReport {
    pub n: usize,
    /// `gln_e_quotient`, `gln_f_quotient` on one site.
    pub single: [LimitReport; 2],
    /// `gln_coproduct_e`, `gln_coproduct_f` on two sites.
    pub coproduct: [LimitReport; 2],
    pub cross_terms: usize,
}

impl GlnLimitReport {
    pub fn reports(&self) -> impl Iterator<Item = &LimitReport> {
        self.single.iter().chain(&self.coproduct)
    }

    pub fn all_pass(&self) -> bool {
        self.reports().all(|r| r.pass)
    }
}

/// Runs the q = 1 + h limit for each step of `h_seq` with `z = q^u`: the
/// single-site quotients approach `u·Ẽ_{n−1⋯1}` and `u·F_{n−1⋯1}`, and the
/// two-site quotients approach [`gln_coproduct_targets`].
pub fn gln_yangian_limit<R: Real>(n: usize, u: Scalar<R>, u2: Scalar<R>, h_seq: &[f64]) -> Result<GlnLimitReport> {
    check_n(n)?;
    let mut single = (Vec::new(), Vec::new());
    let mut pair = (Vec::new(), Vec::new());
    for &h in h_seq {
        let q = real::<R>(1.0 + h);
        let a = build_gln_rep(n, q, powc(q, u))?;
        let b = build_gln_rep(n, q, powc(q, u2))?;
        let (qe, qf) = gln_quotients(&a.gens, q)?;
        single.0.push(qe.mat);
        single.1.push(qf.mat);
        let d = gln_coproduct(&a.gens, &b.gens, q)?;
        let (pe, pf) = gln_quotients(&d, q)?;
        pair.0.push(pe.mat);
        pair.1.push(pf.mat);
    }
    let g0 = undeformed::<R>(n)?;
    let acc = Acceptance::quotient::<R>(*h_seq.last().unwrap_or(&1.0));
    let se = e_hat(&g0, n - 1, 1)?.scale(u);
    let sf = f_hat(&g0, n - 1, 1)?.scale(u);
    let (te, tf, cross_terms) = gln_coproduct_targets(n, u, u2)?;
    let rep = |id: &str, v: Vec<Mat<R>>, t: &SuperMatrix<R>| Ok::<_, Error>(limit_report(id, h_seq, v, &t.mat, acc)?.0);
    Ok(GlnLimitReport {
        n,
        single: [rep("gln_e_quotient", single.0, &se)?, rep("gln_f_quotient", single.1, &sf)?],
        coproduct: [rep("gln_coproduct_e", pair.0, &te)?, rep("gln_coproduct_f", pair.1, &tf)?],
        cross_terms,
    })
}
