//! Defining relations as data: expression trees over generator symbols, a
//! catalog of all relations, an interpreter producing residual reports, and
//! the node-2↔4 automorphism acting on relations.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cartan::cartan_qhat;
use crate::error::{Error, Result};
use crate::fundrep::AlgebraParams;
use crate::generators::{Central, Generator, Representation};
use crate::numerics::{cx, modulus, powi, Real, Scalar, Tolerance};
use crate::report::RelationReport;
use crate::superlinalg::{supercommutator, Degree, SuperMatrix};

/// Scalar coefficient expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Coef {
    Num(f64, f64),
    Q,
    G,
    GTilde,
    Alpha,
    AlphaTilde,
    AlphaK(u8),
    GK(u8),
    ZetaAuto,
    Central(Central),
    Add(Vec<Coef>),
    Mul(Vec<Coef>),
    Neg(Box<Coef>),
    Pow(Box<Coef>, i32),
}

impl Coef {
    pub fn num(x: f64) -> Self {
        Self::Num(x, 0.0)
    }

    pub fn pow(self, n: i32) -> Self {
        Self::Pow(Box::new(self), n)
    }

    pub fn neg(self) -> Self {
        Self::Neg(Box::new(self))
    }

    pub fn times(self, other: Coef) -> Self {
        Self::Mul(vec![self, other])
    }

    /// `q − 2 + q⁻¹`.
    pub fn serre() -> Self {
        Self::Add(vec![Self::Q, Self::num(-2.0), Self::Q.pow(-1)])
    }

    /// `(q − q⁻¹)⁻¹`.
    pub fn inv_qdiff() -> Self {
        Self::Add(vec![Self::Q, Self::Q.pow(-1).neg()]).pow(-1)
    }

    pub fn eval<R: Real>(&self, params: &AlgebraParams<R>, rep: &dyn Representation<R>) -> Result<Scalar<R>> {
        Ok(match self {
            Self::Num(a, b) => cx(*a, *b),
            Self::Q => params.q,
            Self::G => params.g,
            Self::GTilde => params.gtilde,
            Self::Alpha => params.alpha,
            Self::AlphaTilde => params.alphatilde,
            Self::AlphaK(k) => params.alpha_k(*k),
            Self::GK(k) => params.g_k(*k),
            Self::ZetaAuto => params.zeta_auto,
            Self::Central(c) => rep.central_value(*c)?,
            Self::Add(v) => {
                let mut acc = cx(0.0, 0.0);
                for c in v {
                    acc = acc + c.eval(params, rep)?;
                }
                acc
            }
            Self::Mul(v) => {
                let mut acc = cx(1.0, 0.0);
                for c in v {
                    acc = acc * c.eval(params, rep)?;
                }
                acc
            }
            Self::Neg(c) => -c.eval(params, rep)?,
            Self::Pow(c, n) => powi(c.eval(params, rep)?, *n),
        })
    }

    fn swap_nodes(&self) -> Self {
        match self {
            Self::Central(Central::U(k)) => Self::Central(Central::U(swap24(*k))),
            Self::Central(Central::V(k)) => Self::Central(Central::V(swap24(*k))),
            Self::Add(v) => Self::Add(v.iter().map(Self::swap_nodes).collect()),
            Self::Mul(v) => Self::Mul(v.iter().map(Self::swap_nodes).collect()),
            Self::Neg(c) => Self::Neg(Box::new(c.swap_nodes())),
            Self::Pow(c, n) => Self::Pow(Box::new(c.swap_nodes()), *n),
            other => other.clone(),
        }
    }
}

fn swap24(k: u8) -> u8 {
    match k {
        2 => 4,
        4 => 2,
        k => k,
    }
}

/// Operator expression over generator symbols.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Gen(Generator),
    One,
    Zero,
    Scale(Coef, Box<Expr>),
    Prod(Vec<Expr>),
    Sum(Vec<Expr>),
    /// Supercommutator: anticommutator iff both operands are odd.
    SComm(Box<Expr>, Box<Expr>),
}

pub fn gen(g: Generator) -> Expr {
    Expr::Gen(g)
}

pub fn scomm(a: Expr, b: Expr) -> Expr {
    Expr::SComm(Box::new(a), Box::new(b))
}

pub fn scale(c: Coef, e: Expr) -> Expr {
    Expr::Scale(c, Box::new(e))
}

pub fn prod(v: Vec<Expr>) -> Expr {
    Expr::Prod(v)
}

pub fn sum(v: Vec<Expr>) -> Expr {
    Expr::Sum(v)
}

impl Expr {
    pub fn eval<R: Real>(&self, params: &AlgebraParams<R>, rep: &dyn Representation<R>) -> Result<SuperMatrix<R>> {
        let space = rep.space();
        match self {
            Self::Gen(g) => rep.gen(*g).cloned(),
            Self::One => Ok(SuperMatrix::identity(space)),
            Self::Zero => Ok(SuperMatrix::zero(space, Degree::Even)),
            Self::Scale(c, e) => Ok(e.eval(params, rep)?.scale(c.eval(params, rep)?)),
            Self::Prod(v) => {
                let mut acc = SuperMatrix::identity(space);
                for e in v {
                    acc = acc.mul(&e.eval(params, rep)?)?;
                }
                Ok(acc)
            }
            Self::Sum(v) => {
                let mut it = v.iter();
                let mut acc = match it.next() {
                    Some(e) => e.eval(params, rep)?,
                    None => return Ok(SuperMatrix::zero(space, Degree::Even)),
                };
                for e in it {
                    acc = acc.add(&e.eval(params, rep)?)?;
                }
                Ok(acc)
            }
            Self::SComm(a, b) => supercommutator(&a.eval(params, rep)?, &b.eval(params, rep)?),
        }
    }

    /// Nodes of every generator symbol in the expression.
    pub fn nodes(&self, out: &mut BTreeSet<u8>) {
        match self {
            Self::Gen(g) => {
                out.insert(g.node());
            }
            Self::Scale(_, e) => e.nodes(out),
            Self::Prod(v) | Self::Sum(v) => v.iter().for_each(|e| e.nodes(out)),
            Self::SComm(a, b) => {
                a.nodes(out);
                b.nodes(out);
            }
            Self::One | Self::Zero => {}
        }
    }

    /// Image under the node-2↔4 automorphism.
    pub fn automorphism_image(&self) -> Self {
        use Generator::*;
        let za = Coef::ZetaAuto;
        let at = Coef::AlphaTilde;
        match self {
            Self::Gen(E(2)) => scale(za.times(at.pow(-1)), gen(E(4))),
            Self::Gen(E(4)) => scale(za.times(at).neg(), gen(E(2))),
            Self::Gen(F(2)) => scale(za.pow(-1).times(at), gen(F(4))),
            Self::Gen(F(4)) => scale(za.pow(-1).times(at.pow(-1)).neg(), gen(F(2))),
            Self::Gen(K(k)) => gen(K(swap24(*k))),
            Self::Gen(KInv(k)) => gen(KInv(swap24(*k))),
            Self::Gen(g) => gen(*g),
            Self::One => Self::One,
            Self::Zero => Self::Zero,
            Self::Scale(c, e) => scale(c.swap_nodes(), e.automorphism_image()),
            Self::Prod(v) => prod(v.iter().map(Self::automorphism_image).collect()),
            Self::Sum(v) => sum(v.iter().map(Self::automorphism_image).collect()),
            Self::SComm(a, b) => scomm(a.automorphism_image(), b.automorphism_image()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RelationGroup {
    KConjugation,
    KInverse,
    KCommute,
    EFDiagonal,
    Mixed,
    EFVanishing,
    Serre,
    CubicSerre,
    QuarticSerre,
    CentralK,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub id: String,
    pub group: RelationGroup,
    pub lhs: Expr,
    pub rhs: Expr,
    pub nodes_used: BTreeSet<u8>,
}

impl Relation {
    pub fn new(id: impl Into<String>, group: RelationGroup, lhs: Expr, rhs: Expr) -> Self {
        let mut nodes_used = BTreeSet::new();
        lhs.nodes(&mut nodes_used);
        rhs.nodes(&mut nodes_used);
        Self { id: id.into(), group, lhs, rhs, nodes_used }
    }

    /// `lhs − rhs` evaluated as a matrix.
    pub fn difference<R: Real>(&self, params: &AlgebraParams<R>, rep: &dyn Representation<R>) -> Result<SuperMatrix<R>> {
        let l = self.lhs.eval(params, rep)?;
        let r = self.rhs.eval(params, rep)?;
        l.sub(&r)
    }

    pub fn automorphism_image(&self, params: &AlgebraParams<impl Real>) -> Result<Relation> {
        check_autopar(params)?;
        Ok(Relation::new(
            format!("auto({})", self.id),
            self.group,
            self.lhs.automorphism_image(),
            self.rhs.automorphism_image(),
        ))
    }
}

/// Checks `g₂ = g₄` and `α₄ = ζ²α̃²α₂`.
pub fn check_autopar<R: Real>(p: &AlgebraParams<R>) -> Result<()> {
    let scale = R::epsilon() * R::from_f64(1e3);
    let close = |a: Scalar<R>, b: Scalar<R>| modulus(a - b) <= scale * (R::from_f64(1.0) + modulus(a) + modulus(b));
    if !close(p.g2, p.g4) {
        return Err(Error::Precondition("automorphism needs g2 = g4".into()));
    }
    let z2 = p.zeta_auto * p.zeta_auto;
    if !close(p.alpha4, z2 * p.alphatilde * p.alphatilde * p.alpha2) {
        return Err(Error::Precondition("automorphism needs alpha4 = zeta^2 alphatilde^2 alpha2".into()));
    }
    Ok(())
}

/// The full relation catalog of the affine algebra (80 relations).
pub fn catalog_qhat() -> Vec<Relation> {
    use Generator::*;
    use RelationGroup as G;
    let c = cartan_qhat();
    let mut out = Vec::new();
    for i in 1..=4u8 {
        for j in 1..=4u8 {
            let da = c.da(i as usize, j as usize);
            out.push(Relation::new(
                format!("KE_{i}{j}"),
                G::KConjugation,
                prod(vec![gen(K(i)), gen(E(j)), gen(KInv(i))]),
                scale(Coef::Q.pow(da), gen(E(j))),
            ));
            out.push(Relation::new(
                format!("KF_{i}{j}"),
                G::KConjugation,
                prod(vec![gen(K(i)), gen(F(j)), gen(KInv(i))]),
                scale(Coef::Q.pow(-da), gen(F(j))),
            ));
        }
    }
    for j in 1..=4u8 {
        out.push(Relation::new(format!("KKinv_{j}"), G::KInverse, prod(vec![gen(K(j)), gen(KInv(j))]), Expr::One));
    }
    for i in 1..=4u8 {
        for j in i + 1..=4u8 {
            out.push(Relation::new(format!("KK_{i}{j}"), G::KCommute, scomm(gen(K(i)), gen(K(j))), Expr::Zero));
        }
    }
    for i in 1..=4u8 {
        for j in 1..=4u8 {
            let lhs = scomm(gen(E(i)), gen(F(j)));
            if i == j {
                let d = c.d(i as usize) as f64;
                let rhs = scale(
                    Coef::num(d).times(Coef::inv_qdiff()),
                    sum(vec![gen(K(i)), scale(Coef::num(-1.0), gen(KInv(i)))]),
                );
                out.push(Relation::new(format!("EF_{i}"), G::EFDiagonal, lhs, rhs));
            } else if i + j == 6 && i == 2 {
                // {E2,F4} = −g̃α̃⁻¹(K4 − U2U4⁻¹K2⁻¹)
                let rhs = scale(
                    Coef::Mul(vec![Coef::num(-1.0), Coef::GTilde, Coef::AlphaTilde.pow(-1)]),
                    sum(vec![
                        gen(K(4)),
                        scale(
                            Coef::Mul(vec![
                                Coef::num(-1.0),
                                Coef::Central(Central::U(2)),
                                Coef::Central(Central::U(4)).pow(-1),
                            ]),
                            gen(KInv(2)),
                        ),
                    ]),
                );
                out.push(Relation::new("mix1", G::Mixed, lhs, rhs));
            } else if i + j == 6 && i == 4 {
                // {E4,F2} = g̃α̃(K2 − U4U2⁻¹K4⁻¹)
                let rhs = scale(
                    Coef::Mul(vec![Coef::GTilde, Coef::AlphaTilde]),
                    sum(vec![
                        gen(K(2)),
                        scale(
                            Coef::Mul(vec![
                                Coef::num(-1.0),
                                Coef::Central(Central::U(4)),
                                Coef::Central(Central::U(2)).pow(-1),
                            ]),
                            gen(KInv(4)),
                        ),
                    ]),
                );
                out.push(Relation::new("mix2", G::Mixed, lhs, rhs));
            } else {
                out.push(Relation::new(format!("EF_{i}{j}"), G::EFVanishing, lhs, Expr::Zero));
            }
        }
    }
    for (x, mk) in [("E", E as fn(u8) -> Generator), ("F", F as fn(u8) -> Generator)] {
        out.push(Relation::new(format!("{x}13"), G::Serre, scomm(gen(mk(1)), gen(mk(3))), Expr::Zero));
        out.push(Relation::new(format!("{x}22"), G::Serre, prod(vec![gen(mk(2)), gen(mk(2))]), Expr::Zero));
        out.push(Relation::new(format!("{x}44"), G::Serre, prod(vec![gen(mk(4)), gen(mk(4))]), Expr::Zero));
        out.push(Relation::new(format!("{x}24"), G::Serre, scomm(gen(mk(2)), gen(mk(4))), Expr::Zero));
    }
    for (x, mk) in [("E", E as fn(u8) -> Generator), ("F", F as fn(u8) -> Generator)] {
        for j in [1u8, 3] {
            for k in [2u8, 4] {
                let lhs = sum(vec![
                    scomm(gen(mk(j)), scomm(gen(mk(j)), gen(mk(k)))),
                    scale(Coef::serre().neg(), prod(vec![gen(mk(j)), gen(mk(k)), gen(mk(j))])),
                ]);
                out.push(Relation::new(format!("serre3_{x}{j}{k}"), G::CubicSerre, lhs, Expr::Zero));
            }
        }
    }
    for k in [2u8, 4] {
        let u = Coef::Central(Central::U(k));
        let v = Coef::Central(Central::V(k));
        for (x, mk) in [("E", E as fn(u8) -> Generator), ("F", F as fn(u8) -> Generator)] {
            let lhs = sum(vec![
                scomm(scomm(gen(mk(1)), gen(mk(k))), scomm(gen(mk(3)), gen(mk(k)))),
                scale(Coef::serre().neg(), prod(vec![gen(mk(k)), gen(mk(1)), gen(mk(3)), gen(mk(k))])),
            ]);
            let rhs_coef = if x == "E" {
                // g_k α_k (1 − V_k² U_k²)
                Coef::Mul(vec![
                    Coef::GK(k),
                    Coef::AlphaK(k),
                    Coef::Add(vec![Coef::num(1.0), Coef::Mul(vec![v.clone().pow(2), u.clone().pow(2)]).neg()]),
                ])
            } else {
                // g_k α_k⁻¹ (V_k⁻² − U_k⁻²)
                Coef::Mul(vec![
                    Coef::GK(k),
                    Coef::AlphaK(k).pow(-1),
                    Coef::Add(vec![v.clone().pow(-2), u.clone().pow(-2).neg()]),
                ])
            };
            out.push(Relation::new(format!("serre4_{x}{k}"), G::QuarticSerre, lhs, scale(rhs_coef, Expr::One)));
        }
        out.push(Relation::new(
            format!("Kk_{k}"),
            G::CentralK,
            prod(vec![gen(KInv(1)), gen(KInv(k)), gen(KInv(k)), gen(KInv(3))]),
            scale(v.pow(2), Expr::One),
        ));
    }
    out
}

/// Catalog restricted to relations touching only the given nodes.
pub fn catalog_nodes(nodes: &[u8]) -> Vec<Relation> {
    catalog_qhat().into_iter().filter(|r| r.nodes_used.iter().all(|n| nodes.contains(n))).collect()
}

/// Residual report: max-abs entry of `lhs − rhs`; passes iff
/// `residual ≤ tol.abs_eps`.
pub fn evaluate<R: Real>(
    rel: &Relation,
    params: &AlgebraParams<R>,
    rep: &dyn Representation<R>,
    tol: Tolerance,
    point: &str,
) -> Result<RelationReport> {
    let d = rel.difference(params, rep)?;
    Ok(RelationReport::new(rel.id.clone(), d.mat.norm_max(), tol.abs_eps, point))
}

pub fn evaluate_all<R: Real>(
    rels: &[Relation],
    params: &AlgebraParams<R>,
    rep: &dyn Representation<R>,
    tol: Tolerance,
    point: &str,
) -> Result<Vec<RelationReport>> {
    rels.iter().map(|r| evaluate(r, params, rep, tol, point)).collect()
}

/// Walks an expression and its twice-mapped image in parallel. Generators of
/// nodes 2 and 4 that are odd must come back wrapped in two scalars whose
/// product is `−ζ²`; everything else must match exactly.
pub fn double_image_matches<R: Real>(orig: &Expr, twice: &Expr, params: &AlgebraParams<R>, rep: &dyn Representation<R>) -> Result<bool> {
    let scale_tol = R::epsilon() * R::from_f64(1e3);
    match (orig, twice) {
        (Expr::Gen(g), _) if g.is_odd() => {
            let Expr::Scale(c1, inner) = twice else { return Ok(false) };
            let Expr::Scale(c2, inner2) = inner.as_ref() else { return Ok(false) };
            if inner2.as_ref() != orig {
                return Ok(false);
            }
            let z = params.zeta_auto;
            let want = -(z * z);
            let got = c1.eval(params, rep)? * c2.eval(params, rep)?;
            Ok(modulus(got - want) <= scale_tol)
        }
        (Expr::Gen(a), Expr::Gen(b)) => Ok(a == b),
        (Expr::One, Expr::One) | (Expr::Zero, Expr::Zero) => Ok(true),
        (Expr::Scale(c1, e1), Expr::Scale(c2, e2)) => {
            let same = modulus(c1.eval(params, rep)? - c2.eval(params, rep)?) <= scale_tol * (R::from_f64(1.0) + modulus(c1.eval(params, rep)?));
            Ok(same && double_image_matches(e1, e2, params, rep)?)
        }
        (Expr::Prod(a), Expr::Prod(b)) | (Expr::Sum(a), Expr::Sum(b)) => {
            if a.len() != b.len() {
                return Ok(false);
            }
            for (x, y) in a.iter().zip(b) {
                if !double_image_matches(x, y, params, rep)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        (Expr::SComm(a1, b1), Expr::SComm(a2, b2)) => {
            Ok(double_image_matches(a1, a2, params, rep)? && double_image_matches(b1, b2, params, rep)?)
        }
        _ => Ok(false),
    }
}
