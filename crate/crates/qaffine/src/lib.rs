//! Verification and computation engine for the quantum affine algebra built
//! on centrally extended sl(2|2).
//!
//! Every numeric routine is generic over the working precision
//! ([`numerics::Real`], implemented for `f64` and `f256`).

pub mod cartan;
pub mod error;
pub mod fundrep;
pub mod generators;
pub mod gln;
pub mod hopf;
pub mod limits;
pub mod numerics;
pub mod relations;
pub mod report;
pub mod rmatrix;
pub mod superlinalg;

pub use cartan::{cartan_affine_gln, cartan_qhat, CartanData};
pub use error::{Error, Result};
pub use fundrep::{build_rep, derive_constants, AlgebraParams, FundRep, RepPoint, SqrtBranches, XBranch};
pub use generators::{Central, Generator, RepMatrices, Representation};
pub use numerics::{approx_eq, sqrt_principal, Precision, Real, SampleSeed, Scalar, Tolerance};
pub use report::{LimitReport, RelationReport};
pub use superlinalg::{
    embed_three_site, graded_permutation, graded_tensor, null_space, supercommutator, Degree, GradedSpace, Mat,
    NullSpaceResult, SlotPair, SuperMatrix,
};
pub use relations::{catalog_qhat, evaluate, Coef, Expr, Relation, RelationGroup};
pub use hopf::{coproduct, opposite_coproduct, TensorRep};
pub use rmatrix::{solve_r, RMatrix};
pub use limits::{ConvLimitRep, YangianFrame};
pub use gln::{build_gln_rep, check_gln_relations, gln_yangian_limit, GlnRep};
