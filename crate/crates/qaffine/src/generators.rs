//! Generator and central-element symbols, and the matrix bundle every
//! representation exposes to the relation evaluator and the coproduct.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{Real, Scalar};
use crate::superlinalg::{GradedSpace, SuperMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Generator {
    E(u8),
    F(u8),
    K(u8),
    KInv(u8),
}

impl Generator {
    pub fn node(self) -> u8 {
        match self {
            Self::E(j) | Self::F(j) | Self::K(j) | Self::KInv(j) => j,
        }
    }

    /// Odd nodes (2 and 4) carry fermionic raising/lowering generators.
    pub fn is_odd(self) -> bool {
        matches!(self, Self::E(2) | Self::E(4) | Self::F(2) | Self::F(4))
    }

    /// The twelve Chevalley generators E_j, F_j, K_j, j = 1..4.
    pub fn chevalley() -> Vec<Self> {
        let mut v = Vec::with_capacity(12);
        for j in 1..=4 {
            v.push(Self::E(j));
            v.push(Self::F(j));
            v.push(Self::K(j));
        }
        v
    }

    /// Chevalley generators of the listed nodes.
    pub fn chevalley_nodes(nodes: &[u8]) -> Vec<Self> {
        Self::chevalley().into_iter().filter(|g| nodes.contains(&g.node())).collect()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::E(j) => write!(f, "E{j}"),
            Self::F(j) => write!(f, "F{j}"),
            Self::K(j) => write!(f, "K{j}"),
            Self::KInv(j) => write!(f, "K{j}^-1"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Central {
    U(u8),
    V(u8),
}

impl fmt::Display for Central {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::U(k) => write!(f, "U{k}"),
            Self::V(k) => write!(f, "V{k}"),
        }
    }
}

/// Anything that can supply generator matrices and central values.
pub trait Representation<R: Real> {
    fn space(&self) -> &GradedSpace;
    fn generator(&self, g: Generator) -> Option<&SuperMatrix<R>>;
    fn central(&self, c: Central) -> Option<Scalar<R>>;

    fn gen(&self, g: Generator) -> Result<&SuperMatrix<R>> {
        self.generator(g).ok_or_else(|| Error::UnresolvedSymbol(g.to_string()))
    }

    fn central_value(&self, c: Central) -> Result<Scalar<R>> {
        self.central(c).ok_or_else(|| Error::UnresolvedSymbol(c.to_string()))
    }
}

/// Concrete generator bundle.
#[derive(Clone, Debug)]
pub struct RepMatrices<R: Real> {
    pub space: GradedSpace,
    pub gens: BTreeMap<Generator, SuperMatrix<R>>,
    pub central: BTreeMap<Central, Scalar<R>>,
}

impl<R: Real> RepMatrices<R> {
    pub fn new(space: GradedSpace) -> Self {
        Self { space, gens: BTreeMap::new(), central: BTreeMap::new() }
    }

    /// Inserts `K_j` together with its inverse.
    pub fn insert_cartan(&mut self, j: u8, k: SuperMatrix<R>) -> Result<()> {
        let inv = k.inverse()?;
        self.gens.insert(Generator::K(j), k);
        self.gens.insert(Generator::KInv(j), inv);
        Ok(())
    }
}

impl<R: Real> Representation<R> for RepMatrices<R> {
    fn space(&self) -> &GradedSpace {
        &self.space
    }
    fn generator(&self, g: Generator) -> Option<&SuperMatrix<R>> {
        self.gens.get(&g)
    }
    fn central(&self, c: Central) -> Option<Scalar<R>> {
        self.central.get(&c).copied()
    }
}
