//! Cartan data of the affine superalgebra and of affine gl(n). Nodes are
//! 1-based in the public API.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanData {
    pub a: Vec<Vec<i32>>,
    pub d: Vec<i32>,
    pub da: Vec<Vec<i32>>,
    pub node_parity: Vec<u8>,
}

impl CartanData {
    fn from_a_d(a: Vec<Vec<i32>>, d: Vec<i32>, node_parity: Vec<u8>) -> Self {
        let da = a.iter().zip(&d).map(|(row, &di)| row.iter().map(|&x| di * x).collect()).collect();
        Self { a, d, da, node_parity }
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    /// `(DA)_{ij}` for 1-based nodes.
    pub fn da(&self, i: usize, j: usize) -> i32 {
        self.da[i - 1][j - 1]
    }

    pub fn d(&self, i: usize) -> i32 {
        self.d[i - 1]
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.node_parity[i - 1] == 1
    }

    pub fn da_symmetric(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| self.da[i][j] == self.da[j][i]))
    }
}

pub fn cartan_qhat() -> CartanData {
    CartanData::from_a_d(
        vec![vec![2, -1, 0, -1], vec![1, 0, -1, 0], vec![0, -1, 2, -1], vec![1, 0, -1, 0]],
        vec![1, -1, -1, -1],
        vec![0, 1, 0, 1],
    )
}

/// Affine gl(n) Cartan matrix with adjacency taken modulo `n`.
pub fn cartan_affine_gln(n: usize) -> Result<CartanData> {
    if n < 3 {
        return Err(Error::Precondition(format!("affine gl(n) needs n >= 3, got {n}")));
    }
    let a = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        2
                    } else if (i + 1) % n == j || (j + 1) % n == i {
                        -1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    Ok(CartanData::from_a_d(a, vec![1; n], vec![0; n]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qhat_symmetrized_rows() {
        let c = cartan_qhat();
        assert_eq!(c.da[1], vec![-1, 0, 1, 0]);
        assert_eq!(c.da[1], c.da[3]);
        assert!(c.da_symmetric());
        assert_eq!(c.node_parity, vec![0, 1, 0, 1]);
    }

    #[test]
    fn gln_wraps_around() {
        let c = cartan_affine_gln(3).unwrap();
        assert_eq!(c.a, vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        let c = cartan_affine_gln(4).unwrap();
        assert!((0..4).all(|i| c.a[i][i] == 2));
        assert_eq!(c.a[0][3], -1);
        assert_eq!(c.a[0][2], 0);
        assert!(cartan_affine_gln(2).is_err());
    }
}
