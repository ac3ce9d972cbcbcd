use std::fmt;

use serde::Serialize;

use super::echelon::rank_fp;
use super::fp::FpMatrix;
use crate::error::{Error, Result};

/// Cochain complex C^0 → C^1 → … over F_p. `d[k]` maps C^k to C^{k+1} and
/// acts on column vectors, so it has `dims[k+1]` rows and `dims[k]` columns.
#[derive(Clone, Debug)]
pub struct ChainComplexFp {
    p: u32,
    dims: Vec<usize>,
    d: Vec<FpMatrix>,
}

impl ChainComplexFp {
    /// Checks shapes and d∘d = 0.
    pub fn new(p: u32, dims: Vec<usize>, d: Vec<FpMatrix>) -> Result<Self> {
        if d.len() + 1 != dims.len().max(1) {
            return Err(Error::Integrity(format!(
                "{} differentials for {} degrees",
                d.len(),
                dims.len()
            )));
        }
        for (k, dk) in d.iter().enumerate() {
            if dk.p() != p || dk.ncols() != dims[k] || dk.nrows() != dims[k + 1] {
                return Err(Error::Integrity(format!(
                    "differential {k} has shape {}x{} over F_{}, expected {}x{} over F_{p}",
                    dk.nrows(),
                    dk.ncols(),
                    dk.p(),
                    dims[k + 1],
                    dims[k]
                )));
            }
        }
        for k in 1..d.len() {
            if !d[k].mul(&d[k - 1]).is_zero() {
                return Err(Error::Integrity(format!(
                    "d{k}∘d{} is nonzero; orientation conventions disagree",
                    k - 1
                )));
            }
        }
        Ok(ChainComplexFp { p, dims, d })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differential(&self, k: usize) -> Option<&FpMatrix> {
        self.d.get(k)
    }

    pub fn differentials(&self) -> &[FpMatrix] {
        &self.d
    }

    /// Betti_k = dim C^k − rank d_k − rank d_{k−1}.
    pub fn betti(&self) -> BettiProfile {
        let ranks: Vec<usize> = self.d.iter().map(rank_fp).collect();
        let values = (0..self.dims.len())
            .map(|k| {
                let out = ranks.get(k).copied().unwrap_or(0);
                let inc = if k > 0 { ranks[k - 1] } else { 0 };
                self.dims[k] - out - inc
            })
            .collect();
        let profile = BettiProfile { values };
        debug_assert_eq!(profile.euler_characteristic(), euler(&self.dims));
        profile
    }
}

fn euler(values: &[usize]) -> i64 {
    values
        .iter()
        .enumerate()
        .map(|(k, &v)| if k % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum()
}

/// Dimensions of cohomology, degree by degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct BettiProfile {
    pub values: Vec<usize>,
}

impl BettiProfile {
    pub fn new(values: Vec<usize>) -> Self {
        BettiProfile { values }
    }

    /// (2) in dimension 0, otherwise (1, 0, …, 0, 1).
    pub fn sphere(dim: usize) -> Self {
        if dim == 0 {
            return BettiProfile { values: vec![2] };
        }
        let mut values = vec![0; dim + 1];
        values[0] = 1;
        values[dim] = 1;
        BettiProfile { values }
    }

    pub fn euler_characteristic(&self) -> i64 {
        euler(&self.values)
    }

    /// Checks Σ(−1)^k dim C^k = Σ(−1)^k Betti_k.
    pub fn satisfies_euler_identity(&self, dims: &[usize]) -> bool {
        self.euler_characteristic() == euler(dims)
    }
}

impl fmt::Display for BettiProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Betti profile of an assembled complex.
pub fn betti(c: &ChainComplexFp) -> BettiProfile {
    c.betti()
}
