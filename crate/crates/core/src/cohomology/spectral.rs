use serde::Serialize;

use crate::complex::{orbit_decomposition, CoxeterComplex};
use crate::error::{Error, Result};
use crate::group::{GroupRealization, SubgroupHandle};
use crate::linalg::fp::{self, check_modulus};
use crate::linalg::{cochain_complex, invariant_cochain_complex, BettiProfile, ChainComplexFp, FpMatrix};

/// Row j = 0 of the isotropy spectral sequence with trivial coefficients.
#[derive(Clone, Debug, Serialize)]
pub struct SSBottomRow {
    pub p: u64,
    /// dim E_1^{i,0}: one summand H^0(isotropy, F_p) per orbit.
    pub e1_dims: Vec<usize>,
    #[serde(skip)]
    pub d1: Vec<FpMatrix>,
    pub e2_dims: BettiProfile,
    /// Betti profile of the invariant cochain complex, for comparison.
    pub invariant_betti: BettiProfile,
}

impl SSBottomRow {
    pub fn matches(&self) -> bool {
        self.e2_dims == self.invariant_betti
    }
}

/// E_1^{*,0} with d_1 obtained by applying the full simplicial coboundary to
/// orbit sums and reading the result at orbit representatives; fails when
/// E_2^{*,0} differs from the invariant-cochain cohomology.
pub fn ss_bottom_row(
    x: &CoxeterComplex,
    g: &GroupRealization,
    h: &SubgroupHandle,
    p: u64,
) -> Result<SSBottomRow> {
    let pm = check_modulus(p)?;
    let orbits = orbit_decomposition(x, g, h)?;
    let full = cochain_complex(x, p)?;
    let e1_dims = orbits.orbit_counts();
    let mut d1 = Vec::new();
    for k in 0..x.rank() - 1 {
        let dk = full.differential(k).expect("coboundary");
        let orbit_k = &orbits.orbit_of[k];
        let orbit_k1 = &orbits.orbit_of[k + 1];
        // image[τ] = (δ Σ_{σ∈O} σ*)(τ) for each orbit O, as sparse rows
        let image: Vec<Vec<(u32, u32)>> = (0..dk.nrows())
            .map(|t| {
                let mut row: Vec<(u32, u32)> = dk.row(t).iter().map(|&(c, v)| (orbit_k[c as usize], v)).collect();
                row.sort_unstable_by_key(|e| e.0);
                let mut merged: Vec<(u32, u32)> = Vec::with_capacity(row.len());
                for (o, v) in row {
                    match merged.last_mut() {
                        Some(last) if last.0 == o => last.1 = fp::add(last.1, v, pm),
                        _ => merged.push((o, v)),
                    }
                }
                merged.retain(|e| e.1 != 0);
                merged
            })
            .collect();
        for (t, row) in image.iter().enumerate() {
            let rep = orbits.representatives[k + 1][orbit_k1[t] as usize];
            if *row != image[rep] {
                return Err(Error::Integrity(format!(
                    "coboundary of an orbit sum is not invariant at {}-simplex {t}",
                    k + 1
                )));
            }
        }
        let rows = orbits.representatives[k + 1]
            .iter()
            .map(|&r| image[r].iter().map(|&(o, v)| (o as usize, v as i64)).collect())
            .collect();
        d1.push(FpMatrix::from_signed_rows(pm, e1_dims[k], rows));
    }
    let e1 = ChainComplexFp::new(pm, e1_dims.clone(), d1)?;
    let e2_dims = e1.betti();
    let invariant_betti = invariant_cochain_complex(x, g, h, p, None)?.betti();
    let out = SSBottomRow {
        p,
        e1_dims,
        d1: e1.differentials().to_vec(),
        e2_dims,
        invariant_betti,
    };
    if !out.matches() {
        return Err(Error::Integrity(format!(
            "E_2 bottom row {} differs from invariant cochain cohomology {}",
            out.e2_dims, out.invariant_betti
        )));
    }
    Ok(out)
}
