use super::{canonical_types, CoxeterComplex, Simplex};
use crate::error::Result;
use crate::group::{GenSet, GroupRealization, SubgroupHandle};
use crate::linalg::{ChainComplexFp, FpMatrix};

/// Orbits of a subgroup on the simplices of each dimension.
#[derive(Clone, Debug)]
pub struct OrbitDecomposition {
    /// Per dimension, the smallest simplex index of each orbit, increasing.
    pub representatives: Vec<Vec<usize>>,
    /// Per dimension, the orbit number of each simplex.
    pub orbit_of: Vec<Vec<u32>>,
    /// Per dimension, the isotropy subgroup of each representative.
    pub isotropy: Vec<Vec<SubgroupHandle>>,
}

impl OrbitDecomposition {
    pub fn orbit_count(&self, dim: usize) -> usize {
        self.representatives.get(dim).map_or(0, Vec::len)
    }

    pub fn orbit_counts(&self) -> Vec<usize> {
        self.representatives.iter().map(Vec::len).collect()
    }
}

/// Orbit labelling of one dimension, with the value f(σ) of the orbit's
/// indicator cochain normalized to 1 at the representative.
#[derive(Clone, Debug)]
pub(crate) struct OrbitLabels {
    pub representatives: Vec<u32>,
    pub orbit_of: Vec<u32>,
    /// ±1, the character value of some h with σ = h·rep.
    pub value: Vec<i8>,
    /// Whether the character is trivial on the representative's isotropy.
    pub alive: Vec<bool>,
}

/// Labels the orbits of the subgroup generated by `gens` on `dim`-simplices.
/// `chi[j]` is the character value at `gens[j]`.
pub(crate) fn orbit_labels(
    x: &CoxeterComplex,
    g: &GroupRealization,
    gens: &[u32],
    chi: &[i8],
    dim: usize,
) -> OrbitLabels {
    let perms: Vec<Vec<u32>> = gens.iter().map(|&h| x.permutation(g, h, dim)).collect();
    let n = x.count(dim);
    let mut out = OrbitLabels {
        representatives: Vec::new(),
        orbit_of: vec![u32::MAX; n],
        value: vec![0; n],
        alive: Vec::new(),
    };
    let mut queue = Vec::new();
    for start in 0..n {
        if out.value[start] != 0 {
            continue;
        }
        let o = out.representatives.len() as u32;
        out.representatives.push(start as u32);
        out.alive.push(true);
        out.orbit_of[start] = o;
        out.value[start] = 1;
        queue.clear();
        queue.push(start as u32);
        let mut head = 0;
        while head < queue.len() {
            let s = queue[head] as usize;
            head += 1;
            for (perm, &c) in perms.iter().zip(chi) {
                let t = perm[s] as usize;
                let v = c * out.value[s];
                if out.value[t] == 0 {
                    out.value[t] = v;
                    out.orbit_of[t] = o;
                    queue.push(t as u32);
                } else if out.value[t] != v {
                    out.alive[o as usize] = false;
                }
            }
        }
    }
    out
}

/// wW_Tw⁻¹ ∩ H for σ = wW_T, computed by membership.
pub fn isotropy(x: &CoxeterComplex, g: &GroupRealization, h: &SubgroupHandle, s: Simplex) -> Result<SubgroupHandle> {
    let members = h.members().iter().copied().filter(|&a| x.act(g, a, s) == s).collect();
    SubgroupHandle::from_members(h.parent(), members)
}

pub fn orbit_decomposition(x: &CoxeterComplex, g: &GroupRealization, h: &SubgroupHandle) -> Result<OrbitDecomposition> {
    let ones = vec![1i8; h.generators().len()];
    let mut out = OrbitDecomposition {
        representatives: Vec::new(),
        orbit_of: Vec::new(),
        isotropy: Vec::new(),
    };
    for k in 0..x.rank() {
        let labels = orbit_labels(x, g, h.generators(), &ones, k);
        let iso = labels
            .representatives
            .iter()
            .map(|&r| isotropy(x, g, h, Simplex::new(k, r as usize)))
            .collect::<Result<Vec<_>>>()?;
        out.representatives
            .push(labels.representatives.iter().map(|&r| r as usize).collect());
        out.orbit_of.push(labels.orbit_of);
        out.isotropy.push(iso);
    }
    Ok(out)
}

/// Cochain complex of two copies of the fundamental simplex glued along
/// their boundary: one cell per nonempty proper subset T, two top cells.
/// Built from the face combinatorics alone, without any group.
pub fn glued_orbit_quotient(rank: usize, p: u32) -> Result<ChainComplexFp> {
    assert!((1..=16).contains(&rank), "rank out of range");
    let n = rank;
    let full: GenSet = (1 << n) - 1;
    let cells: Vec<Vec<GenSet>> = (0..n)
        .map(|k| {
            let ts = canonical_types(n, n - k - 1);
            if k == n - 1 {
                vec![ts[0], ts[0]]
            } else {
                ts
            }
        })
        .collect();
    let position = |k: usize, t: GenSet| cells[k].iter().position(|&u| u == t).expect("face type");
    let dims: Vec<usize> = cells.iter().map(Vec::len).collect();
    let mut d = Vec::new();
    for k in 0..n - 1 {
        let rows = cells[k + 1]
            .iter()
            .map(|&t| {
                crate::group::gen_list(full & !t)
                    .into_iter()
                    .enumerate()
                    .map(|(i, s)| (position(k, t | (1 << s)), if i % 2 == 0 { 1 } else { -1 }))
                    .collect()
            })
            .collect();
        d.push(FpMatrix::from_signed_rows(p, dims[k], rows));
    }
    ChainComplexFp::new(p, dims, d)
}
