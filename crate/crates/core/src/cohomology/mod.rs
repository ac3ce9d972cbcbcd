//! Mod-p cohomology of finite groups by two independent methods, H^1 of
//! presentations, the bottom row of the equivariant spectral sequence, and
//! the theorem-level checks built on them.

mod cocycle;
mod presentation;
mod spectral;
mod verify;

use std::fmt;

use serde::Serialize;

pub use cocycle::default_cocycle_cap;
pub use presentation::{alternating_presentation, hom_to_fp_dimension, h1_from_presentation, Letter, PresentationData};
pub use spectral::{ss_bottom_row, SSBottomRow};
pub use verify::{
    verify_main_theorem, verify_sign_split, verify_twisted_theorem, DegreeRecord, Limits, SignSplitReport,
    Status, TheoremReport,
};

use crate::error::Result;
use crate::group::{sylow_cyclic, Character, SubgroupHandle, SylowOutcome};
use crate::linalg::fp::check_modulus;
use cocycle::{check_cocycle_limits, cocycle_dims, GroupTable};

/// Default working-set budget of the cocycle method.
pub const DEFAULT_MEMORY_BUDGET: u64 = 4 << 30;

/// Which computation produced a dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Cocycle,
    CyclicSylow,
    #[serde(rename = "presentation-H1")]
    PresentationH1,
    OrderArgument,
    Simplicial,
    None,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Cocycle => "cocycle",
            Method::CyclicSylow => "cyclic-sylow",
            Method::PresentationH1 => "presentation-H1",
            Method::OrderArgument => "order-argument",
            Method::Simplicial => "simplicial",
            Method::None => "none",
        })
    }
}

/// dims[k] = dim H^k(G, F_p[χ]) for k = 0..=kmax.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyResult {
    pub group: String,
    pub p: u64,
    pub character: String,
    pub dims: Vec<usize>,
    pub method: Method,
}

impl CohomologyResult {
    pub fn with_group(mut self, name: impl Into<String>) -> Self {
        self.group = name.into();
        self
    }

    pub fn dim(&self, k: usize) -> Option<usize> {
        self.dims.get(k).copied()
    }
}

fn describe(h: &SubgroupHandle) -> String {
    format!("subgroup of order {}", h.order())
}

fn character_name(chi: Option<&Character>) -> String {
    chi.map_or_else(|| "trivial".to_string(), |c| c.name().to_string())
}

/// Resource limits of the cocycle method.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CocycleConfig {
    /// Element cap; `None` uses [`default_cocycle_cap`] for the degree bound.
    pub cap: Option<usize>,
    pub memory_budget: u64,
}

impl Default for CocycleConfig {
    fn default() -> Self {
        CocycleConfig {
            cap: None,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }
}

/// H^k(H, F_p[χ]) for k ≤ kmax from normalized cochains.
pub fn cohomology_cocycle(
    h: &SubgroupHandle,
    p: u64,
    chi: Option<&Character>,
    kmax: usize,
    config: &CocycleConfig,
) -> Result<CohomologyResult> {
    let pm = check_modulus(p)?;
    check_cocycle_limits(h.order(), kmax, config.cap, config.memory_budget)?;
    let table = GroupTable::from_subgroup(h, chi);
    Ok(CohomologyResult {
        group: describe(h),
        p,
        character: character_name(chi),
        dims: cocycle_dims(&table, pm, kmax),
        method: Method::Cocycle,
    })
}

/// H^k(H, F_p[χ]) for k ≤ kmax as normalizer-stable elements of the
/// cohomology of a Sylow subgroup of order p.
pub fn cohomology_cyclic_sylow(
    h: &SubgroupHandle,
    p: u64,
    chi: Option<&Character>,
    kmax: usize,
) -> Result<CohomologyResult> {
    check_modulus(p)?;
    let trivial_on_h = chi.is_none_or(|c| c.is_trivial_on(h));
    let mut dims = vec![0usize; kmax + 1];
    dims[0] = usize::from(trivial_on_h);
    if let SylowOutcome::Cyclic(data) = sylow_cyclic(h, p, chi)? {
        let stable = |e: u64| {
            data.actions.iter().all(|&(q, s)| {
                let twist = if s == 1 { 1 } else { p - 1 };
                twist * crate::linalg::fp::pow(q as u32, e, p as u32) as u64 % p == 1
            })
        };
        for (k, d) in dims.iter_mut().enumerate().skip(1) {
            let e = (k as u64).div_ceil(2);
            *d = usize::from(stable(e));
        }
    }
    Ok(CohomologyResult {
        group: describe(h),
        p,
        character: character_name(chi),
        dims,
        method: Method::CyclicSylow,
    })
}

#[cfg(test)]
mod tests;
