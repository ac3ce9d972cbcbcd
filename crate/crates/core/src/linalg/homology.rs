//! Cochain complexes of a Coxeter complex and of its subgroup-invariant
//! cochains.

use super::fp::check_modulus;
use super::{ChainComplexFp, FpMatrix};
use crate::complex::{orbit_labels, CoxeterComplex, Simplex};
use crate::error::Result;
use crate::group::{Character, GroupRealization, SubgroupHandle};

/// Simplicial cochains: d_k(f)(τ) = Σ_i (−1)^i f(face_i τ).
pub fn cochain_complex(x: &CoxeterComplex, p: u64) -> Result<ChainComplexFp> {
    let p = check_modulus(p)?;
    let n = x.rank();
    let dims = x.counts().to_vec();
    let d = (0..n - 1)
        .map(|k| {
            let rows = x
                .simplices(k + 1)
                .map(|t| x.faces(t).map(|(f, e)| (f.index, e)).collect())
                .collect();
            FpMatrix::from_signed_rows(p, dims[k], rows)
        })
        .collect();
    ChainComplexFp::new(p, dims, d)
}

/// Basis of the cochains f with f(h·σ) = χ(h) f(σ), one vector per orbit on
/// which χ is trivial on the isotropy.
#[derive(Clone, Debug)]
pub struct InvariantBasis {
    /// Per dimension, the representative simplex index of each basis vector.
    pub representatives: Vec<Vec<usize>>,
    /// Per dimension and simplex, the basis vector whose support contains it.
    pub(crate) basis_of: Vec<Vec<u32>>,
    /// Per dimension and simplex, the value of that basis vector there (±1).
    pub(crate) value: Vec<Vec<i8>>,
}

impl InvariantBasis {
    pub fn dims(&self) -> Vec<usize> {
        self.representatives.iter().map(Vec::len).collect()
    }

    /// The basis vector containing σ in its support and its value there.
    pub fn coordinate(&self, s: Simplex) -> Option<(usize, i8)> {
        let b = self.basis_of[s.dim][s.index];
        (b != u32::MAX).then(|| (b as usize, self.value[s.dim][s.index]))
    }
}

pub fn invariant_basis(
    x: &CoxeterComplex,
    g: &GroupRealization,
    h: &SubgroupHandle,
    chi: Option<&Character>,
) -> InvariantBasis {
    let chi_gens: Vec<i8> = h
        .generators()
        .iter()
        .map(|&a| chi.map_or(1, |c| c.value(g, a)))
        .collect();
    let mut out = InvariantBasis {
        representatives: Vec::new(),
        basis_of: Vec::new(),
        value: Vec::new(),
    };
    for k in 0..x.rank() {
        let labels = orbit_labels(x, g, h.generators(), &chi_gens, k);
        let mut number = Vec::with_capacity(labels.alive.len());
        let mut reps = Vec::new();
        for (o, &alive) in labels.alive.iter().enumerate() {
            if alive {
                number.push(reps.len() as u32);
                reps.push(labels.representatives[o] as usize);
            } else {
                number.push(u32::MAX);
            }
        }
        out.basis_of
            .push(labels.orbit_of.iter().map(|&o| number[o as usize]).collect());
        out.value.push(labels.value);
        out.representatives.push(reps);
    }
    out
}

/// The subcomplex of (χ-twisted) H-invariant cochains in the orbit basis.
/// The differential is the full coboundary evaluated at representatives.
pub fn invariant_cochain_complex(
    x: &CoxeterComplex,
    g: &GroupRealization,
    h: &SubgroupHandle,
    p: u64,
    chi: Option<&Character>,
) -> Result<ChainComplexFp> {
    let p = check_modulus(p)?;
    let basis = invariant_basis(x, g, h, chi);
    let dims = basis.dims();
    let d = (0..x.rank() - 1)
        .map(|k| {
            let rows = basis.representatives[k + 1]
                .iter()
                .map(|&r| {
                    x.faces(Simplex::new(k + 1, r))
                        .filter_map(|(f, e)| {
                            basis
                                .coordinate(f)
                                .map(|(b, v)| (b, e * v as i64))
                        })
                        .collect()
                })
                .collect();
            FpMatrix::from_signed_rows(p, dims[k], rows)
        })
        .collect();
    ChainComplexFp::new(p, dims, d)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::complex::{build_coxeter_complex, glued_orbit_quotient, DEFAULT_SIMPLEX_CAP};
    use crate::coxeter::parse_graph;
    use crate::group::{alternating_subgroup, enumerate_group, parabolic_subgroup};
    use crate::linalg::BettiProfile;

    fn setup(name: &str) -> (Arc<GroupRealization>, CoxeterComplex) {
        let g = Arc::new(enumerate_group(&parse_graph(name).unwrap(), 20_000).unwrap());
        let x = build_coxeter_complex(&g, DEFAULT_SIMPLEX_CAP, None).unwrap();
        (g, x)
    }

    #[test]
    fn spheres() {
        let (_, x) = setup("A1");
        let c = cochain_complex(&x, 5).unwrap();
        assert_eq!(c.dims(), &[2]);
        assert_eq!(c.betti().values, vec![2]);
        let (_, x) = setup("A2");
        let c = cochain_complex(&x, 5).unwrap();
        assert_eq!(c.dims(), &[6, 6]);
        assert_eq!(c.betti().values, vec![1, 1]);
        let (_, x) = setup("B3");
        assert_eq!(cochain_complex(&x, 3).unwrap().betti().values, vec![1, 0, 1]);
        let (_, x) = setup("I2(7)");
        for p in [3, 5] {
            assert_eq!(cochain_complex(&x, p).unwrap().betti().values, vec![1, 1]);
        }
    }

    #[test]
    fn invariant_examples() {
        let (g, x) = setup("A2");
        let alt = alternating_subgroup(&g);
        let c = invariant_cochain_complex(&x, &g, &alt, 5, None).unwrap();
        assert_eq!(c.dims(), &[2, 2]);
        assert_eq!(c.betti().values, vec![1, 1]);
        let (g, x) = setup("A3");
        let alt = alternating_subgroup(&g);
        let c = invariant_cochain_complex(&x, &g, &alt, 3, None).unwrap();
        assert_eq!(c.betti().values, vec![1, 0, 1]);
    }

    #[test]
    fn trivial_subgroup_gives_full_complex() {
        let (g, x) = setup("B3");
        let triv = SubgroupHandle::trivial(&g);
        let a = invariant_cochain_complex(&x, &g, &triv, 7, None).unwrap();
        let b = cochain_complex(&x, 7).unwrap();
        assert_eq!(a.dims(), b.dims());
        assert_eq!(a.differentials(), b.differentials());
    }

    #[test]
    fn whole_group_gives_a_simplex() {
        // X/W is the fundamental simplex, which is contractible
        let (g, x) = setup("A3");
        let whole = SubgroupHandle::whole(&g);
        let c = invariant_cochain_complex(&x, &g, &whole, 5, None).unwrap();
        assert_eq!(c.dims(), &[3, 3, 1]);
        assert_eq!(c.betti().values, vec![1, 0, 0]);
    }

    #[test]
    fn sign_twisted_whole_group_vanishes() {
        // every simplex of type T ≠ ∅ has a reflection in its isotropy
        let (g, x) = setup("B3");
        let whole = SubgroupHandle::whole(&g);
        let sign = Character::sign(3);
        let c = invariant_cochain_complex(&x, &g, &whole, 5, Some(&sign)).unwrap();
        assert_eq!(c.dims(), &[0, 0, 1]);
        assert_eq!(c.betti().values, vec![0, 0, 1]);
    }

    #[test]
    fn twisted_invariants_by_brute_force() {
        // oracle: the invariant subspace computed as a kernel of (h − χ(h))
        for name in ["A2", "B2", "A1+A1"] {
            let (g, x) = setup(name);
            let sign = Character::sign(2);
            for h in [SubgroupHandle::whole(&g), alternating_subgroup(&g), parabolic_subgroup(&g, &[0]).unwrap()] {
                for chi in [None, Some(&sign)] {
                    let basis = invariant_basis(&x, &g, &h, chi);
                    for k in 0..2 {
                        let n = x.count(k);
                        let mut rows = Vec::new();
                        for &a in h.members() {
                            let c = chi.map_or(1, |c| c.value(&g, a)) as i64;
                            for s in x.simplices(k) {
                                // (f(a·s) − χ(a) f(s)) = 0
                                let t = x.act(&g, a, s);
                                rows.push(vec![(t.index, 1), (s.index, -c)]);
                            }
                        }
                        let m = FpMatrix::from_signed_rows(5, n, rows);
                        let kernel = n - crate::linalg::rank_fp(&m);
                        assert_eq!(basis.dims()[k], kernel, "{name} dim {k}");
                    }
                }
            }
        }
    }

    #[test]
    fn alternating_invariants_match_glued_quotient() {
        for m in 3..=12 {
            let (g, x) = setup(&format!("I2({m})"));
            let alt = alternating_subgroup(&g);
            for p in [3, 5, 7] {
                let inv = invariant_cochain_complex(&x, &g, &alt, p, None).unwrap();
                let glued = glued_orbit_quotient(2, p as u32).unwrap();
                assert_eq!(inv.dims(), glued.dims());
                assert_eq!(inv.betti(), glued.betti(), "I2({m}) p={p}");
            }
        }
    }

    #[test]
    fn sphere_profiles_rank_at_most_four() {
        for name in ["A1", "A2", "B2", "I2(5)", "A3", "B3", "H3", "A4", "B4", "D4", "F4"] {
            let (g, x) = setup(name);
            let alt = alternating_subgroup(&g);
            let sphere = BettiProfile::sphere(x.dimension());
            for p in [3, 5, 7] {
                let full = cochain_complex(&x, p).unwrap();
                let b = full.betti();
                assert!(b.satisfies_euler_identity(full.dims()));
                assert_eq!(b, sphere, "{name} p={p}");
                let inv = invariant_cochain_complex(&x, &g, &alt, p, None).unwrap();
                assert_eq!(inv.betti(), sphere, "{name} p={p} invariant");
            }
        }
    }
}
