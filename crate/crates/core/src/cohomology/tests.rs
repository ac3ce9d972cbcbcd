use std::sync::Arc;

use super::*;
use crate::complex::{build_coxeter_complex, DEFAULT_SIMPLEX_CAP};
use crate::coxeter::{parse_graph, CoxeterMatrix};
use crate::error::Error;
use crate::group::{alternating_subgroup, enumerate_group, GroupRealization};
use crate::linalg::{cochain_complex, BettiProfile};

fn realize(name: &str) -> Arc<GroupRealization> {
    Arc::new(enumerate_group(&parse_graph(name).unwrap(), 20_000).unwrap())
}

fn cyclic(m: u32) -> SubgroupHandle {
    alternating_subgroup(&realize(&format!("I2({m})")))
}

fn cfg() -> CocycleConfig {
    CocycleConfig::default()
}

#[test]
fn cocycle_examples() {
    let z5 = cyclic(5);
    assert_eq!(z5.order(), 5);
    assert_eq!(cohomology_cocycle(&z5, 5, None, 3, &cfg()).unwrap().dims, vec![1, 1, 1, 1]);
    for (m, p) in [(4, 3), (7, 5), (5, 3), (9, 5)] {
        assert_eq!(cohomology_cocycle(&cyclic(m), p, None, 3, &cfg()).unwrap().dims, vec![1, 0, 0, 0]);
    }
    let s3 = SubgroupHandle::whole(&realize("A2"));
    let sign = Character::sign(2);
    let r = cohomology_cocycle(&s3, 3, Some(&sign), 1, &cfg()).unwrap();
    assert_eq!(r.dim(1), Some(1));
    assert_eq!(r.method, Method::Cocycle);
    assert_eq!(r.character, "sign");
}

#[test]
fn cocycle_refuses_beyond_caps() {
    let s4 = SubgroupHandle::whole(&realize("A3"));
    let tight = CocycleConfig {
        cap: Some(10),
        memory_budget: DEFAULT_MEMORY_BUDGET,
    };
    assert!(matches!(
        cohomology_cocycle(&s4, 3, None, 2, &tight),
        Err(Error::CapExceeded { .. })
    ));
    let small = CocycleConfig {
        cap: None,
        memory_budget: 1_000,
    };
    assert!(matches!(
        cohomology_cocycle(&s4, 3, None, 2, &small),
        Err(Error::MemoryBudget { .. })
    ));
    assert!(matches!(cohomology_cocycle(&s4, 4, None, 1, &cfg()), Err(Error::NotOddPrime(4))));
}

#[test]
fn cyclic_sylow_examples() {
    let a4 = realize("A4");
    let a5 = alternating_subgroup(&a4);
    let r = cohomology_cyclic_sylow(&a5, 5, None, 4).unwrap();
    assert_eq!(r.dims, vec![1, 0, 0, 1, 1]);
    assert_eq!(r.method, Method::CyclicSylow);
    let s5 = SubgroupHandle::whole(&a4);
    let sign = Character::sign(4);
    let r = cohomology_cyclic_sylow(&s5, 5, Some(&sign), 3).unwrap();
    assert_eq!(r.dims, vec![0, 0, 0, 1]);
    let s3 = SubgroupHandle::whole(&realize("A2"));
    let a = cohomology_cyclic_sylow(&s3, 3, None, 2).unwrap();
    let b = cohomology_cocycle(&s3, 3, None, 2, &cfg()).unwrap();
    assert_eq!(a.dims, vec![1, 0, 0]);
    assert_eq!(a.dims, b.dims);
    // p² | |H| is refused
    let d = SubgroupHandle::whole(&realize("A2+A2"));
    assert!(matches!(
        cohomology_cyclic_sylow(&d, 3, None, 2),
        Err(Error::NotCyclicSylow { .. })
    ));
    // p ∤ |H|
    let r = cohomology_cyclic_sylow(&s3, 5, Some(&Character::sign(2)), 3).unwrap();
    assert_eq!(r.dims, vec![0, 0, 0, 0]);
}

#[test]
fn methods_agree_on_fixtures() {
    let s3 = realize("A2");
    let d5 = realize("I2(5)");
    let a4 = realize("A4");
    let sign2 = Character::sign(2);
    let fixtures: Vec<(SubgroupHandle, u64, Option<&Character>)> = vec![
        (cyclic(3), 3, None),
        (cyclic(5), 5, None),
        (cyclic(15), 3, None),
        (cyclic(15), 5, None),
        (SubgroupHandle::whole(&s3), 3, None),
        (SubgroupHandle::whole(&s3), 3, Some(&sign2)),
        (SubgroupHandle::whole(&d5), 5, None),
        (SubgroupHandle::whole(&d5), 5, Some(&sign2)),
        (alternating_subgroup(&a4), 5, None),
    ];
    for (h, p, chi) in fixtures {
        let a = cohomology_cocycle(&h, p, chi, 2, &cfg()).unwrap();
        let b = cohomology_cyclic_sylow(&h, p, chi, 2).unwrap();
        assert_eq!(a.dims, b.dims, "order {} p={p} chi={:?}", h.order(), chi.map(|c| c.name()));
        let trivial = chi.is_none_or(|c| c.is_trivial_on(&h));
        assert_eq!(a.dims[0], usize::from(trivial));
    }
}

#[test]
fn presentations() {
    let p = alternating_presentation(&parse_graph("I2(inf)").unwrap(), 0).unwrap();
    assert_eq!(p.generators.len(), 1);
    assert!(p.relators.is_empty());
    for prime in [3, 5, 7] {
        assert_eq!(h1_from_presentation(&p, prime).unwrap(), 1);
    }
    let p = alternating_presentation(&parse_graph("I2(6)").unwrap(), 0).unwrap();
    assert_eq!(p.to_string(), "< x1 | x1 x1 x1 x1 x1 x1 >");
    assert_eq!(h1_from_presentation(&p, 3).unwrap(), 1);
    assert_eq!(h1_from_presentation(&p, 5).unwrap(), 0);
    let p = alternating_presentation(&parse_graph("A2").unwrap(), 0).unwrap();
    assert_eq!(p.to_string(), "< x1 | x1 x1 x1 >");
    let p = alternating_presentation(&parse_graph("A3").unwrap(), 0).unwrap();
    assert_eq!(p.generators, vec!["x1", "x2"]);
    assert_eq!(p.relators.len(), 3);
    assert!(alternating_presentation(&parse_graph("A3").unwrap(), 3).is_err());
}

#[test]
fn presentation_h1_matches_abelianization() {
    let names = ["A1", "A2", "B2", "I2(5)", "I2(6)", "I2(9)", "I2(12)", "A3", "B3", "H3", "A1+A1", "A1+A2"];
    for name in names {
        let m = parse_graph(name).unwrap();
        let g = realize(name);
        let alt = alternating_subgroup(&g);
        for p in [3, 5, 7] {
            let from_group = hom_to_fp_dimension(&alt, p).unwrap();
            for s0 in 0..m.rank() {
                let pres = alternating_presentation(&m, s0).unwrap();
                assert_eq!(h1_from_presentation(&pres, p).unwrap(), from_group, "{name} p={p} s0={s0}");
            }
        }
    }
}

#[test]
fn h1_of_cocycle_matches_hom() {
    for name in ["A2", "I2(6)", "A3"] {
        let alt = alternating_subgroup(&realize(name));
        for p in [3, 5] {
            let c = cohomology_cocycle(&alt, p, None, 1, &cfg()).unwrap();
            assert_eq!(c.dims[1], hom_to_fp_dimension(&alt, p).unwrap());
        }
    }
}

fn complex_of(g: &GroupRealization) -> crate::complex::CoxeterComplex {
    build_coxeter_complex(g, DEFAULT_SIMPLEX_CAP, None).unwrap()
}

#[test]
fn bottom_row_examples() {
    let g = realize("A2");
    let x = complex_of(&g);
    let r = ss_bottom_row(&x, &g, &alternating_subgroup(&g), 3).unwrap();
    assert_eq!(r.e1_dims, vec![2, 2]);
    assert_eq!(r.e2_dims.values, vec![1, 1]);
    let g = realize("B3");
    let x = complex_of(&g);
    let triv = SubgroupHandle::trivial(&g);
    let r = ss_bottom_row(&x, &g, &triv, 5).unwrap();
    assert_eq!(r.e2_dims, cochain_complex(&x, 5).unwrap().betti());
    let r = ss_bottom_row(&x, &g, &alternating_subgroup(&g), 5).unwrap();
    assert_eq!(r.e2_dims.values, vec![1, 0, 1]);
    // the whole group: X/W is a simplex
    let r = ss_bottom_row(&x, &g, &SubgroupHandle::whole(&g), 5).unwrap();
    assert_eq!(r.e2_dims.values, vec![1, 0, 0]);
}

#[test]
fn bottom_row_rank_three_catalog() {
    for name in ["A1", "A2", "B2", "I2(5)", "I2(7)", "A3", "B3", "H3"] {
        let g = realize(name);
        let x = complex_of(&g);
        let alt = alternating_subgroup(&g);
        for p in [3, 5, 7] {
            let r = ss_bottom_row(&x, &g, &alt, p).unwrap();
            assert!(r.matches());
            assert_eq!(r.e2_dims, BettiProfile::sphere(x.dimension()), "{name} p={p}");
        }
    }
}

fn m(name: &str) -> CoxeterMatrix {
    parse_graph(name).unwrap()
}

#[test]
fn sign_split_examples() {
    let lim = Limits::default();
    let r = verify_sign_split(&m("I2(5)"), 5, 2, &lim).unwrap();
    assert_eq!(r.dims_alt, vec![1, 1, 1]);
    assert!(r.holds);
    let r = verify_sign_split(&m("A2"), 3, 2, &lim).unwrap();
    assert_eq!(r.dims_alt, vec![1, 1, 1]);
    assert_eq!(r.dims_triv, vec![1, 0, 0]);
    assert_eq!(r.dims_sign, vec![0, 1, 1]);
    assert!(r.holds);
    let r = verify_sign_split(&m("B3"), 5, 2, &lim).unwrap();
    assert_eq!(r.dims_alt, vec![1, 0, 0]);
    assert_eq!(r.dims_triv, vec![1, 0, 0]);
    assert_eq!(r.dims_sign, vec![0, 0, 0]);
    assert_eq!(r.records().len(), 9);
}

#[test]
fn main_theorem_examples() {
    let lim = Limits::default();
    let r = verify_main_theorem(&m("A4"), 5, &lim).unwrap();
    assert!(r.holds() && r.complete());
    assert_eq!(r.dim(1), Some(0));
    assert_eq!(r.dim(2), Some(0));
    assert_eq!(r.dim(3), Some(1));
    assert_eq!(r.method(1), Some(Method::CyclicSylow));
    let r = verify_main_theorem(&m("B4"), 5, &lim).unwrap();
    assert!(r.holds());
    assert!(r.records.iter().all(|x| x.method == Method::OrderArgument));
    assert!(matches!(
        verify_main_theorem(&m("I2(5)"), 5, &lim),
        Err(Error::HypothesisViolated(_))
    ));
    assert!(matches!(
        verify_main_theorem(&m("I2(inf)"), 5, &lim),
        Err(Error::HypothesisViolated(_))
    ));
    assert!(matches!(verify_main_theorem(&m("A2"), 9, &lim), Err(Error::NotOddPrime(9))));
}

#[test]
fn main_theorem_beyond_caps_is_reported() {
    let lim = Limits {
        group_cap: 100,
        ..Limits::default()
    };
    let r = verify_main_theorem(&m("A4"), 5, &lim).unwrap();
    assert!(!r.complete());
    assert!(r.holds());
    assert!(r.note.contains("not verifiable"));
}

#[test]
fn twisted_theorem_examples() {
    let lim = Limits::default();
    let r = verify_twisted_theorem(&m("A4"), 5, &lim).unwrap();
    let dims: Vec<Option<usize>> = (0..4).map(|k| r.dim(k)).collect();
    assert_eq!(dims, vec![Some(0), Some(0), Some(0), Some(1)]);
    assert!(r.holds());
    let r = verify_twisted_theorem(&m("A2"), 3, &lim).unwrap();
    assert_eq!(r.dim(0), Some(0));
    assert_eq!(r.dim(1), Some(1));
    for name in ["A1", "B3", "H3", "A2+A1"] {
        let r = verify_twisted_theorem(&m(name), 7, &lim).unwrap();
        assert_eq!(r.dim(0), Some(0), "{name}");
    }
}
