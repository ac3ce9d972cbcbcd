use std::collections::BTreeSet;
use std::sync::Arc;

use super::*;
use crate::coxeter::parse_graph;
use crate::group::{alternating_subgroup, enumerate_group, parabolic_subgroup, SubgroupHandle};
use crate::linalg::BettiProfile;

fn setup(name: &str) -> (Arc<GroupRealization>, CoxeterComplex) {
    let m = parse_graph(name).unwrap();
    let g = Arc::new(enumerate_group(&m, 20_000).unwrap());
    let x = build_coxeter_complex(&g, DEFAULT_SIMPLEX_CAP, None).unwrap();
    (g, x)
}

/// The left coset u⁻¹W_T as an explicit element set.
fn element_set(g: &GroupRealization, x: &CoxeterComplex, s: Simplex) -> BTreeSet<u32> {
    let t = x.simplex_type(s);
    let table = x.coset_table(&t).unwrap();
    let u = g.element_of_word(table.word(x.coset(s)));
    let uinv = g.inv(u);
    let wt = parabolic_subgroup(&Arc::new(g.clone()), &t).unwrap();
    wt.members().iter().map(|&a| g.mul(uinv, a)).collect()
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn small_complexes() {
    let (_, x) = setup("A1");
    assert_eq!(x.counts(), &[2]);
    assert_eq!(x.dimension(), 0);
    let (_, x) = setup("A2");
    assert_eq!(x.counts(), &[6, 6]);
    assert_eq!(x.euler_characteristic(), 0);
    let (_, x) = setup("B3");
    assert_eq!(x.count(2), 48);
    assert_eq!(x.euler_characteristic(), 2);
}

#[test]
fn counts_match_coset_indices_and_euler() {
    for name in ["A3", "B3", "H3", "A4", "D4", "I2(7)", "A1+A1+A1"] {
        let (g, x) = setup(name);
        let m = g.matrix();
        let n = m.rank();
        assert_eq!(x.count(n - 1), g.size());
        for k in 0..n {
            let mut expected = 0;
            for t in canonical_types(n, n - k - 1) {
                let sub = m.restrict(&gen_list(t)).order().as_u64().unwrap() as usize;
                expected += g.size() / sub;
            }
            assert_eq!(x.count(k), expected, "{name} dim {k}");
        }
        assert_eq!(x.euler_characteristic(), 1 + if n % 2 == 1 { 1 } else { -1 }, "{name}");
    }
}

#[test]
fn simplex_cap() {
    let g = enumerate_group(&parse_graph("B3").unwrap(), 1000).unwrap();
    let err = build_coxeter_complex(&g, 100, None).unwrap_err();
    assert!(matches!(err, Error::CapExceeded { what: "simplices", .. }));
}

#[test]
fn faces_and_vertices_are_reverse_inclusion() {
    for name in ["A2", "A3", "B3", "A1+A2", "I2(5)"] {
        let (g, x) = setup(name);
        let n = x.rank();
        let sets: Vec<Vec<BTreeSet<u32>>> = (0..n)
            .map(|k| x.simplices(k).map(|s| element_set(&g, &x, s)).collect())
            .collect();
        for k in 0..n {
            for s in x.simplices(k) {
                let own = &sets[k][s.index];
                let verts: Vec<u32> = (0..x.count(0) as u32)
                    .filter(|&v| sets[0][v as usize].is_superset(own))
                    .collect();
                assert_eq!(x.vertices(s), verts.as_slice(), "{name} {s:?}");
                if k == 0 {
                    assert_eq!(x.faces(s).count(), 0);
                    continue;
                }
                let faces: BTreeSet<usize> = x.faces(s).map(|(f, _)| f.index).collect();
                let expected: BTreeSet<usize> = (0..x.count(k - 1))
                    .filter(|&f| sets[k - 1][f].is_superset(own))
                    .collect();
                assert_eq!(faces, expected, "{name} {s:?}");
                // face i omits the i-th vertex
                for (i, (f, sign)) in x.faces(s).enumerate() {
                    let mut v = x.vertices(s).to_vec();
                    v.remove(i);
                    assert_eq!(x.vertices(f), v.as_slice());
                    assert_eq!(sign, if i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
    }
}

#[test]
fn identifiers_are_deterministic() {
    let (_, a) = setup("B3");
    let (_, b) = setup("B3");
    assert_eq!(a.to_export_text(), b.to_export_text());
    // ordered by dimension, then type by sorted complement, then coset
    let (_, x) = setup("A2");
    assert_eq!(x.simplex_type(Simplex::new(0, 0)), vec![1]);
    assert_eq!(x.simplex_type(Simplex::new(0, 3)), vec![0]);
    assert_eq!(x.simplex_of(&[0], 0), Some(Simplex::new(0, 3)));
    assert_eq!(x.simplex_of(&[0, 1], 0), None);
}

#[test]
fn export_text() {
    let (_, x) = setup("A2");
    let text = x.to_export_text();
    let recs = parse_export_text(&text).unwrap();
    assert_eq!(recs.len(), 12);
    assert_eq!(recs[0], (0, vec![0]));
    assert!(recs[6..].iter().all(|(d, v)| *d == 1 && v.len() == 2 && v[0] < 3 && v[1] >= 3));
    let edges: BTreeSet<Vec<u32>> = recs[6..].iter().map(|r| r.1.clone()).collect();
    assert_eq!(edges.len(), 6);
    assert!(parse_export_text("1 0\n").is_err());
    assert!(parse_export_text("x\n").is_err());
}

#[test]
fn fundamental_domain_shape() {
    let (_, x) = setup("A2");
    let d = x.fundamental_domain();
    assert_eq!(d.iter().filter(|s| s.dim == 1).count(), 1);
    assert_eq!(d.iter().filter(|s| s.dim == 0).count(), 2);
    let (g, x) = setup("A3");
    let d = x.fundamental_domain();
    assert_eq!(d.len(), 7);
    assert!(d.iter().all(|&s| x.coset(s) == 0));
    let whole = SubgroupHandle::whole(&g);
    let orbits = orbit_decomposition(&x, &g, &whole).unwrap();
    let reps: Vec<Simplex> = (0..3)
        .flat_map(|k| orbits.representatives[k].iter().map(move |&i| Simplex::new(k, i)))
        .collect();
    assert_eq!(reps, d);
    for (k, orbit_of) in orbits.orbit_of.iter().enumerate() {
        let hits: Vec<u32> = d.iter().filter(|s| s.dim == k).map(|s| orbit_of[s.index]).collect();
        let distinct: BTreeSet<u32> = hits.iter().copied().collect();
        assert_eq!(hits.len(), distinct.len());
        assert_eq!(distinct.len(), orbits.orbit_count(k));
    }
}

#[test]
fn action_laws() {
    let (g, x) = setup("B3");
    let s0 = g.generator(0);
    for k in 0..3 {
        for s in x.simplices(k) {
            assert_eq!(x.act(&g, 0, s), s);
        }
    }
    let sample: Vec<u32> = (0..g.size() as u32).step_by(7).collect();
    for &a in &sample {
        for &b in &sample {
            for s in x.simplices(1).step_by(5) {
                assert_eq!(x.act(&g, a, x.act(&g, b, s)), x.act(&g, g.mul(a, b), s));
            }
        }
    }
    for t in [vec![1], vec![2], vec![1, 2]] {
        let wt = x.simplex_of(&t, 0).unwrap();
        let s0wt = x.left_coset(&g, s0, &t).unwrap();
        assert_ne!(wt, s0wt);
        for &ti in &t {
            let ts0 = g.mul(g.generator(ti), s0);
            assert_eq!(x.act(&g, ts0, s0wt), wt);
        }
    }
    // chambers form one regular orbit
    let chamber = x.simplex_of(&[], 0).unwrap();
    let images: BTreeSet<Simplex> = (0..g.size() as u32).map(|w| x.act(&g, w, chamber)).collect();
    assert_eq!(images.len(), g.size());
    for w in 0..g.size() as u32 {
        assert_eq!(x.left_coset(&g, w, &[]), Some(x.act(&g, w, chamber)));
    }
    // the action preserves faces with signs
    for &w in &sample {
        for s in x.simplices(2) {
            let moved: Vec<(Simplex, i64)> = x.faces(s).map(|(f, e)| (x.act(&g, w, f), e)).collect();
            let direct: Vec<(Simplex, i64)> = x.faces(x.act(&g, w, s)).collect();
            assert_eq!(moved, direct);
        }
    }
}

#[test]
fn permutation_matches_act() {
    let (g, x) = setup("A3");
    for w in [1u32, 5, 17] {
        for k in 0..3 {
            let perm = x.permutation(&g, w, k);
            for s in x.simplices(k) {
                assert_eq!(perm[s.index] as usize, x.act(&g, w, s).index);
            }
        }
    }
}

#[test]
fn isotropy_examples() {
    let (g, x) = setup("A3");
    let alt = alternating_subgroup(&g);
    let whole = SubgroupHandle::whole(&g);
    let chamber = x.simplex_of(&[], 0).unwrap();
    assert_eq!(isotropy(&x, &g, &alt, chamber).unwrap().order(), 1);
    for t in [vec![0], vec![1, 2], vec![0, 2]] {
        let s = x.simplex_of(&t, 0).unwrap();
        assert_eq!(isotropy(&x, &g, &whole, s).unwrap(), parabolic_subgroup(&g, &t).unwrap());
    }
}

#[test]
fn alternating_isotropy_orders_rank_three() {
    for name in ["A3", "B3", "H3", "A1+A1+A1", "A1+I2(5)"] {
        let (g, x) = setup(name);
        let alt = alternating_subgroup(&g);
        for k in 0..3 {
            for s in x.simplices(k) {
                let t = x.simplex_type(s);
                let expected = if t.is_empty() {
                    1
                } else {
                    let sub = Arc::new(enumerate_group(&g.matrix().restrict(&t), 10_000).unwrap());
                    alternating_subgroup(&sub).order()
                };
                assert_eq!(isotropy(&x, &g, &alt, s).unwrap().order(), expected, "{name} {s:?}");
            }
        }
    }
}

#[test]
fn admissible_action() {
    for name in ["A2", "A3", "B3", "H3"] {
        let (g, x) = setup(name);
        let whole = SubgroupHandle::whole(&g);
        for k in 0..x.rank() {
            for s in x.simplices(k) {
                for &h in isotropy(&x, &g, &whole, s).unwrap().members() {
                    for &v in x.vertices(s) {
                        let v = Simplex::new(0, v as usize);
                        assert_eq!(x.act(&g, h, v), v);
                    }
                }
            }
        }
    }
}

#[test]
fn alternating_orbit_counts_rank_at_most_four() {
    for name in ["A1", "A2", "B2", "I2(5)", "I2(12)", "A3", "B3", "H3", "A4", "B4", "D4", "F4", "H4"] {
        let (g, x) = setup(name);
        let alt = alternating_subgroup(&g);
        let n = x.rank();
        let ones = vec![1i8; alt.generators().len()];
        for k in 0..n {
            let labels = orbit_labels(&x, &g, alt.generators(), &ones, k);
            let expected = if k == n - 1 { 2 } else { binom(n, n - k - 1) };
            assert_eq!(labels.representatives.len(), expected, "{name} dim {k}");
        }
    }
}

#[test]
fn orbit_decomposition_examples() {
    let (g, x) = setup("A2");
    let alt = alternating_subgroup(&g);
    let o = orbit_decomposition(&x, &g, &alt).unwrap();
    assert_eq!(o.orbit_counts(), vec![2, 2]);
    let triv = SubgroupHandle::trivial(&g);
    let o = orbit_decomposition(&x, &g, &triv).unwrap();
    assert_eq!(o.orbit_counts(), vec![6, 6]);
    assert!(o.isotropy.iter().flatten().all(|h| h.order() == 1));
    // representatives are the smallest index in each orbit
    let (g, x) = setup("B3");
    let alt = alternating_subgroup(&g);
    let o = orbit_decomposition(&x, &g, &alt).unwrap();
    for k in 0..3 {
        for (i, &r) in o.representatives[k].iter().enumerate() {
            let first = o.orbit_of[k].iter().position(|&q| q as usize == i).unwrap();
            assert_eq!(first, r);
        }
    }
}

#[test]
fn glued_quotient_is_a_sphere() {
    for n in 1..=6 {
        for p in [3, 5, 7] {
            let c = glued_orbit_quotient(n, p).unwrap();
            assert_eq!(c.betti(), BettiProfile::sphere(n - 1), "rank {n}");
        }
    }
    let c = glued_orbit_quotient(2, 5).unwrap();
    assert_eq!(c.dims(), &[2, 2]);
}
