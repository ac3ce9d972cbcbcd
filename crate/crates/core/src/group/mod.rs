//! Finite Coxeter groups realized as permutation groups on their own
//! elements, plus coset tables of parabolic subgroups, subgroups as
//! explicit member sets, one-dimensional characters and cyclic Sylow data.

mod cache;
mod sylow;
mod todd_coxeter;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

pub use cache::CosetCache;
pub use sylow::{sylow_cyclic, CyclicSylowData, SylowOutcome};

use crate::coxeter::{CoxeterMatrix, Order};
use crate::error::{Error, Result};

/// Default bound on the number of group elements or cosets materialized.
pub const DEFAULT_GROUP_CAP: usize = 60_000;

/// Generator subset as a bitmask over generator indices.
pub type GenSet = u32;

pub fn gen_set(gens: &[usize]) -> GenSet {
    gens.iter().fold(0, |acc, &g| acc | (1 << g))
}

pub fn gen_list(set: GenSet) -> Vec<usize> {
    (0..32).filter(|&g| set & (1 << g) != 0).collect()
}

/// Complete coset table of a parabolic subgroup W_T, numbered breadth-first
/// from W_T itself (coset 0) with generators tried in index order, so
/// coset words are shortlex-minimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    subgroup_generators: Vec<usize>,
    action: Vec<Vec<u32>>,
    parent: Vec<(u32, u8)>,
    depth: Vec<u32>,
}

impl CosetTable {
    pub(crate) fn from_action(subgroup_generators: Vec<usize>, action: Vec<Vec<u32>>) -> Result<Self> {
        let k = action.first().map_or(1, Vec::len);
        let mut parent = vec![(u32::MAX, 0u8); k];
        let mut depth = vec![u32::MAX; k];
        depth[0] = 0;
        parent[0] = (0, 0);
        let mut order = vec![0u32];
        let mut head = 0;
        while head < order.len() {
            let c = order[head] as usize;
            head += 1;
            for (g, col) in action.iter().enumerate() {
                let d = col[c] as usize;
                if depth[d] == u32::MAX {
                    depth[d] = depth[c] + 1;
                    parent[d] = (c as u32, g as u8);
                    order.push(d as u32);
                }
            }
        }
        if order.len() != k || order.iter().enumerate().any(|(i, &c)| i as u32 != c) {
            return Err(Error::Integrity(
                "coset table is not connected or not in breadth-first order".into(),
            ));
        }
        Ok(CosetTable {
            subgroup_generators,
            action,
            parent,
            depth,
        })
    }

    /// Number of cosets, [W : W_T].
    pub fn len(&self) -> usize {
        self.depth.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn subgroup_generators(&self) -> &[usize] {
        &self.subgroup_generators
    }

    pub fn ngens(&self) -> usize {
        self.action.len()
    }

    /// Right action: coset `c · s`.
    #[inline]
    pub fn act(&self, c: u32, s: usize) -> u32 {
        self.action[s][c as usize]
    }

    pub fn column(&self, s: usize) -> &[u32] {
        &self.action[s]
    }

    pub fn trace(&self, c: u32, word: impl IntoIterator<Item = u8>) -> u32 {
        word.into_iter().fold(c, |x, s| self.act(x, s as usize))
    }

    /// Shortlex-minimal word w with coset 0 · w = c.
    pub fn word(&self, c: u32) -> Vec<u8> {
        let mut w = Vec::with_capacity(self.depth[c as usize] as usize);
        let mut x = c;
        while x != 0 {
            let (prev, g) = self.parent[x as usize];
            w.push(g);
            x = prev;
        }
        w.reverse();
        w
    }

    pub fn depth(&self, c: u32) -> u32 {
        self.depth[c as usize]
    }

    /// Breadth-first parent `(coset, generator)`; coset 0 is its own parent.
    pub fn parent(&self, c: u32) -> (u32, u8) {
        self.parent[c as usize]
    }
}

fn possibly_infinite(m: &CoxeterMatrix) -> bool {
    !m.order().is_finite()
}

/// Coset table of W_T in W.
pub fn coset_table(m: &CoxeterMatrix, t: &[usize], cap: usize) -> Result<CosetTable> {
    coset_table_cached(m, t, cap, None)
}

pub fn coset_table_cached(
    m: &CoxeterMatrix,
    t: &[usize],
    cap: usize,
    cache: Option<&CosetCache>,
) -> Result<CosetTable> {
    m.validate().map_err(Error::InvalidMatrix)?;
    let mut t: Vec<usize> = t.to_vec();
    t.sort_unstable();
    t.dedup();
    if let Some(&bad) = t.iter().find(|&&g| g >= m.rank()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            size: m.rank(),
        });
    }
    if let Some(cache) = cache {
        if let Some(table) = cache.load(m, &t, cap) {
            return Ok(table);
        }
    }
    let finite = match m.order() {
        Order::Finite(n) => Some(n),
        Order::Infinite => None,
    };
    let limit = match finite {
        Some(n) => {
            let sub = m.restrict(&t).order();
            let index = if t.is_empty() {
                n
            } else {
                n / sub.finite().expect("parabolic of a finite group is finite")
            };
            let index = usize::try_from(index).unwrap_or(usize::MAX);
            if index > cap {
                return Err(Error::CapExceeded {
                    what: "cosets",
                    limit: cap,
                    possibly_infinite: false,
                });
            }
            // slack for transient cosets
            2 * index + 64
        }
        None => cap,
    };
    let enumerated = todd_coxeter::enumerate(m, &t, limit).map_err(|e| match e {
        Error::CapExceeded { .. } => Error::CapExceeded {
            what: "cosets",
            limit: cap,
            possibly_infinite: possibly_infinite(m),
        },
        other => other,
    })?;
    if enumerated.action[0].len() > cap {
        return Err(Error::CapExceeded {
            what: "cosets",
            limit: cap,
            possibly_infinite: false,
        });
    }
    let table = CosetTable::from_action(t, enumerated.action)?;
    if let Some(cache) = cache {
        cache.store(m, &table, cap)?;
    }
    Ok(table)
}

/// A finite Coxeter group as the right regular permutation representation
/// on its elements. Element 0 is the identity; numbering is shortlex by
/// reduced word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRealization {
    matrix: CoxeterMatrix,
    table: CosetTable,
}

impl GroupRealization {
    pub fn from_regular_table(matrix: CoxeterMatrix, table: CosetTable) -> Result<Self> {
        if !table.subgroup_generators().is_empty() || table.ngens() != matrix.rank() {
            return Err(Error::Integrity("not a regular coset table".into()));
        }
        Ok(GroupRealization { matrix, table })
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn regular_table(&self) -> &CosetTable {
        &self.table
    }

    /// The element a · s.
    #[inline]
    pub fn mul_gen(&self, a: u32, s: usize) -> u32 {
        self.table.act(a, s)
    }

    /// Permutation of element indices induced by right multiplication by s.
    pub fn gen_perm(&self, s: usize) -> &[u32] {
        self.table.column(s)
    }

    pub fn generator(&self, s: usize) -> u32 {
        self.table.act(0, s)
    }

    pub fn word(&self, a: u32) -> Vec<u8> {
        self.table.word(a)
    }

    /// Coxeter length of a (length of its stored reduced word).
    pub fn length(&self, a: u32) -> u32 {
        self.table.depth(a)
    }

    pub fn element_of_word(&self, word: impl IntoIterator<Item = u8>) -> u32 {
        self.table.trace(0, word)
    }

    fn check(&self, a: u32) -> Result<()> {
        if (a as usize) < self.size() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: a as usize,
                size: self.size(),
            })
        }
    }

    /// a · b without bounds checks beyond slice indexing.
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let mut x = a;
        let mut path = Vec::with_capacity(self.table.depth(b) as usize);
        let mut y = b;
        while y != 0 {
            let (prev, g) = self.table.parent(y);
            path.push(g);
            y = prev;
        }
        for &g in path.iter().rev() {
            x = self.mul_gen(x, g as usize);
        }
        x
    }

    pub fn inv(&self, a: u32) -> u32 {
        // the reduced word of a read backwards, since generators are involutions
        let mut x = 0;
        let mut y = a;
        while y != 0 {
            let (prev, g) = self.table.parent(y);
            x = self.mul_gen(x, g as usize);
            y = prev;
        }
        x
    }

    pub fn multiply(&self, a: u32, b: u32) -> Result<u32> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn invert(&self, a: u32) -> Result<u32> {
        self.check(a)?;
        Ok(self.inv(a))
    }

    pub fn element_order(&self, a: u32) -> Result<u64> {
        self.check(a)?;
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        Ok(k)
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        (0..e).fold(0, |x, _| self.mul(x, a))
    }

    /// w · a · w^-1
    pub fn conjugate(&self, w: u32, a: u32) -> u32 {
        self.mul(self.mul(w, a), self.inv(w))
    }

    pub fn sign(&self, a: u32) -> Result<i8> {
        self.check(a)?;
        Ok(if self.length(a).is_multiple_of(2) { 1 } else { -1 })
    }
}

pub fn enumerate_group(m: &CoxeterMatrix, cap: usize) -> Result<GroupRealization> {
    enumerate_group_cached(m, cap, None)
}

pub fn enumerate_group_cached(
    m: &CoxeterMatrix,
    cap: usize,
    cache: Option<&CosetCache>,
) -> Result<GroupRealization> {
    let table = coset_table_cached(m, &[], cap, cache)?;
    GroupRealization::from_regular_table(m.clone(), table)
}

/// A subgroup of a realized group, stored as its sorted member set together
/// with a generating set.
#[derive(Clone, Debug)]
pub struct SubgroupHandle {
    parent: Arc<GroupRealization>,
    members: Vec<u32>,
    generators: Vec<u32>,
}

impl PartialEq for SubgroupHandle {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.members == other.members
    }
}

impl Eq for SubgroupHandle {}

impl SubgroupHandle {
    /// The subgroup generated by `generators`.
    pub fn generated_by(parent: &Arc<GroupRealization>, generators: &[u32]) -> Result<Self> {
        for &g in generators {
            parent.check(g)?;
        }
        let mut gens: Vec<u32> = generators.iter().copied().filter(|&g| g != 0).collect();
        let mut seen = BTreeSet::new();
        gens.retain(|g| seen.insert(*g));
        let members = closure(parent, &gens);
        Ok(SubgroupHandle {
            parent: Arc::clone(parent),
            members,
            generators: gens,
        })
    }

    /// Wraps a member set that the caller knows to be a subgroup, picking a
    /// generating set greedily.
    pub fn from_members(parent: &Arc<GroupRealization>, mut members: Vec<u32>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let mut gens = Vec::new();
        let mut span = vec![0u32];
        for &m in &members {
            if span.binary_search(&m).is_err() {
                gens.push(m);
                span = closure(parent, &gens);
            }
        }
        if span != members {
            return Err(Error::Integrity("member set is not closed under multiplication".into()));
        }
        Ok(SubgroupHandle {
            parent: Arc::clone(parent),
            members,
            generators: gens,
        })
    }

    pub fn trivial(parent: &Arc<GroupRealization>) -> Self {
        SubgroupHandle {
            parent: Arc::clone(parent),
            members: vec![0],
            generators: Vec::new(),
        }
    }

    pub fn whole(parent: &Arc<GroupRealization>) -> Self {
        SubgroupHandle {
            parent: Arc::clone(parent),
            members: (0..parent.size() as u32).collect(),
            generators: (0..parent.rank()).map(|s| parent.generator(s)).collect(),
        }
    }

    pub fn parent(&self) -> &Arc<GroupRealization> {
        &self.parent
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn generator_words(&self) -> Vec<Vec<u8>> {
        self.generators.iter().map(|&g| self.parent.word(g)).collect()
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, a: u32) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &SubgroupHandle) -> bool {
        self.members.iter().all(|&a| other.contains(a))
    }

    pub fn intersection(&self, other: &SubgroupHandle) -> Result<SubgroupHandle> {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&a| other.contains(a))
            .collect();
        SubgroupHandle::from_members(&self.parent, members)
    }

    /// Whether w H w^-1 = H for every w in `by`.
    pub fn is_normalized_by(&self, by: &[u32]) -> bool {
        by.iter().all(|&w| {
            self.generators
                .iter()
                .all(|&h| self.contains(self.parent.conjugate(w, h)))
        })
    }
}

fn closure(parent: &GroupRealization, gens: &[u32]) -> Vec<u32> {
    let mut seen = vec![false; parent.size()];
    seen[0] = true;
    let mut out = vec![0u32];
    let mut head = 0;
    while head < out.len() {
        let a = out[head];
        head += 1;
        for &g in gens {
            let b = parent.mul(a, g);
            if !seen[b as usize] {
                seen[b as usize] = true;
                out.push(b);
            }
        }
    }
    out.sort_unstable();
    out
}

/// The kernel of the sign homomorphism, generated by s0·s for s != s0.
pub fn alternating_subgroup(g: &Arc<GroupRealization>) -> SubgroupHandle {
    let members = (0..g.size() as u32).filter(|&a| g.length(a).is_multiple_of(2)).collect();
    let s0 = g.generator(0);
    let generators = (1..g.rank()).map(|s| g.mul(s0, g.generator(s))).collect();
    SubgroupHandle {
        parent: Arc::clone(g),
        members,
        generators,
    }
}

/// The standard parabolic subgroup W_T.
pub fn parabolic_subgroup(g: &Arc<GroupRealization>, t: &[usize]) -> Result<SubgroupHandle> {
    if let Some(&bad) = t.iter().find(|&&s| s >= g.rank()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            size: g.rank(),
        });
    }
    let gens: Vec<u32> = t.iter().map(|&s| g.generator(s)).collect();
    SubgroupHandle::generated_by(g, &gens)
}

/// w H w^-1.
pub fn conjugate_subgroup(g: &Arc<GroupRealization>, h: &SubgroupHandle, w: u32) -> Result<SubgroupHandle> {
    g.check(w)?;
    let winv = g.inv(w);
    let mut members: Vec<u32> = h
        .members
        .iter()
        .map(|&a| g.mul(g.mul(w, a), winv))
        .collect();
    members.sort_unstable();
    let generators = h
        .generators
        .iter()
        .map(|&a| g.mul(g.mul(w, a), winv))
        .collect();
    Ok(SubgroupHandle {
        parent: Arc::clone(g),
        members,
        generators,
    })
}

/// A one-dimensional representation with values ±1 on the Coxeter
/// generators, extended multiplicatively.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Character {
    name: String,
    values: Vec<i8>,
}

impl Character {
    pub fn trivial(rank: usize) -> Self {
        Character {
            name: "trivial".into(),
            values: vec![1; rank],
        }
    }

    /// Every Coxeter generator acts by -1.
    pub fn sign(rank: usize) -> Self {
        Character {
            name: "sign".into(),
            values: vec![-1; rank],
        }
    }

    /// A character given by its generator values; it is well defined iff
    /// generators joined by an odd label take the same value.
    pub fn from_values(m: &CoxeterMatrix, name: &str, values: Vec<i8>) -> Result<Self> {
        if values.len() != m.rank() {
            return Err(Error::CharacterIllDefined(format!(
                "{} values for {} generators",
                values.len(),
                m.rank()
            )));
        }
        if values.iter().any(|&v| v != 1 && v != -1) {
            return Err(Error::CharacterIllDefined("values must be ±1".into()));
        }
        for s in 0..m.rank() {
            for t in (s + 1)..m.rank() {
                if let Some(k) = m.get(s, t).finite() {
                    if k % 2 == 1 && values[s] != values[t] {
                        return Err(Error::CharacterIllDefined(format!(
                            "(s{} s{})^{k} = 1 forces equal values",
                            s + 1,
                            t + 1
                        )));
                    }
                }
            }
        }
        Ok(Character {
            name: name.into(),
            values,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generator_values(&self) -> &[i8] {
        &self.values
    }

    pub fn value(&self, g: &GroupRealization, a: u32) -> i8 {
        g.word(a).iter().map(|&s| self.values[s as usize]).product()
    }

    pub fn is_trivial_on(&self, h: &SubgroupHandle) -> bool {
        h.generators().iter().all(|&a| self.value(h.parent(), a) == 1)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}
