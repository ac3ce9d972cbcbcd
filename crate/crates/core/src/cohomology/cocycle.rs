//! Group cohomology from normalized inhomogeneous cochains.
//!
//! C^k is spanned by functions on k-tuples of non-identity elements, with
//! (δf)(a_1..a_{k+1}) = χ(a_1) f(a_2..a_{k+1})
//!     + Σ_{i=1}^{k} (−1)^i f(.., a_i a_{i+1}, ..) + (−1)^{k+1} f(a_1..a_k).
//!
//! The row space of δ_k is spanned by the rows whose last argument is a
//! generator (δδ = 0 rewrites any row through its last argument's
//! breadth-first parent). Among those, the row
//! R(a_1..a_{k−1}, parent(h), gen(h)) contains f(a_1..a_{k−1}, h) with
//! coefficient (−1)^k and otherwise only variables whose last argument is
//! shallower, so these rows are eliminated symbolically and the remaining
//! rows are reduced over the variables whose last argument is a generator.

use crate::error::{Error, Result};
use crate::group::{Character, SubgroupHandle};
use crate::linalg::fp;
use crate::linalg::SparseEchelon;

/// A finite group as a multiplication table on 0..n with 0 the identity.
#[derive(Clone, Debug)]
pub(crate) struct GroupTable {
    pub n: usize,
    pub mult: Vec<u32>,
    /// Distinct non-identity generators.
    pub gens: Vec<u32>,
    /// Character values ±1.
    pub chi: Vec<i8>,
}

impl GroupTable {
    pub fn from_subgroup(h: &SubgroupHandle, chi: Option<&Character>) -> Self {
        let g = h.parent();
        let members = h.members();
        let n = members.len();
        let mut local = vec![u32::MAX; g.size()];
        for (i, &a) in members.iter().enumerate() {
            local[a as usize] = i as u32;
        }
        let mut mult = vec![0u32; n * n];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                mult[i * n + j] = local[g.mul(a, b) as usize];
            }
        }
        let mut gens: Vec<u32> = h.generators().iter().map(|&a| local[a as usize]).collect();
        let mut seen = std::collections::BTreeSet::new();
        gens.retain(|&x| x != 0 && seen.insert(x));
        let chi = members.iter().map(|&a| chi.map_or(1, |c| c.value(g, a))).collect();
        GroupTable { n, mult, gens, chi }
    }

    /// Z/n with generator 1 and the given character value on it.
    #[cfg(test)]
    pub fn cyclic(n: usize, chi_gen: i8) -> Self {
        let mult = (0..n * n).map(|x| ((x / n + x % n) % n) as u32).collect();
        let chi = (0..n).map(|i| if i % 2 == 1 { chi_gen } else { 1 }).collect();
        let gens = if n > 1 { vec![1] } else { Vec::new() };
        GroupTable { n, mult, gens, chi }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mult[a as usize * self.n + b as usize]
    }

    pub fn chi_is_trivial(&self) -> bool {
        self.chi.iter().all(|&c| c == 1)
    }
}

struct Bfs {
    depth: Vec<u32>,
    parent: Vec<u32>,
    gen_of: Vec<u32>,
    order: Vec<u32>,
}

fn bfs(gr: &GroupTable) -> Bfs {
    let n = gr.n;
    let mut out = Bfs {
        depth: vec![u32::MAX; n],
        parent: vec![0; n],
        gen_of: vec![u32::MAX; n],
        order: vec![0],
    };
    out.depth[0] = 0;
    let mut head = 0;
    while head < out.order.len() {
        let c = out.order[head];
        head += 1;
        for (j, &s) in gr.gens.iter().enumerate() {
            let d = gr.mul(c, s);
            if out.depth[d as usize] == u32::MAX {
                out.depth[d as usize] = out.depth[c as usize] + 1;
                out.parent[d as usize] = c;
                out.gen_of[d as usize] = j as u32;
                out.order.push(d);
            }
        }
    }
    out
}

struct Level<'a> {
    gr: &'a GroupTable,
    bfs: &'a Bfs,
    p: u32,
    k: usize,
    /// n − 1.
    m: usize,
    /// Expressions of the eliminated variables over the free ones.
    exprs: Vec<Vec<(u32, u32)>>,
    acc: Vec<u32>,
    touched: Vec<u32>,
}

impl Level<'_> {
    fn prefix_index(&self, t: &[u32]) -> usize {
        t.iter().fold(0, |acc, &a| acc * self.m + (a as usize - 1))
    }

    fn add(&mut self, col: u32, v: u32) {
        let slot = &mut self.acc[col as usize];
        if *slot == 0 {
            self.touched.push(col);
        }
        *slot = fp::add(*slot, v, self.p);
    }

    /// Adds coeff · f(t) for a k-tuple t.
    fn term(&mut self, t: &[u32], coeff: u32) {
        if coeff == 0 || t.contains(&0) {
            return;
        }
        let k = self.k;
        let last = t[k - 1];
        let prefix = self.prefix_index(&t[..k - 1]);
        if self.bfs.depth[last as usize] == 1 {
            let col = prefix * self.gr.gens.len() + self.bfs.gen_of[last as usize] as usize;
            self.add(col as u32, coeff);
        } else {
            let var = prefix * self.m + (last as usize - 1);
            let expr = std::mem::take(&mut self.exprs[var]);
            for &(c, v) in &expr {
                self.add(c, fp::mul(coeff, v, self.p));
            }
            self.exprs[var] = expr;
        }
    }

    fn sign(&self, e: usize) -> u32 {
        if e.is_multiple_of(2) {
            1
        } else {
            self.p - 1
        }
    }

    /// Accumulates scale · R(a) for a (k+1)-tuple a, skipping the merge
    /// term at position `skip` when given.
    fn row(&mut self, a: &[u32], scale: u32, skip: Option<usize>, scratch: &mut Vec<u32>) {
        let k = self.k;
        let p = self.p;
        let c0 = fp::residue(self.gr.chi[a[0] as usize] as i64, p);
        self.term(&a[1..], fp::mul(scale, c0, p));
        for i in 1..=k {
            if skip == Some(i) {
                continue;
            }
            scratch.clear();
            scratch.extend_from_slice(&a[..i - 1]);
            scratch.push(self.gr.mul(a[i - 1], a[i]));
            scratch.extend_from_slice(&a[i + 1..]);
            let t = std::mem::take(scratch);
            self.term(&t, fp::mul(scale, self.sign(i), p));
            *scratch = t;
        }
        self.term(&a[..k], fp::mul(scale, self.sign(k + 1), p));
    }

    fn drain(&mut self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.touched.len());
        for &c in &self.touched {
            let v = std::mem::take(&mut self.acc[c as usize]);
            if v != 0 {
                out.push((c, v));
            }
        }
        self.touched.clear();
        out
    }
}

/// Iterates over all k-tuples of non-identity elements in index order.
fn for_each_tuple(m: usize, k: usize, mut f: impl FnMut(&[u32])) {
    if m == 0 && k > 0 {
        return;
    }
    let mut t = vec![1u32; k];
    loop {
        f(&t);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if (t[i] as usize) < m {
                t[i] += 1;
                break;
            }
            t[i] = 1;
        }
    }
}

/// rank of δ_k : C^k → C^{k+1} for k ≥ 1, stopping once `bound` is reached.
fn rank_dk(gr: &GroupTable, bfs: &Bfs, p: u32, k: usize, bound: usize) -> usize {
    let m = gr.n - 1;
    let g = gr.gens.len();
    let free = m.pow(k as u32 - 1) * g;
    let deep: Vec<u32> = bfs.order.iter().copied().filter(|&h| bfs.depth[h as usize] >= 2).collect();
    let pivots = m.pow(k as u32 - 1) * deep.len();
    let mut lv = Level {
        gr,
        bfs,
        p,
        k,
        m,
        exprs: vec![Vec::new(); m.pow(k as u32)],
        acc: vec![0; free],
        touched: Vec::new(),
    };
    let scale = lv.sign(k + 1);
    let mut scratch = Vec::with_capacity(k + 1);
    let mut a = vec![0u32; k + 1];
    for &h in &deep {
        let parent = bfs.parent[h as usize];
        let b = gr.gens[bfs.gen_of[h as usize] as usize];
        for_each_tuple(m, k - 1, |prefix| {
            a[..k - 1].copy_from_slice(prefix);
            a[k - 1] = parent;
            a[k] = b;
            lv.row(&a, scale, Some(k), &mut scratch);
            let var = lv.prefix_index(prefix) * m + (h as usize - 1);
            lv.exprs[var] = lv.drain();
        });
    }
    if pivots >= bound {
        return pivots.min(bound);
    }
    let rest_bound = (bound - pivots).min(free);
    let mut ech = SparseEchelon::new(p, free);
    if rest_bound > 0 {
        let mut done = false;
        for_each_tuple(m, k, |t| {
            if done {
                return;
            }
            let last = t[k - 1];
            for (j, &b) in gr.gens.iter().enumerate() {
                let h = gr.mul(last, b);
                let is_pivot = h != 0
                    && bfs.depth[h as usize] >= 2
                    && bfs.parent[h as usize] == last
                    && bfs.gen_of[h as usize] == j as u32;
                if is_pivot {
                    continue;
                }
                a[..k].copy_from_slice(t);
                a[k] = b;
                lv.row(&a, 1, None, &mut scratch);
                let row = lv.drain();
                if !row.is_empty() {
                    ech.insert(&row);
                    if ech.rank() >= rest_bound {
                        done = true;
                        return;
                    }
                }
            }
        });
    }
    pivots + ech.rank()
}

/// Rough working-set estimate in bytes for degrees up to `kmax`.
pub(crate) fn memory_estimate(n: usize, kmax: usize) -> u128 {
    (n as u128).pow(kmax as u32 + 1) * 16
}

/// Default element cap of the cocycle method for a degree bound.
pub fn default_cocycle_cap(kmax: usize) -> usize {
    match kmax {
        0 | 1 => 2_000,
        2 => 130,
        3 => 70,
        _ => 30,
    }
}

/// dim H^k for k = 0..=kmax.
pub(crate) fn cocycle_dims(gr: &GroupTable, p: u32, kmax: usize) -> Vec<usize> {
    let m = gr.n - 1;
    let bfs = bfs(gr);
    assert_eq!(bfs.order.len(), gr.n, "generators do not generate");
    let dim_c = |k: usize| m.pow(k as u32);
    let mut ranks = Vec::with_capacity(kmax + 1);
    ranks.push(usize::from(!gr.chi_is_trivial()));
    for k in 1..=kmax {
        let bound = (dim_c(k) - ranks[k - 1]).min(dim_c(k + 1));
        ranks.push(if m == 0 { 0 } else { rank_dk(gr, &bfs, p, k, bound) });
    }
    (0..=kmax)
        .map(|k| dim_c(k) - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
        .collect()
}

pub(crate) fn check_cocycle_limits(n: usize, kmax: usize, cap: Option<usize>, budget: u64) -> Result<()> {
    let cap = cap.unwrap_or_else(|| default_cocycle_cap(kmax));
    if n > cap {
        return Err(Error::CapExceeded {
            what: "group elements for the cocycle method",
            limit: cap,
            possibly_infinite: false,
        });
    }
    let needed = memory_estimate(n, kmax);
    if needed > budget as u128 {
        return Err(Error::MemoryBudget { needed, budget });
    }
    Ok(())
}
