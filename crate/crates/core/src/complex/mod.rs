//! The Coxeter complex of a finite Coxeter group: one simplex per left coset
//! wW_T with T a proper subset of S, ordered by reverse inclusion.
//!
//! A simplex is stored as `(T, c)` where `c` indexes a right coset W_T·u in
//! the coset table of W_T; it stands for the left coset u⁻¹W_T. Its vertices
//! are the cosets u⁻¹W_{S∖{s}} for s ∉ T, listed by increasing s, and vertex
//! identifiers are numbered type-major, so that order is also the order by
//! identifier and is preserved by the group action.

mod orbits;

use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

pub use orbits::{glued_orbit_quotient, isotropy, orbit_decomposition, OrbitDecomposition};
pub(crate) use orbits::orbit_labels;

use crate::coxeter::CoxeterMatrix;
use crate::error::{Error, Result};
use crate::group::{coset_table_cached, gen_list, CosetCache, CosetTable, GenSet, GroupRealization};

/// Default bound on the total number of simplices.
pub const DEFAULT_SIMPLEX_CAP: usize = 2_000_000;

/// A simplex identifier: dimension and position within that dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Simplex {
    pub dim: usize,
    pub index: usize,
}

impl Simplex {
    pub fn new(dim: usize, index: usize) -> Self {
        Simplex { dim, index }
    }
}

#[derive(Clone, Debug)]
struct Block {
    t: GenSet,
    start: usize,
    len: usize,
}

#[derive(Clone, Debug)]
pub struct CoxeterComplex {
    matrix: CoxeterMatrix,
    /// Coset tables indexed by the bitmask of T; `None` for T = S.
    tables: Vec<Option<Arc<CosetTable>>>,
    /// Per dimension, the types in canonical order.
    blocks: Vec<Vec<Block>>,
    /// Per mask, `(dimension, block position)`.
    block_of: Vec<(usize, usize)>,
    counts: Vec<usize>,
    /// Per dimension k, k+1 vertex identifiers per simplex.
    vertices: Vec<Vec<u32>>,
    /// Per dimension k ≥ 1, k+1 face indices per simplex; face i has sign (−1)^i.
    faces: Vec<Vec<u32>>,
}

/// Subsets of {0..n} of size `size`, ordered lexicographically by their
/// sorted complements.
fn canonical_types(n: usize, size: usize) -> Vec<GenSet> {
    let full: GenSet = (1 << n) - 1;
    let mut ts: Vec<GenSet> = (0..=full).filter(|t| t.count_ones() as usize == size).collect();
    ts.sort_by_key(|&t| gen_list(full & !t));
    ts
}

/// `proj[c]` = the coset of W_{T'} containing the coset `c` of W_T, T ⊆ T'.
fn projection(from: &CosetTable, to: &CosetTable) -> Vec<u32> {
    let mut proj = vec![0u32; from.len()];
    for c in 1..from.len() as u32 {
        let (prev, g) = from.parent(c);
        proj[c as usize] = to.act(proj[prev as usize], g as usize);
    }
    proj
}

/// Builds the complex, enumerating each parabolic coset table (through the
/// cache when given). Refuses when the total simplex count exceeds `cap`.
pub fn build_coxeter_complex(
    g: &GroupRealization,
    cap: usize,
    cache: Option<&CosetCache>,
) -> Result<CoxeterComplex> {
    let m = g.matrix();
    let n = m.rank();
    if n > 16 {
        return Err(Error::CapExceeded {
            what: "generators for a Coxeter complex",
            limit: 16,
            possibly_infinite: false,
        });
    }
    let full: GenSet = (1 << n) - 1;
    let size = g.size();
    let mut total = 0usize;
    for t in 0..full {
        let sub = m.restrict(&gen_list(t)).order();
        let sub = sub.as_u64().expect("parabolic subgroups of a realized group are finite");
        total = total.saturating_add(size / sub as usize);
    }
    if total > cap {
        return Err(Error::CapExceeded {
            what: "simplices",
            limit: cap,
            possibly_infinite: false,
        });
    }
    let mut tables: Vec<Option<Arc<CosetTable>>> = vec![None; 1 << n];
    tables[0] = Some(Arc::new(g.regular_table().clone()));
    for t in 1..full {
        tables[t as usize] = Some(Arc::new(coset_table_cached(m, &gen_list(t), size, cache)?));
    }
    let mut blocks = Vec::with_capacity(n);
    let mut block_of = vec![(usize::MAX, usize::MAX); 1 << n];
    let mut counts = Vec::with_capacity(n);
    for k in 0..n {
        let mut start = 0;
        let mut row = Vec::new();
        for (pos, t) in canonical_types(n, n - k - 1).into_iter().enumerate() {
            let len = tables[t as usize].as_ref().expect("proper subset").len();
            block_of[t as usize] = (k, pos);
            row.push(Block { t, start, len });
            start += len;
        }
        counts.push(start);
        blocks.push(row);
    }
    let mut x = CoxeterComplex {
        matrix: m.clone(),
        tables,
        blocks,
        block_of,
        counts,
        vertices: Vec::with_capacity(n),
        faces: Vec::with_capacity(n),
    };
    for k in 0..n {
        let mut verts = Vec::with_capacity(x.counts[k] * (k + 1));
        let mut faces = Vec::with_capacity(if k == 0 { 0 } else { x.counts[k] * (k + 1) });
        for b in &x.blocks[k] {
            let table = x.table(b.t);
            let missing = gen_list(full & !b.t);
            let vproj: Vec<(usize, Vec<u32>)> = missing
                .iter()
                .map(|&s| {
                    let v = full & !(1 << s);
                    (x.start_of(v), projection(table, x.table(v)))
                })
                .collect();
            let fproj: Vec<(usize, Vec<u32>)> = if k == 0 {
                Vec::new()
            } else {
                missing
                    .iter()
                    .map(|&s| {
                        let f = b.t | (1 << s);
                        (x.start_of(f), projection(table, x.table(f)))
                    })
                    .collect()
            };
            for c in 0..b.len {
                verts.extend(vproj.iter().map(|(start, p)| (start + p[c] as usize) as u32));
                faces.extend(fproj.iter().map(|(start, p)| (start + p[c] as usize) as u32));
            }
        }
        x.vertices.push(verts);
        x.faces.push(faces);
    }
    Ok(x)
}

impl CoxeterComplex {
    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// |S| − 1.
    pub fn dimension(&self) -> usize {
        self.rank() - 1
    }

    pub fn count(&self, dim: usize) -> usize {
        self.counts.get(dim).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total_simplices(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn simplices(&self, dim: usize) -> impl Iterator<Item = Simplex> {
        (0..self.count(dim)).map(move |i| Simplex::new(dim, i))
    }

    fn table(&self, t: GenSet) -> &CosetTable {
        self.tables[t as usize].as_deref().expect("proper subset")
    }

    fn start_of(&self, t: GenSet) -> usize {
        let (k, pos) = self.block_of[t as usize];
        self.blocks[k][pos].start
    }

    fn block(&self, s: Simplex) -> &Block {
        let row = &self.blocks[s.dim];
        let pos = row.partition_point(|b| b.start + b.len <= s.index);
        &row[pos]
    }

    /// The coset table of W_T for a proper subset T.
    pub fn coset_table(&self, t: &[usize]) -> Option<&CosetTable> {
        let mask = crate::group::gen_set(t);
        self.tables.get(mask as usize)?.as_deref()
    }

    /// Generator subset T of the simplex wW_T.
    pub fn simplex_type(&self, s: Simplex) -> Vec<usize> {
        gen_list(self.block(s).t)
    }

    pub fn simplex_type_mask(&self, s: Simplex) -> GenSet {
        self.block(s).t
    }

    /// Coset index of the simplex within the table of its type.
    pub fn coset(&self, s: Simplex) -> u32 {
        (s.index - self.block(s).start) as u32
    }

    /// The simplex (T, coset).
    pub fn simplex_of(&self, t: &[usize], coset: u32) -> Option<Simplex> {
        let mask = crate::group::gen_set(t);
        let &(k, pos) = self.block_of.get(mask as usize)?;
        if k == usize::MAX {
            return None;
        }
        let b = &self.blocks[k][pos];
        ((coset as usize) < b.len).then(|| Simplex::new(k, b.start + coset as usize))
    }

    /// The simplex wW_T for a group element w.
    pub fn left_coset(&self, g: &GroupRealization, w: u32, t: &[usize]) -> Option<Simplex> {
        let table = self.coset_table(t)?;
        let c = table.trace(0, g.word(g.inv(w)));
        self.simplex_of(t, c)
    }

    /// Sorted vertex identifiers; vertex identifiers are the 0-simplex indices.
    pub fn vertices(&self, s: Simplex) -> &[u32] {
        let k = s.dim + 1;
        &self.vertices[s.dim][s.index * k..s.index * k + k]
    }

    /// Codimension-one faces with incidence signs.
    pub fn faces(&self, s: Simplex) -> impl Iterator<Item = (Simplex, i64)> + '_ {
        let k = if s.dim == 0 { 0 } else { s.dim + 1 };
        self.faces[s.dim][s.index * k..s.index * k + k]
            .iter()
            .enumerate()
            .map(move |(i, &f)| (Simplex::new(s.dim - 1, f as usize), if i % 2 == 0 { 1 } else { -1 }))
    }

    /// The simplices W_T, one per proper subset T.
    pub fn fundamental_domain(&self) -> Vec<Simplex> {
        (0..self.rank())
            .flat_map(|k| self.blocks[k].iter().map(move |b| Simplex::new(k, b.start)))
            .collect()
    }

    /// w·σ, by right-multiplying the stored right coset by w⁻¹.
    pub fn act(&self, g: &GroupRealization, w: u32, s: Simplex) -> Simplex {
        let b = self.block(s);
        let mut word = g.word(w);
        word.reverse();
        let c = self.table(b.t).trace((s.index - b.start) as u32, word);
        Simplex::new(s.dim, b.start + c as usize)
    }

    /// The permutation of `dim`-simplices induced by w.
    pub fn permutation(&self, g: &GroupRealization, w: u32, dim: usize) -> Vec<u32> {
        let mut word = g.word(w);
        word.reverse();
        let mut out = Vec::with_capacity(self.count(dim));
        for b in &self.blocks[dim] {
            let table = self.table(b.t);
            out.extend((0..b.len as u32).map(|c| (b.start as u32) + table.trace(c, word.iter().copied())));
        }
        out
    }

    /// One simplex per line: dimension, then sorted vertex identifiers.
    pub fn to_export_text(&self) -> String {
        let mut out = String::new();
        for k in 0..self.rank() {
            for s in self.simplices(k) {
                let _ = write!(out, "{k}");
                for v in self.vertices(s) {
                    let _ = write!(out, " {v}");
                }
                out.push('\n');
            }
        }
        out
    }
}

/// Parses the export format back into `(dimension, vertices)` records.
pub fn parse_export_text(text: &str) -> Result<Vec<(usize, Vec<u32>)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(ln, line)| {
            let nums: Vec<u64> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::parse(ln, format!("line {}: expected integers", ln + 1)))?;
            let (&dim, verts) = nums
                .split_first()
                .ok_or_else(|| Error::parse(ln, "empty record"))?;
            if verts.len() as u64 != dim + 1 {
                return Err(Error::parse(
                    ln,
                    format!("line {}: dimension {dim} needs {} vertices", ln + 1, dim + 1),
                ));
            }
            Ok((dim as usize, verts.iter().map(|&v| v as u32).collect()))
        })
        .collect()
}

#[cfg(test)]
mod tests;
