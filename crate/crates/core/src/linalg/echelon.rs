//! Rank computations over F_p.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::fp::{self, FpMatrix};

const NO_PIVOT: u32 = u32::MAX;

/// Column-count bound for the dense path.
pub const DENSE_COLUMN_LIMIT: usize = 5_000;
/// Entry-count bound for the dense path.
const DENSE_ENTRY_LIMIT: usize = 1 << 20;

/// Incremental row echelon form with rows keyed by their leading column.
/// Stored rows are monic and never reduced against later pivots.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    p: u32,
    pivot_of_col: Vec<u32>,
    rows: Vec<Vec<(u32, u32)>>,
    acc: Vec<u32>,
    queued: Vec<bool>,
    heap: BinaryHeap<Reverse<u32>>,
}

impl SparseEchelon {
    pub fn new(p: u32, cols: usize) -> Self {
        SparseEchelon {
            p,
            pivot_of_col: vec![NO_PIVOT; cols],
            rows: Vec::new(),
            acc: vec![0; cols],
            queued: vec![false; cols],
            heap: BinaryHeap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.pivot_of_col.len()
    }

    /// Total stored entries, a proxy for fill-in.
    pub fn stored_entries(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    fn enqueue(&mut self, c: u32) {
        if !self.queued[c as usize] {
            self.queued[c as usize] = true;
            self.heap.push(Reverse(c));
        }
    }

    /// Adds a row given as `(col, value)` pairs (any order, duplicates summed).
    /// Returns true when the row was independent of the rows already stored.
    pub fn insert(&mut self, row: &[(u32, u32)]) -> bool {
        let p = self.p;
        for &(c, v) in row {
            self.acc[c as usize] = fp::add(self.acc[c as usize], v % p, p);
            self.enqueue(c);
        }
        while let Some(Reverse(c)) = self.heap.pop() {
            self.queued[c as usize] = false;
            let v = std::mem::take(&mut self.acc[c as usize]);
            if v == 0 {
                continue;
            }
            let pr = self.pivot_of_col[c as usize];
            if pr == NO_PIVOT {
                let scale = fp::inv(v, p);
                let mut out = vec![(c, 1)];
                while let Some(Reverse(d)) = self.heap.pop() {
                    self.queued[d as usize] = false;
                    let w = std::mem::take(&mut self.acc[d as usize]);
                    if w != 0 {
                        out.push((d, fp::mul(w, scale, p)));
                    }
                }
                self.pivot_of_col[c as usize] = self.rows.len() as u32;
                self.rows.push(out);
                return true;
            }
            let pivot = std::mem::take(&mut self.rows[pr as usize]);
            for &(d, w) in &pivot[1..] {
                self.acc[d as usize] = fp::sub(self.acc[d as usize], fp::mul(v, w, p), p);
                self.enqueue(d);
            }
            self.rows[pr as usize] = pivot;
        }
        false
    }
}

/// Rank by Gaussian elimination on a dense copy.
pub fn rank_dense(a: &FpMatrix) -> usize {
    let p = a.p();
    let mut m = a.to_dense();
    let cols = a.ncols();
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, r);
        let scale = fp::inv(m[rank][c], p);
        for x in &mut m[rank][c..] {
            *x = fp::mul(*x, scale, p);
        }
        let (top, bottom) = m.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in bottom.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                if pivot[j] != 0 {
                    row[j] = fp::sub(row[j], fp::mul(f, pivot[j], p), p);
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Rank by sparse elimination; fewer rows than columns goes row-wise,
/// otherwise the transpose is reduced.
pub fn rank_sparse(a: &FpMatrix) -> usize {
    let t;
    let m = if a.nrows() > a.ncols() {
        t = a.transpose();
        &t
    } else {
        a
    };
    let mut ech = SparseEchelon::new(m.p(), m.ncols());
    let bound = m.nrows().min(m.ncols());
    for row in m.rows() {
        ech.insert(row);
        if ech.rank() == bound {
            break;
        }
    }
    ech.rank()
}

/// Rank over F_p. Small matrices are reduced densely, everything else sparsely.
pub fn rank_fp(a: &FpMatrix) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    if a.ncols() < DENSE_COLUMN_LIMIT && a.nrows().saturating_mul(a.ncols()) <= DENSE_ENTRY_LIMIT {
        rank_dense(a)
    } else {
        rank_sparse(a)
    }
}
