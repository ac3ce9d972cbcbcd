//! Arithmetic in F_p and sparse matrices over it.
//!
//! Dump format: a header line `p rows cols`, then one `row col value` line
//! per nonzero entry, rows and columns 0-based, entries in row-major order.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Largest modulus for which residues and their products stay in range.
pub const MAX_PRIME: u64 = 65_535;

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn pow(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue; p must be prime.
pub fn inv(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow(a, p as u64 - 2, p)
}

/// Reduces a signed integer to a residue in 0..p.
#[inline]
pub fn residue(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

pub(crate) fn check_modulus(p: u64) -> Result<u32> {
    crate::coxeter::check_odd_prime(p)?;
    if p > MAX_PRIME {
        return Err(Error::PrimeTooLarge(p));
    }
    Ok(p as u32)
}

/// Sparse matrix over F_p. Each row is a list of `(col, value)` with strictly
/// increasing columns and values in 1..p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    cols: usize,
    rows: Vec<Vec<(u32, u32)>>,
}

impl FpMatrix {
    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix { p, cols, rows: vec![Vec::new(); rows] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        FpMatrix { p, cols: n, rows: (0..n as u32).map(|i| vec![(i, 1 % p)]).collect() }
    }

    /// Builds a matrix from signed entries; duplicates are summed, zeros dropped.
    pub fn from_signed_rows(p: u32, cols: usize, rows: Vec<Vec<(usize, i64)>>) -> Self {
        let rows = rows
            .into_iter()
            .map(|mut r| {
                r.sort_unstable_by_key(|e| e.0);
                let mut out: Vec<(u32, u32)> = Vec::with_capacity(r.len());
                for (c, v) in r {
                    assert!(c < cols, "column {c} out of range {cols}");
                    let v = residue(v, p);
                    match out.last_mut() {
                        Some(last) if last.0 as usize == c => last.1 = add(last.1, v, p),
                        _ => out.push((c as u32, v)),
                    }
                }
                out.retain(|e| e.1 != 0);
                out
            })
            .collect();
        FpMatrix { p, cols, rows }
    }

    pub fn from_triples(p: u32, rows: usize, cols: usize, triples: &[(usize, usize, i64)]) -> Self {
        let mut by_row = vec![Vec::new(); rows];
        for &(r, c, v) in triples {
            by_row[r].push((c, v));
        }
        Self::from_signed_rows(p, cols, by_row)
    }

    pub fn from_dense(p: u32, dense: &[Vec<i64>]) -> Self {
        let cols = dense.first().map_or(0, Vec::len);
        let rows = dense
            .iter()
            .map(|r| r.iter().enumerate().map(|(c, &v)| (c, v)).collect())
            .collect();
        Self::from_signed_rows(p, cols, rows)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(u32, u32)] {
        &self.rows[r]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[(u32, u32)]> {
        self.rows.iter().map(Vec::as_slice)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.rows[r]
            .binary_search_by_key(&(c as u32), |e| e.0)
            .map_or(0, |i| self.rows[r][i].1)
    }

    pub fn to_dense(&self) -> Vec<Vec<u32>> {
        self.rows
            .iter()
            .map(|r| {
                let mut d = vec![0; self.cols];
                for &(c, v) in r {
                    d[c as usize] = v;
                }
                d
            })
            .collect()
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut rows = vec![Vec::new(); self.cols];
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                rows[c as usize].push((r as u32, v));
            }
        }
        FpMatrix { p: self.p, cols: self.rows.len(), rows }
    }

    /// Product `self · other`.
    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.nrows(), "dimension mismatch");
        assert_eq!(self.p, other.p, "modulus mismatch");
        let p = self.p;
        let mut acc = vec![0u32; other.cols];
        let mut touched = Vec::new();
        let rows = self
            .rows
            .iter()
            .map(|row| {
                for &(k, a) in row {
                    for &(c, b) in &other.rows[k as usize] {
                        if acc[c as usize] == 0 {
                            touched.push(c);
                        }
                        // zero may reappear after cancellation; touched stays a superset
                        acc[c as usize] = add(acc[c as usize], mul(a, b, p), p);
                    }
                }
                touched.sort_unstable();
                touched.dedup();
                let out: Vec<(u32, u32)> = touched
                    .iter()
                    .filter_map(|&c| {
                        let v = std::mem::take(&mut acc[c as usize]);
                        (v != 0).then_some((c, v))
                    })
                    .collect();
                touched.clear();
                out
            })
            .collect();
        FpMatrix { p, cols: other.cols, rows }
    }

    pub fn to_dump(&self) -> String {
        let mut out = format!("{} {} {}\n", self.p, self.nrows(), self.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                let _ = writeln!(out, "{r} {c} {v}");
            }
        }
        out
    }

    pub fn parse_dump(text: &str) -> Result<FpMatrix> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let bad = |line: usize, msg: &str| Error::parse(line, format!("line {}: {msg}", line + 1));
        let (hl, header) = lines.next().ok_or_else(|| bad(0, "missing header"))?;
        let h: Vec<u64> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad(hl, "header must be `p rows cols`"))?;
        let [p, rows, cols] = h[..] else {
            return Err(bad(hl, "header must be `p rows cols`"));
        };
        let p = check_modulus(p)?;
        let (rows, cols) = (rows as usize, cols as usize);
        let mut triples = Vec::new();
        for (ln, line) in lines {
            let t: Vec<i64> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad(ln, "expected `row col value`"))?;
            let [r, c, v] = t[..] else {
                return Err(bad(ln, "expected `row col value`"));
            };
            if r < 0 || c < 0 || r as usize >= rows || c as usize >= cols {
                return Err(bad(ln, "index out of range"));
            }
            triples.push((r as usize, c as usize, v));
        }
        Ok(Self::from_triples(p, rows, cols, &triples))
    }
}
