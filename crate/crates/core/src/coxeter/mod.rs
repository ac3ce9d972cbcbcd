//! Coxeter matrices: representation, validation, decomposition and
//! classification of the finite irreducible types.

mod catalog;
mod dsl;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use catalog::{
    catalog_graph, catalog_table, instantiated_catalog, order_of_type, scan_low_rank_p_torsion,
    FamilyRow, CatalogEntry, CatalogRow, IrreducibleType, Order, PFreeRule, ScanEntry,
    ScanReport,
};
pub use dsl::parse_graph;

use crate::error::{Error, Result};

/// One entry m(s,t) of a Coxeter matrix. `Infinite` is a sentinel and never
/// takes part in integer arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Entry {
    Finite(u32),
    Infinite,
}

impl Entry {
    pub fn finite(self) -> Option<u32> {
        match self {
            Entry::Finite(m) => Some(m),
            Entry::Infinite => None,
        }
    }

    /// Whether this pair is an edge of the Coxeter graph (m >= 3).
    pub fn is_edge(self) -> bool {
        match self {
            Entry::Finite(m) => m >= 3,
            Entry::Infinite => true,
        }
    }

    /// Coprimality with a prime; infinity is coprime to every prime.
    pub fn coprime_to(self, p: u64) -> bool {
        match self {
            Entry::Finite(m) => u64::from(m) % p != 0,
            Entry::Infinite => true,
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Finite(m) => write!(f, "{m}"),
            Entry::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptyRank,
    NotSquare,
    Diagonal { i: usize, value: Entry },
    OffDiagonalBelowTwo { i: usize, j: usize, value: Entry },
    Asymmetric { i: usize, j: usize },
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::EmptyRank => "empty",
            Violation::NotSquare => "not square",
            Violation::Diagonal { .. } => "diagonal",
            Violation::OffDiagonalBelowTwo { .. } => "off-diagonal < 2",
            Violation::Asymmetric { .. } => "asymmetric",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyRank | Violation::NotSquare => f.write_str(self.kind()),
            Violation::Diagonal { i, value } => {
                write!(f, "diagonal: m({0},{0}) = {value}", i + 1)
            }
            Violation::OffDiagonalBelowTwo { i, j, value } => {
                write!(f, "off-diagonal < 2: m({},{}) = {value}", i + 1, j + 1)
            }
            Violation::Asymmetric { i, j } => {
                write!(f, "asymmetric: m({0},{1}) != m({1},{0})", i + 1, j + 1)
            }
        }
    }
}

/// A Coxeter matrix on generators `0..rank`. Stored densely; constructors
/// other than [`CoxeterMatrix::from_rows_unchecked`] keep it symmetric.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<Entry>,
}

impl CoxeterMatrix {
    /// The matrix with all off-diagonal entries 2 (a product of copies of Z/2).
    pub fn commuting(rank: usize) -> Self {
        let mut entries = vec![Entry::Finite(2); rank * rank];
        for i in 0..rank {
            entries[i * rank + i] = Entry::Finite(1);
        }
        CoxeterMatrix { rank, entries }
    }

    pub fn from_rows_unchecked(rows: Vec<Vec<Entry>>) -> Self {
        let rank = rows.len();
        let entries = rows.into_iter().flatten().collect();
        CoxeterMatrix { rank, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Entry>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(Error::InvalidMatrix(vec![Violation::NotSquare]));
        }
        let m = Self::from_rows_unchecked(rows);
        m.validate().map_err(Error::InvalidMatrix)?;
        Ok(m)
    }

    /// Builds a valid matrix from integer rows, with `0` standing for infinity.
    pub fn from_int_rows(rows: &[&[u32]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| if v == 0 { Entry::Infinite } else { Entry::Finite(v) })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> Entry {
        self.entries[i * self.rank + j]
    }

    /// Sets m(i,j) = m(j,i) = value.
    pub fn set(&mut self, i: usize, j: usize, value: Entry) {
        self.entries[i * self.rank + j] = value;
        self.entries[j * self.rank + i] = value;
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let n = self.rank;
        let mut out = Vec::new();
        if n == 0 {
            out.push(Violation::EmptyRank);
        }
        if self.entries.len() != n * n {
            out.push(Violation::NotSquare);
            return Err(out);
        }
        for i in 0..n {
            if self.get(i, i) != Entry::Finite(1) {
                out.push(Violation::Diagonal {
                    i,
                    value: self.get(i, i),
                });
            }
            for j in (i + 1)..n {
                let (a, b) = (self.get(i, j), self.get(j, i));
                if a != b {
                    out.push(Violation::Asymmetric { i, j });
                }
                for (x, y, v) in [(i, j, a), (j, i, b)] {
                    if matches!(v, Entry::Finite(m) if m < 2) {
                        out.push(Violation::OffDiagonalBelowTwo { i: x, j: y, value: v });
                    }
                }
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    pub fn has_infinite_entry(&self) -> bool {
        self.entries.contains(&Entry::Infinite)
    }

    /// Generator pairs `(i, j)`, `i < j`, that are edges of the Coxeter graph.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Entry)> + '_ {
        let n = self.rank;
        (0..n).flat_map(move |i| ((i + 1)..n).map(move |j| (i, j, self.get(i, j))))
            .filter(|(_, _, e)| e.is_edge())
    }

    /// Restriction to the generators in `keep`, in the given order.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let rows = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.get(i, j)).collect())
            .collect();
        Self::from_rows_unchecked(rows)
    }

    /// Relabels generators: generator `i` of the result is generator `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        self.restrict(perm)
    }

    /// Block-diagonal disjoint union.
    pub fn disjoint_union(parts: &[CoxeterMatrix]) -> Self {
        let rank = parts.iter().map(|m| m.rank).sum();
        let mut out = Self::commuting(rank);
        let mut offset = 0;
        for part in parts {
            for i in 0..part.rank {
                for j in 0..part.rank {
                    out.entries[(offset + i) * rank + offset + j] = part.get(i, j);
                }
            }
            offset += part.rank;
        }
        out
    }

    /// Connected components of the Coxeter graph, ordered by smallest
    /// original generator index.
    pub fn components(&self) -> Vec<Component> {
        let n = self.rank;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut gens = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < gens.len() {
                let i = gens[head];
                head += 1;
                for j in 0..n {
                    if !seen[j] && i != j && self.get(i, j).is_edge() {
                        seen[j] = true;
                        gens.push(j);
                    }
                }
            }
            gens.sort_unstable();
            out.push(Component {
                matrix: self.restrict(&gens),
                generators: gens,
            });
        }
        out
    }

    pub fn is_irreducible(&self) -> bool {
        self.components().len() == 1
    }

    pub fn is_p_free(&self, p: u64) -> Result<bool> {
        check_odd_prime(p)?;
        let n = self.rank;
        Ok((0..n).all(|i| ((i + 1)..n).all(|j| self.get(i, j).coprime_to(p))))
    }

    pub fn classify(&self) -> Result<IrreducibleType> {
        catalog::classify(self)
    }

    pub fn order(&self) -> Order {
        catalog::order(self)
    }

    /// Component types joined by `+`, or the explicit DSL form when some
    /// component is not in the catalog.
    pub fn type_name(&self) -> String {
        let mut names = Vec::new();
        for c in self.components() {
            match c.matrix.classify() {
                Ok(IrreducibleType::Unknown) | Err(_) => return self.to_dsl(),
                Ok(ty) => names.push(ty.to_string()),
            }
        }
        names.join("+")
    }

    /// One-line textual form in the explicit DSL syntax.
    pub fn to_dsl(&self) -> String {
        let mut s = format!("n={}", self.rank);
        for (i, j, e) in self.edges() {
            s.push_str(&format!("; {}-{}:{}", i + 1, j + 1, e));
        }
        s
    }
}

impl fmt::Display for CoxeterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rank {
            let row: Vec<String> = (0..self.rank).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// A connected component together with the original generator indices it
/// was restricted from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub matrix: CoxeterMatrix,
    pub generators: Vec<usize>,
}

pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn check_odd_prime(p: u64) -> Result<()> {
    if is_odd_prime(p) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(m: u32) -> Entry {
        Entry::Finite(m)
    }

    #[test]
    fn validate_accepts_a_valid_matrix() {
        let m = CoxeterMatrix::from_rows_unchecked(vec![vec![e(1), e(3)], vec![e(3), e(1)]]);
        assert!(m.validate().is_ok());
    }

    #[test]
    fn validate_reports_bad_diagonal() {
        let m = CoxeterMatrix::from_rows_unchecked(vec![vec![e(2), e(3)], vec![e(3), e(1)]]);
        let v = m.validate().unwrap_err();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind(), "diagonal");
    }

    #[test]
    fn validate_reports_small_off_diagonal() {
        let m = CoxeterMatrix::from_rows_unchecked(vec![vec![e(1), e(1)], vec![e(1), e(1)]]);
        let v = m.validate().unwrap_err();
        assert!(v.iter().all(|x| x.kind() == "off-diagonal < 2"));
        assert!(!v.is_empty());
    }

    #[test]
    fn validate_reports_asymmetry_and_empty() {
        let m = CoxeterMatrix::from_rows_unchecked(vec![vec![e(1), e(3)], vec![e(4), e(1)]]);
        assert_eq!(m.validate().unwrap_err()[0].kind(), "asymmetric");
        let empty = CoxeterMatrix::from_rows_unchecked(vec![]);
        assert_eq!(empty.validate().unwrap_err()[0], Violation::EmptyRank);
        assert!(matches!(
            CoxeterMatrix::from_rows(vec![vec![e(1), e(2)]]),
            Err(Error::InvalidMatrix(_))
        ));
    }

    #[test]
    fn components_of_commuting_generators() {
        let comps = CoxeterMatrix::commuting(4).components();
        assert_eq!(comps.len(), 4);
        for (k, c) in comps.iter().enumerate() {
            assert_eq!(c.matrix.rank(), 1);
            assert_eq!(c.generators, vec![k]);
        }
    }

    #[test]
    fn components_of_a2_plus_i2_5() {
        let m = parse_graph("A2+I2(5)").unwrap();
        let comps = m.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].matrix, parse_graph("A2").unwrap());
        assert_eq!(comps[1].matrix, parse_graph("I2(5)").unwrap());
        assert_eq!(comps[1].generators, vec![2, 3]);
    }

    #[test]
    fn interleaved_components_are_ordered_by_smallest_generator() {
        // 1-3 edge and 2-4 edge
        let m = parse_graph("n=4; 1-3; 2-4:5").unwrap();
        let comps = m.components();
        assert_eq!(comps[0].generators, vec![0, 2]);
        assert_eq!(comps[1].generators, vec![1, 3]);
        assert_eq!(comps[1].matrix.get(0, 1), e(5));
    }

    #[test]
    fn p_freeness() {
        assert!(!parse_graph("H3").unwrap().is_p_free(5).unwrap());
        assert!(parse_graph("H3").unwrap().is_p_free(7).unwrap());
        assert!(parse_graph("I2(inf)").unwrap().is_p_free(3).unwrap());
        assert!(parse_graph("A4").unwrap().is_p_free(5).unwrap());
        assert!(!parse_graph("A4").unwrap().is_p_free(3).unwrap());
        assert!(matches!(
            parse_graph("A4").unwrap().is_p_free(2),
            Err(Error::NotOddPrime(2))
        ));
        assert!(matches!(
            parse_graph("A4").unwrap().is_p_free(9),
            Err(Error::NotOddPrime(9))
        ));
    }

    #[test]
    fn odd_primes() {
        let primes: Vec<u64> = (0..40).filter(|&p| is_odd_prime(p)).collect();
        assert_eq!(primes, vec![3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
    }
}
