//! The finite irreducible Coxeter types: graphs, orders, p-freeness rules,
//! recognition up to relabeling, and the low-rank p-torsion scan.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::{check_odd_prime, CoxeterMatrix, Entry};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum IrreducibleType {
    A(usize),
    B(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    /// Dihedral type; `None` is the infinite dihedral graph.
    I2(Option<u32>),
    Unknown,
}

impl IrreducibleType {
    pub fn rank(self) -> Option<usize> {
        use IrreducibleType::*;
        match self {
            A(n) | B(n) | D(n) => Some(n),
            E6 => Some(6),
            E7 => Some(7),
            E8 => Some(8),
            F4 | H4 => Some(4),
            H3 => Some(3),
            I2(_) => Some(2),
            Unknown => None,
        }
    }

    pub fn is_finite(self) -> bool {
        !matches!(self, IrreducibleType::I2(None) | IrreducibleType::Unknown)
    }
}

impl fmt::Display for IrreducibleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use IrreducibleType::*;
        match self {
            A(n) => write!(f, "A{n}"),
            B(n) => write!(f, "B{n}"),
            D(n) => write!(f, "D{n}"),
            E6 => f.write_str("E6"),
            E7 => f.write_str("E7"),
            E8 => f.write_str("E8"),
            F4 => f.write_str("F4"),
            H3 => f.write_str("H3"),
            H4 => f.write_str("H4"),
            I2(Some(m)) => write!(f, "I2({m})"),
            I2(None) => f.write_str("I2(inf)"),
            Unknown => f.write_str("Unknown"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Order {
    Finite(BigUint),
    Infinite,
}

impl Order {
    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }

    pub fn as_u64(&self) -> Option<u64> {
        self.finite().and_then(|n| n.to_u64())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Order::Finite(_))
    }

    pub fn divisible_by(&self, p: u64) -> Option<bool> {
        self.finite().map(|n| (n % p).is_zero())
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

/// The odd primes p for which a type is p-free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PFreeRule {
    AtLeast(u64),
    NotDividing(u32),
    AllPrimes,
}

impl PFreeRule {
    pub fn holds(self, p: u64) -> bool {
        match self {
            PFreeRule::AtLeast(q) => p >= q,
            PFreeRule::NotDividing(m) => u64::from(m) % p != 0,
            PFreeRule::AllPrimes => true,
        }
    }
}

impl fmt::Display for PFreeRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PFreeRule::AtLeast(q) => write!(f, "p ≥ {q}"),
            PFreeRule::NotDividing(m) => write!(f, "p ∤ {m}"),
            PFreeRule::AllPrimes => f.write_str("all p"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub ty: IrreducibleType,
    pub order: Order,
    pub p_free_rule: PFreeRule,
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

pub fn order_of_type(ty: IrreducibleType) -> Order {
    use IrreducibleType::*;
    let n = match ty {
        A(n) => factorial(n + 1),
        B(n) => pow2(n) * factorial(n),
        D(n) => pow2(n - 1) * factorial(n),
        E6 => BigUint::from(2u32.pow(7) * 3u32.pow(4) * 5),
        E7 => BigUint::from(2u32.pow(10) * 3u32.pow(4) * 5 * 7),
        E8 => BigUint::from(2u64.pow(14) * 3u64.pow(5) * 5u64.pow(2) * 7),
        F4 => BigUint::from(2u32.pow(7) * 3u32.pow(2)),
        H3 => BigUint::from(2u32.pow(3) * 3 * 5),
        H4 => BigUint::from(2u32.pow(6) * 3u32.pow(2) * 5u32.pow(2)),
        I2(Some(m)) => BigUint::from(2 * u64::from(m)),
        I2(None) | Unknown => return Order::Infinite,
    };
    Order::Finite(n)
}

pub fn p_free_rule(ty: IrreducibleType) -> Option<PFreeRule> {
    use IrreducibleType::*;
    Some(match ty {
        A(1) => PFreeRule::AtLeast(3),
        A(_) => PFreeRule::AtLeast(5),
        B(2) => PFreeRule::AtLeast(3),
        B(_) | D(_) | E6 | E7 | E8 | F4 => PFreeRule::AtLeast(5),
        H3 | H4 => PFreeRule::AtLeast(7),
        I2(Some(m)) => PFreeRule::NotDividing(m),
        I2(None) => PFreeRule::AllPrimes,
        Unknown => return None,
    })
}

pub fn catalog_entry(ty: IrreducibleType) -> Option<CatalogEntry> {
    Some(CatalogEntry {
        ty,
        order: order_of_type(ty),
        p_free_rule: p_free_rule(ty)?,
    })
}

fn path(rank: usize, labels: &[(usize, u32)]) -> CoxeterMatrix {
    let mut m = CoxeterMatrix::commuting(rank);
    for i in 0..rank.saturating_sub(1) {
        m.set(i, i + 1, Entry::Finite(3));
    }
    for &(i, label) in labels {
        m.set(i, i + 1, Entry::Finite(label));
    }
    m
}

/// The standard Coxeter graph of a catalog type (Bourbaki numbering for E).
pub fn catalog_graph(ty: IrreducibleType) -> Option<CoxeterMatrix> {
    use IrreducibleType::*;
    Some(match ty {
        A(n) if n >= 1 => path(n, &[]),
        B(n) if n >= 2 => path(n, &[(0, 4)]),
        D(n) if n >= 4 => {
            let mut m = path(n - 1, &[]);
            m = CoxeterMatrix::disjoint_union(&[m, CoxeterMatrix::commuting(1)]);
            m.set(n - 3, n - 1, Entry::Finite(3));
            m
        }
        E6 | E7 | E8 => {
            let n = ty.rank().unwrap();
            let mut m = CoxeterMatrix::commuting(n);
            // 1-3-4-5-...-n with 2 attached to 4
            m.set(0, 2, Entry::Finite(3));
            for i in 2..n - 1 {
                m.set(i, i + 1, Entry::Finite(3));
            }
            m.set(1, 3, Entry::Finite(3));
            m
        }
        F4 => path(4, &[(1, 4)]),
        H3 => path(3, &[(0, 5)]),
        H4 => path(4, &[(0, 5)]),
        I2(Some(m)) if m >= 3 => path(2, &[(0, m)]),
        I2(None) => {
            let mut m = CoxeterMatrix::commuting(2);
            m.set(0, 1, Entry::Infinite);
            m
        }
        _ => return None,
    })
}

fn candidates(rank: usize) -> Vec<IrreducibleType> {
    use IrreducibleType::*;
    let mut out = vec![A(rank)];
    if rank >= 3 {
        out.push(B(rank));
    }
    if rank >= 4 {
        out.push(D(rank));
    }
    match rank {
        3 => out.push(H3),
        4 => out.extend([F4, H4]),
        6 => out.push(E6),
        7 => out.push(E7),
        8 => out.push(E8),
        _ => {}
    }
    out
}

/// Sorted multiset of incident labels, used to prune the isomorphism search.
fn signature(m: &CoxeterMatrix, i: usize) -> Vec<Entry> {
    let mut s: Vec<Entry> = (0..m.rank())
        .filter(|&j| j != i && m.get(i, j).is_edge())
        .map(|j| m.get(i, j))
        .collect();
    s.sort_unstable();
    s
}

pub(crate) fn isomorphic(a: &CoxeterMatrix, b: &CoxeterMatrix) -> bool {
    let n = a.rank();
    if n != b.rank() {
        return false;
    }
    let sa: Vec<_> = (0..n).map(|i| signature(a, i)).collect();
    let sb: Vec<_> = (0..n).map(|i| signature(b, i)).collect();
    let (mut xa, mut xb) = (sa.clone(), sb.clone());
    xa.sort();
    xb.sort();
    if xa != xb {
        return false;
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        i: usize,
        a: &CoxeterMatrix,
        b: &CoxeterMatrix,
        sa: &[Vec<Entry>],
        sb: &[Vec<Entry>],
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if i == a.rank() {
            return true;
        }
        for j in 0..b.rank() {
            if used[j] || sa[i] != sb[j] {
                continue;
            }
            if (0..i).any(|k| a.get(i, k) != b.get(j, image[k])) {
                continue;
            }
            image[i] = j;
            used[j] = true;
            if extend(i + 1, a, b, sa, sb, image, used) {
                return true;
            }
            used[j] = false;
        }
        false
    }
    extend(0, a, b, &sa, &sb, &mut image, &mut used)
}

pub(crate) fn classify(m: &CoxeterMatrix) -> Result<IrreducibleType> {
    m.validate().map_err(Error::InvalidMatrix)?;
    if !m.is_irreducible() {
        return Err(Error::Reducible);
    }
    use IrreducibleType::*;
    match m.rank() {
        1 => return Ok(A(1)),
        2 => {
            return Ok(match m.get(0, 1) {
                Entry::Finite(3) => A(2),
                Entry::Finite(4) => B(2),
                Entry::Finite(k) => I2(Some(k)),
                Entry::Infinite => I2(None),
            })
        }
        _ => {}
    }
    if m.has_infinite_entry() {
        return Ok(Unknown);
    }
    Ok(candidates(m.rank())
        .into_iter()
        .find(|&ty| isomorphic(m, &catalog_graph(ty).unwrap()))
        .unwrap_or(Unknown))
}

pub(crate) fn order(m: &CoxeterMatrix) -> Order {
    let mut total = BigUint::one();
    for comp in m.components() {
        let ty = classify(&comp.matrix).unwrap_or(IrreducibleType::Unknown);
        match order_of_type(ty) {
            Order::Finite(k) => total *= k,
            Order::Infinite => return Order::Infinite,
        }
    }
    Order::Finite(total)
}

/// A row of the family table in its symbolic form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyRow {
    pub graph: &'static str,
    pub order: &'static str,
    pub p_freeness: &'static str,
}

/// The twelve family rows of the catalog, in symbolic form.
pub fn catalog_table() -> Vec<FamilyRow> {
    const ROWS: [(&str, &str, &str); 12] = [
        ("A1", "2", "p ≥ 3"),
        ("An (n ≥ 2)", "(n+1)!", "p ≥ 5"),
        ("B2", "8", "p ≥ 3"),
        ("Bn (n ≥ 3)", "2^n n!", "p ≥ 5"),
        ("Dn (n ≥ 4)", "2^(n-1) n!", "p ≥ 5"),
        ("E6", "2^7·3^4·5", "p ≥ 5"),
        ("E7", "2^10·3^4·5·7", "p ≥ 5"),
        ("E8", "2^14·3^5·5^2·7", "p ≥ 5"),
        ("F4", "2^7·3^2", "p ≥ 5"),
        ("H3", "2^3·3·5", "p ≥ 7"),
        ("H4", "2^6·3^2·5^2", "p ≥ 7"),
        ("I2(m) (m ≥ 3)", "2m", "p ∤ m"),
    ];
    ROWS.iter()
        .map(|&(graph, order, p_freeness)| FamilyRow {
            graph,
            order,
            p_freeness,
        })
        .collect()
}

/// One concrete catalog type with its numeric order and p-freeness rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogRow {
    pub family: &'static str,
    pub ty: IrreducibleType,
    pub rank: usize,
    pub order: String,
    pub p_freeness: String,
}

/// Every finite irreducible type with A/B/D parameters up to `max_rank` and
/// I2(m) for 3 <= m <= `max_m`, in family row order.
pub fn instantiated_catalog(max_rank: usize, max_m: u32) -> Vec<CatalogRow> {
    use IrreducibleType::*;
    let table = catalog_table();
    let mut types: Vec<(usize, IrreducibleType)> = Vec::new();
    types.push((0, A(1)));
    types.extend((2..=max_rank).map(|n| (1, A(n))));
    if max_rank >= 2 {
        types.push((2, B(2)));
    }
    types.extend((3..=max_rank).map(|n| (3, B(n))));
    types.extend((4..=max_rank).map(|n| (4, D(n))));
    types.extend([(5, E6), (6, E7), (7, E8), (8, F4), (9, H3), (10, H4)]);
    types.extend((3..=max_m).map(|m| (11, I2(Some(m)))));
    types
        .into_iter()
        .map(|(row, ty)| {
            let entry = catalog_entry(ty).expect("finite catalog type");
            CatalogRow {
                family: table[row].graph,
                ty,
                rank: ty.rank().unwrap(),
                order: entry.order.to_string(),
                p_freeness: entry.p_free_rule.to_string(),
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanEntry {
    pub ty: IrreducibleType,
    pub rank: usize,
    pub order: String,
    pub p_free: bool,
    pub order_coprime_to_p: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub p: u64,
    pub max_rank: usize,
    pub max_dihedral_label: u32,
    pub entries: Vec<ScanEntry>,
    /// True iff every p-free entry has order prime to p.
    pub holds: bool,
}

impl ScanReport {
    pub fn entry(&self, ty: IrreducibleType) -> Option<&ScanEntry> {
        self.entries.iter().find(|e| e.ty == ty)
    }
}

/// Lists every finite irreducible type of rank at most p - 2 and checks that
/// the p-free ones have no p-torsion. The dihedral family is infinite; it is
/// sampled for 5 <= m <= 4p (I2(3) = A2 and I2(4) = B2 appear under those
/// names).
pub fn scan_low_rank_p_torsion(p: u64) -> Result<ScanReport> {
    check_odd_prime(p)?;
    use IrreducibleType::*;
    let max_rank = (p - 2) as usize;
    let max_m = (4 * p) as u32;
    let mut types = Vec::new();
    for n in 1..=max_rank {
        types.push(A(n));
        if n >= 2 {
            types.push(B(n));
        }
        if n >= 4 {
            types.push(D(n));
        }
    }
    for ty in [E6, E7, E8, F4, H3, H4] {
        if ty.rank().unwrap() <= max_rank {
            types.push(ty);
        }
    }
    if max_rank >= 2 {
        types.extend((5..=max_m).map(|m| I2(Some(m))));
    }
    let entries: Vec<ScanEntry> = types
        .into_iter()
        .map(|ty| {
            let order = order_of_type(ty);
            let graph = catalog_graph(ty).unwrap();
            ScanEntry {
                ty,
                rank: graph.rank(),
                p_free: graph.is_p_free(p).expect("p checked above"),
                order_coprime_to_p: order.divisible_by(p) == Some(false),
                order: order.to_string(),
            }
        })
        .collect();
    let holds = entries.iter().all(|e| !e.p_free || e.order_coprime_to_p);
    Ok(ScanReport {
        p,
        max_rank,
        max_dihedral_label: max_m,
        entries,
        holds,
    })
}
