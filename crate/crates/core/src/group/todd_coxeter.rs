//! Coset enumeration for Coxeter presentations.
//!
//! Felsch strategy: the first undefined table entry (in coset order, then
//! generator order) is always defined next and every relator cycle through
//! a new entry is scanned immediately. All generators are involutions, so
//! a single column per generator serves as both x and x^-1.

use crate::coxeter::{CoxeterMatrix, Entry};
use crate::error::{Error, Result};

const UNDEF: u32 = u32::MAX;

/// Result of a completed enumeration, renumbered breadth-first from the
/// subgroup coset with generators tried in index order.
pub(crate) struct Enumerated {
    /// `action[g][c]` = coset `c · g`.
    pub action: Vec<Vec<u32>>,
}

struct Felsch {
    ngens: usize,
    table: Vec<u32>,
    rep: Vec<u32>,
    live: usize,
    /// Cyclic words (g t)^m starting with each generator g.
    rels_from: Vec<Vec<Vec<u8>>>,
    deductions: Vec<(u32, u8)>,
    limit: usize,
}

impl Felsch {
    fn new(m: &CoxeterMatrix, limit: usize) -> Self {
        let n = m.rank();
        let mut rels_from = vec![Vec::new(); n];
        for (g, rels) in rels_from.iter_mut().enumerate() {
            for t in 0..n {
                if t == g {
                    continue;
                }
                if let Entry::Finite(k) = m.get(g, t) {
                    let mut w = Vec::with_capacity(2 * k as usize);
                    for _ in 0..k {
                        w.push(g as u8);
                        w.push(t as u8);
                    }
                    rels.push(w);
                }
            }
        }
        Felsch {
            ngens: n,
            table: vec![UNDEF; n],
            rep: vec![0],
            live: 1,
            rels_from,
            deductions: Vec::new(),
            limit,
        }
    }

    #[inline]
    fn get(&self, c: u32, g: u8) -> u32 {
        self.table[c as usize * self.ngens + g as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, g: u8, d: u32) {
        self.table[c as usize * self.ngens + g as usize] = d;
    }

    fn is_live(&self, c: u32) -> bool {
        self.rep[c as usize] == c
    }

    fn find(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.rep[root as usize] != root {
            root = self.rep[root as usize];
        }
        let mut x = c;
        while self.rep[x as usize] != root {
            let next = self.rep[x as usize];
            self.rep[x as usize] = root;
            x = next;
        }
        root
    }

    fn new_coset(&mut self) -> Result<u32> {
        if self.live >= self.limit || self.rep.len() >= 4 * self.limit {
            return Err(Error::CapExceeded {
                what: "cosets during enumeration",
                limit: self.limit,
                possibly_infinite: false,
            });
        }
        let d = self.rep.len() as u32;
        self.rep.push(d);
        self.table.extend(std::iter::repeat_n(UNDEF, self.ngens));
        self.live += 1;
        Ok(d)
    }

    fn link(&mut self, c: u32, g: u8, d: u32) {
        self.set(c, g, d);
        self.set(d, g, c);
        self.deductions.push((c, g));
    }

    fn merge(&mut self, a: u32, b: u32, queue: &mut Vec<u32>) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        let (keep, kill) = (a.min(b), a.max(b));
        self.rep[kill as usize] = keep;
        self.live -= 1;
        queue.push(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let dead = queue[i];
            i += 1;
            for g in 0..self.ngens as u8 {
                let d = self.get(dead, g);
                if d == UNDEF {
                    continue;
                }
                if self.get(d, g) == dead {
                    self.set(d, g, UNDEF);
                }
                let mu = self.find(dead);
                let nu = self.find(d);
                let mu_g = self.get(mu, g);
                if mu_g != UNDEF {
                    self.merge(nu, mu_g, &mut queue);
                } else {
                    let nu_g = self.get(nu, g);
                    if nu_g != UNDEF {
                        self.merge(mu, nu_g, &mut queue);
                    } else {
                        self.link(mu, g, nu);
                    }
                }
            }
        }
    }

    /// Scans one relator cycle at `c`, deducing a single missing entry or
    /// detecting a coincidence.
    fn scan(&mut self, c: u32, w: &[u8]) {
        let n = w.len();
        let mut f = c;
        let mut i = 0;
        while i < n {
            let next = self.get(f, w[i]);
            if next == UNDEF {
                break;
            }
            f = next;
            i += 1;
        }
        if i == n {
            if f != c {
                self.coincidence(f, c);
            }
            return;
        }
        let mut b = c;
        let mut j = n;
        while j > i {
            let prev = self.get(b, w[j - 1]);
            if prev == UNDEF {
                break;
            }
            b = prev;
            j -= 1;
        }
        if j == i {
            // both ends meet without the missing letter: f and b coincide
            self.coincidence(f, b);
        } else if j == i + 1 {
            self.link(f, w[i], b);
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, g)) = self.deductions.pop() {
            if !self.is_live(c) {
                continue;
            }
            for r in 0..self.rels_from[g as usize].len() {
                if !self.is_live(c) {
                    break;
                }
                let w = std::mem::take(&mut self.rels_from[g as usize][r]);
                self.scan(c, &w);
                let d = self.get(c, g);
                if d != UNDEF && self.is_live(d) {
                    self.scan(d, &w);
                }
                self.rels_from[g as usize][r] = w;
            }
        }
    }

    fn first_gap(&self, from: u32) -> Option<(u32, u8)> {
        (from..self.rep.len() as u32)
            .filter(|&c| self.is_live(c))
            .find_map(|c| {
                (0..self.ngens as u8)
                    .find(|&g| self.get(c, g) == UNDEF)
                    .map(|g| (c, g))
            })
    }

    fn run(&mut self, subgroup: &[usize]) -> Result<()> {
        for &t in subgroup {
            self.link(0, t as u8, 0);
        }
        let mut cursor = 0;
        loop {
            self.process_deductions();
            let gap = match self.first_gap(cursor) {
                Some(gap) => Some(gap),
                // coincidences may reopen entries behind the cursor
                None => self.first_gap(0),
            };
            let Some((c, g)) = gap else {
                return Ok(());
            };
            cursor = c;
            let d = self.new_coset()?;
            self.link(c, g, d);
        }
    }

    fn compact(mut self) -> Enumerated {
        let root = self.find(0);
        let mut number = vec![UNDEF; self.rep.len()];
        let mut order = vec![root];
        number[root as usize] = 0;
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            head += 1;
            for g in 0..self.ngens as u8 {
                let d = self.find(self.get(c, g));
                if number[d as usize] == UNDEF {
                    number[d as usize] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        let mut action = vec![vec![0u32; order.len()]; self.ngens];
        for (new, &old) in order.iter().enumerate() {
            for g in 0..self.ngens as u8 {
                let d = self.find(self.get(old, g));
                action[g as usize][new] = number[d as usize];
            }
        }
        Enumerated { action }
    }
}

/// Enumerates the cosets of the parabolic subgroup generated by `subgroup`.
/// `limit` bounds the number of live cosets at any time.
pub(crate) fn enumerate(m: &CoxeterMatrix, subgroup: &[usize], limit: usize) -> Result<Enumerated> {
    let mut felsch = Felsch::new(m, limit.max(1));
    felsch.run(subgroup)?;
    let out = felsch.compact();
    check_table(m, subgroup, &out.action)?;
    Ok(out)
}

/// Independent check that a table is a complete coset table of the
/// presentation: involutive columns, closed relator cycles, subgroup
/// generators fixing coset 0.
pub(crate) fn check_table(m: &CoxeterMatrix, subgroup: &[usize], action: &[Vec<u32>]) -> Result<()> {
    let k = action.first().map_or(1, Vec::len);
    for (g, col) in action.iter().enumerate() {
        if col.len() != k {
            return Err(Error::Integrity(format!("column {g} has wrong length")));
        }
        for (c, &d) in col.iter().enumerate() {
            if d as usize >= k || col[d as usize] as usize != c {
                return Err(Error::Integrity(format!(
                    "generator {g} is not an involution at coset {c}"
                )));
            }
        }
    }
    for &t in subgroup {
        if action[t][0] != 0 {
            return Err(Error::Integrity(format!("subgroup generator {t} moves coset 0")));
        }
    }
    for s in 0..m.rank() {
        for t in (s + 1)..m.rank() {
            let Entry::Finite(mst) = m.get(s, t) else { continue };
            for c in 0..k {
                let mut x = c;
                for _ in 0..mst {
                    x = action[t][action[s][x] as usize] as usize;
                }
                if x != c {
                    return Err(Error::Integrity(format!(
                        "relator (s{s} s{t})^{mst} does not close at coset {c}"
                    )));
                }
            }
        }
    }
    Ok(())
}
