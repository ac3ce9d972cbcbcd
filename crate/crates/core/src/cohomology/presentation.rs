use std::fmt;

use serde::Serialize;

use crate::coxeter::{CoxeterMatrix, Entry};
use crate::error::{Error, Result};
use crate::group::SubgroupHandle;
use crate::linalg::fp::check_modulus;
use crate::linalg::{rank_fp, FpMatrix};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }
}

/// A finite presentation with freely reduced relators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationData {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<Letter>>,
}

fn free_reduce(word: Vec<Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for l in word {
        match out.last() {
            Some(&prev) if prev.generator == l.generator && prev.inverse != l.inverse => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

impl PresentationData {
    pub fn new(generators: Vec<String>, relators: Vec<Vec<Letter>>) -> Result<Self> {
        if let Some(l) = relators.iter().flatten().find(|l| l.generator >= generators.len()) {
            return Err(Error::IndexOutOfRange {
                index: l.generator,
                size: generators.len(),
            });
        }
        let relators = relators
            .into_iter()
            .map(free_reduce)
            .filter(|r| !r.is_empty())
            .collect();
        Ok(PresentationData { generators, relators })
    }

    /// Relators × generators matrix of exponent sums.
    pub fn exponent_sums(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| {
                let mut row = vec![0i64; self.generators.len()];
                for l in r {
                    row[l.generator] += if l.inverse { -1 } else { 1 };
                }
                row
            })
            .collect()
    }
}

impl fmt::Display for PresentationData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| {
                r.iter()
                    .map(|l| {
                        let name = &self.generators[l.generator];
                        if l.inverse {
                            format!("{name}^-1")
                        } else {
                            name.clone()
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        if rels.is_empty() {
            write!(f, "< {} | >", self.generators.join(", "))
        } else {
            write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
        }
    }
}

/// Presentation of the alternating subgroup on x_s = s0·s (s ≠ s0), with
/// relators x_s^{m(s0,s)} and (x_s^{-1} x_t)^{m(s,t)} for finite labels.
pub fn alternating_presentation(m: &CoxeterMatrix, s0: usize) -> Result<PresentationData> {
    m.validate().map_err(Error::InvalidMatrix)?;
    if s0 >= m.rank() {
        return Err(Error::IndexOutOfRange {
            index: s0,
            size: m.rank(),
        });
    }
    let others: Vec<usize> = (0..m.rank()).filter(|&s| s != s0).collect();
    let generators = others.iter().map(|s| format!("x{s}")).collect();
    let mut relators = Vec::new();
    for (i, &s) in others.iter().enumerate() {
        if let Entry::Finite(k) = m.get(s0, s) {
            relators.push(vec![Letter::new(i, false); k as usize]);
        }
    }
    for (i, &s) in others.iter().enumerate() {
        for (j, &t) in others.iter().enumerate().skip(i + 1) {
            if let Entry::Finite(k) = m.get(s, t) {
                let unit = [Letter::new(i, true), Letter::new(j, false)];
                relators.push(unit.iter().copied().cycle().take(2 * k as usize).collect());
            }
        }
    }
    PresentationData::new(generators, relators)
}

/// dim Hom(G, F_p) = #generators − rank of the exponent-sum matrix mod p.
pub fn h1_from_presentation(pres: &PresentationData, p: u64) -> Result<usize> {
    let pm = check_modulus(p)?;
    let n = pres.generators.len();
    if pres.relators.is_empty() {
        return Ok(n);
    }
    let m = FpMatrix::from_dense(pm, &pres.exponent_sums());
    Ok(n - rank_fp(&m))
}

/// dim Hom(H, F_p) from the realized group: log_p of the index of the
/// normal closure of generator commutators and p-th powers.
pub fn hom_to_fp_dimension(h: &SubgroupHandle, p: u64) -> Result<usize> {
    check_modulus(p)?;
    let g = h.parent();
    let gens = h.generators();
    let mut seeds: Vec<u32> = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        seeds.push(g.pow(a, p));
        for &b in &gens[i + 1..] {
            seeds.push(g.mul(g.mul(a, b), g.inv(g.mul(b, a))));
        }
    }
    let mut n = SubgroupHandle::generated_by(g, &seeds)?;
    loop {
        let mut extra = Vec::new();
        for &x in gens {
            for &y in n.generators() {
                let c = g.conjugate(x, y);
                if !n.contains(c) && !extra.contains(&c) {
                    extra.push(c);
                }
            }
        }
        if extra.is_empty() {
            break;
        }
        seeds.extend(extra);
        n = SubgroupHandle::generated_by(g, &seeds)?;
    }
    let mut index = h.order() / n.order();
    let mut d = 0;
    while index > 1 {
        if !index.is_multiple_of(p as usize) {
            return Err(Error::Integrity(format!(
                "abelianization quotient of order {} is not a {p}-group",
                h.order() / n.order()
            )));
        }
        index /= p as usize;
        d += 1;
    }
    Ok(d)
}
