//! On-disk cache of coset tables.
//!
//! File format (text, one file per key):
//!
//! ```text
//! coxalt-coset-table v1
//! key <sha256 hex>
//! cosets <k> gens <n>
//! subgroup <t1> <t2> ...
//! <c·s_0> <c·s_1> ... <c·s_{n-1}>      (one line per coset c)
//! ```
//!
//! The key hashes the full matrix, the sorted subgroup generators and the
//! cap. A file that fails to parse or to validate is ignored.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::todd_coxeter::check_table;
use super::CosetTable;
use crate::coxeter::CoxeterMatrix;
use crate::error::{Error, Result};

const MAGIC: &str = "coxalt-coset-table v1";

#[derive(Clone, Debug)]
pub struct CosetCache {
    dir: PathBuf,
}

impl CosetCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        CosetCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(m: &CoxeterMatrix, t: &[usize], cap: usize) -> String {
        let mut canon = format!("{MAGIC}|rank={}|", m.rank());
        for i in 0..m.rank() {
            for j in 0..m.rank() {
                let _ = write!(canon, "{},", m.get(i, j));
            }
        }
        let _ = write!(canon, "|T={t:?}|cap={cap}");
        hex::encode(Sha256::digest(canon.as_bytes()))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.cosets"))
    }

    pub fn load(&self, m: &CoxeterMatrix, t: &[usize], cap: usize) -> Option<CosetTable> {
        let key = Self::key(m, t, cap);
        let text = fs::read_to_string(self.path(&key)).ok()?;
        let table = parse(&text, &key, m.rank())?;
        if table.subgroup_generators() != t || check_table(m, t, &table.action).is_err() {
            return None;
        }
        Some(table)
    }

    pub fn store(&self, m: &CoxeterMatrix, table: &CosetTable, cap: usize) -> Result<()> {
        let key = Self::key(m, table.subgroup_generators(), cap);
        fs::create_dir_all(&self.dir)?;
        let mut out = String::new();
        let _ = writeln!(out, "{MAGIC}");
        let _ = writeln!(out, "key {key}");
        let _ = writeln!(out, "cosets {} gens {}", table.len(), table.ngens());
        let sub: Vec<String> = table.subgroup_generators().iter().map(|t| t.to_string()).collect();
        let _ = writeln!(out, "subgroup {}", sub.join(" "));
        for c in 0..table.len() as u32 {
            let row: Vec<String> = (0..table.ngens()).map(|s| table.act(c, s).to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        // write-then-rename so concurrent readers never see a partial file
        let tmp = self.dir.join(format!("{key}.tmp{}", std::process::id()));
        fs::write(&tmp, out)?;
        fs::rename(&tmp, self.path(&key)).map_err(|e| Error::Cache(e.to_string()))
    }
}

fn parse(text: &str, key: &str, rank: usize) -> Option<CosetTable> {
    let mut lines = text.lines();
    if lines.next()? != MAGIC {
        return None;
    }
    if lines.next()?.strip_prefix("key ")? != key {
        return None;
    }
    let header: Vec<&str> = lines.next()?.split_whitespace().collect();
    let (k, n): (usize, usize) = match header.as_slice() {
        ["cosets", k, "gens", n] => (k.parse().ok()?, n.parse().ok()?),
        _ => return None,
    };
    if n != rank {
        return None;
    }
    let sub: Vec<usize> = lines
        .next()?
        .strip_prefix("subgroup")?
        .split_whitespace()
        .map(|x| x.parse().ok())
        .collect::<Option<_>>()?;
    let mut action = vec![Vec::with_capacity(k); n];
    for _ in 0..k {
        let row: Vec<u32> = lines
            .next()?
            .split_whitespace()
            .map(|x| x.parse().ok())
            .collect::<Option<_>>()?;
        if row.len() != n || row.iter().any(|&d| d as usize >= k) {
            return None;
        }
        for (s, d) in row.into_iter().enumerate() {
            action[s].push(d);
        }
    }
    CosetTable::from_action(sub, action).ok()
}
