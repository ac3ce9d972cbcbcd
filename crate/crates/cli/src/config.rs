//! `key=value` run configuration. Flags override the file; the cache
//! directory may also come from `COXALT_CACHE_DIR`.

use std::path::{Path, PathBuf};

use coxalt_core::report::Format;

pub const CACHE_ENV: &str = "COXALT_CACHE_DIR";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FileConfig {
    pub primes: Vec<u64>,
    pub kmax: Option<usize>,
    pub format: Option<Format>,
    pub cache_dir: Option<PathBuf>,
    pub cap: Option<usize>,
    pub mem: Option<u64>,
}

fn parse_value<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("config line {line}: invalid value `{value}` for `{key}`"))
}

impl FileConfig {
    /// Blank lines and `#` comments are ignored; unknown keys are errors.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut cfg = FileConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| format!("config line {line}: expected key=value"))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "p" | "primes" => {
                    for part in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                        cfg.primes.push(parse_value(line, key, part)?);
                    }
                }
                "kmax" => cfg.kmax = Some(parse_value(line, key, value)?),
                "format" => cfg.format = Some(value.parse().map_err(|e| format!("config line {line}: {e}"))?),
                "cache-dir" | "cache_dir" => {
                    cfg.cache_dir = (!value.is_empty()).then(|| PathBuf::from(value));
                }
                "cap" => cfg.cap = Some(parse_value(line, key, value)?),
                "mem" => cfg.mem = Some(parse_value(line, key, value)?),
                other => return Err(format!("config line {line}: unknown key `{other}`")),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Self::parse(&text)
    }
}
