//! Report rendering: JSON lines, Markdown tables and CSV.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cohomology::DegreeRecord;
use crate::coxeter::{catalog_table, instantiated_catalog, FamilyRow, CatalogRow, ScanEntry};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Markdown,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" | "jsonl" => Ok(Format::Json),
            "md" | "markdown" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            other => Err(Error::parse(0, format!("unknown format `{other}`; expected json, md or csv"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Markdown => "md",
            Format::Csv => "csv",
        })
    }
}

/// A record type with a fixed column layout.
pub trait Tabular: Serialize {
    fn headers() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

impl Tabular for DegreeRecord {
    fn headers() -> &'static [&'static str] {
        &["group", "p", "character", "degree", "dim", "method", "status"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.group.clone(),
            self.p.to_string(),
            self.character.clone(),
            self.degree.to_string(),
            self.dim.map_or_else(String::new, |d| d.to_string()),
            self.method.to_string(),
            self.status.to_string(),
        ]
    }
}

/// A line of the catalog output: a family row or one instantiated type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogLine {
    pub kind: &'static str,
    #[serde(rename = "type")]
    pub ty: String,
    pub rank: Option<usize>,
    pub order: String,
    pub p_freeness: String,
}

impl From<&FamilyRow> for CatalogLine {
    fn from(r: &FamilyRow) -> Self {
        CatalogLine {
            kind: "family",
            ty: r.graph.to_string(),
            rank: None,
            order: r.order.to_string(),
            p_freeness: r.p_freeness.to_string(),
        }
    }
}

impl From<&CatalogRow> for CatalogLine {
    fn from(r: &CatalogRow) -> Self {
        CatalogLine {
            kind: "instance",
            ty: r.ty.to_string(),
            rank: Some(r.rank),
            order: r.order.clone(),
            p_freeness: r.p_freeness.clone(),
        }
    }
}

impl Tabular for CatalogLine {
    fn headers() -> &'static [&'static str] {
        &["kind", "type", "rank", "order", "p_freeness"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.kind.to_string(),
            self.ty.clone(),
            self.rank.map_or_else(String::new, |r| r.to_string()),
            self.order.clone(),
            self.p_freeness.clone(),
        ]
    }
}

/// The twelve family rows followed by every instance with A/B/D parameters
/// up to `max_rank` and dihedral labels up to `max_m`.
pub fn catalog_lines(max_rank: usize, max_m: u32) -> Vec<CatalogLine> {
    let mut out: Vec<CatalogLine> = catalog_table().iter().map(CatalogLine::from).collect();
    out.extend(instantiated_catalog(max_rank, max_m).iter().map(CatalogLine::from));
    out
}

/// One type of a p-torsion scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanLine {
    pub p: u64,
    #[serde(flatten)]
    pub entry: ScanEntry,
}

impl Tabular for ScanLine {
    fn headers() -> &'static [&'static str] {
        &["p", "type", "rank", "order", "p_free", "order_coprime_to_p"]
    }

    fn cells(&self) -> Vec<String> {
        let e = &self.entry;
        vec![
            self.p.to_string(),
            e.ty.to_string(),
            e.rank.to_string(),
            e.order.clone(),
            e.p_free.to_string(),
            e.order_coprime_to_p.to_string(),
        ]
    }
}

fn escape_md(s: &str) -> String {
    s.replace('|', "\\|")
}

pub fn render<T: Tabular>(rows: &[T], format: Format) -> String {
    match format {
        Format::Json => {
            let mut out = String::new();
            for r in rows {
                out.push_str(&serde_json::to_string(r).expect("records serialize"));
                out.push('\n');
            }
            out
        }
        Format::Markdown => {
            let headers = T::headers();
            let mut out = format!("| {} |\n", headers.join(" | "));
            out.push_str(&format!("|{}\n", "---|".repeat(headers.len())));
            for r in rows {
                let cells: Vec<String> = r.cells().iter().map(|c| escape_md(c)).collect();
                out.push_str(&format!("| {} |\n", cells.join(" | ")));
            }
            out
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(T::headers()).expect("in-memory write");
            for r in rows {
                w.write_record(r.cells()).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
        }
    }
}
