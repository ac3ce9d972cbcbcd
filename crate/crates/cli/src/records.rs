//! Report rows specific to the command line.

use serde::Serialize;

use coxalt_core::report::Tabular;

/// Betti profile of X_W or of its orbit space.
#[derive(Clone, Debug, Serialize)]
pub struct ComplexRecord {
    pub complex: String,
    pub p: u64,
    pub cells: String,
    pub betti: String,
    pub expected: String,
    pub sphere: bool,
}

impl Tabular for ComplexRecord {
    fn headers() -> &'static [&'static str] {
        &["complex", "p", "cells", "betti", "expected", "sphere"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.complex.clone(),
            self.p.to_string(),
            self.cells.clone(),
            self.betti.clone(),
            self.expected.clone(),
            self.sphere.to_string(),
        ]
    }
}

/// Bottom row of the isotropy spectral sequence against the orbit space.
#[derive(Clone, Debug, Serialize)]
pub struct BottomRowRecord {
    pub group: String,
    pub p: u64,
    pub e1: String,
    pub e2: String,
    pub invariant: String,
    pub matches: bool,
}

impl Tabular for BottomRowRecord {
    fn headers() -> &'static [&'static str] {
        &["group", "p", "e1", "e2", "invariant", "matches"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.group.clone(),
            self.p.to_string(),
            self.e1.clone(),
            self.e2.clone(),
            self.invariant.clone(),
            self.matches.to_string(),
        ]
    }
}

/// Machine-readable failure record written to stderr.
#[derive(Clone, Debug, Serialize)]
pub struct FailureRecord {
    pub error: &'static str,
    pub exit_code: i32,
    pub message: String,
}

pub fn tuple(values: &[usize]) -> String {
    let parts: Vec<String> = values.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}
