//! The shipped type/representation registry (`data/registry.json`).

use serde::Deserialize;
use std::sync::OnceLock;

#[derive(Debug, Clone, Deserialize)]
pub struct TypeEntry {
    #[serde(rename = "type")]
    pub kind: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub reps: Vec<RepEntry>,
}

/// Sparse generator triple: (row, col, rational literal), rows and columns 1-based.
pub type Triple = (usize, usize, String);

#[derive(Debug, Clone, Deserialize)]
pub struct RepEntry {
    pub index: usize,
    pub dim: Option<usize>,
    pub f: Option<Vec<Vec<Triple>>>,
    pub e: Option<Vec<Vec<Triple>>>,
    pub weights: Option<Vec<Vec<i64>>>,
    pub wedge_of: Option<usize>,
    pub k: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Registry {
    pub types: Vec<TypeEntry>,
}

impl Registry {
    pub fn find(&self, kind: &str, rank: usize) -> Option<&TypeEntry> {
        self.types
            .iter()
            .find(|t| t.kind.eq_ignore_ascii_case(kind) && t.rank == rank)
    }
}

pub fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(|| {
        serde_json::from_str(include_str!("../data/registry.json"))
            .expect("bundled registry is valid JSON")
    })
}
