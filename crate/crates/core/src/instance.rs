//! JSON instance files and machine-readable reports.
//!
//! An instance is
//!
//! ```json
//! { "n": 3, "bicliques": [ { "a": [0], "b": [1, 2] }, { "a": [1], "b": [2] } ] }
//! ```
//!
//! with 0-based vertices. The host graph is always the union of the bicliques'
//! cross pairs; an optional `"expect_edges"` field is checked against it.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::asz::{RecursionTrace, Strategy};
use crate::biclique::{Biclique, BicliquePartition};
use crate::error::{Error, Result};
use crate::graph::{Color, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicliqueEntry {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub bicliques: Vec<BicliqueEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_edges: Option<usize>,
}

impl InstanceFile {
    pub fn from_partition(p: &BicliquePartition) -> Self {
        InstanceFile {
            n: p.n(),
            bicliques: p
                .bicliques()
                .iter()
                .map(|h| BicliqueEntry {
                    a: h.part_a.members().to_vec(),
                    b: h.part_b.members().to_vec(),
                })
                .collect(),
            expect_edges: Some(p.graph().edge_count()),
        }
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text =
            fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            Error::Io(msg) => Error::Io(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Io(format!("cannot parse instance: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes") + "\n"
    }

    /// Builds the partition without rejecting collisions, so that
    /// [`BicliquePartition::validate`] can report every problem.
    ///
    /// Vertex lists are sorted on the way in; repeated vertices within a part
    /// and out-of-range vertices are malformed input, as is a mismatching
    /// `expect_edges`.
    pub fn to_partition(&self) -> Result<BicliquePartition> {
        let mut pairs = BTreeSet::new();
        let mut bicliques = Vec::with_capacity(self.bicliques.len());
        for (i, entry) in self.bicliques.iter().enumerate() {
            for (name, part) in [("a", &entry.a), ("b", &entry.b)] {
                let mut sorted = part.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::MalformedInput(format!(
                        "biclique {i} repeats a vertex in part {name}"
                    )));
                }
                if let Some(&v) = sorted.last().filter(|&&v| v >= self.n) {
                    return Err(Error::MalformedInput(format!(
                        "biclique {i} uses vertex {v} outside 0..{}",
                        self.n
                    )));
                }
            }
            for &a in &entry.a {
                for &b in &entry.b {
                    if a != b {
                        pairs.insert((a.min(b), a.max(b)));
                    }
                }
            }
            bicliques.push(Biclique::new(entry.a.clone(), entry.b.clone()));
        }
        let graph = Graph::new(self.n, pairs)?;
        if let Some(expected) = self.expect_edges {
            if expected != graph.edge_count() {
                return Err(Error::MalformedInput(format!(
                    "expect_edges is {expected} but the bicliques cover {} edges",
                    graph.edge_count()
                )));
            }
        }
        BicliquePartition::new(graph, bicliques)
    }
}

/// Output of the `color` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColorReport {
    /// `thm1`, `prop2`, `greedy` or `bitvector`.
    pub strategy: String,
    pub n: usize,
    pub m: usize,
    pub colors: Vec<Color>,
    pub num_colors: usize,
    /// Certified color bound as a decimal string (it may exceed 64 bits).
    pub bound: String,
    pub proper: bool,
    pub within_bound: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<RecursionTrace>,
}

impl ColorReport {
    pub fn strategy_name(strategy: Option<Strategy>) -> String {
        strategy.map_or_else(|| "bitvector".to_owned(), |s| s.as_str().to_owned())
    }
}
