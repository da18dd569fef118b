//! Text, JSON and DOT renderings of a flat lattice.

use std::fmt::Write as _;

use covmat::{FlatLattice, SetFamily};
use serde::{Deserialize, Serialize};

use crate::report::{labels, Labels};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub kind: String,
    pub flats: Vec<Labels>,
    /// Cover pairs `[lower, upper]` as indices into `flats`.
    pub edges: Vec<[usize; 2]>,
    pub heights: Vec<usize>,
}

impl LatticeDoc {
    pub fn new(kind: &str, f: &SetFamily, l: &FlatLattice) -> Self {
        LatticeDoc {
            kind: kind.to_string(),
            flats: l.flats().iter().map(|&x| labels(f, x)).collect(),
            edges: l.edges().iter().map(|&(a, b)| [a, b]).collect(),
            heights: l.heights().to_vec(),
        }
    }
}

fn set_text(l: &[String]) -> String {
    format!("{{{}}}", l.join(", "))
}

pub fn text(doc: &LatticeDoc) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} lattice: {} flats", doc.kind, doc.flats.len());
    let top = doc.heights.iter().copied().max().unwrap_or(0);
    for h in 0..=top {
        let level: Vec<String> = (0..doc.flats.len())
            .filter(|&i| doc.heights[i] == h)
            .map(|i| format!("[{i}] {}", set_text(&doc.flats[i])))
            .collect();
        let _ = writeln!(out, "rank {h}: {}", level.join("  "));
    }
    let _ = writeln!(out, "covers:");
    for [a, b] in &doc.edges {
        let _ = writeln!(out, "  [{a}] -> [{b}]");
    }
    out
}

fn quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for ch in s.chars() {
        if ch == '"' || ch == '\\' {
            q.push('\\');
        }
        q.push(ch);
    }
    q.push('"');
    q
}

/// One node per flat, one edge per cover pointing upward, and one cluster
/// per rank.
pub fn dot(doc: &LatticeDoc) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph lattice {{");
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=box];");
    let top = doc.heights.iter().copied().max().unwrap_or(0);
    for h in 0..=top {
        let _ = writeln!(out, "  subgraph cluster_rank{h} {{");
        let _ = writeln!(out, "    label={};", quote(&format!("rank {h}")));
        let _ = writeln!(out, "    rank=same;");
        for i in (0..doc.flats.len()).filter(|&i| doc.heights[i] == h) {
            let _ = writeln!(out, "    f{i} [label={}];", quote(&set_text(&doc.flats[i])));
        }
        let _ = writeln!(out, "  }}");
    }
    for [a, b] in &doc.edges {
        let _ = writeln!(out, "  f{a} -> f{b};");
    }
    let _ = writeln!(out, "}}");
    out
}
