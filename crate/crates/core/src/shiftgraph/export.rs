use std::fmt::Write;

use serde::Serialize;

use super::{ComponentChain, Component, FoldInfo, FoldedAutomaton, LabeledGraph};
use crate::negabeta::format_word;

#[derive(Debug, Clone, Serialize)]
pub struct GraphReport {
    pub vertices: usize,
    pub edges: Vec<(usize, u8, usize)>,
    pub fold: FoldInfo,
    pub components: Vec<Component>,
}

pub fn graph_report(a: &FoldedAutomaton, chain: &ComponentChain) -> GraphReport {
    GraphReport {
        vertices: a.state_count(),
        edges: a.graph.edges().map(|e| (e.from, e.label, e.to)).collect(),
        fold: a.info(),
        components: chain.components.clone(),
    }
}

/// DOT rendering; with a chain, each component becomes a cluster.
pub fn to_dot(g: &LabeledGraph, chain: Option<&ComponentChain>) -> String {
    let mut s = String::from("digraph gamma {\n  rankdir=LR;\n  node [shape=circle];\n");
    let mut placed = vec![false; g.vertex_count()];
    if let Some(chain) = chain {
        for (i, c) in chain.components.iter().enumerate() {
            writeln!(s, "  subgraph cluster_{i} {{\n    label=\"X{}\";", i + 1).unwrap();
            for &v in &c.vertices {
                writeln!(s, "    V{v};").unwrap();
                placed[v] = true;
            }
            s.push_str("  }\n");
        }
    }
    for v in (0..g.vertex_count()).filter(|&v| !placed[v]) {
        writeln!(s, "  V{v};").unwrap();
    }
    for e in g.edges() {
        writeln!(s, "  V{} -> V{} [label=\"{}\"];", e.from, e.to, format_word(&[e.label], g.max_label())).unwrap();
    }
    s.push_str("}\n");
    s
}
