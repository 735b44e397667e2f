use serde::Serialize;

use super::{FoldedAutomaton, LabeledGraph};

/// One irreducible piece Γ_{l,n} of the chain; `n = None` marks the tail Γ_{N,∞}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub l: usize,
    pub n: Option<usize>,
    pub vertices: Vec<usize>,
}

/// Ordered decomposition of a folded automaton into irreducible pieces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentChain {
    #[serde(rename = "N")]
    pub big_n: usize,
    pub components: Vec<Component>,
}

impl ComponentChain {
    pub fn q(&self) -> usize {
        self.components.len()
    }

    pub fn vertex_sets(&self) -> Vec<Vec<usize>> {
        self.components.iter().map(|c| c.vertices.clone()).collect()
    }

    /// Index of the component holding v.
    pub fn component_of(&self, v: usize) -> Option<usize> {
        self.components.iter().position(|c| c.vertices.contains(&v))
    }
}

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..=b).collect()
}

fn decompose_graph(g: &LabeledGraph) -> ComponentChain {
    let last = g.vertex_count() - 1;
    let big_n = (0..=last).find(|&k| g.is_irreducible(&range(k, last))).unwrap_or(last + 1);
    let next_merge = |after: usize| ((after + 1)..big_n).find(|&k| g.in_degree(k) >= 2).unwrap_or(big_n);
    let mut components = Vec::new();
    let mut l = 0;
    while l < big_n {
        match (l..big_n).rev().find(|&k| g.is_irreducible(&range(l, k))) {
            Some(n) => {
                components.push(Component { l, n: Some(n), vertices: range(l, n) });
                l = next_merge(n);
            }
            None => {
                log::debug!("no irreducible piece starts at V{l}; treating it as transient");
                l = next_merge(l);
            }
        }
    }
    if big_n <= last {
        components.push(Component { l: big_n, n: None, vertices: range(big_n, last) });
    }
    ComponentChain { big_n, components }
}

pub fn decompose(a: &FoldedAutomaton) -> ComponentChain {
    decompose_graph(&a.graph)
}

/// Decomposition of an arbitrary graph whose vertex order plays the role of
/// the spine order.
pub fn decompose_ordered(g: &LabeledGraph) -> ComponentChain {
    decompose_graph(g)
}

/// True when every vertex on a directed cycle lies in exactly one component.
pub fn covers_cycles(g: &LabeledGraph, chain: &ComponentChain) -> bool {
    g.cycle_vertices().into_iter().all(|v| chain.components.iter().filter(|c| c.vertices.contains(&v)).count() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::negabeta::DigitSequence;
    use crate::shiftgraph::presentation;

    #[test]
    fn minimal_pisot_chain() {
        let a = presentation(&DigitSequence::parse("100(1)", 1).unwrap()).unwrap();
        let c = decompose(&a);
        assert_eq!(c.big_n, 2);
        assert_eq!(c.vertex_sets(), vec![vec![0], vec![1], vec![2, 3, 4]]);
        assert_eq!(c.components[0].n, Some(0));
        assert_eq!(c.components[2].n, None);
        assert!(covers_cycles(&a.graph, &c));
    }

    #[test]
    fn beta_two_chain() {
        let a = presentation(&DigitSequence::parse("(10)", 1).unwrap()).unwrap();
        let c = decompose(&a);
        assert_eq!((c.big_n, c.q()), (0, 1));
    }

    #[test]
    fn single_loop() {
        let g = LabeledGraph::from_edges(1, 0, [(0, 0, 0)]);
        let c = decompose_ordered(&g);
        assert_eq!(c.q(), 1);
        assert_eq!(c.big_n, 0);
    }
}
