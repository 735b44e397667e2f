use serde::Serialize;

use super::subset::SubsetAutomaton;
use super::{ComponentChain, FoldedAutomaton, LabeledGraph};
use crate::negabeta::{AltOrder, MinusBetaSystem, NegaBetaError};
use crate::spectral;

/// Spectral radius of one component, with the exact cross-check when small.
#[derive(Debug, Clone, Serialize)]
pub struct ComponentEntropy {
    pub vertices: Vec<usize>,
    pub spectral_radius: f64,
    pub entropy: f64,
    /// Largest real root of the characteristic polynomial (≤ 6 states).
    pub exact_radius: Option<f64>,
    pub char_poly: Option<String>,
}

pub fn component_entropy(g: &LabeledGraph, vertices: &[usize]) -> ComponentEntropy {
    let (sub, _) = g.induced(vertices);
    let adj = sub.adjacency();
    let rho = spectral::perron(&spectral::to_f64_matrix(&adj)).rho;
    let (exact_radius, char_poly) = if vertices.len() <= 6 {
        let p = spectral::char_poly(&spectral::to_rational_matrix(&adj));
        let shown = crate::algebraic::IntPolynomial::primitive_from(&p).map(|q| q.to_string().replace('X', "λ")).ok();
        (spectral::exact_perron_root(&adj), shown)
    } else {
        (None, None)
    };
    ComponentEntropy { vertices: vertices.to_vec(), spectral_radius: rho, entropy: rho.ln(), exact_radius, char_poly }
}

/// Per-component entropies; the topological entropy is their maximum.
pub fn chain_entropy(a: &FoldedAutomaton, chain: &ComponentChain) -> Vec<ComponentEntropy> {
    chain.components.iter().map(|c| component_entropy(&a.graph, &c.vertices)).collect()
}

/// log of the spectral radius of the whole automaton.
pub fn entropy_estimate(g: &LabeledGraph) -> f64 {
    g.recurrent_sccs()
        .iter()
        .map(|c| component_entropy(g, c).spectral_radius)
        .fold(0.0f64, f64::max)
        .ln()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossValidation {
    pub equal: bool,
    pub words_checked: u64,
    /// First word (in length-lexicographic order) on which the two sides differ.
    pub counterexample: Option<Vec<u8>>,
    pub readable_in_graph: Option<bool>,
}

/// Compares the automaton language with the alternating-order admissibility
/// test on every word of length ≤ n.
pub fn cross_validate(a: &FoldedAutomaton, sys: &MinusBetaSystem, n: usize) -> Result<CrossValidation, NegaBetaError> {
    cross_validate_with(a, sys, n, AltOrder::Adopted)
}

pub fn cross_validate_with(a: &FoldedAutomaton, sys: &MinusBetaSystem, n: usize, order: AltOrder) -> Result<CrossValidation, NegaBetaError> {
    sys.expansion()?;
    let aut = SubsetAutomaton::full(&a.graph);
    let k = sys.b().max(a.graph.max_label()) + 1;
    let mut checked = 0u64;
    for len in 0..=n {
        let mut w = vec![0u8; len];
        loop {
            checked += 1;
            let readable = aut.accepts(&w);
            if readable != sys.word_admissible_with(&w, order)? {
                return Ok(CrossValidation { equal: false, words_checked: checked, counterexample: Some(w), readable_in_graph: Some(readable) });
            }
            if !next_word(&mut w, k) {
                break;
            }
        }
    }
    Ok(CrossValidation { equal: true, words_checked: checked, counterexample: None, readable_in_graph: None })
}

/// Advances w to the next word over {0, …, k−1} in lexicographic order.
pub fn next_word(w: &mut [u8], k: u8) -> bool {
    for i in (0..w.len()).rev() {
        if w[i] + 1 < k {
            w[i] += 1;
            return true;
        }
        w[i] = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shiftgraph::{decompose, presentation};

    #[test]
    fn x3_radius_is_beta() {
        let sys = MinusBetaSystem::minimal_pisot();
        let a = presentation(sys.expansion().unwrap()).unwrap();
        let chain = decompose(&a);
        let ents = chain_entropy(&a, &chain);
        let beta = sys.beta_approx();
        assert!((ents[2].spectral_radius - beta).abs() < 1e-9);
        assert!((ents[2].exact_radius.unwrap() - beta).abs() < 1e-12);
        assert_eq!(ents[2].char_poly.as_deref(), Some("λ^3 - λ - 1"));
        assert!((ents[0].spectral_radius - 1.0).abs() < 1e-12);
        assert!((entropy_estimate(&a.graph) - beta.ln()).abs() < 1e-9);
    }

    #[test]
    fn cross_validation_small() {
        for sys in [MinusBetaSystem::minimal_pisot(), MinusBetaSystem::integer(2), MinusBetaSystem::integer(3)] {
            let a = presentation(sys.expansion().unwrap()).unwrap();
            let cv = cross_validate(&a, &sys, 6).unwrap();
            assert!(cv.equal, "{:?}", cv.counterexample);
            let printed = cross_validate_with(&a, &sys, 6, AltOrder::Opposite).unwrap();
            assert!(!printed.equal);
        }
        let sys = MinusBetaSystem::integer(2);
        let a = presentation(sys.expansion().unwrap()).unwrap();
        assert_eq!(cross_validate(&a, &sys, 0).unwrap().words_checked, 1);
        assert_eq!(cross_validate(&a, &sys, 3).unwrap().words_checked, 1 + 2 + 4 + 8);
    }
}
