use std::collections::VecDeque;

use serde::Serialize;

use super::MeasureError;
use crate::shiftgraph::{FoldedAutomaton, LabeledGraph, SubsetAutomaton};

/// Distance from each follower state to the nearest state with two or more
/// continuations.
#[derive(Debug, Clone)]
pub struct GBeta {
    aut: SubsetAutomaton,
    dist: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GBetaProfile {
    /// `values[n-1] = g_β(n)`
    pub values: Vec<usize>,
    pub max: usize,
}

impl GBeta {
    pub fn new(g: &LabeledGraph) -> Result<Self, MeasureError> {
        let aut = SubsetAutomaton::full(g);
        let n = aut.len();
        let branching = |s: usize| aut.trans[s].iter().flatten().count() >= 2;
        // reverse BFS from branching states
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        for s in 0..n {
            for t in aut.trans[s].iter().flatten() {
                preds[*t].push(s);
            }
        }
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for s in (0..n).filter(|&s| branching(s)) {
            dist[s] = 0;
            queue.push_back(s);
        }
        while let Some(s) = queue.pop_front() {
            for &p in &preds[s] {
                if dist[p] == usize::MAX {
                    dist[p] = dist[s] + 1;
                    queue.push_back(p);
                }
            }
        }
        if let Some(s) = dist.iter().position(|&d| d == usize::MAX) {
            return Err(MeasureError::NoBranchReachable { state: s });
        }
        Ok(Self { aut, dist })
    }

    pub fn from_automaton(a: &FoldedAutomaton) -> Result<Self, MeasureError> {
        Self::new(&a.graph)
    }

    /// g_β(w); `None` when w is not in the language.
    pub fn word(&self, w: &[u8]) -> Option<usize> {
        self.aut.run(w).map(|s| self.dist[s])
    }

    /// max over words of length n, for n = 1..=n_max.
    pub fn profile(&self, n_max: usize) -> GBetaProfile {
        let mut live = vec![false; self.aut.len()];
        live[self.aut.start] = true;
        let mut values = Vec::with_capacity(n_max);
        for _ in 0..n_max {
            let mut next = vec![false; self.aut.len()];
            for s in (0..live.len()).filter(|&s| live[s]) {
                for t in self.aut.trans[s].iter().flatten() {
                    next[*t] = true;
                }
            }
            live = next;
            values.push((0..live.len()).filter(|&s| live[s]).map(|s| self.dist[s]).max().unwrap_or(0));
        }
        let max = values.iter().copied().max().unwrap_or(0);
        GBetaProfile { values, max }
    }

    pub fn n(&self, n: usize) -> usize {
        self.profile(n).values.last().copied().unwrap_or(self.dist[self.aut.start])
    }
}

pub fn g_beta_word(a: &FoldedAutomaton, w: &[u8]) -> Result<Option<usize>, MeasureError> {
    Ok(GBeta::from_automaton(a)?.word(w))
}

pub fn g_beta_n(a: &FoldedAutomaton, n: usize) -> Result<usize, MeasureError> {
    Ok(GBeta::from_automaton(a)?.n(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::negabeta::DigitSequence;
    use crate::shiftgraph::presentation;

    #[test]
    fn minimal_pisot_g() {
        let a = presentation(&DigitSequence::parse("100(1)", 1).unwrap()).unwrap();
        let g = GBeta::from_automaton(&a).unwrap();
        let p = g.profile(12);
        assert!(p.max <= 2, "{:?}", p.values);
        assert_eq!(g.word(&[1]), Some(0));
        assert_eq!(g.word(&[1, 0, 1]), None);
    }

    #[test]
    fn beta_two_g_is_zero() {
        let a = presentation(&DigitSequence::parse("(10)", 1).unwrap()).unwrap();
        let g = GBeta::from_automaton(&a).unwrap();
        assert_eq!(g.profile(12).max, 0);
    }
}
