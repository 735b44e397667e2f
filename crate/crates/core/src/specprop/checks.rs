use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{SoficPresentation, SpecError};
use crate::measures::MarkovMeasure;
use crate::shiftgraph::{Edge, LabeledGraph};

/// Every vertex on a cycle lies in some component.
pub fn omega_coverage_check(p: &SoficPresentation) -> bool {
    let mut covered = vec![false; p.graph.vertex_count()];
    for &v in p.components.iter().flatten() {
        covered[v] = true;
    }
    p.graph.cycle_vertices().into_iter().all(|v| covered[v])
}

/// Index of the component holding every edge of the support, if there is one.
pub fn support_component(p: &SoficPresentation, support: &[Edge]) -> Option<usize> {
    p.components.iter().position(|c| {
        let mask = p.graph.subset_mask(c);
        support.iter().all(|e| mask[e.from] && mask[e.to])
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErgodicReport {
    pub random_measures: usize,
    pub random_confined: usize,
    pub cycle_measures: usize,
    pub cycles_confined: usize,
    pub mixtures: usize,
    pub mixtures_flagged: usize,
}

impl ErgodicReport {
    pub fn ok(&self) -> bool {
        self.random_confined == self.random_measures && self.cycles_confined == self.cycle_measures && self.mixtures_flagged == self.mixtures
    }
}

/// Shortest closed walk through `v` inside the component.
fn shortest_cycle(g: &LabeledGraph, c: &[usize], v: usize) -> Option<Vec<Edge>> {
    let mask = g.subset_mask(c);
    let mut pred: Vec<Option<Edge>> = vec![None; g.vertex_count()];
    let mut queue = VecDeque::from([v]);
    let mut seen = vec![false; g.vertex_count()];
    seen[v] = true;
    while let Some(x) = queue.pop_front() {
        for (label, t) in g.out_edges(x) {
            if !mask[t] {
                continue;
            }
            let e = Edge { from: x, label, to: t };
            if t == v {
                let mut walk = vec![e];
                let mut y = x;
                while y != v {
                    let p = pred[y].expect("visited");
                    walk.push(p);
                    y = p.from;
                }
                walk.reverse();
                return Some(walk);
            }
            if !seen[t] {
                seen[t] = true;
                pred[t] = Some(e);
                queue.push_back(t);
            }
        }
    }
    None
}

/// Random Markov measures and periodic point masses stay inside one component;
/// mixtures across two components are never confined to one.
pub fn ergodic_support_check(p: &SoficPresentation, trials: usize, seed: u64) -> Result<ErgodicReport, SpecError> {
    let g = &p.graph;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = ErgodicReport { random_measures: 0, random_confined: 0, cycle_measures: 0, cycles_confined: 0, mixtures: 0, mixtures_flagged: 0 };
    for _ in 0..trials {
        let i = rng.random_range(0..p.q());
        let m = MarkovMeasure::random_on(g, &p.components[i], &mut rng)?;
        r.random_measures += 1;
        if support_component(p, &m.support_edges()) == Some(i) {
            r.random_confined += 1;
        }
        if p.q() >= 2 {
            let j = (i + 1 + rng.random_range(0..p.q() - 1)) % p.q();
            let other = MarkovMeasure::random_on(g, &p.components[j], &mut rng)?;
            let mut support = m.support_edges();
            support.extend(other.support_edges());
            r.mixtures += 1;
            if support_component(p, &support).is_none() {
                r.mixtures_flagged += 1;
            }
        }
    }
    for (i, c) in p.components.iter().enumerate() {
        for &v in c {
            let walk = shortest_cycle(g, c, v).ok_or(SpecError::ReducibleComponent(i))?;
            let m = MarkovMeasure::cycle(g, &walk)?;
            r.cycle_measures += 1;
            if support_component(p, &m.support_edges()) == Some(i) {
                r.cycles_confined += 1;
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> SoficPresentation {
        let g = LabeledGraph::from_edges(3, 2, [(0, 0, 0), (0, 1, 1), (1, 1, 2), (2, 2, 2), (2, 0, 2)]);
        SoficPresentation::new(g, vec![vec![0], vec![2]]).unwrap()
    }

    #[test]
    fn coverage() {
        assert!(omega_coverage_check(&chain()));
        let g = LabeledGraph::from_edges(2, 0, [(0, 0, 0), (1, 0, 1)]);
        let p = SoficPresentation::new(g, vec![vec![0]]).unwrap();
        assert!(!omega_coverage_check(&p));
    }

    #[test]
    fn ergodic_supports() {
        let r = ergodic_support_check(&chain(), 50, 9).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.mixtures, 50);
        assert_eq!(r.cycle_measures, 2);
    }
}
