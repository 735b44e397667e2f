use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use super::{MeasureError, WordDistribution};
use crate::shiftgraph::{Edge, LabeledGraph};
use crate::spectral;

/// A shift-invariant Markov measure carried by the edges of a labeled graph.
#[derive(Debug, Clone)]
pub struct MarkovMeasure {
    pub graph: LabeledGraph,
    /// Transition probability of each edge with positive weight.
    pub edges: Vec<(Edge, f64)>,
    /// Stationary vertex distribution (indexed by graph vertex).
    pub stationary: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MeasureSummary {
    pub entropy: f64,
    pub support_vertices: Vec<usize>,
    pub stationary_residual: f64,
}

fn stationary_of(n: usize, edges: &[(Edge, f64)], support: &[usize]) -> Vec<f64> {
    let idx: BTreeMap<usize, usize> = support.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let k = support.len();
    let mut p = vec![vec![0.0; k]; k];
    for (e, w) in edges {
        p[idx[&e.from]][idx[&e.to]] += w;
    }
    let left = spectral::perron(&p).left;
    let s: f64 = left.iter().sum();
    let mut pi = vec![0.0; n];
    for (i, &v) in support.iter().enumerate() {
        pi[v] = left[i] / s;
    }
    pi
}

impl MarkovMeasure {
    /// Maximal-entropy measure on an irreducible component.
    pub fn parry(g: &LabeledGraph, component: &[usize]) -> Result<Self, MeasureError> {
        if !g.is_irreducible(component) {
            return Err(MeasureError::NotIrreducible);
        }
        let (sub, verts) = g.induced(component);
        let per = spectral::perron(&spectral::to_f64_matrix(&sub.adjacency()));
        let edges: Vec<(Edge, f64)> = sub
            .edges()
            .map(|e| {
                let p = per.right[e.to] / (per.rho * per.right[e.from]);
                (Edge { from: verts[e.from], label: e.label, to: verts[e.to] }, p)
            })
            .collect();
        let norm: f64 = (0..verts.len()).map(|i| per.left[i] * per.right[i]).sum();
        let mut stationary = vec![0.0; g.vertex_count()];
        for (i, &v) in verts.iter().enumerate() {
            stationary[v] = per.left[i] * per.right[i] / norm;
        }
        Ok(Self { graph: g.clone(), edges, stationary })
    }

    /// Random irreducible Markov measure with full support on the component's edges.
    pub fn random_on<R: Rng>(g: &LabeledGraph, component: &[usize], rng: &mut R) -> Result<Self, MeasureError> {
        if !g.is_irreducible(component) {
            return Err(MeasureError::NotIrreducible);
        }
        let mask = g.subset_mask(component);
        let mut edges = Vec::new();
        for &v in component {
            let out: Vec<Edge> = g.out_edges(v).filter(|&(_, t)| mask[t]).map(|(label, to)| Edge { from: v, label, to }).collect();
            let weights: Vec<f64> = out.iter().map(|_| rng.random_range(0.05..1.0)).collect();
            let total: f64 = weights.iter().sum();
            edges.extend(out.into_iter().zip(weights.into_iter().map(|w| w / total)));
        }
        let stationary = stationary_of(g.vertex_count(), &edges, component);
        Ok(Self { graph: g.clone(), edges, stationary })
    }

    /// Point mass on the periodic orbit traced by a closed walk.
    pub fn cycle(g: &LabeledGraph, walk: &[Edge]) -> Result<Self, MeasureError> {
        let closed = !walk.is_empty()
            && walk.windows(2).all(|p| p[0].to == p[1].from)
            && walk.last().map(|e| e.to) == walk.first().map(|e| e.from)
            && walk.iter().all(|e| g.has_edge(e.from, e.label, e.to));
        if !closed {
            return Err(MeasureError::NotACycle);
        }
        let mut verts: Vec<usize> = walk.iter().map(|e| e.from).collect();
        verts.sort_unstable();
        if verts.windows(2).any(|p| p[0] == p[1]) {
            return Err(MeasureError::NotACycle);
        }
        let mut stationary = vec![0.0; g.vertex_count()];
        for &v in &verts {
            stationary[v] = 1.0 / walk.len() as f64;
        }
        Ok(Self { graph: g.clone(), edges: walk.iter().map(|&e| (e, 1.0)).collect(), stationary })
    }

    pub fn support_vertices(&self) -> Vec<usize> {
        (0..self.stationary.len()).filter(|&v| self.stationary[v] > 0.0).collect()
    }

    pub fn support_edges(&self) -> Vec<Edge> {
        self.edges.iter().filter(|(_, p)| *p > 0.0).map(|(e, _)| *e).collect()
    }

    /// max_v |π_v − Σ_{e: u→v} π_u p_e|.
    pub fn stationary_residual(&self) -> f64 {
        let mut flow = vec![0.0; self.stationary.len()];
        for (e, p) in &self.edges {
            flow[e.to] += self.stationary[e.from] * p;
        }
        flow.iter().zip(&self.stationary).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// Distribution of the length-k label word read from time 0.
    pub fn marginal(&self, k: usize) -> WordDistribution {
        let n = self.stationary.len();
        let mut cur: BTreeMap<Vec<u8>, Vec<f64>> = BTreeMap::new();
        cur.insert(Vec::new(), self.stationary.clone());
        for _ in 0..k {
            let mut next: BTreeMap<Vec<u8>, Vec<f64>> = BTreeMap::new();
            for (w, mass) in &cur {
                for (e, p) in &self.edges {
                    let m = mass[e.from] * p;
                    if m <= 0.0 {
                        continue;
                    }
                    let mut x = w.clone();
                    x.push(e.label);
                    next.entry(x).or_insert_with(|| vec![0.0; n])[e.to] += m;
                }
            }
            cur = next;
        }
        let masses = cur.into_iter().map(|(w, m)| (w, m.iter().sum())).collect();
        WordDistribution::new(k, self.graph.max_label(), masses)
    }

    pub fn summary(&self) -> MeasureSummary {
        MeasureSummary { entropy: markov_entropy(self), support_vertices: self.support_vertices(), stationary_residual: self.stationary_residual() }
    }
}

pub fn parry_measure(g: &LabeledGraph, component: &[usize]) -> Result<MarkovMeasure, MeasureError> {
    MarkovMeasure::parry(g, component)
}

/// −Σ_v π_v Σ_{e out of v} p_e log p_e.
pub fn markov_entropy(m: &MarkovMeasure) -> f64 {
    -m.edges.iter().filter(|(_, p)| *p > 0.0).map(|(e, p)| m.stationary[e.from] * p * p.ln()).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn parry_full_shift() {
        let g = LabeledGraph::from_edges(1, 1, [(0, 0, 0), (0, 1, 0)]);
        let m = parry_measure(&g, &[0]).unwrap();
        assert!((markov_entropy(&m) - 2f64.ln()).abs() < 1e-12);
        for (_, p) in &m.edges {
            assert!((p - 0.5).abs() < 1e-12);
        }
        let d = m.marginal(3);
        assert!((d.mass(&[1, 0, 1]) - 0.125).abs() < 1e-12);
    }

    #[test]
    fn deterministic_cycle_has_zero_entropy() {
        let g = LabeledGraph::from_edges(2, 1, [(0, 1, 1), (1, 0, 0)]);
        let m = parry_measure(&g, &[0, 1]).unwrap();
        assert!(markov_entropy(&m).abs() < 1e-12);
        let c = MarkovMeasure::cycle(&g, &[Edge { from: 0, label: 1, to: 1 }, Edge { from: 1, label: 0, to: 0 }]).unwrap();
        assert_eq!(markov_entropy(&c), 0.0);
        assert!(MarkovMeasure::cycle(&g, &[Edge { from: 0, label: 1, to: 1 }]).is_err());
    }

    #[test]
    fn random_measure_is_stationary() {
        let g = LabeledGraph::from_edges(3, 1, [(0, 0, 1), (1, 1, 2), (2, 0, 0), (2, 1, 1), (1, 0, 0)]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let m = MarkovMeasure::random_on(&g, &[0, 1, 2], &mut rng).unwrap();
        assert!(m.stationary_residual() < 1e-12);
        assert!((m.stationary.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(MarkovMeasure::random_on(&g, &[0], &mut rng).is_err());
    }
}
