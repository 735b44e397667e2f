use std::collections::VecDeque;

use serde::Serialize;

use super::SpecError;
use crate::negabeta::format_word;
use crate::shiftgraph::{ComponentChain, FoldedAutomaton, LabeledGraph};

/// A labeled graph together with an ordered list of irreducible pieces.
#[derive(Debug, Clone)]
pub struct SoficPresentation {
    pub graph: LabeledGraph,
    pub components: Vec<Vec<usize>>,
}

impl SoficPresentation {
    pub fn new(graph: LabeledGraph, components: Vec<Vec<usize>>) -> Result<Self, SpecError> {
        let mut seen = vec![false; graph.vertex_count()];
        for (i, c) in components.iter().enumerate() {
            if !graph.is_irreducible(c) {
                return Err(SpecError::ReducibleComponent(i));
            }
            for &v in c {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(SpecError::OverlappingComponents(v));
                }
            }
        }
        Ok(Self { graph, components })
    }

    pub fn from_chain(a: &FoldedAutomaton, chain: &ComponentChain) -> Result<Self, SpecError> {
        Self::new(a.graph.clone(), chain.vertex_sets())
    }

    pub fn q(&self) -> usize {
        self.components.len()
    }

    /// Ordered pairs (i, j) with i ≤ j that a gluing may need.
    pub fn required_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.q()).flat_map(|i| (i..self.q()).map(move |j| (i, j))).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecKind {
    StrongOneWay,
    WOneWay,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub i: usize,
    pub j: usize,
    /// Worst-case gap over the states of X_i and X_j (exact M for the strong kind).
    pub gap: usize,
    /// Labels of a connecting path realizing `gap`.
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecCertificate {
    pub kind: SpecKind,
    #[serde(rename = "M")]
    pub m: usize,
    /// diam + longest inter-component distance + diam.
    pub m_bound: usize,
    pub pairs: Vec<PairWitness>,
    #[serde(rename = "exact_min_M", skip_serializing_if = "Option::is_none")]
    pub exact_min_m: Option<usize>,
}

type Bfs = (Vec<Option<usize>>, Vec<Option<(usize, u8)>>);

/// BFS distances and predecessor edges from `src`, optionally inside a mask.
fn bfs(g: &LabeledGraph, src: usize, mask: Option<&[bool]>) -> Bfs {
    let mut dist = vec![None; g.vertex_count()];
    let mut pred = vec![None; g.vertex_count()];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(v) = queue.pop_front() {
        for (a, t) in g.out_edges(v) {
            if mask.is_some_and(|m| !m[t]) || dist[t].is_some() {
                continue;
            }
            dist[t] = Some(dist[v].expect("visited") + 1);
            pred[t] = Some((v, a));
            queue.push_back(t);
        }
    }
    (dist, pred)
}

fn path_labels(pred: &[Option<(usize, u8)>], src: usize, dst: usize) -> Vec<u8> {
    let mut out = Vec::new();
    let mut v = dst;
    while v != src {
        let (p, a) = pred[v].expect("reachable");
        out.push(a);
        v = p;
    }
    out.reverse();
    out
}

/// Directed diameter of the induced subgraph on `c`.
fn diameter(g: &LabeledGraph, c: &[usize]) -> usize {
    let mask = g.subset_mask(c);
    c.iter()
        .map(|&p| {
            let (d, _) = bfs(g, p, Some(&mask));
            c.iter().map(|&q| d[q].expect("irreducible component")).max().unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

/// Boolean matrix product.
fn bool_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).any(|k| a[i][k] && b[k][j])).collect()).collect()
}

/// Labels of some path of length exactly m from p to q, given reachability layers.
fn exact_path(g: &LabeledGraph, layers: &[Vec<Vec<bool>>], p: usize, q: usize, m: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(m);
    let mut v = p;
    for step in 0..m {
        let rest = m - step - 1;
        let (a, t) = g
            .out_edges(v)
            .find(|&(_, t)| layers[rest][t][q])
            .expect("layer says reachable");
        out.push(a);
        v = t;
    }
    out
}

fn w_parts(p: &SoficPresentation) -> Result<(usize, Vec<PairWitness>), SpecError> {
    let g = &p.graph;
    let max_diam = p.components.iter().map(|c| diameter(g, c)).max().unwrap_or(0);
    let mut inter = 0;
    let mut worst = Vec::new();
    for (i, j) in p.required_pairs() {
        let mut pair_gap = 0;
        let mut pair_witness = Vec::new();
        let mut into_j = 0;
        for &s in &p.components[i] {
            let (d, pred) = bfs(g, s, None);
            let near = p.components[j].iter().filter_map(|&t| d[t]).min().ok_or(SpecError::DisconnectedPair { i, j })?;
            into_j = into_j.max(near);
            for &t in &p.components[j] {
                let dt = d[t].ok_or(SpecError::DisconnectedPair { i, j })?;
                if dt > pair_gap || pair_witness.is_empty() && dt == pair_gap {
                    pair_gap = dt;
                    pair_witness = path_labels(&pred, s, t);
                }
            }
        }
        if i != j {
            inter = inter.max(into_j);
        }
        worst.push(PairWitness { i, j, gap: pair_gap, witness: format_word(&pair_witness, g.max_label()) });
    }
    Ok((2 * max_diam + inter, worst))
}

/// The (W) certificate alone: M = M_bound, with a worst-case connecting path per pair.
pub fn spec_bound_w(p: &SoficPresentation) -> Result<SpecCertificate, SpecError> {
    let (m_bound, pairs) = w_parts(p)?;
    Ok(SpecCertificate { kind: SpecKind::WOneWay, m: m_bound, m_bound, pairs, exact_min_m: None })
}

/// Certifies one-way specification on the state level.
///
/// The (W) variant holds with M = M_bound whenever every required pair is
/// connected. The strong variant is tried for each M ≤ M_bound: every state of
/// X_i must reach every state of X_j (i ≤ j) by a path of length exactly M.
pub fn spec_bound(p: &SoficPresentation) -> Result<SpecCertificate, SpecError> {
    let g = &p.graph;
    let n = g.vertex_count();
    let (m_bound, worst) = w_parts(p)?;

    // layers[m][p][q]: a path of length exactly m from p to q
    let adj: Vec<Vec<bool>> = (0..n).map(|v| (0..n).map(|t| g.out_edges(v).any(|(_, x)| x == t)).collect()).collect();
    let mut layers = vec![(0..n).map(|v| (0..n).map(|t| v == t).collect::<Vec<bool>>()).collect::<Vec<_>>()];
    for _ in 0..m_bound {
        let next = bool_mul(layers.last().expect("nonempty"), &adj);
        layers.push(next);
    }
    let strong_at = |m: usize| {
        p.required_pairs()
            .iter()
            .all(|&(i, j)| p.components[i].iter().all(|&s| p.components[j].iter().all(|&t| layers[m][s][t])))
    };
    if let Some(m) = (0..=m_bound).find(|&m| strong_at(m)) {
        let pairs = p
            .required_pairs()
            .into_iter()
            .map(|(i, j)| {
                let (s, t) = (p.components[i][0], p.components[j][0]);
                PairWitness { i, j, gap: m, witness: format_word(&exact_path(g, &layers, s, t, m), g.max_label()) }
            })
            .collect();
        return Ok(SpecCertificate { kind: SpecKind::StrongOneWay, m, m_bound, pairs, exact_min_m: None });
    }
    Ok(SpecCertificate { kind: SpecKind::WOneWay, m: m_bound, m_bound, pairs: worst, exact_min_m: None })
}

impl SpecCertificate {
    /// Attaches the brute-force minimum matching this certificate's kind.
    pub fn with_exact_min(mut self, table: &super::BruteForceTable) -> Self {
        self.exact_min_m = match self.kind {
            SpecKind::StrongOneWay => table.min_strong_gap,
            _ => table.min_w_gap,
        };
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_shift_is_strong_with_zero_gap() {
        let g = LabeledGraph::from_edges(1, 1, [(0, 0, 0), (0, 1, 0)]);
        let p = SoficPresentation::new(g, vec![vec![0]]).unwrap();
        let c = spec_bound(&p).unwrap();
        assert_eq!((c.kind, c.m), (SpecKind::StrongOneWay, 0));
    }

    #[test]
    fn two_loop_chain() {
        // {0,1}-loops at A, A -1-> B, {2,3,4}-loops at B
        let g = LabeledGraph::from_edges(2, 4, [(0, 0, 0), (0, 1, 0), (0, 1, 1), (1, 2, 1), (1, 3, 1), (1, 4, 1)]);
        let p = SoficPresentation::new(g, vec![vec![0], vec![1]]).unwrap();
        let c = spec_bound(&p).unwrap();
        assert_eq!((c.kind, c.m), (SpecKind::StrongOneWay, 1));
        assert_eq!(c.pairs[1].witness, "1");
    }

    #[test]
    fn disconnected_pair_is_reported() {
        let g = LabeledGraph::from_edges(2, 1, [(0, 0, 0), (1, 1, 1)]);
        let p = SoficPresentation::new(g, vec![vec![0], vec![1]]).unwrap();
        assert_eq!(spec_bound(&p), Err(SpecError::DisconnectedPair { i: 0, j: 1 }));
    }

    #[test]
    fn rejects_bad_presentations() {
        let g = LabeledGraph::from_edges(2, 1, [(0, 0, 1), (1, 1, 1)]);
        assert_eq!(SoficPresentation::new(g.clone(), vec![vec![0]]).unwrap_err(), SpecError::ReducibleComponent(0));
        assert_eq!(SoficPresentation::new(g, vec![vec![1], vec![1]]).unwrap_err(), SpecError::OverlappingComponents(1));
    }
}
