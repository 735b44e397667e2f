use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

/// A finite directed graph with digit-labeled edges, stored as sorted
/// out-edge sets so duplicate edges merge automatically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    out: Vec<BTreeSet<(u8, usize)>>,
    max_label: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge {
    pub from: usize,
    pub label: u8,
    pub to: usize,
}

impl LabeledGraph {
    pub fn new(vertex_count: usize, max_label: u8) -> Self {
        Self { out: vec![BTreeSet::new(); vertex_count], max_label }
    }

    pub fn from_edges(vertex_count: usize, max_label: u8, edges: impl IntoIterator<Item = (usize, u8, usize)>) -> Self {
        let mut g = Self::new(vertex_count, max_label);
        for (f, a, t) in edges {
            g.add_edge(f, a, t);
        }
        g
    }

    /// Adds an edge; returns false when it was already present.
    pub fn add_edge(&mut self, from: usize, label: u8, to: usize) -> bool {
        assert!(from < self.out.len() && to < self.out.len(), "edge endpoint out of range");
        assert!(label <= self.max_label, "label {label} exceeds {}", self.max_label);
        self.out[from].insert((label, to))
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn max_label(&self) -> u8 {
        self.max_label
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(BTreeSet::len).sum()
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = (u8, usize)> + '_ {
        self.out[v].iter().copied()
    }

    pub fn has_edge(&self, from: usize, label: u8, to: usize) -> bool {
        self.out[from].contains(&(label, to))
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(from, es)| es.iter().map(move |&(label, to)| Edge { from, label, to }))
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges().filter(|e| e.to == v).count()
    }

    /// Successors of v inside `mask`.
    fn succ_in<'a>(&'a self, v: usize, mask: &'a [bool]) -> impl Iterator<Item = usize> + 'a {
        self.out[v].iter().map(|&(_, t)| t).filter(move |&t| mask[t])
    }

    fn mask(&self, subset: &[usize]) -> Vec<bool> {
        let mut m = vec![false; self.out.len()];
        for &v in subset {
            m[v] = true;
        }
        m
    }

    /// Whether the induced subgraph on `subset` is strongly connected; a
    /// single vertex counts only when it carries a self-loop.
    pub fn is_irreducible(&self, subset: &[usize]) -> bool {
        let Some(&root) = subset.first() else { return false };
        let mask = self.mask(subset);
        if subset.len() == 1 {
            return self.out[root].iter().any(|&(_, t)| t == root);
        }
        let count = |forward: bool| {
            let mut seen = vec![false; self.out.len()];
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            let mut n = 1;
            while let Some(v) = queue.pop_front() {
                let next: Vec<usize> = if forward {
                    self.succ_in(v, &mask).collect()
                } else {
                    subset.iter().copied().filter(|&u| self.out[u].iter().any(|&(_, t)| t == v)).collect()
                };
                for t in next {
                    if !seen[t] {
                        seen[t] = true;
                        n += 1;
                        queue.push_back(t);
                    }
                }
            }
            n
        };
        let distinct: BTreeSet<usize> = subset.iter().copied().collect();
        count(true) == distinct.len() && count(false) == distinct.len()
    }

    /// Strongly connected components (Tarjan), each sorted, listed in
    /// increasing order of their smallest vertex.
    pub fn sccs(&self) -> Vec<Vec<usize>> {
        let n = self.out.len();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut out = Vec::new();
        let mut counter = 0;
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            // iterative DFS: (vertex, remaining successors)
            let mut call: Vec<(usize, Vec<usize>)> = Vec::new();
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            call.push((root, self.out[root].iter().map(|&(_, t)| t).collect()));
            while let Some((v, succ)) = call.last_mut() {
                let v = *v;
                if let Some(w) = succ.pop() {
                    if index[w] == usize::MAX {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, self.out[w].iter().map(|&(_, t)| t).collect()));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some((parent, _)) = call.last() {
                        low[*parent] = low[*parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().expect("tarjan stack");
                            on_stack[w] = false;
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        out.push(comp);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Components that carry at least one cycle.
    pub fn recurrent_sccs(&self) -> Vec<Vec<usize>> {
        self.sccs().into_iter().filter(|c| self.is_irreducible(c)).collect()
    }

    /// Vertices lying on some directed cycle.
    pub fn cycle_vertices(&self) -> BTreeSet<usize> {
        self.recurrent_sccs().into_iter().flatten().collect()
    }

    pub fn induced(&self, subset: &[usize]) -> (LabeledGraph, Vec<usize>) {
        let mut idx = vec![usize::MAX; self.out.len()];
        for (i, &v) in subset.iter().enumerate() {
            idx[v] = i;
        }
        let mut g = LabeledGraph::new(subset.len(), self.max_label);
        for (i, &v) in subset.iter().enumerate() {
            for &(a, t) in &self.out[v] {
                if idx[t] != usize::MAX {
                    g.add_edge(i, a, idx[t]);
                }
            }
        }
        (g, subset.to_vec())
    }

    /// Nonnegative integer adjacency counts (parallel edges with distinct labels add up).
    pub fn adjacency(&self) -> Vec<Vec<u64>> {
        let n = self.out.len();
        let mut m = vec![vec![0u64; n]; n];
        for e in self.edges() {
            m[e.from][e.to] += 1;
        }
        m
    }

    /// BFS distances from `src` within `mask` (or the whole graph).
    pub fn distances_from(&self, src: usize, mask: Option<&[bool]>) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.out.len()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].expect("visited");
            for &(_, t) in &self.out[v] {
                if mask.is_some_and(|m| !m[t]) {
                    continue;
                }
                if dist[t].is_none() {
                    dist[t] = Some(d + 1);
                    queue.push_back(t);
                }
            }
        }
        dist
    }

    pub fn subset_mask(&self, subset: &[usize]) -> Vec<bool> {
        self.mask(subset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility() {
        let g = LabeledGraph::from_edges(3, 1, [(0, 0, 0), (0, 1, 1), (1, 0, 2), (2, 1, 1)]);
        assert!(g.is_irreducible(&[0]));
        assert!(!g.is_irreducible(&[1]));
        assert!(!g.is_irreducible(&[0, 1]));
        assert!(g.is_irreducible(&[1, 2]));
        assert!(!g.is_irreducible(&[]));
    }

    #[test]
    fn tarjan_components() {
        let g = LabeledGraph::from_edges(5, 1, [(0, 0, 0), (0, 1, 1), (1, 1, 2), (2, 0, 1), (2, 1, 3), (4, 0, 3)]);
        assert_eq!(g.sccs(), vec![vec![0], vec![1, 2], vec![3], vec![4]]);
        assert_eq!(g.recurrent_sccs(), vec![vec![0], vec![1, 2]]);
        assert_eq!(g.cycle_vertices().into_iter().collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn duplicates_merge() {
        let mut g = LabeledGraph::new(2, 1);
        assert!(g.add_edge(0, 1, 1));
        assert!(!g.add_edge(0, 1, 1));
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.in_degree(1), 1);
    }
}
