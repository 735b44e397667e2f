use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{FoldedAutomaton, LabeledGraph};

/// A set of graph vertices as a bitset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet(Vec<u64>);

impl StateSet {
    pub fn empty(n: usize) -> Self {
        StateSet(vec![0; n.div_ceil(64).max(1)])
    }

    pub fn from_iter(n: usize, it: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for v in it {
            s.insert(v);
        }
        s
    }

    pub fn full(n: usize) -> Self {
        Self::from_iter(n, 0..n)
    }

    pub fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| i * 64 + b))
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Deterministic automaton on the reachable subsets of a labeled graph.
/// Each readable word has exactly one path from `start`.
#[derive(Debug, Clone)]
pub struct SubsetAutomaton {
    pub sets: Vec<StateSet>,
    /// `trans[state][label]`
    pub trans: Vec<Vec<Option<usize>>>,
    pub start: usize,
}

impl SubsetAutomaton {
    pub fn new(g: &LabeledGraph, initial: StateSet) -> Self {
        let k = g.max_label() as usize + 1;
        let n = g.vertex_count();
        let mut index: HashMap<StateSet, usize> = HashMap::new();
        let mut sets = vec![initial.clone()];
        let mut trans: Vec<Vec<Option<usize>>> = vec![vec![None; k]];
        index.insert(initial, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let mut next = vec![StateSet::empty(n); k];
            for v in sets[i].iter() {
                for (a, t) in g.out_edges(v) {
                    next[a as usize].insert(t);
                }
            }
            for (a, s) in next.into_iter().enumerate() {
                if s.is_empty() {
                    continue;
                }
                let j = *index.entry(s.clone()).or_insert_with(|| {
                    sets.push(s);
                    trans.push(vec![None; k]);
                    queue.push_back(sets.len() - 1);
                    sets.len() - 1
                });
                trans[i][a] = Some(j);
            }
        }
        Self { sets, trans, start: 0 }
    }

    /// Automaton reading words from any vertex.
    pub fn full(g: &LabeledGraph) -> Self {
        Self::new(g, StateSet::full(g.vertex_count()))
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn step(&self, state: usize, a: u8) -> Option<usize> {
        self.trans[state].get(a as usize).copied().flatten()
    }

    pub fn run_from(&self, state: usize, w: &[u8]) -> Option<usize> {
        w.iter().try_fold(state, |s, &a| self.step(s, a))
    }

    pub fn run(&self, w: &[u8]) -> Option<usize> {
        self.run_from(self.start, w)
    }

    pub fn accepts(&self, w: &[u8]) -> bool {
        self.run(w).is_some()
    }

    /// Number of readable words of each length 0..=n.
    pub fn counts(&self, n: usize) -> Vec<BigUint> {
        let mut cur = vec![BigUint::zero(); self.len()];
        cur[self.start] = BigUint::one();
        let mut out = Vec::with_capacity(n + 1);
        for step in 0..=n {
            out.push(cur.iter().sum());
            if step == n {
                break;
            }
            let mut next = vec![BigUint::zero(); self.len()];
            for (s, c) in cur.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for t in self.trans[s].iter().flatten() {
                    next[*t] += c;
                }
            }
            cur = next;
        }
        out
    }

    /// All readable words of length exactly n, in lexicographic order.
    pub fn words(&self, n: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut w = Vec::with_capacity(n);
        self.collect(self.start, n, &mut w, &mut out);
        out
    }

    fn collect(&self, s: usize, n: usize, w: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if w.len() == n {
            out.push(w.clone());
            return;
        }
        for (a, t) in self.trans[s].iter().enumerate() {
            if let Some(t) = t {
                w.push(a as u8);
                self.collect(*t, n, w, out);
                w.pop();
            }
        }
    }
}

/// Number of distinct label words of length n readable in the automaton.
pub fn count_words(a: &FoldedAutomaton, n: usize) -> BigUint {
    count_words_graph(&a.graph, n)
}

pub fn count_words_graph(g: &LabeledGraph, n: usize) -> BigUint {
    SubsetAutomaton::full(g).counts(n).pop().expect("n+1 counts")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_two_shift_counts() {
        let g = LabeledGraph::from_edges(1, 1, [(0, 0, 0), (0, 1, 0)]);
        let c = SubsetAutomaton::full(&g).counts(14);
        for (n, x) in c.iter().enumerate() {
            assert_eq!(*x, BigUint::from(1u64 << n));
        }
    }

    #[test]
    fn golden_mean_counts() {
        // no "11": Fibonacci numbers
        let g = LabeledGraph::from_edges(2, 1, [(0, 0, 0), (0, 1, 1), (1, 0, 0)]);
        let c: Vec<u64> = SubsetAutomaton::full(&g).counts(6).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(c, vec![1, 2, 3, 5, 8, 13, 21]);
        let aut = SubsetAutomaton::full(&g);
        assert!(aut.accepts(&[1, 0, 1]));
        assert!(!aut.accepts(&[1, 1]));
        assert_eq!(aut.words(2), vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn bitset_ops() {
        let s = StateSet::from_iter(130, [0, 64, 129]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert!(s.contains(129) && !s.contains(1));
        assert_eq!(s.len(), 3);
    }
}
