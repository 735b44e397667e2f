use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{SoficPresentation, SpecCertificate, SpecError, SpecKind};
use crate::negabeta::format_word;
use crate::shiftgraph::{LabeledGraph, StateSet, SubsetAutomaton};

/// Default cap on the number of words enumerated per component.
pub const ENUMERATION_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrutePair {
    pub i: usize,
    pub j: usize,
    pub words_i: usize,
    pub words_j: usize,
    /// Max over (w1, w2) of the minimal |v| with w1 v w2 in the language.
    pub max_min_gap: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BruteForceTable {
    pub maxlen: usize,
    pub pairs: Vec<BrutePair>,
    /// Smallest M such that every pair glues with some gap ≤ M.
    pub min_w_gap: Option<usize>,
    /// Smallest M such that every pair glues with a gap of length exactly M.
    pub min_strong_gap: Option<usize>,
}

/// States from which w can be read.
pub(crate) fn start_set(g: &LabeledGraph, w: &[u8]) -> StateSet {
    let n = g.vertex_count();
    let mut s = StateSet::full(n);
    for &a in w.iter().rev() {
        s = StateSet::from_iter(n, (0..n).filter(|&v| g.out_edges(v).any(|(b, t)| b == a && s.contains(t))));
    }
    s
}

/// States where a reading of w can end, starting from any state of `from`.
pub(crate) fn read(g: &LabeledGraph, from: &StateSet, w: &[u8]) -> StateSet {
    let n = g.vertex_count();
    let mut s = from.clone();
    for &a in w {
        let mut next = StateSet::empty(n);
        for v in s.iter() {
            for (b, t) in g.out_edges(v) {
                if b == a {
                    next.insert(t);
                }
            }
        }
        s = next;
    }
    s
}

/// One step of unlabeled reachability.
pub(crate) fn spread(g: &LabeledGraph, from: &StateSet) -> StateSet {
    StateSet::from_iter(g.vertex_count(), from.iter().flat_map(|v| g.out_edges(v).map(|(_, t)| t)))
}

fn intersects(a: &StateSet, b: &StateSet) -> bool {
    a.iter().any(|v| b.contains(v))
}

fn component_words(g: &LabeledGraph, c: &[usize], maxlen: usize, cap: usize) -> Result<Vec<Vec<u8>>, SpecError> {
    let (sub, _) = g.induced(c);
    let aut = SubsetAutomaton::full(&sub);
    let counts = aut.counts(maxlen);
    let total: usize = counts.iter().map(|x| usize::try_from(x).unwrap_or(usize::MAX)).fold(0, usize::saturating_add);
    if total > cap {
        return Err(SpecError::EnumerationCapExceeded { words: total, cap });
    }
    Ok((0..=maxlen).flat_map(|n| aut.words(n)).collect())
}

/// Exhaustive gap table over all word pairs up to `maxlen`, searched in the full graph.
pub fn spec_bruteforce(p: &SoficPresentation, maxlen: usize) -> Result<BruteForceTable, SpecError> {
    spec_bruteforce_capped(p, maxlen, ENUMERATION_CAP)
}

pub fn spec_bruteforce_capped(p: &SoficPresentation, maxlen: usize, cap: usize) -> Result<BruteForceTable, SpecError> {
    let g = &p.graph;
    let n = g.vertex_count();
    let full = StateSet::full(n);
    let horizon = 2 * n + 4 * maxlen + 8;
    let words: Vec<Vec<Vec<u8>>> = p.components.iter().map(|c| component_words(g, c, maxlen, cap)).collect::<Result<_, _>>()?;
    // distinct end sets of w1 and start sets of w2 per component
    let ends: Vec<BTreeMap<StateSet, usize>> = words.iter().map(|ws| group(ws.iter().map(|w| read(g, &full, w)))).collect();
    let starts: Vec<BTreeMap<StateSet, usize>> = words.iter().map(|ws| group(ws.iter().map(|w| start_set(g, w)))).collect();

    let mut pairs = Vec::new();
    // ok_exact[m] stays true while every pair glues with a gap of exactly m
    let mut ok_exact = vec![true; horizon + 1];
    for (i, j) in p.required_pairs() {
        let mut worst = Some(0);
        for e in ends[i].keys() {
            let mut reach = vec![e.clone()];
            for _ in 0..horizon {
                let next = spread(g, reach.last().expect("nonempty"));
                reach.push(next);
            }
            for s in starts[j].keys() {
                let hits: Vec<bool> = reach.iter().map(|r| intersects(r, s)).collect();
                for (m, h) in hits.iter().enumerate() {
                    ok_exact[m] &= *h;
                }
                worst = match (worst, hits.iter().position(|&h| h)) {
                    (Some(w), Some(m)) => Some(w.max(m)),
                    _ => None,
                };
            }
        }
        pairs.push(BrutePair { i, j, words_i: words[i].len(), words_j: words[j].len(), max_min_gap: worst });
    }
    let min_w_gap = pairs.iter().map(|p| p.max_min_gap).try_fold(0, |acc, g| g.map(|g| acc.max(g)));
    let min_strong_gap = ok_exact.iter().position(|&ok| ok);
    Ok(BruteForceTable { maxlen, pairs, min_w_gap, min_strong_gap })
}

fn group(sets: impl Iterator<Item = StateSet>) -> BTreeMap<StateSet, usize> {
    let mut m = BTreeMap::new();
    for s in sets {
        *m.entry(s).or_insert(0) += 1;
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GluingReport {
    pub trials: usize,
    pub passed: usize,
    pub first_failure: Option<String>,
}

impl GluingReport {
    pub fn ok(&self) -> bool {
        self.passed == self.trials
    }
}

/// A random word of the component: labels of a random walk inside it.
fn random_component_word<R: Rng>(g: &LabeledGraph, c: &[usize], len: usize, rng: &mut R) -> Vec<u8> {
    let mask = g.subset_mask(c);
    let mut v = c[rng.random_range(0..c.len())];
    let mut w = Vec::with_capacity(len);
    for _ in 0..len {
        let out: Vec<(u8, usize)> = g.out_edges(v).filter(|&(_, t)| mask[t]).collect();
        let (a, t) = out[rng.random_range(0..out.len())];
        w.push(a);
        v = t;
    }
    w
}

/// Randomized k-fold gluing: components i1 ≤ … ≤ ik, words inside them, and
/// gaps of exactly M (strong) or at most M (W) searched in the full graph.
pub fn gluing_trials(p: &SoficPresentation, cert: &SpecCertificate, k: usize, trials: usize, max_word_len: usize, seed: u64) -> GluingReport {
    let g = &p.graph;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = 0;
    let mut first_failure = None;
    for _ in 0..trials {
        let mut idx: Vec<usize> = (0..k).map(|_| rng.random_range(0..p.q())).collect();
        idx.sort_unstable();
        let words: Vec<Vec<u8>> = idx
            .iter()
            .map(|&i| {
                let len = rng.random_range(1..=max_word_len);
                random_component_word(g, &p.components[i], len, &mut rng)
            })
            .collect();
        let mut cur = StateSet::full(g.vertex_count());
        for (t, w) in words.iter().enumerate() {
            if t > 0 {
                cur = gap(g, &cur, cert);
            }
            cur = read(g, &cur, w);
        }
        if cur.is_empty() {
            if first_failure.is_none() {
                let shown: Vec<String> = words.iter().map(|w| format_word(w, g.max_label())).collect();
                first_failure = Some(format!("components {idx:?}, words {shown:?}"));
            }
        } else {
            passed += 1;
        }
    }
    GluingReport { trials, passed, first_failure }
}

fn gap(g: &LabeledGraph, from: &StateSet, cert: &SpecCertificate) -> StateSet {
    let mut layer = from.clone();
    let mut union = if cert.kind == SpecKind::WOneWay { from.clone() } else { StateSet::empty(g.vertex_count()) };
    for _ in 0..cert.m {
        layer = spread(g, &layer);
        if cert.kind == SpecKind::WOneWay {
            for v in layer.iter() {
                union.insert(v);
            }
        }
    }
    if cert.kind == SpecKind::WOneWay {
        union
    } else {
        layer
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specprop::spec_bound;

    fn example31() -> SoficPresentation {
        let g = LabeledGraph::from_edges(2, 4, [(0, 0, 0), (0, 1, 0), (0, 1, 1), (1, 2, 1), (1, 3, 1), (1, 4, 1)]);
        SoficPresentation::new(g, vec![vec![0], vec![1]]).unwrap()
    }

    #[test]
    fn example_gap_is_one() {
        let t = spec_bruteforce(&example31(), 4).unwrap();
        assert_eq!(t.min_strong_gap, Some(1));
        assert_eq!(t.min_w_gap, Some(1));
        assert_eq!(t.pairs[1].max_min_gap, Some(1));
        assert_eq!(t.pairs[0].max_min_gap, Some(0));
    }

    #[test]
    fn maxlen_zero() {
        let t = spec_bruteforce(&example31(), 0).unwrap();
        assert!(t.pairs.iter().all(|p| p.max_min_gap == Some(0)));
        assert_eq!(t.min_strong_gap, Some(0));
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(spec_bruteforce_capped(&example31(), 6, 100), Err(SpecError::EnumerationCapExceeded { .. })));
    }

    #[test]
    fn gluing_passes_for_certificate() {
        let p = example31();
        let cert = spec_bound(&p).unwrap();
        let r = gluing_trials(&p, &cert, 3, 200, 6, 1);
        assert!(r.ok(), "{:?}", r.first_failure);
    }
}
