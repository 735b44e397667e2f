use serde::Serialize;

use super::{LabeledGraph, ShiftGraphError};
use crate::negabeta::DigitSequence;

/// Border table of `p`: `fail[i]` is the length of the longest proper border
/// of `p[..i]` (`fail[0]` is unused).
fn failure(p: &[u8]) -> Vec<usize> {
    let mut fail = vec![0; p.len() + 1];
    let mut k = 0;
    for i in 1..p.len() {
        while k > 0 && p[i] != p[k] {
            k = fail[k];
        }
        if p[i] == p[k] {
            k += 1;
        }
        fail[i + 1] = k;
    }
    fail
}

/// KMP transition: from a match of length `j` against `p`, read `a`.
fn advance(p: &[u8], fail: &[usize], mut j: usize, a: u8) -> usize {
    loop {
        if j < p.len() && p[j] == a {
            return j + 1;
        }
        if j == 0 {
            return 0;
        }
        j = fail[j];
    }
}

/// Largest j such that s_0 … s_{j−1} is a suffix of w.
pub fn max_prefix_suffix(w: &[u8], s: &DigitSequence) -> usize {
    let p = s.prefix(w.len());
    let fail = failure(&p);
    w.iter().fold(0, |j, &a| advance(&p, &fail, j, a))
}

/// The graph Γ₋β on V_0 … V_horizon built from i′(1) = s.
pub fn build_gamma(s: &DigitSequence, horizon: usize) -> Result<LabeledGraph, ShiftGraphError> {
    let (u, v) = (s.u(), s.v());
    if horizon < u + 2 * v + 2 {
        return Err(ShiftGraphError::HorizonTooSmall { horizon, needed: u + 2 * v + 2 });
    }
    let p = s.prefix(horizon);
    let fail = failure(&p);
    let s0 = p[0];
    let mut g = LabeledGraph::new(horizon + 1, s.bound());
    let back = |g: &mut LabeledGraph, i: usize, a: u8, j: usize| -> Result<(), ShiftGraphError> {
        if j > u + v {
            return Err(ShiftGraphError::BackEdgeOutOfRange { from: i, label: a, to: j });
        }
        g.add_edge(i, a, j);
        Ok(())
    };
    for i in 0..horizon {
        let si = p[i];
        g.add_edge(i, si, i + 1);
        if i % 2 == 0 {
            for a in 0..si {
                back(&mut g, i, a, advance(&p, &fail, i, a))?;
            }
        } else {
            for c in si + 1..=s0 {
                back(&mut g, i, c, advance(&p, &fail, i, c))?;
            }
            if si < s0 {
                back(&mut g, i, s0, 1)?;
            }
        }
    }
    Ok(g)
}

/// Γ₋β folded to finitely many states: V_i for i ≥ fold_start + fold_period is
/// identified with V_{i − fold_period}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldedAutomaton {
    pub graph: LabeledGraph,
    pub fold_start: usize,
    pub fold_period: usize,
    /// Folded vertex of each original vertex V_0 … V_horizon used in verification.
    pub origin_map: Vec<usize>,
    pub expansion: DigitSequence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FoldInfo {
    pub start: usize,
    pub period: usize,
    pub states: usize,
}

/// Folding period: v when v is even, 2v otherwise, so that the parity of the
/// index is preserved.
pub fn fold_period(v: usize) -> usize {
    if v.is_multiple_of(2) {
        v
    } else {
        2 * v
    }
}

fn origin(k: usize, f: usize, p: usize) -> usize {
    if k < f + p {
        k
    } else {
        f + (k - f) % p
    }
}

pub fn fold(g: &LabeledGraph, s: &DigitSequence) -> Result<FoldedAutomaton, ShiftGraphError> {
    let (u, v) = (s.u(), s.v());
    let p = fold_period(v);
    let horizon = g.vertex_count() - 1;
    let mapped = |i: usize, f: usize| -> Vec<(u8, usize)> {
        let mut es: Vec<(u8, usize)> = g.out_edges(i).map(|(a, t)| (a, origin(t, f, p))).collect();
        es.sort_unstable();
        es.dedup();
        es
    };
    let mut f = u;
    let fold_start = loop {
        if f + 2 * p > horizon {
            return Err(ShiftGraphError::FoldNotVerified { horizon });
        }
        if (f..horizon - p).all(|i| mapped(i, f) == mapped(i + p, f)) {
            break f;
        }
        f += 1;
    };
    let states = fold_start + p;
    let mut folded = LabeledGraph::new(states, g.max_label());
    for i in 0..states {
        for (a, t) in mapped(i, fold_start) {
            folded.add_edge(i, a, t);
        }
    }
    for e in folded.edges() {
        let spine = e.label == s.digit(e.from) && e.to == origin(e.from + 1, fold_start, p);
        if !spine && e.to > u + v {
            return Err(ShiftGraphError::BackEdgeOutOfRange { from: e.from, label: e.label, to: e.to });
        }
    }
    Ok(FoldedAutomaton {
        graph: folded,
        fold_start,
        fold_period: p,
        origin_map: (0..=horizon).map(|k| origin(k, fold_start, p)).collect(),
        expansion: s.clone(),
    })
}

pub fn default_horizon(s: &DigitSequence) -> usize {
    s.u() + 6 * s.v() + 4
}

/// Builds and folds Γ₋β, doubling the horizon on failure up to 64 times the default.
pub fn presentation(s: &DigitSequence) -> Result<FoldedAutomaton, ShiftGraphError> {
    let base = default_horizon(s);
    let mut horizon = base;
    loop {
        let g = build_gamma(s, horizon)?;
        match fold(&g, s) {
            Ok(a) => return Ok(a),
            Err(ShiftGraphError::FoldNotVerified { .. }) if horizon < 64 * base => horizon *= 2,
            Err(e) => return Err(e),
        }
    }
}

impl FoldedAutomaton {
    pub fn state_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn info(&self) -> FoldInfo {
        FoldInfo { start: self.fold_start, period: self.fold_period, states: self.state_count() }
    }

    /// Unrolls the automaton back to V_0 … V_horizon.
    pub fn expand(&self, horizon: usize) -> LabeledGraph {
        let (f, p) = (self.fold_start, self.fold_period);
        let mut g = LabeledGraph::new(horizon + 1, self.graph.max_label());
        for i in 0..horizon {
            let si = self.expansion.digit(i);
            for (a, t) in self.graph.out_edges(origin(i, f, p)) {
                let target = if a == si && t == origin(i + 1, f, p) { i + 1 } else { t };
                g.add_edge(i, a, target);
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str, b: u8) -> DigitSequence {
        DigitSequence::parse(s, b).unwrap()
    }

    #[test]
    fn prefix_suffix_examples() {
        let s = seq("100(1)", 1);
        assert_eq!(max_prefix_suffix(&[1, 0, 0, 1, 0], &s), 2);
        assert_eq!(max_prefix_suffix(&[0], &s), 0);
        assert_eq!(max_prefix_suffix(&[], &s), 0);
        assert_eq!(max_prefix_suffix(&[1, 0, 0, 1], &s), 4);
    }

    #[test]
    fn minimal_pisot_gamma() {
        let g = build_gamma(&seq("100(1)", 1), 7).unwrap();
        for (f, a, t) in [(0, 0, 0), (0, 1, 1), (1, 1, 1), (1, 0, 2), (2, 0, 3), (3, 1, 4), (4, 0, 2), (4, 1, 5), (6, 0, 2)] {
            assert!(g.has_edge(f, a, t), "missing V{f}-{a}->V{t}");
        }
        assert!(g.has_edge(5, 1, 6));
        assert_eq!(g.edge_count(), 7 + 4);
    }

    #[test]
    fn beta_two_gamma() {
        // u + 2v + 2 = 6 is the smallest admissible horizon
        let g = build_gamma(&seq("(10)", 1), 6).unwrap();
        for (f, a, t) in [(0, 0, 0), (1, 1, 1), (2, 0, 0), (3, 1, 1)] {
            assert!(g.has_edge(f, a, t));
        }
        assert_eq!(g.edge_count(), 6 + 6);
    }

    #[test]
    fn folding() {
        let a = presentation(&seq("100(1)", 1)).unwrap();
        assert_eq!(a.state_count(), 5);
        assert_eq!((a.fold_start, a.fold_period), (3, 2));
        assert_eq!(a.origin_map[5], 3);
        assert_eq!(a.origin_map[6], 4);
        let two = presentation(&seq("(10)", 1)).unwrap();
        assert_eq!(two.state_count(), 2);
        assert_eq!(two.graph.edge_count(), 4);
        assert_eq!(two.fold_start, 0);
    }

    #[test]
    fn horizon_too_small() {
        assert!(matches!(build_gamma(&seq("100(1)", 1), 5), Err(ShiftGraphError::HorizonTooSmall { .. })));
    }

    #[test]
    fn expand_then_fold_is_identity() {
        for (s, b) in [("100(1)", 1), ("(10)", 1), ("(20)", 2), ("1(0)", 1)] {
            let s = seq(s, b);
            let a = presentation(&s).unwrap();
            let h = default_horizon(&s) + 3;
            let expanded = a.expand(h);
            assert_eq!(expanded, build_gamma(&s, h).unwrap());
            assert_eq!(fold(&expanded, &s).unwrap().graph, a.graph);
        }
    }
}
