use serde::Serialize;

use super::{LdpError, Observable};
use crate::measures::{markov_entropy, MarkovMeasure};
use crate::shiftgraph::LabeledGraph;
use crate::spectral;
use crate::specprop::SoficPresentation;

const STATIONARY_TOL: f64 = 1e-9;
const GOLDEN_TOL: f64 = 1e-11;

pub enum MeasureInput<'a> {
    Markov(&'a MarkovMeasure),
    /// Finite convex combination; weights are assumed to sum to one.
    Mixture(Vec<(f64, &'a MarkovMeasure)>),
    NonInvariant,
}

fn is_stationary(m: &MarkovMeasure) -> bool {
    m.stationary_residual() < STATIONARY_TOL
}

/// h(μ) − φ for invariant μ, −∞ otherwise. Entropy is affine on mixtures.
pub fn free_energy(mu: &MeasureInput, phi_const: f64) -> f64 {
    match mu {
        MeasureInput::Markov(m) if is_stationary(m) => markov_entropy(m) - phi_const,
        MeasureInput::Mixture(parts) if !parts.is_empty() && parts.iter().all(|(_, m)| is_stationary(m)) => {
            parts.iter().map(|(a, m)| a * markov_entropy(m)).sum::<f64>() - phi_const
        }
        _ => f64::NEG_INFINITY,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Pressure {
    pub value: f64,
    /// Component attaining the max.
    pub component: usize,
}

fn component_pressure(g: &LabeledGraph, c: &[usize], psi: &Observable, t: f64) -> f64 {
    let (sub, _) = g.induced(c);
    let shift = if t >= 0.0 { psi.max() } else { psi.min() };
    let n = sub.vertex_count();
    let mut m = vec![vec![0.0; n]; n];
    for e in sub.edges() {
        m[e.from][e.to] += (t * (psi.value(e.label) - shift)).exp();
    }
    spectral::perron(&m).rho.ln() + t * shift
}

/// max over components of log ρ(A_t), (A_t)_{uv} = Σ_{u→v} exp(t ψ(label)).
pub fn pressure(p: &SoficPresentation, psi: &Observable, t: f64) -> Pressure {
    let mut best = Pressure { value: f64::NEG_INFINITY, component: 0 };
    for (i, c) in p.components.iter().enumerate() {
        let v = component_pressure(&p.graph, c, psi, t);
        if v > best.value {
            best = Pressure { value: v, component: i };
        }
    }
    best
}

/// Karp's minimum cycle mean on a strongly connected vertex set.
pub fn min_mean_cycle(g: &LabeledGraph, c: &[usize], psi: &Observable) -> f64 {
    let (sub, _) = g.induced(c);
    let n = sub.vertex_count();
    let edges: Vec<_> = sub.edges().collect();
    let mut d = vec![vec![f64::INFINITY; n]; n + 1];
    d[0][0] = 0.0;
    for k in 1..=n {
        for e in &edges {
            let w = d[k - 1][e.from] + psi.value(e.label);
            if w < d[k][e.to] {
                d[k][e.to] = w;
            }
        }
    }
    (0..n)
        .filter(|&v| d[n][v].is_finite())
        .map(|v| (0..n).filter(|&k| d[k][v].is_finite()).map(|k| (d[n][v] - d[k][v]) / (n - k) as f64).fold(f64::NEG_INFINITY, f64::max))
        .fold(f64::INFINITY, f64::min)
}

pub fn max_mean_cycle(g: &LabeledGraph, c: &[usize], psi: &Observable) -> f64 {
    let neg = Observable { name: psi.name.clone(), weights: psi.weights.iter().map(|w| -w).collect() };
    -min_mean_cycle(g, c, &neg)
}

/// Closed range of ψ-means over invariant measures of the chain.
pub fn mean_range(p: &SoficPresentation, psi: &Observable) -> (f64, f64) {
    let lo = p.components.iter().map(|c| min_mean_cycle(&p.graph, c, psi)).fold(f64::INFINITY, f64::min);
    let hi = p.components.iter().map(|c| max_mean_cycle(&p.graph, c, psi)).fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

/// ψ-mean of the maximal-entropy measure on the top component.
pub fn typical_mean(p: &SoficPresentation, psi: &Observable) -> Result<f64, LdpError> {
    let top = pressure(p, psi, 0.0).component;
    let m = MarkovMeasure::parry(&p.graph, &p.components[top])?;
    Ok(m.edges.iter().map(|(e, q)| m.stationary[e.from] * q * psi.value(e.label)).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateResult {
    pub a: f64,
    pub rate: f64,
    #[serde(rename = "H")]
    pub h: f64,
    pub t_star: f64,
    pub component: usize,
}

/// H(a) = inf_t (P(t) − t a) by golden-section search; rate = φ − H(a).
pub fn level1_rate(p: &SoficPresentation, psi: &Observable, a: f64, phi_const: f64) -> Result<RateResult, LdpError> {
    psi.check(p.graph.max_label())?;
    let (lo, hi) = mean_range(p, psi);
    if a < lo - 1e-9 || a > hi + 1e-9 {
        return Err(LdpError::UnachievableLevel { a, lo, hi });
    }
    let f = |t: f64| pressure(p, psi, t).value - t * a;
    let spread = psi.max() - psi.min();
    let t_star = if spread == 0.0 {
        0.0
    } else {
        let bound = 60.0 / spread;
        let (mut x0, mut x1) = (-bound, bound);
        let r = (5f64.sqrt() - 1.0) / 2.0;
        let mut c = x1 - r * (x1 - x0);
        let mut d = x0 + r * (x1 - x0);
        let (mut fc, mut fd) = (f(c), f(d));
        while x1 - x0 > GOLDEN_TOL * (1.0 + c.abs()) {
            if fc <= fd {
                x1 = d;
                d = c;
                fd = fc;
                c = x1 - r * (x1 - x0);
                fc = f(c);
            } else {
                x0 = c;
                c = d;
                fc = fd;
                d = x0 + r * (x1 - x0);
                fd = f(d);
            }
        }
        let t = (x0 + x1) / 2.0;
        // derivative sign check: a convex minimum cannot descend on either side
        let h = 1e-4 * (1.0 + t.abs());
        debug_assert!(f(t - h) >= f(t) - 1e-9 || t - h < -bound);
        debug_assert!(f(t + h) >= f(t) - 1e-9 || t + h > bound);
        t
    };
    let h = f(t_star).max(0.0);
    Ok(RateResult { a, rate: phi_const - h, h, t_star, component: pressure(p, psi, t_star).component })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full2() -> SoficPresentation {
        SoficPresentation::new(LabeledGraph::from_edges(1, 1, [(0, 0, 0), (0, 1, 0)]), vec![vec![0]]).unwrap()
    }

    #[test]
    fn full_shift_pressure_closed_form() {
        let p = full2();
        let psi = Observable::indicator(1, 1);
        for t in [-3.0, -0.5, 0.0, 0.7, 2.0] {
            assert!((pressure(&p, &psi, t).value - (1.0 + f64::exp(t)).ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn bernoulli_rate() {
        let p = full2();
        let psi = Observable::indicator(1, 1);
        for a in [0.1, 0.3, 0.5, 0.7, 0.95] {
            let r = level1_rate(&p, &psi, a, 2f64.ln()).unwrap();
            let hb = -a * f64::ln(a) - (1.0 - a) * f64::ln(1.0 - a);
            assert!((r.h - hb).abs() < 1e-8, "a={a}: {} vs {hb}", r.h);
        }
        assert!(level1_rate(&p, &psi, 1.0, 2f64.ln()).unwrap().h < 1e-8);
        assert!(matches!(level1_rate(&p, &psi, 1.2, 0.0), Err(LdpError::UnachievableLevel { .. })));
    }

    #[test]
    fn karp_on_two_cycle() {
        let g = LabeledGraph::from_edges(2, 1, [(0, 1, 1), (1, 0, 0), (1, 1, 1)]);
        let psi = Observable::indicator(1, 1);
        assert!((min_mean_cycle(&g, &[0, 1], &psi) - 0.5).abs() < 1e-12);
        assert!((max_mean_cycle(&g, &[0, 1], &psi) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn free_energy_branches() {
        let g = LabeledGraph::from_edges(1, 1, [(0, 0, 0), (0, 1, 0)]);
        let m = MarkovMeasure::parry(&g, &[0]).unwrap();
        assert!(free_energy(&MeasureInput::Markov(&m), 2f64.ln()).abs() < 1e-12);
        assert_eq!(free_energy(&MeasureInput::NonInvariant, 0.0), f64::NEG_INFINITY);
    }
}
