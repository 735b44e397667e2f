use std::collections::BTreeMap;

use serde::Serialize;

use super::MeasureError;

/// A probability distribution on words of one fixed length k; shorter
/// cylinders get the total mass of their extensions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WordDistribution {
    pub depth: usize,
    pub max_label: u8,
    pub masses: BTreeMap<Vec<u8>, f64>,
}

impl WordDistribution {
    pub fn new(depth: usize, max_label: u8, masses: BTreeMap<Vec<u8>, f64>) -> Self {
        Self { depth, max_label, masses }
    }

    /// Mass of the cylinder [w] for |w| ≤ depth.
    pub fn mass(&self, w: &[u8]) -> f64 {
        assert!(w.len() <= self.depth, "cylinder deeper than the distribution");
        let mut hi = w.to_vec();
        hi.push(u8::MAX);
        self.masses.range(w.to_vec()..hi).map(|(_, m)| m).sum()
    }

    pub fn total(&self) -> f64 {
        self.masses.values().sum()
    }

    /// Σ a_i μ_i; weights are used as given.
    pub fn mix(parts: &[(f64, &WordDistribution)]) -> Result<Self, MeasureError> {
        let first = parts.first().ok_or(MeasureError::EmptyMixture)?.1;
        let mut masses: BTreeMap<Vec<u8>, f64> = BTreeMap::new();
        for (a, d) in parts {
            if d.depth != first.depth {
                return Err(MeasureError::DepthMismatch { left: first.depth, right: d.depth });
            }
            for (w, m) in &d.masses {
                *masses.entry(w.clone()).or_insert(0.0) += a * m;
            }
        }
        let max_label = parts.iter().map(|(_, d)| d.max_label).max().unwrap_or(0);
        Ok(Self::new(first.depth, max_label, masses))
    }
}

/// Sliding-window frequencies of the length-k factors of an itinerary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalMeasure {
    pub sample_length: usize,
    pub distribution: WordDistribution,
}

pub fn empirical_measure(word: &[u8], k: usize) -> Result<EmpiricalMeasure, MeasureError> {
    let n = word.len();
    if k == 0 || k > n {
        return Err(MeasureError::BadDepth { n, k });
    }
    let windows = (n - k + 1) as f64;
    let mut masses: BTreeMap<Vec<u8>, f64> = BTreeMap::new();
    for w in word.windows(k) {
        *masses.entry(w.to_vec()).or_insert(0.0) += 1.0 / windows;
    }
    let max_label = word.iter().copied().max().unwrap_or(0);
    Ok(EmpiricalMeasure { sample_length: n, distribution: WordDistribution::new(k, max_label, masses) })
}

/// Cylinder words over {0, …, max_label}, by length and then lexicographically,
/// truncated to the first `count`.
pub fn cylinder_family(max_label: u8, count: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::with_capacity(count);
    let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
    while out.len() < count {
        let mut next = Vec::new();
        for w in &layer {
            for c in 0..=max_label {
                let mut x = w.clone();
                x.push(c);
                next.push(x);
            }
        }
        for w in &next {
            if out.len() == count {
                break;
            }
            out.push(w.clone());
        }
        layer = next;
    }
    out
}

/// Σ_{n=1}^{K} 2^{−(n+1)} |∫φ_n dμ − ∫φ_n dν| over cylinder indicators φ_n.
pub fn weak_metric_truncated(mu: &WordDistribution, nu: &WordDistribution, k: usize) -> Result<f64, MeasureError> {
    let max_label = mu.max_label.max(nu.max_label);
    let family = cylinder_family(max_label, k);
    let need = family.last().map_or(0, Vec::len);
    let depth = mu.depth.min(nu.depth);
    if need > depth {
        return Err(MeasureError::DepthMismatch { left: need, right: depth });
    }
    Ok(family
        .iter()
        .enumerate()
        .map(|(i, w)| 0.5f64.powi(i as i32 + 2) * (mu.mass(w) - nu.mass(w)).abs())
        .sum())
}
