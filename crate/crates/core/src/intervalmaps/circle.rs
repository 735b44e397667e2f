use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::IntervalMapError;
use crate::ldp::{wilson_interval, DeviationEstimate, Window};

/// θ ↦ θ + a sin(2πθ) on the circle [0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircleMap {
    pub amplitude: f64,
}

impl Default for CircleMap {
    fn default() -> Self {
        Self { amplitude: 0.1 }
    }
}

/// Distance on R/Z.
fn circ_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

impl CircleMap {
    pub fn lift(&self, t: f64) -> f64 {
        t + self.amplitude * (2.0 * PI * t).sin()
    }

    pub fn apply(&self, t: f64) -> f64 {
        self.lift(t).rem_euclid(1.0)
    }

    pub fn derivative(&self, t: f64) -> f64 {
        1.0 + 2.0 * PI * self.amplitude * (2.0 * PI * t).cos()
    }

    /// The lift is an increasing bijection of [0, 1]; invert by bisection.
    pub fn inverse(&self, t: f64) -> f64 {
        let t = t.rem_euclid(1.0);
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if self.lift(mid) < t {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonWandering {
    pub grid: usize,
    pub iters: usize,
    /// Cluster points of forward orbits.
    pub attractors: Vec<f64>,
    /// Cluster points of backward orbits.
    pub repellers: Vec<f64>,
    pub points: Vec<f64>,
    /// Fraction of grid points not within 1e-6 of the main attractor.
    pub off_sink_fraction: f64,
}

fn clusters(xs: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &x in xs {
        match out.iter_mut().find(|(c, _)| circ_dist(*c, x) <= tol) {
            Some(c) => c.1 += 1,
            None => out.push((x, 1)),
        }
    }
    // snap representatives near 1 to 0
    for c in &mut out {
        if circ_dist(c.0, 0.0) <= tol {
            c.0 = 0.0;
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

fn orbit_end(t: f64, iters: usize, step: impl Fn(f64) -> f64) -> f64 {
    (0..iters).fold(t, |x, _| step(x))
}

/// Forward and backward limits of a uniform grid.
pub fn circle_nonwandering(map: &CircleMap, grid: usize, iters: usize) -> NonWandering {
    let tol = 1e-6;
    let starts: Vec<f64> = (0..grid).map(|k| k as f64 / grid as f64).collect();
    let fwd: Vec<f64> = starts.par_iter().map(|&t| orbit_end(t, iters, |x| map.apply(x))).collect();
    let bwd: Vec<f64> = starts.par_iter().map(|&t| orbit_end(t, iters, |x| map.inverse(x))).collect();
    let fc = clusters(&fwd, tol);
    let bc = clusters(&bwd, tol);
    let sink = fc.iter().max_by_key(|c| c.1).map_or(0.0, |c| c.0);
    let off = fwd.iter().filter(|&&x| circ_dist(x, sink) > tol).count();
    let attractors: Vec<f64> = fc.iter().map(|c| c.0).collect();
    let repellers: Vec<f64> = bc.iter().map(|c| c.0).collect();
    let mut points: Vec<f64> = Vec::new();
    for &x in attractors.iter().chain(&repellers) {
        if !points.iter().any(|&p| circ_dist(p, x) <= tol) {
            points.push(x);
        }
    }
    points.sort_by(f64::total_cmp);
    NonWandering { grid, iters, attractors, repellers, points, off_sink_fraction: off as f64 / grid as f64 }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CircleDeviation {
    pub epsilon: f64,
    pub estimate: DeviationEstimate,
    /// window.lo · log f′(0)
    pub predicted_rate: f64,
    pub relative_error: f64,
}

/// Lebesgue frequency of orbits whose time fraction within ε of 0 over the
/// first n steps lies in the window.
pub fn circle_mc_deviation(map: &CircleMap, window: Window, n: usize, samples: u64, epsilon: f64, seed: u64) -> Result<CircleDeviation, IntervalMapError> {
    if n == 0 || samples == 0 || window.lo < 0.0 || window.hi > 1.0 || window.lo > window.hi {
        return Err(IntervalMapError::BadParameters);
    }
    let hits: u64 = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let mut t: f64 = rng.random();
            let mut near = 0usize;
            for _ in 0..n {
                if circ_dist(t, 0.0) < epsilon {
                    near += 1;
                }
                t = map.apply(t);
            }
            window.contains(near as f64 / n as f64) as u64
        })
        .sum();
    let to_rate = |p: f64| -p.ln() / n as f64;
    let (p_lo, p_hi) = wilson_interval(hits, samples);
    if hits == 0 {
        return Err(IntervalMapError::WindowNeverHit { rate_lower_bound: to_rate(p_hi) });
    }
    let p_hat = hits as f64 / samples as f64;
    let estimate = DeviationEstimate {
        n,
        samples,
        hits,
        p_hat,
        rate: to_rate(p_hat),
        ci_lo: to_rate(p_hi),
        ci_hi: to_rate(p_lo),
        seed,
        window,
        precision_bits: 53,
        audit_samples: 0,
        audit_mismatches: 0,
    };
    let predicted_rate = window.lo * map.derivative(0.0).ln();
    let relative_error = if predicted_rate == 0.0 { estimate.rate.abs() } else { (estimate.rate - predicted_rate).abs() / predicted_rate };
    Ok(CircleDeviation { epsilon, estimate, predicted_rate, relative_error })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_points_and_slope() {
        let m = CircleMap::default();
        assert_eq!(m.apply(0.5), 0.5 + 0.1 * PI.sin());
        assert!((m.apply(0.5) - 0.5).abs() < 1e-16);
        assert!((m.derivative(0.0) - (1.0 + PI / 5.0)).abs() < 1e-15);
        assert!((m.lift(m.inverse(0.3)) - 0.3).abs() < 1e-12);
    }

    #[test]
    fn omega_is_source_and_sink() {
        let nw = circle_nonwandering(&CircleMap::default(), 1000, 400);
        assert_eq!(nw.points.len(), 2, "{nw:?}");
        assert!(nw.points[0].abs() < 1e-6 && (nw.points[1] - 0.5).abs() < 1e-6);
        assert!(nw.off_sink_fraction < 1.0 / (1000f64).sqrt());
    }

    #[test]
    fn typical_orbit_leaves_zero() {
        let d = circle_mc_deviation(&CircleMap::default(), Window { lo: 0.0, hi: 0.1 }, 50, 2000, 0.05, 1).unwrap();
        assert!(d.estimate.rate < 0.01);
    }
}
