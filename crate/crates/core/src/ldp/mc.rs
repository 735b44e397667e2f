use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{LdpError, Observable};
use crate::negabeta::MinusBetaSystem;

const Z95: f64 = 1.959_963_984_540_054;
/// Every AUDIT_STRIDE-th sample is re-run at doubled precision.
const AUDIT_STRIDE: u64 = 100;

/// Closed window [lo, hi] of target means.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

impl Window {
    pub fn contains(&self, x: f64) -> bool {
        self.lo - 1e-12 <= x && x <= self.hi + 1e-12
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeviationEstimate {
    pub n: usize,
    #[serde(rename = "N")]
    pub samples: u64,
    pub hits: u64,
    pub p_hat: f64,
    pub rate: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub seed: u64,
    pub window: Window,
    pub precision_bits: u64,
    pub audit_samples: u64,
    pub audit_mismatches: u64,
}

/// ceil(n log2 β) + 64.
pub fn precision_bits(beta: f64, n: usize) -> u64 {
    (n as f64 * beta.log2()).ceil() as u64 + 64
}

/// T₋β on binary fixed point numbers with `bits` fractional bits.
#[derive(Debug, Clone)]
pub struct FixedPointMap {
    bits: u64,
    beta: BigUint,
    b: u8,
}

impl FixedPointMap {
    pub fn new(sys: &MinusBetaSystem, bits: u64) -> Self {
        let r = sys.beta_rational(bits + 8);
        let scaled = (r * num_rational::BigRational::from_integer(num_bigint::BigInt::one() << bits)).floor().to_integer();
        Self { bits, beta: scaled.to_biguint().expect("β > 0"), b: sys.b() }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// One step: (digit, T x).
    pub fn step(&self, x: &BigUint) -> (u8, BigUint) {
        let y = (&self.beta * x) >> self.bits;
        let k = (&y >> self.bits).to_u8().unwrap_or(u8::MAX);
        if k > self.b {
            // only x = 1 with integer β lands here
            return (self.b, BigUint::zero());
        }
        (k, (BigUint::from(k as u32 + 1) << self.bits) - y)
    }
}

/// First n digits of the orbit of the fixed-point number x.
pub fn orbit_digits(map: &FixedPointMap, x: &BigUint, n: usize) -> Vec<u8> {
    let mut x = x.clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let (d, next) = map.step(&x);
        out.push(d);
        x = next;
    }
    out
}

/// Uniform point of [0, 1) with `bits` random bits, keyed by (seed, index).
fn sample(seed: u64, index: u64, bits: u64) -> BigUint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let words = bits.div_ceil(32) as usize;
    let raw: Vec<u32> = (0..words).map(|_| rng.next_u32()).collect();
    let x = BigUint::from_slice(&raw);
    let extra = words as u64 * 32 - bits;
    x >> extra
}

/// 95% Wilson score interval for hits/N.
pub fn wilson_interval(hits: u64, samples: u64) -> (f64, f64) {
    let n = samples as f64;
    let p = hits as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Lebesgue frequency of orbits whose ψ-mean over n steps lies in the window.
pub fn mc_deviation(sys: &MinusBetaSystem, psi: &Observable, window: Window, n: usize, samples: u64, seed: u64) -> Result<DeviationEstimate, LdpError> {
    if n == 0 || samples == 0 {
        return Err(LdpError::EmptySample);
    }
    psi.check(sys.b())?;
    let bits = precision_bits(sys.beta_approx(), n);
    let map = FixedPointMap::new(sys, bits);
    let audit_map = FixedPointMap::new(sys, 2 * bits);
    let mean = |w: &[u8]| w.iter().map(|&d| psi.value(d)).sum::<f64>() / n as f64;
    let (hits, audit_samples, audit_mismatches) = (0..samples)
        .into_par_iter()
        .map(|i| {
            let x = sample(seed, i, bits);
            let w = orbit_digits(&map, &x, n);
            let hit = window.contains(mean(&w)) as u64;
            if i.is_multiple_of(AUDIT_STRIDE) {
                let fine = orbit_digits(&audit_map, &(x << bits), n);
                (hit, 1, (fine != w) as u64)
            } else {
                (hit, 0, 0)
            }
        })
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    let (p_lo, p_hi) = wilson_interval(hits, samples);
    let to_rate = |p: f64| -p.ln() / n as f64;
    if hits == 0 {
        return Err(LdpError::WindowNeverHit { rate_lower_bound: to_rate(p_hi) });
    }
    let p_hat = hits as f64 / samples as f64;
    Ok(DeviationEstimate {
        n,
        samples,
        hits,
        p_hat,
        rate: to_rate(p_hat),
        ci_lo: to_rate(p_hi),
        ci_hi: to_rate(p_lo),
        seed,
        window,
        precision_bits: bits,
        audit_samples,
        audit_mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_two_digits_are_binary_like() {
        let sys = MinusBetaSystem::integer(2);
        let map = FixedPointMap::new(&sys, 16);
        // x = 1/4: 2x = 1/2 → digit 0, T = 1/2; then 2x = 1 → digit 1 (integer hit), T = 1
        let x = BigUint::one() << 14;
        assert_eq!(orbit_digits(&map, &x, 2), vec![0, 1]);
    }

    #[test]
    fn full_window_always_hits() {
        let sys = MinusBetaSystem::integer(2);
        let psi = Observable::indicator(1, 1);
        let e = mc_deviation(&sys, &psi, Window { lo: 0.0, hi: 1.0 }, 10, 500, 3).unwrap();
        assert_eq!(e.hits, 500);
        assert_eq!(e.rate, 0.0);
        assert_eq!(e.audit_mismatches, 0);
    }

    #[test]
    fn wilson_contains_estimate() {
        let (lo, hi) = wilson_interval(30, 1000);
        assert!(lo < 0.03 && 0.03 < hi);
        assert_eq!(wilson_interval(0, 10).0, 0.0);
    }

    #[test]
    fn reproducible_across_thread_counts() {
        let sys = MinusBetaSystem::minimal_pisot();
        let psi = Observable::indicator(1, 1);
        let w = Window { lo: 0.5, hi: 1.0 };
        let run = |threads| {
            rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| mc_deviation(&sys, &psi, w, 12, 2000, 11).unwrap())
        };
        assert_eq!(run(1), run(4));
    }
}
