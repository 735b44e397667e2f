//! Free energy, pressure over the component chain, level-1 rate functions and
//! Monte Carlo deviation estimates.

mod compare;
mod mc;
mod rate;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::measures::MeasureError;
use crate::negabeta::NegaBetaError;
use crate::shiftgraph::ShiftGraphError;
use crate::specprop::SpecError;

pub use compare::{compare_rate_functions, RateComparison, RateRow};
pub use mc::{mc_deviation, orbit_digits, precision_bits, wilson_interval, DeviationEstimate, FixedPointMap, Window};
pub use rate::{free_energy, level1_rate, max_mean_cycle, mean_range, min_mean_cycle, pressure, typical_mean, MeasureInput, Pressure, RateResult};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LdpError {
    #[error("level {a} lies outside the achievable range [{lo}, {hi}]")]
    UnachievableLevel { a: f64, lo: f64, hi: f64 },
    #[error("window never hit; rate is at least {rate_lower_bound}")]
    WindowNeverHit { rate_lower_bound: f64 },
    #[error("need n >= 1 and N >= 1")]
    EmptySample,
    #[error("expected the minimal Pisot number (expansion 100(1))")]
    WrongBeta,
    #[error("observable has {got} weights, labels go up to {max_label}")]
    ObservableTooShort { got: usize, max_label: u8 },
    #[error(transparent)]
    System(#[from] NegaBetaError),
    #[error(transparent)]
    Graph(#[from] ShiftGraphError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Spec(#[from] SpecError),
}

/// A real function of the edge label.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Observable {
    pub name: String,
    pub weights: Vec<f64>,
}

impl Observable {
    pub fn indicator(digit: u8, max_label: u8) -> Self {
        let weights = (0..=max_label).map(|d| if d == digit { 1.0 } else { 0.0 }).collect();
        Self { name: format!("digit{digit}"), weights }
    }

    pub fn digit_value(max_label: u8) -> Self {
        Self { name: "value".into(), weights: (0..=max_label).map(f64::from).collect() }
    }

    /// `digitK` or `value`.
    pub fn parse(s: &str, max_label: u8) -> Option<Self> {
        if s == "value" {
            return Some(Self::digit_value(max_label));
        }
        let d: u8 = s.strip_prefix("digit")?.parse().ok()?;
        (d <= max_label).then(|| Self::indicator(d, max_label))
    }

    pub fn value(&self, label: u8) -> f64 {
        self.weights.get(label as usize).copied().unwrap_or(0.0)
    }

    pub fn min(&self) -> f64 {
        self.weights.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.weights.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub(crate) fn check(&self, max_label: u8) -> Result<(), LdpError> {
        if self.weights.len() <= max_label as usize {
            return Err(LdpError::ObservableTooShort { got: self.weights.len(), max_label });
        }
        Ok(())
    }
}

/// Serializes ±∞ and NaN as strings, which JSON cannot carry as numbers.
pub fn serialize_extended<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else if x.is_nan() {
        s.serialize_str("nan")
    } else if *x > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_str("-inf")
    }
}
