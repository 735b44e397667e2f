//! Piecewise expanding interval maps with exact affine branches, the
//! five-branch slope-3 example and the circle map with a source and a sink.

mod circle;
mod example31;
mod piecewise;

use thiserror::Error;

use crate::specprop::SpecError;

pub use circle::{circle_mc_deviation, circle_nonwandering, CircleDeviation, CircleMap, NonWandering};
pub use example31::{example31_language_check, example31_measure_bounds, example31_rows, example31_system, Example31Bounds, Example31Length, LanguageCheck};
pub use piecewise::{rational_decimal, AffineBranch, PiecewiseExpandingMap, RatInterval};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IntervalMapError {
    #[error("orbit hits a breakpoint at step {step}")]
    HitBoundary { step: usize },
    #[error("point lies outside [0, 1]")]
    OutOfDomain,
    #[error("invalid branch table: {0}")]
    BadBranches(String),
    #[error("word {0} has an empty cylinder")]
    EmptyCylinder(String),
    #[error("window never hit; rate is at least {rate_lower_bound}")]
    WindowNeverHit { rate_lower_bound: f64 },
    #[error("need n >= 1, N >= 1 and a window inside [0, 1]")]
    BadParameters,
    #[error(transparent)]
    Spec(#[from] SpecError),
}
