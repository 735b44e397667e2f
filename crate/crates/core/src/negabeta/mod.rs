//! The (−β)-transformation T(x) = −βx + (i+1) on the branch I_i = (i/β, (i+1)/β)
//! of [0, 1], with exact orbits over Q(β).

mod digits;
mod order;
mod system;

use thiserror::Error;

use crate::algebraic::AlgebraicError;

pub use digits::{format_word, parse_word, DigitSequence};
pub use order::{alt_compare, alt_compare_with, AltOrder, AltOrdering, Digits};
pub use system::{rational_point, CaseTag, MinusBetaSystem, PartitionCell, Side, SignedPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NegaBetaError {
    #[error("point lies outside [0, 1]")]
    OutOfDomain,
    #[error("endpoint value requested before the case of i'(1) is known")]
    CaseUnknown,
    #[error("orbit of 1 not periodic within {steps} steps (not a proof of non-periodicity)")]
    NotEventuallyPeriodic { steps: usize },
    #[error("operation needs an exact algebraic beta, got a decimal approximation")]
    InexactMode,
    #[error("orbit hit a partition endpoint at step {step}")]
    HitBoundary { step: usize },
    #[error("beta must exceed 1")]
    BetaTooSmall,
    #[error("alphabet too large")]
    AlphabetTooLarge,
    #[error("period must be nonempty")]
    EmptyPeriod,
    #[error("digit {digit} exceeds alphabet bound {bound}")]
    DigitOutOfRange { digit: u8, bound: u8 },
    #[error("cannot parse digits {0:?}")]
    BadWord(String),
    #[error("i'(1) has not been computed")]
    ExpansionMissing,
    #[error(transparent)]
    Algebraic(#[from] AlgebraicError),
}
