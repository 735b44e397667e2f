//! Cylinder intervals and their Lebesgue lengths, the branching statistic
//! g_β, Markov measures on presentations, empirical measures and a
//! truncated weak metric.

mod cylinder;
mod empirical;
mod gbeta;
mod markov;

use thiserror::Error;

use crate::negabeta::NegaBetaError;

pub use cylinder::{admissible_words, cylinder_csv, cylinder_interval, cylinder_measure, CylinderInterval, CylinderReport, CylinderRow};
pub use empirical::{cylinder_family, empirical_measure, weak_metric_truncated, EmpiricalMeasure, WordDistribution};
pub use gbeta::{g_beta_n, g_beta_word, GBeta, GBetaProfile};
pub use markov::{markov_entropy, parry_measure, MarkovMeasure, MeasureSummary};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeasureError {
    #[error("word {0} is not admissible")]
    InadmissibleWord(String),
    #[error("component is not irreducible")]
    NotIrreducible,
    #[error("walk is not a simple closed cycle of the graph")]
    NotACycle,
    #[error("follower state {state} never reaches a branching state")]
    NoBranchReachable { state: usize },
    #[error("need depth {left}, have {right}")]
    DepthMismatch { left: usize, right: usize },
    #[error("empirical measure needs 1 <= k <= n (n={n}, k={k})")]
    BadDepth { n: usize, k: usize },
    #[error("mixture needs at least one part")]
    EmptyMixture,
    #[error("export failed: {0}")]
    Export(String),
    #[error(transparent)]
    System(#[from] NegaBetaError),
}
