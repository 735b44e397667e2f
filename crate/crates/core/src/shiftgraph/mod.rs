//! The graph Γ₋β presenting the (−β)-shift, its finite folding and the
//! ordered chain of irreducible components.

mod analysis;
mod chain;
mod export;
mod gamma;
mod graph;
mod subset;

use thiserror::Error;

pub use analysis::{chain_entropy, component_entropy, cross_validate, cross_validate_with, entropy_estimate, next_word, ComponentEntropy, CrossValidation};
pub use chain::{covers_cycles, decompose, decompose_ordered, Component, ComponentChain};
pub use export::{graph_report, to_dot, GraphReport};
pub use gamma::{build_gamma, default_horizon, fold, fold_period, max_prefix_suffix, presentation, FoldInfo, FoldedAutomaton};
pub use graph::{Edge, LabeledGraph};
pub use subset::{count_words, count_words_graph, StateSet, SubsetAutomaton};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShiftGraphError {
    #[error("horizon {horizon} too small, need at least {needed}")]
    HorizonTooSmall { horizon: usize, needed: usize },
    #[error("no fold verified within horizon {horizon}")]
    FoldNotVerified { horizon: usize },
    #[error("edge V{from} -{label}-> V{to} lands beyond the back-edge range")]
    BackEdgeOutOfRange { from: usize, label: u8, to: usize },
}
