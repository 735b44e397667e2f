//! One-way specification for chains of irreducible sofic pieces.

mod brute;
mod certificate;
mod checks;

use thiserror::Error;

use crate::measures::MeasureError;

pub use brute::{gluing_trials, spec_bruteforce, spec_bruteforce_capped, BruteForceTable, BrutePair, GluingReport, ENUMERATION_CAP};
pub use certificate::{spec_bound, spec_bound_w, PairWitness, SoficPresentation, SpecCertificate, SpecKind};
pub use checks::{ergodic_support_check, omega_coverage_check, support_component, ErgodicReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("component {0} is not irreducible")]
    ReducibleComponent(usize),
    #[error("vertex {0} belongs to more than one component")]
    OverlappingComponents(usize),
    #[error("no path from X{i} to X{j}", i = .i + 1, j = .j + 1)]
    DisconnectedPair { i: usize, j: usize },
    #[error("{words} words exceed the enumeration cap {cap}")]
    EnumerationCapExceeded { words: usize, cap: usize },
    #[error(transparent)]
    Measure(#[from] MeasureError),
}
