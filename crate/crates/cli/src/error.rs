use std::fmt;

use negabeta::algebraic::AlgebraicError;
use negabeta::intervalmaps::IntervalMapError;
use negabeta::ldp::LdpError;
use negabeta::measures::MeasureError;
use negabeta::negabeta::NegaBetaError;
use negabeta::shiftgraph::ShiftGraphError;
use negabeta::specprop::SpecError;

pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_IO: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self { code: EXIT_IO, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Exit code for a library error: bad input is a usage error, exhausted
/// budgets and inexact β are code 3, anything else is a violation.
trait ExitClass {
    fn exit_code(&self) -> u8;
}

impl ExitClass for AlgebraicError {
    fn exit_code(&self) -> u8 {
        match self {
            AlgebraicError::MixedFields | AlgebraicError::DivisionByZero => EXIT_VIOLATION,
            _ => EXIT_USAGE,
        }
    }
}

impl ExitClass for NegaBetaError {
    fn exit_code(&self) -> u8 {
        match self {
            NegaBetaError::InexactMode | NegaBetaError::NotEventuallyPeriodic { .. } => EXIT_BUDGET,
            NegaBetaError::BetaTooSmall
            | NegaBetaError::AlphabetTooLarge
            | NegaBetaError::BadWord(_)
            | NegaBetaError::DigitOutOfRange { .. }
            | NegaBetaError::EmptyPeriod
            | NegaBetaError::OutOfDomain => EXIT_USAGE,
            NegaBetaError::Algebraic(e) => e.exit_code(),
            _ => EXIT_VIOLATION,
        }
    }
}

impl ExitClass for ShiftGraphError {
    fn exit_code(&self) -> u8 {
        match self {
            ShiftGraphError::FoldNotVerified { .. } => EXIT_BUDGET,
            ShiftGraphError::HorizonTooSmall { .. } => EXIT_USAGE,
            ShiftGraphError::BackEdgeOutOfRange { .. } => EXIT_VIOLATION,
        }
    }
}

impl ExitClass for MeasureError {
    fn exit_code(&self) -> u8 {
        match self {
            MeasureError::InadmissibleWord(_) | MeasureError::BadDepth { .. } => EXIT_USAGE,
            MeasureError::Export(_) => EXIT_IO,
            MeasureError::System(e) => e.exit_code(),
            _ => EXIT_VIOLATION,
        }
    }
}

impl ExitClass for SpecError {
    fn exit_code(&self) -> u8 {
        match self {
            SpecError::EnumerationCapExceeded { .. } => EXIT_BUDGET,
            SpecError::ReducibleComponent(_) | SpecError::OverlappingComponents(_) => EXIT_USAGE,
            SpecError::DisconnectedPair { .. } => EXIT_VIOLATION,
            SpecError::Measure(e) => e.exit_code(),
        }
    }
}

impl ExitClass for LdpError {
    fn exit_code(&self) -> u8 {
        match self {
            LdpError::UnachievableLevel { .. } | LdpError::EmptySample | LdpError::WrongBeta | LdpError::ObservableTooShort { .. } => EXIT_USAGE,
            LdpError::WindowNeverHit { .. } => EXIT_BUDGET,
            LdpError::System(e) => e.exit_code(),
            LdpError::Graph(e) => e.exit_code(),
            LdpError::Measure(e) => e.exit_code(),
            LdpError::Spec(e) => e.exit_code(),
        }
    }
}

impl ExitClass for IntervalMapError {
    fn exit_code(&self) -> u8 {
        match self {
            IntervalMapError::BadParameters | IntervalMapError::OutOfDomain => EXIT_USAGE,
            IntervalMapError::WindowNeverHit { .. } => EXIT_BUDGET,
            IntervalMapError::Spec(e) => e.exit_code(),
            _ => EXIT_VIOLATION,
        }
    }
}

macro_rules! from_lib {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                Self { code: e.exit_code(), message: e.to_string() }
            }
        }
    )*};
}

from_lib!(AlgebraicError, NegaBetaError, ShiftGraphError, MeasureError, SpecError, LdpError, IntervalMapError);

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::io(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_errors_keep_their_class() {
        let e: CliError = LdpError::System(NegaBetaError::InexactMode).into();
        assert_eq!(e.code, EXIT_BUDGET);
        let e: CliError = SpecError::Measure(MeasureError::InadmissibleWord("11".into())).into();
        assert_eq!(e.code, EXIT_USAGE);
        let e: CliError = NegaBetaError::HitBoundary { step: 3 }.into();
        assert_eq!(e.code, EXIT_VIOLATION);
    }
}
