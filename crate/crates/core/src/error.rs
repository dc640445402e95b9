use thiserror::Error;

use crate::graph::ControllabilityReport;
use crate::pattern::Violation;

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("malformed input: {0}")]
    Syntax(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("invalid instance: {}", join(.0))]
    Invalid(Vec<Violation>),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("invalid instance: {}", join(.0))]
    InvalidInstance(Vec<Violation>),
    #[error("(A, B) is not structurally controllable: {0}")]
    NotStructurallyControllable(ControllabilityReport),
    #[error("no exact algorithm for {problem} on a {class} instance")]
    NoExactAlgorithm {
        problem: &'static str,
        class: &'static str,
    },
    #[error("mode {mode} cannot be used for {problem}")]
    InvalidMode {
        mode: &'static str,
        problem: &'static str,
    },
    #[error("solver precondition violated: {0}")]
    Precondition(String),
    #[error("source component {component} (states {states:?}) has no input-connection")]
    UncoveredSource {
        component: usize,
        states: Vec<usize>,
    },
    #[error("minimum-cost matching saturates only {matched} of {d} states")]
    Unsaturated { matched: usize, d: usize },
}

impl SolveError {
    /// Short machine-readable tag, used by the CLI's JSON errors.
    pub fn kind(&self) -> &'static str {
        match self {
            SolveError::InvalidInstance(_) => "InvalidInstance",
            SolveError::NotStructurallyControllable(_) => "NotStructurallyControllable",
            SolveError::NoExactAlgorithm { .. } => "NoExactAlgorithm",
            SolveError::InvalidMode { .. } => "InvalidMode",
            SolveError::Precondition(_) => "Precondition",
            SolveError::UncoveredSource { .. } => "Infeasible",
            SolveError::Unsaturated { .. } => "Infeasible",
        }
    }
}
