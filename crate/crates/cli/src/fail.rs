use entrolab::Error;
use serde::Serialize;

pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Serialize)]
pub struct Failure {
    pub kind: &'static str,
    pub message: String,
    pub exit_code: i32,
}

impl Failure {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Failure { kind: "invalid_input", message: msg.into(), exit_code: EXIT_VALIDATION }
    }

    pub fn io(msg: impl Into<String>) -> Self {
        Failure { kind: "io", message: msg.into(), exit_code: EXIT_VALIDATION }
    }

    pub fn core(e: Error) -> Self {
        let (kind, exit_code) = match &e {
            Error::BudgetExceeded { .. } => ("budget_exceeded", EXIT_RESOURCE),
            Error::NonConvergence { .. } => ("precision", EXIT_RESOURCE),
            // only reachable when the budget cut the sequence short
            Error::SequenceTooShort { .. } => ("budget_exceeded", EXIT_RESOURCE),
            Error::Unsupported(_) => ("unsupported", EXIT_RESOURCE),
            Error::DimensionMismatch(_) => ("dimension_mismatch", EXIT_VALIDATION),
            Error::NotWellDefined(_) => ("not_well_defined", EXIT_VALIDATION),
            Error::NotInvariant => ("not_invariant", EXIT_VALIDATION),
            Error::ParentMismatch => ("parent_mismatch", EXIT_VALIDATION),
            Error::NotMonic => ("not_monic", EXIT_VALIDATION),
            Error::Invalid(_) => ("invalid_input", EXIT_VALIDATION),
        };
        Failure { kind, message: e.to_string(), exit_code }
    }
}
