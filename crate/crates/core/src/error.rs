use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The matrix does not map the relation lattice into itself.
    #[error("matrix does not define an endomorphism of the group: {0}")]
    NotWellDefined(String),

    #[error("subgroup is not invariant under the endomorphism")]
    NotInvariant,

    #[error("objects belong to different groups")]
    ParentMismatch,

    #[error("trajectory set exceeded the budget of {budget} elements")]
    BudgetExceeded { budget: usize },

    #[error("root refinement did not converge within {bits} bits of precision")]
    NonConvergence { bits: u32 },

    #[error("sequence too short: need at least {needed} terms, got {got}")]
    SequenceTooShort { needed: usize, got: usize },

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Budget and precision failures are reported separately from validation errors.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::NonConvergence { .. })
    }
}
