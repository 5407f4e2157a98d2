use thiserror::Error;

/// Errors reported by the solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input magnitudes could push an intermediate sum past the scalar guard.
    #[error("overflow risk: {0}")]
    Overflow(String),

    #[error("sequence is not concave: {0}")]
    NotConcave(String),

    #[error("sequence is not {k}-step concave: {detail}")]
    NotKStepConcave { k: usize, detail: String },

    #[error("infeasible: {0}")]
    Infeasible(String),

    /// The Lagrangian bracket closed without isolating the requested budget.
    #[error("penalty search did not converge (the value profile is not concave): {0}")]
    ConcavityViolation(String),

    #[error("graph is not marked transitive")]
    NotTransitive,

    #[error("instance exceeds the gadget size limit: {0}")]
    ScaleLimit(String),

    #[error("gadget rewards cannot be scaled to integers: {0}")]
    NonIntegral(String),

    /// An oracle refused to run because the instance is too large.
    #[error("size guard exceeded: {0}")]
    GuardViolation(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
