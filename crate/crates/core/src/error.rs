use crate::poly::PolyError;

/// Which resource cap a computation ran into.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("resource budget exceeded: {0}")]
pub struct BudgetExceeded(pub String);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("graded piece of degree {degree} is infinite-dimensional")]
    InfiniteDimensional { degree: String },
    #[error("dimensions not stabilized over the window: {0}")]
    NotStabilized(String),
    #[error("weights are not certified")]
    Uncertified,
    #[error("lower bounds unverified for: {}", .0.join(", "))]
    LowerBoundsUnverified(Vec<String>),
    #[error("point outside the dilated polytope")]
    OutsidePolytope,
    #[error("degenerate polytope: {0}")]
    DegeneratePolytope(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
