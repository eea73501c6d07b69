use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("half-integral exponent t^({0}/2) where an integral power was required")]
    HalfIntegralExponent(i64),

    #[error("no value supplied for variable `{0}`")]
    MissingVariable(String),

    #[error("diagram has {crossings} crossings, budget is {budget}")]
    CrossingBudget { crossings: usize, budget: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
