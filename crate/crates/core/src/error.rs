use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{what} must be at least 1, got {value}")]
    NonPositiveCount { what: &'static str, value: usize },

    #[error("degenerate distribution: zero variance admits only the median, got percentile {percentile}")]
    DegenerateDistribution { percentile: f64 },

    #[error("discriminant D = {discriminant:e} is not positive; only the normal solution branch is supported")]
    NonNormalRegime { discriminant: f64 },

    #[error("singular denominator {value:e} in coefficient formula at tau = {tau}")]
    SingularDenominator { tau: f64, value: f64 },

    #[error("non-positive gross portfolio return on path {path} in quarter {quarter}")]
    NonPositiveWealth { path: usize, quarter: usize },

    #[error("search needs {required} strategies but the budget allows {allowed}")]
    BudgetExceeded { required: u128, allowed: u128 },

    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),
}
