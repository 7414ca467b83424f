use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PrdError {
    #[error("dimension mismatch: {left} vs {right}")]
    Dimension { left: usize, right: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("(precision={alpha}, recall={beta}) is not attainable")]
    Infeasible { alpha: f64, beta: f64 },

    #[error("insufficient data: {n} points for {k} clusters")]
    InsufficientData { n: usize, k: usize },
}

pub type Result<T> = std::result::Result<T, PrdError>;

pub(crate) fn domain(msg: impl Into<String>) -> PrdError {
    PrdError::Domain(msg.into())
}

pub(crate) fn check_same_size(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(PrdError::Dimension { left, right });
    }
    Ok(())
}
