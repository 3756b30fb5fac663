use thiserror::Error;

/// Errors raised by the model, optimizer and solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid system parameter `{field}`: {reason}")]
    InvalidParams { field: &'static str, reason: String },

    #[error("{name} = {value} is outside [0, 1]")]
    FractionOutOfRange { name: &'static str, value: f64 },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("interval is empty: x_lo = {x_lo} > x_hi = {x_hi}")]
    EmptyInterval { x_lo: f64, x_hi: f64 },

    #[error("objective returned a non-finite value {value} at x = {x}")]
    NonFiniteObjective { x: f64, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
