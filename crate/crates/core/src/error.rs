use thiserror::Error;

/// Errors raised across the workbench.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("operands live over different signatures")]
    SignatureMismatch,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("point {point:?} outside the chart domain: {reason}")]
    Domain { point: [f64; 4], reason: String },
    #[error("degenerate Killing basis at {point:?}: det = {det:e}")]
    BasisDegenerate { point: [f64; 4], det: f64 },
    #[error("generator is not Killing: residual {residual:e}")]
    NotKilling { residual: f64 },
    #[error("tensor is not conserved: residual {residual:e}")]
    NotConserved { residual: f64 },
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("curve left the chart domain at s = {s} (x = {point:?})")]
    DomainExit { s: f64, point: [f64; 4] },
    #[error("velocity reconstruction failed: {0}")]
    Reconstruction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
