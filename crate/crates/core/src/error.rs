use thiserror::Error;

/// Errors raised by the exact and numeric pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("infinite q-product diverges: |q| = {0} is not below 1")]
    DivergentProduct(String),
    #[error("dimension mismatch: {left} vs {right} variables")]
    DimensionMismatch { left: usize, right: usize },
    #[error("invalid evaluation point: {0}")]
    InvalidPoint(String),
    #[error("Laurent polynomial is not BC_n-symmetric")]
    SymmetryViolation,
    #[error("exact division left a nonzero remainder")]
    NotDivisible,
    #[error("support has no unique dominance-maximal partition")]
    AmbiguousLeading,
    #[error("non-generic parameters: {0}")]
    NonGenericParameters(String),
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("parameters leave the unit-torus contour regime: {0}")]
    ContourViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
