use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("inner series must vanish at the origin (constant term {0})")]
    CompositionDomain(String),

    #[error("series is not normalized: expected c0 = 0 and c1 = 1")]
    NotNormalized,

    #[error("series has a zero constant term and cannot be inverted")]
    NotInvertible,

    #[error("coefficients are not Carathéodory-feasible: {0}")]
    Infeasible(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("invalid phi: {0}")]
    Validation(String),

    #[error("functional is singular at B1 = {b1}, B2 = {b2}")]
    Singular { b1: f64, b2: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
