use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("invalid degree {degree} for dimension {dim}")]
    InvalidDegree { dim: usize, degree: usize },
    #[error("unsupported dimension {0} (expected 1..=8)")]
    UnsupportedDimension(usize),
    #[error("invalid multi-index {0:?}: {1}")]
    InvalidIndex(Vec<usize>, &'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("structure constants are not antisymmetric at ({i}, {j}, {k})")]
    NotAntisymmetric { i: usize, j: usize, k: usize },
    #[error("Jacobi identity fails, residual {0}")]
    Jacobi(String),
    #[error("connection has non-3-form torsion (residual {0})")]
    NonSkewTorsion(String),
    #[error("no characteristic connection exists: structure is not integrable (residual {0})")]
    NotIntegrable(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
