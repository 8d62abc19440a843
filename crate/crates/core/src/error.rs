// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{what} must be positive")]
    NonPositive { what: &'static str },

    #[error("index {index} out of range for modulus {bound}")]
    IndexOutOfRange { index: u64, bound: u64 },

    #[error("graph needs at least 2 vertices, got {0}")]
    TooFewVertices(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("connection set is not closed under negation mod {0}")]
    AsymmetricConnectionSet(u64),

    #[error("{0} is not an eigenvalue of the spectrum")]
    NotAnEigenvalue(i64),

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertices must be distinct, got u = v = {0}")]
    SameVertex(usize),

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("matrix exponential oracle limited to n <= {max}, got {n}")]
    OracleScale { n: usize, max: usize },

    #[error("Taylor series did not reach tolerance within {0} terms")]
    SeriesNotConverged(usize),

    #[error("grid of {grid} points cannot resolve eigenvalue {lambda_max}; need more than {}", 4 * .lambda_max)]
    GridTooCoarse { grid: usize, lambda_max: u64 },

    #[error("invalid time expression {0:?}")]
    InvalidTime(String),
}
