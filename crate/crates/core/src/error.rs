use thiserror::Error;

use crate::space::ValidationReport;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    BadShape { row: usize, len: usize, n: usize },

    #[error("space must contain at least one point")]
    Empty,

    #[error("{labels} labels for a {n}x{n} matrix")]
    LabelCount { labels: usize, n: usize },

    #[error("invalid metric space: {report}")]
    InvalidSpace { report: ValidationReport },

    #[error(
        "matrix is not ultrametric: m[{i}][{k}] = {lhs} > max(m[{i}][{j}], m[{j}][{k}]) = {rhs}"
    )]
    NotUltrametric {
        i: usize,
        j: usize,
        k: usize,
        lhs: f64,
        rhs: f64,
    },

    #[error("point index {index} out of range for {n} points")]
    UnknownPoint { index: usize, n: usize },

    #[error("brute-force enumeration is limited to {max} points, got {n}")]
    TooLarge { n: usize, max: usize },

    #[error("{value} is not a member of the point set")]
    NotAMember { value: f64 },

    #[error("{got} coordinates for {expected} points")]
    CoordCount { got: usize, expected: usize },

    #[error("branching must be at least 2, got {branching}")]
    BadBranching { branching: u32 },

    #[error("contraction ratio must lie in (0, 1), got {ratio}")]
    BadRatio { ratio: f64 },

    #[error("root diameter must be positive and finite, got {diameter}")]
    BadRootDiameter { diameter: f64 },

    #[error("truncation needs {leaves} leaves, cap is {cap}")]
    CapExceeded { leaves: u64, cap: u64 },

    #[error("width series diverges (geometric ratio {ratio} >= 1)")]
    DivergentWidth { ratio: f64 },

    #[error("stretch excess must be a nonnegative number, got {excess}")]
    NegativeExcess { excess: f64 },

    #[error("depth must be at least 1")]
    ZeroDepth,
}

pub type Result<T> = std::result::Result<T, Error>;
