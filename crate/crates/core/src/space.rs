//! Finite metric (more generally, semimetric) spaces: labeled points with a
//! symmetric dissimilarity matrix.
//!
//! The chain-distance machinery never uses the triangle inequality, so plain
//! symmetric dissimilarities are accepted by default; triangle validation is
//! opt-in via [`FiniteMetricSpace::validate`].

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;

/// Absolute tolerance for the opt-in triangle-inequality check.
pub const TRIANGLE_TOL: f64 = 1e-12;

/// How to turn coordinate vectors into pairwise distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Euclidean,
    /// Max over coordinate differences (the product metric of Example-style
    /// Cantor squares).
    Chebyshev,
    Manhattan,
}

impl Metric {
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            Metric::Euclidean => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt(),
            Metric::Chebyshev => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max),
            Metric::Manhattan => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Metric::Euclidean => "euclidean",
            Metric::Chebyshev => "chebyshev",
            Metric::Manhattan => "manhattan",
        }
    }
}

impl std::str::FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "euclidean" => Ok(Metric::Euclidean),
            "chebyshev" => Ok(Metric::Chebyshev),
            "manhattan" => Ok(Metric::Manhattan),
            other => Err(format!(
                "unknown metric {other:?}, expected euclidean, chebyshev or manhattan"
            )),
        }
    }
}

/// A single axiom violation found by [`FiniteMetricSpace::validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NotFinite { i: usize, j: usize, value: f64 },
    NonzeroDiagonal { i: usize, value: f64 },
    Asymmetry { i: usize, j: usize, a: f64, b: f64 },
    NonpositiveOffDiagonal { i: usize, j: usize, value: f64 },
    Triangle { i: usize, j: usize, k: usize, direct: f64, detour: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotFinite { i, j, value } => {
                write!(f, "dist[{i}][{j}] = {value} is not finite")
            }
            Violation::NonzeroDiagonal { i, value } => {
                write!(f, "dist[{i}][{i}] = {value}, expected 0")
            }
            Violation::Asymmetry { i, j, a, b } => {
                write!(f, "dist[{i}][{j}] = {a} but dist[{j}][{i}] = {b}")
            }
            Violation::NonpositiveOffDiagonal { i, j, value } => {
                write!(f, "dist[{i}][{j}] = {value}, expected > 0")
            }
            Violation::Triangle { i, j, k, direct, detour } => write!(
                f,
                "triangle violation: dist[{i}][{k}] = {direct} > dist[{i}][{j}] + dist[{j}][{k}] = {detour}"
            ),
        }
    }
}

/// Outcome of validating a space. Report-only: construction never refuses a
/// finite symmetric-shaped matrix, so broken inputs can still be inspected.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Whether the triangle inequality was part of the check.
    pub triangle_checked: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        write!(f, "{} violation(s): ", self.violations.len())?;
        for (idx, v) in self.violations.iter().take(4).enumerate() {
            if idx > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        if self.violations.len() > 4 {
            write!(f, "; ...")?;
        }
        Ok(())
    }
}

/// Labeled points with an n-by-n dissimilarity matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: SquareMatrix,
}

impl FiniteMetricSpace {
    /// Wraps a labeled matrix. Only shape is enforced here; axioms are
    /// checked by [`validate`](Self::validate), which the distance
    /// computations call before trusting the input.
    pub fn new(labels: Vec<String>, dist: SquareMatrix) -> Result<Self> {
        if dist.n() == 0 {
            return Err(Error::Empty);
        }
        if labels.len() != dist.n() {
            return Err(Error::LabelCount {
                labels: labels.len(),
                n: dist.n(),
            });
        }
        Ok(FiniteMetricSpace { labels, dist })
    }

    pub fn from_rows(labels: Vec<String>, rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(labels, SquareMatrix::from_rows(rows)?)
    }

    /// Builds the space of a point cloud under the given metric.
    pub fn from_points(labels: Vec<String>, points: &[Vec<f64>], metric: Metric) -> Result<Self> {
        let n = points.len();
        let mut dist = SquareMatrix::zeros(n);
        for i in 0..n {
            for j in (i + 1)..n {
                dist.set_sym(i, j, metric.distance(&points[i], &points[j]));
            }
        }
        Self::new(labels, dist)
    }

    pub fn n(&self) -> usize {
        self.dist.n()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dist(&self) -> &SquareMatrix {
        &self.dist
    }

    /// Checks the semimetric axioms: finite entries, zero diagonal, exact
    /// symmetry, positive off-diagonal entries. With `require_metric` the
    /// triangle inequality is checked too, within [`TRIANGLE_TOL`] absolute,
    /// and reported with the witnessing triple.
    pub fn validate(&self, require_metric: bool) -> ValidationReport {
        let n = self.n();
        let d = &self.dist;
        let mut report = ValidationReport {
            violations: Vec::new(),
            triangle_checked: require_metric,
        };
        for i in 0..n {
            let v = d.get(i, i);
            if v != 0.0 {
                report.violations.push(Violation::NonzeroDiagonal { i, value: v });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let a = d.get(i, j);
                let b = d.get(j, i);
                if !a.is_finite() {
                    report.violations.push(Violation::NotFinite { i, j, value: a });
                    continue;
                }
                if !b.is_finite() {
                    report.violations.push(Violation::NotFinite { i: j, j: i, value: b });
                    continue;
                }
                if a != b {
                    report.violations.push(Violation::Asymmetry { i, j, a, b });
                }
                if a <= 0.0 {
                    report
                        .violations
                        .push(Violation::NonpositiveOffDiagonal { i, j, value: a });
                }
            }
        }
        if require_metric {
            // Cap the O(n^3) sweep's output; one witness per (i, k) pair.
            const MAX_TRIANGLE_REPORTS: usize = 100;
            let mut reported = 0;
            'outer: for i in 0..n {
                for k in 0..n {
                    for j in 0..n {
                        let direct = d.get(i, k);
                        let detour = d.get(i, j) + d.get(j, k);
                        if direct > detour + TRIANGLE_TOL {
                            report.violations.push(Violation::Triangle {
                                i,
                                j,
                                k,
                                direct,
                                detour,
                            });
                            reported += 1;
                            if reported >= MAX_TRIANGLE_REPORTS {
                                break 'outer;
                            }
                            break;
                        }
                    }
                }
            }
        }
        report
    }

    /// Shorthand used by operations that reject invalid spaces.
    pub(crate) fn ensure_valid(&self) -> Result<()> {
        let report = self.validate(false);
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidSpace { report })
        }
    }
}
