//! Symbolic engine for uniformly self-similar zero-dimensional compacts.
//!
//! A spec describes an infinite cluster tree in which every node has `b`
//! children and diameters shrink by a fixed ratio `q` per level. The level-k
//! contribution to the width is then `b^k (b-1) r0 q^k`, a geometric series
//! with ratio `b q`: a chain development exists exactly when `b q < 1`, in
//! which case the minimal diameter is the closed-form total
//! `(b-1) r0 / (1 - b q)`.
//!
//! Depth-limited truncations turn a spec into an ordinary finite ultrametric
//! space for the exact pipeline, and a ladder-style stretch fattens the
//! depth-N leaf clusters into intervals carrying measure, realizing
//! developments of any diameter `w + c` without touching the gap structure.

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::space::FiniteMetricSpace;

/// Default cap on truncation leaves.
pub const DEFAULT_LEAF_CAP: u64 = 1 << 16;

/// Uniform self-similar description: `b` children per node, root diameter
/// `r0`, diameter ratio `q` per level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfSimilarSpec {
    branching: u32,
    root_diameter: f64,
    ratio: f64,
}

/// Width series of a spec: level terms, convergence verdict, closed-form
/// total when it exists.
#[derive(Debug, Clone, PartialEq)]
pub struct WidthSeries {
    /// `terms[k] = b^k (b-1) r0 q^k`, a geometric sequence with ratio `b q`.
    pub terms: Vec<f64>,
    pub convergent: bool,
    /// `(b-1) r0 / (1 - b q)` when convergent, `None` when the series
    /// diverges.
    pub total: Option<f64>,
}

/// Existence decision for a chain development of the infinite space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExistenceVerdict {
    Exists { minimal_diameter: f64 },
    DoesNotExist { ratio: f64 },
}

impl SelfSimilarSpec {
    pub fn new(branching: u32, root_diameter: f64, ratio: f64) -> Result<Self> {
        if branching < 2 {
            return Err(Error::BadBranching { branching });
        }
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::BadRatio { ratio });
        }
        if !(root_diameter > 0.0 && root_diameter.is_finite()) {
            return Err(Error::BadRootDiameter {
                diameter: root_diameter,
            });
        }
        Ok(SelfSimilarSpec {
            branching,
            root_diameter,
            ratio,
        })
    }

    pub fn branching(&self) -> u32 {
        self.branching
    }

    pub fn root_diameter(&self) -> f64 {
        self.root_diameter
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    /// Geometric ratio `b q` of the width series.
    pub fn series_ratio(&self) -> f64 {
        self.branching as f64 * self.ratio
    }

    pub fn is_convergent(&self) -> bool {
        self.series_ratio() < 1.0
    }

    /// Closed-form width `(b-1) r0 / (1 - b q)` when the series converges.
    pub fn total_width(&self) -> Option<f64> {
        self.is_convergent().then(|| {
            (self.branching - 1) as f64 * self.root_diameter / (1.0 - self.series_ratio())
        })
    }

    /// First `depth` terms of the width series plus the convergence verdict.
    pub fn width_series(&self, depth: usize) -> WidthSeries {
        let mut terms = Vec::with_capacity(depth);
        let mut term = (self.branching - 1) as f64 * self.root_diameter;
        for _ in 0..depth {
            terms.push(term);
            term *= self.series_ratio();
        }
        WidthSeries {
            terms,
            convergent: self.is_convergent(),
            total: self.total_width(),
        }
    }

    pub fn exists_development(&self) -> ExistenceVerdict {
        match self.total_width() {
            Some(minimal_diameter) => ExistenceVerdict::Exists { minimal_diameter },
            None => ExistenceVerdict::DoesNotExist {
                ratio: self.series_ratio(),
            },
        }
    }

    /// Finite ultrametric snapshot: one point per depth-N cluster, distance
    /// `r0 q^k` where `k` is the level of the pair's lowest common ancestor.
    pub fn truncate(&self, depth: u32, leaf_cap: u64) -> Result<FiniteMetricSpace> {
        let b = self.branching as u64;
        let leaves = b.checked_pow(depth).ok_or(Error::CapExceeded {
            leaves: u64::MAX,
            cap: leaf_cap,
        })?;
        if leaves > leaf_cap {
            return Err(Error::CapExceeded {
                leaves,
                cap: leaf_cap,
            });
        }
        let n = leaves as usize;

        // r0 q^k per level, computed once.
        let mut level_diam = Vec::with_capacity(depth as usize + 1);
        let mut r = self.root_diameter;
        for _ in 0..=depth {
            level_diam.push(r);
            r *= self.ratio;
        }

        let labels: Vec<String> = (0..n).map(|i| self.leaf_label(i as u64, depth)).collect();
        let mut dist = SquareMatrix::zeros(n);
        // Depth-first block fill: at a level-k node spanning [lo, lo + span),
        // every pair of points in distinct child blocks sits at distance
        // r0 q^k. Each pair is written exactly once.
        let mut blocks: Vec<(usize, usize)> = vec![(0, 0)]; // (level, lo)
        while let Some((level, lo)) = blocks.pop() {
            if level as u32 == depth {
                continue;
            }
            let span = (leaves / b.pow(level as u32)) as usize;
            let child = span / b as usize;
            let r = level_diam[level];
            for a in 0..b as usize {
                let a_lo = lo + a * child;
                for c in (a + 1)..b as usize {
                    let c_lo = lo + c * child;
                    for i in a_lo..a_lo + child {
                        for j in c_lo..c_lo + child {
                            dist.set_sym(i, j, r);
                        }
                    }
                }
                blocks.push((level + 1, a_lo));
            }
        }
        FiniteMetricSpace::new(labels, dist)
    }

    fn leaf_label(&self, mut index: u64, depth: u32) -> String {
        let b = self.branching as u64;
        let mut digits = vec![0u64; depth as usize];
        for slot in digits.iter_mut().rev() {
            *slot = index % b;
            index /= b;
        }
        let mut label = String::from("c");
        for (pos, d) in digits.iter().enumerate() {
            if pos > 0 {
                label.push('.');
            }
            label.push_str(&d.to_string());
        }
        label
    }

    /// Symbolic development at depth N: the depth-N leaf clusters appear as
    /// closed intervals whose length is the residual width of their subtree,
    /// separated by the level-k gaps `r0 q^k`. Requires a convergent spec.
    pub fn symbolic_development(&self, depth: u32) -> Result<SymbolicDevelopment> {
        if depth == 0 {
            return Err(Error::ZeroDepth);
        }
        let width = self.total_width().ok_or(Error::DivergentWidth {
            ratio: self.series_ratio(),
        })?;
        let b = self.branching as u64;
        let leaf_count = b.checked_pow(depth).ok_or(Error::CapExceeded {
            leaves: u64::MAX,
            cap: u64::MAX,
        })?;

        let mut gap_levels = Vec::with_capacity(depth as usize);
        let mut len = self.root_diameter;
        let mut count = (self.branching - 1) as u64;
        for level in 0..depth {
            gap_levels.push(GapLevel { level, len, count });
            len *= self.ratio;
            count *= b;
        }
        // Residual width of one depth-N subtree: (b-1) r0 q^N / (1 - b q).
        let leaf_len = (self.branching - 1) as f64 * len / (1.0 - self.series_ratio());
        Ok(SymbolicDevelopment {
            branching: self.branching,
            depth,
            leaf_count,
            leaf_len,
            excess: 0.0,
            gap_levels,
            width,
        })
    }
}

/// One level of gaps in a symbolic development.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapLevel {
    pub level: u32,
    pub len: f64,
    pub count: u64,
}

/// Depth-N symbolic development of a convergent spec: `b^N` leaf intervals
/// of equal length interleaved with the level-k gaps.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicDevelopment {
    pub branching: u32,
    pub depth: u32,
    pub leaf_count: u64,
    /// Closed-interval length of each depth-N leaf cluster.
    pub leaf_len: f64,
    /// Total measure added by stretching; 0 for the canonical development.
    pub excess: f64,
    /// Gap length and count per level < depth.
    pub gap_levels: Vec<GapLevel>,
    /// Width of the infinite space.
    pub width: f64,
}

impl SymbolicDevelopment {
    /// Diameter by direct summation of gaps and leaf intervals.
    pub fn diameter(&self) -> f64 {
        let mut total = 0.0;
        for g in &self.gap_levels {
            total += g.count as f64 * g.len;
        }
        total + self.leaf_count as f64 * self.leaf_len
    }

    /// Total gap measure, the removed open intervals.
    pub fn gap_measure(&self) -> f64 {
        self.gap_levels
            .iter()
            .map(|g| g.count as f64 * g.len)
            .sum()
    }
}

/// Fattens every leaf interval by `excess / b^N`, adding total measure
/// `excess` to the image while leaving every gap untouched. The stretched
/// development has diameter `width + excess`.
pub fn stretch(dev: &SymbolicDevelopment, excess: f64) -> Result<SymbolicDevelopment> {
    if !excess.is_finite() || excess < 0.0 {
        return Err(Error::NegativeExcess { excess });
    }
    let mut out = dev.clone();
    out.leaf_len += excess / dev.leaf_count as f64;
    out.excess += excess;
    Ok(out)
}
