//! Chain developments: chain-distance-preserving maps into the real line.
//!
//! A development is built from the cluster tree by interval subdivision:
//! each node's children occupy closed sub-intervals laid left to right,
//! separated by `n(v) - 1` open gaps of length `r(v)`. On the line, the
//! chain distance between two image points is the largest gap between them,
//! so verification reduces to comparing the space's chain matrix against the
//! gap oracle on the coordinates — an independent route that never looks at
//! the tree used for construction.

use crate::chain::{chain_distance, gap_chain_distance};
use crate::error::{Error, Result};
use crate::space::FiniteMetricSpace;
use crate::tree::ClusterTree;
use crate::width::width;

/// Absolute per-pair tolerance when verifying a development; coordinates
/// accumulate sums of `r` values, so exact equality is not guaranteed.
pub const VERIFY_ABS_TOL: f64 = 1e-9;

/// Relative tolerance for the diameter = width identity.
pub const DIAMETER_REL_TOL: f64 = 1e-9;

/// A concrete embedding of the points into `[0, width]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Development {
    /// Coordinate of each point index.
    pub coords: Vec<f64>,
    /// Left endpoint of the allocated interval; fixed at 0.
    pub origin: f64,
    /// `(node id, gap length)` for each removed open interval, left to right.
    pub gaps: Vec<(usize, f64)>,
    /// Width of the tree the development was built from.
    pub width: f64,
}

impl Development {
    pub fn diameter(&self) -> f64 {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &c in &self.coords {
            lo = lo.min(c);
            hi = hi.max(c);
        }
        if self.coords.is_empty() {
            0.0
        } else {
            hi - lo
        }
    }

    /// Gap lengths sorted ascending; equals the multiset
    /// `{r(v) with multiplicity n(v) - 1}` of the source tree.
    pub fn gap_multiset(&self) -> Vec<f64> {
        let mut gaps: Vec<f64> = self.gaps.iter().map(|&(_, g)| g).collect();
        gaps.sort_by(f64::total_cmp);
        gaps
    }
}

/// Builds the canonical development: children in tree order, left endpoint 0.
pub fn build_development(tree: &ClusterTree) -> Development {
    build_development_with_order(tree, |_, _| {})
}

/// Builds a development with a caller-controlled child arrangement. The
/// callback may permute each node's child slice in place; any arrangement
/// yields a valid development with the same diameter.
pub fn build_development_with_order<F>(tree: &ClusterTree, mut rearrange: F) -> Development
where
    F: FnMut(usize, &mut [usize]),
{
    // Subtree widths, post-order.
    let mut subtree_width = vec![0.0f64; tree.len()];
    let mut stack: Vec<(usize, bool)> = vec![(tree.root(), false)];
    while let Some((id, done)) = stack.pop() {
        let node = tree.node(id);
        if node.is_leaf() {
            continue;
        }
        if done {
            let mut w = node.r * (node.arity() - 1) as f64;
            for &ch in &node.children {
                w += subtree_width[ch];
            }
            subtree_width[id] = w;
        } else {
            stack.push((id, true));
            for &ch in &node.children {
                stack.push((ch, false));
            }
        }
    }

    let mut coords = vec![0.0f64; tree.n_points()];
    let mut gaps = Vec::with_capacity(tree.n_points().saturating_sub(1));
    // Pre-order sweep carrying each subtree's left endpoint.
    let mut walk: Vec<(usize, f64)> = vec![(tree.root(), 0.0)];
    while let Some((id, left)) = walk.pop() {
        let node = tree.node(id);
        if node.is_leaf() {
            coords[tree.members(id)[0]] = left;
            continue;
        }
        let mut order: Vec<usize> = node.children.clone();
        rearrange(id, &mut order);
        // Reverse so the stack pops children left to right; gaps are
        // recorded in placement order.
        let mut cursor = left;
        let mut placements = Vec::with_capacity(order.len());
        for (k, &ch) in order.iter().enumerate() {
            placements.push((ch, cursor));
            cursor += subtree_width[ch];
            if k + 1 < order.len() {
                gaps.push((id, node.r));
                cursor += node.r;
            }
        }
        for &(ch, at) in placements.iter().rev() {
            walk.push((ch, at));
        }
    }

    Development {
        coords,
        origin: 0.0,
        gaps,
        width: subtree_width[tree.root()],
    }
}

/// One failed pair found during verification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairViolation {
    pub i: usize,
    pub j: usize,
    /// Chain distance in the space.
    pub expected: f64,
    /// Max-gap distance between the image coordinates.
    pub actual: f64,
}

/// Outcome of checking that coordinates preserve chain distance.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub pass: bool,
    pub pairs_checked: usize,
    /// Capped at 16 entries.
    pub violations: Vec<PairViolation>,
    /// Point index pairs mapped to the same coordinate.
    pub collisions: Vec<(usize, usize)>,
    pub diameter: f64,
    /// `diameter - width`, reported on pass only.
    pub excess: Option<f64>,
}

const MAX_REPORTED_VIOLATIONS: usize = 16;

/// Checks that `coords` is a chain development of the space: for every pair,
/// the chain distance must equal the largest coordinate gap between the two
/// images, within [`VERIFY_ABS_TOL`] absolute.
pub fn verify_development(space: &FiniteMetricSpace, coords: &[f64]) -> Result<VerifyReport> {
    let n = space.n();
    if coords.len() != n {
        return Err(Error::CoordCount {
            got: coords.len(),
            expected: n,
        });
    }
    let chain = chain_distance(space)?;

    let mut by_coord: Vec<(f64, usize)> = coords.iter().copied().zip(0..n).collect();
    by_coord.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut collisions = Vec::new();
    for w in by_coord.windows(2) {
        if w[0].0 == w[1].0 {
            collisions.push((w[0].1.min(w[1].1), w[0].1.max(w[1].1)));
        }
    }
    let diameter = if n == 0 {
        0.0
    } else {
        by_coord[n - 1].0 - by_coord[0].0
    };
    if !collisions.is_empty() {
        return Ok(VerifyReport {
            pass: false,
            pairs_checked: 0,
            violations: Vec::new(),
            collisions,
            diameter,
            excess: None,
        });
    }

    let sorted: Vec<f64> = by_coord.iter().map(|&(c, _)| c).collect();
    let mut violations = Vec::new();
    let mut pairs_checked = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            pairs_checked += 1;
            let expected = chain.get(i, j);
            let actual = gap_chain_distance(&sorted, coords[i], coords[j])?;
            if (expected - actual).abs() > VERIFY_ABS_TOL
                && violations.len() < MAX_REPORTED_VIOLATIONS
            {
                violations.push(PairViolation {
                    i,
                    j,
                    expected,
                    actual,
                });
            }
        }
    }

    let pass = violations.is_empty();
    let excess = if pass {
        let w = width(&crate::tree::build_tree(&chain)).width;
        Some(diameter - w)
    } else {
        None
    };
    Ok(VerifyReport {
        pass,
        pairs_checked,
        violations,
        collisions,
        diameter,
        excess,
    })
}

/// One failed triple of the enumeration identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripleViolation {
    /// Point indices at sequence positions i < j < k.
    pub points: (usize, usize, usize),
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TvReport {
    pub pass: bool,
    pub triples_checked: usize,
    /// Capped at 16 entries.
    pub violations: Vec<TripleViolation>,
}

/// Enumeration identity on coordinate order: listing the points as
/// `x_1, ..., x_n` by ascending coordinate, every triple `i < j < k` must
/// satisfy `c(x_i, x_k) = max(c(x_i, x_j), c(x_j, x_k))`, exactly. Holds for
/// every development order; fails for orders no development can induce.
pub fn tv_check(space: &FiniteMetricSpace, coords: &[f64]) -> Result<TvReport> {
    let n = space.n();
    if coords.len() != n {
        return Err(Error::CoordCount {
            got: coords.len(),
            expected: n,
        });
    }
    let chain = chain_distance(space)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| coords[a].total_cmp(&coords[b]).then(a.cmp(&b)));

    let mut violations = Vec::new();
    let mut triples_checked = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                triples_checked += 1;
                let (a, b, m) = (order[i], order[k], order[j]);
                let lhs = chain.get(a, b);
                let rhs = chain.get(a, m).max(chain.get(m, b));
                if lhs != rhs && violations.len() < MAX_REPORTED_VIOLATIONS {
                    violations.push(TripleViolation {
                        points: (a, m, b),
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }
    Ok(TvReport {
        pass: violations.is_empty(),
        triples_checked,
        violations,
    })
}

/// Diameter / width comparison for a verified development.
#[derive(Debug, Clone, PartialEq)]
pub struct DiameterReport {
    pub diameter: f64,
    pub width: f64,
    pub pass: bool,
}

/// For finite spaces the image carries no measure, so the diameter of any
/// chain development must equal the width exactly (up to accumulation).
pub fn diameter_identity(space: &FiniteMetricSpace, coords: &[f64]) -> Result<DiameterReport> {
    let n = space.n();
    if coords.len() != n {
        return Err(Error::CoordCount {
            got: coords.len(),
            expected: n,
        });
    }
    let chain = chain_distance(space)?;
    let w = width(&crate::tree::build_tree(&chain)).width;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &c in coords {
        lo = lo.min(c);
        hi = hi.max(c);
    }
    let diameter = hi - lo;
    Ok(DiameterReport {
        diameter,
        width: w,
        pass: (diameter - w).abs() <= DIAMETER_REL_TOL * w.abs().max(1.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::chain_distance;
    use crate::space::Metric;
    use crate::tree::build_tree;
    use crate::width::mst_weight;

    fn line_space(coords: &[f64]) -> FiniteMetricSpace {
        let labels = coords.iter().map(|c| format!("{c}")).collect();
        let points: Vec<Vec<f64>> = coords.iter().map(|&c| vec![c]).collect();
        FiniteMetricSpace::from_points(labels, &points, Metric::Euclidean).unwrap()
    }

    fn dev_of(space: &FiniteMetricSpace) -> Development {
        build_development(&build_tree(&chain_distance(space).unwrap()))
    }

    #[test]
    fn single_point_develops_to_zero() {
        let dev = dev_of(&line_space(&[11.0]));
        assert_eq!(dev.coords, vec![0.0]);
        assert_eq!(dev.diameter(), 0.0);
        assert!(dev.gaps.is_empty());
    }

    #[test]
    fn two_points_develop_to_their_distance() {
        let dev = dev_of(&line_space(&[5.0, 12.0]));
        assert_eq!(dev.coords, vec![0.0, 7.0]);
        assert_eq!(dev.gap_multiset(), vec![7.0]);
    }

    #[test]
    fn four_point_line_reproduces_itself() {
        let space = line_space(&[0.0, 1.0, 1.5, 3.0]);
        let dev = dev_of(&space);
        assert_eq!(dev.coords, vec![0.0, 1.0, 1.5, 3.0]);
        assert_eq!(dev.gap_multiset(), vec![0.5, 1.0, 1.5]);
        assert_eq!(dev.width, 3.0);

        let report = verify_development(&space, &dev.coords).unwrap();
        assert!(report.pass);
        assert_eq!(report.excess, Some(0.0));
        assert_eq!(report.pairs_checked, 6);
    }

    #[test]
    fn identity_coords_on_a_line_subset_pass() {
        let space = line_space(&[0.0, 1.0, 1.5, 3.0]);
        let report = verify_development(&space, &[0.0, 1.0, 1.5, 3.0]).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn wrong_coordinate_is_caught_at_the_offending_pair() {
        // Mapping 1.5 to 2.5 stretches the (1, 1.5) pair to gap 1.
        let space = line_space(&[0.0, 1.0, 1.5, 3.0]);
        let report = verify_development(&space, &[0.0, 1.5, 2.5, 3.0]).unwrap();
        assert!(!report.pass);
        assert!(report
            .violations
            .iter()
            .any(|v| v.i == 1 && v.j == 2 && v.expected == 0.5 && v.actual == 1.0));
    }

    #[test]
    fn coordinate_collision_is_reported() {
        let space = line_space(&[0.0, 1.0, 1.5, 3.0]);
        let report = verify_development(&space, &[0.0, 1.0, 1.0, 3.0]).unwrap();
        assert!(!report.pass);
        assert_eq!(report.collisions, vec![(1, 2)]);
    }

    #[test]
    fn gap_multiset_matches_mst_edge_weights() {
        let space = line_space(&[0.2, 0.9, 1.5, 2.0, 3.75, 4.0, 9.5]);
        let dev = dev_of(&space);
        let mut mst: Vec<f64> = mst_weight(&space)
            .unwrap()
            .pairs
            .iter()
            .map(|e| e.d)
            .collect();
        mst.sort_by(f64::total_cmp);
        assert_eq!(dev.gap_multiset(), mst);
    }

    #[test]
    fn reversal_still_verifies() {
        let space = line_space(&[0.0, 1.0, 1.5, 3.0, 8.5]);
        let dev = dev_of(&space);
        let mirrored: Vec<f64> = dev.coords.iter().map(|&c| -c).collect();
        assert!(verify_development(&space, &mirrored).unwrap().pass);
    }

    #[test]
    fn tv_check_passes_on_built_developments() {
        let space = line_space(&[0.0, 1.0, 1.5, 3.0]);
        let dev = dev_of(&space);
        let report = tv_check(&space, &dev.coords).unwrap();
        assert!(report.pass);
        assert_eq!(report.triples_checked, 4);

        // Two or fewer points: vacuous.
        let tiny = line_space(&[0.0, 4.0]);
        let report = tv_check(&tiny, &[0.0, 4.0]).unwrap();
        assert!(report.pass);
        assert_eq!(report.triples_checked, 0);
    }

    #[test]
    fn tv_check_rejects_a_shuffled_order() {
        // Points {0, 1, 3} on the line, visited in order 1, 3, 0:
        // c(1, 0) = 1 but max(c(1, 3), c(3, 0)) = 2.
        let space = line_space(&[0.0, 1.0, 3.0]);
        let coords = [2.0, 0.0, 1.0]; // point 1 first, then 3, then 0
        let report = tv_check(&space, &coords).unwrap();
        assert!(!report.pass);
        assert_eq!(report.violations[0].points, (1, 2, 0));
        assert_eq!(report.violations[0].lhs, 1.0);
        assert_eq!(report.violations[0].rhs, 2.0);
    }

    #[test]
    fn diameter_identity_holds_for_built_developments() {
        let space = line_space(&[0.0, 1.0, 1.5, 3.0]);
        let dev = dev_of(&space);
        let report = diameter_identity(&space, &dev.coords).unwrap();
        assert!(report.pass);
        assert_eq!(report.diameter, 3.0);
        assert_eq!(report.width, 3.0);

        let single = line_space(&[3.25]);
        let report = diameter_identity(&single, &[0.0]).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn any_child_arrangement_verifies_with_the_same_diameter() {
        let space = line_space(&[0.0, 1.0, 1.5, 3.0, 8.5, 8.75]);
        let tree = build_tree(&chain_distance(&space).unwrap());
        let base = build_development(&tree);
        // Deterministic "rotate" arrangement, different from the canonical.
        let dev = build_development_with_order(&tree, |_, children| {
            children.rotate_left(1);
        });
        assert_ne!(dev.coords, base.coords);
        assert!(verify_development(&space, &dev.coords).unwrap().pass);
        assert!((dev.diameter() - base.diameter()).abs() <= 1e-12);
        assert_eq!(dev.gap_multiset(), base.gap_multiset());
    }

    #[test]
    fn coordinates_stay_inside_the_width_interval() {
        let space = line_space(&[0.0, 0.5, 2.0, 2.25, 9.0]);
        let dev = dev_of(&space);
        for &c in &dev.coords {
            assert!(c >= 0.0 && c <= dev.width + 1e-12);
        }
        let mut sorted = dev.coords.clone();
        sorted.sort_by(f64::total_cmp);
        sorted.dedup();
        assert_eq!(sorted.len(), dev.coords.len());
    }
}
