//! Chain (minimax) distances.
//!
//! The chain distance between two points is the smallest `eps` such that the
//! points can be joined by a chain whose consecutive steps all stay within
//! `eps`. On a finite space the minimum is attained and selects one of the
//! input distances, so chain matrices hold bit-exact copies of input entries
//! and equality checks on them are exact.

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::pairs;
use crate::space::FiniteMetricSpace;
use crate::unionfind::UnionFind;

/// Hard cap for the exhaustive oracle; simple-path enumeration beyond this
/// blows up combinatorially.
pub const BRUTE_FORCE_MAX: usize = 10;

/// The derived chain-distance matrix. Symmetric, zero diagonal, and
/// ultrametric: `c[i][k] <= max(c[i][j], c[j][k])` holds exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainMatrix {
    c: SquareMatrix,
}

impl ChainMatrix {
    /// Wraps an existing matrix, verifying symmetry, zero diagonal,
    /// nonnegativity and the strong triangle inequality (exact comparisons).
    pub fn try_new(c: SquareMatrix) -> Result<Self> {
        let n = c.n();
        if n == 0 {
            return Err(Error::Empty);
        }
        for i in 0..n {
            if c.get(i, i) != 0.0 {
                return Err(Error::InvalidSpace {
                    report: crate::space::ValidationReport {
                        violations: vec![crate::space::Violation::NonzeroDiagonal {
                            i,
                            value: c.get(i, i),
                        }],
                        triangle_checked: false,
                    },
                });
            }
            for j in (i + 1)..n {
                let a = c.get(i, j);
                if !a.is_finite() || a < 0.0 || a != c.get(j, i) {
                    return Err(Error::InvalidSpace {
                        report: crate::space::ValidationReport {
                            violations: vec![crate::space::Violation::Asymmetry {
                                i,
                                j,
                                a,
                                b: c.get(j, i),
                            }],
                            triangle_checked: false,
                        },
                    });
                }
            }
        }
        if let Some((i, j, k)) = ultrametric_witness(&c) {
            return Err(Error::NotUltrametric {
                i,
                j,
                k,
                lhs: c.get(i, k),
                rhs: c.get(i, j).max(c.get(j, k)),
            });
        }
        Ok(ChainMatrix { c })
    }

    pub(crate) fn from_computed(c: SquareMatrix) -> Self {
        ChainMatrix { c }
    }

    pub fn n(&self) -> usize {
        self.c.n()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.c.get(i, j)
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.c
    }

    /// Chain diameter: the largest entry.
    pub fn diameter(&self) -> f64 {
        self.c.max_off_diagonal()
    }
}

/// Computes all pairwise chain distances by processing pairs in ascending
/// distance order with a union-find structure: when an edge merges two
/// components, its weight is the chain distance between every cross pair of
/// those components. Ties are broken by lexicographic `(i, j)`, which affects
/// merge order only, never the resulting values.
pub fn chain_distance(space: &FiniteMetricSpace) -> Result<ChainMatrix> {
    space.ensure_valid()?;
    let n = space.n();

    let sorted = pairs::sorted_pairs(space.dist());
    let mut c = SquareMatrix::zeros(n);
    let mut uf = UnionFind::new(n);
    let mut members: Vec<Vec<u32>> = (0..n as u32).map(|i| vec![i]).collect();

    for &key in &sorted {
        let (w, i, j) = pairs::unpack(key);
        if let Some((keep, lose)) = uf.union(i, j) {
            let absorbed = std::mem::take(&mut members[lose]);
            for &a in &absorbed {
                for &b in &members[keep] {
                    c.set_sym(a as usize, b as usize, w);
                }
            }
            members[keep].extend_from_slice(&absorbed);
            if uf.components() == 1 {
                break;
            }
        }
    }
    Ok(ChainMatrix::from_computed(c))
}

/// Direct-definition oracle: enumerates every simple chain from `i` to `j`
/// and takes the minimax step. Exponential; capped at [`BRUTE_FORCE_MAX`]
/// points and meant for tests.
pub fn brute_force_chain_distance(space: &FiniteMetricSpace, i: usize, j: usize) -> Result<f64> {
    let n = space.n();
    if n > BRUTE_FORCE_MAX {
        return Err(Error::TooLarge {
            n,
            max: BRUTE_FORCE_MAX,
        });
    }
    if i >= n {
        return Err(Error::UnknownPoint { index: i, n });
    }
    if j >= n {
        return Err(Error::UnknownPoint { index: j, n });
    }
    if i == j {
        return Ok(0.0);
    }
    let d = space.dist();
    let mut best = f64::INFINITY;
    // Depth-first over simple paths; `visited` is a bitmask over points.
    fn walk(
        d: &SquareMatrix,
        target: usize,
        current: usize,
        visited: u32,
        max_step: f64,
        best: &mut f64,
    ) {
        if current == target {
            *best = best.min(max_step);
            return;
        }
        for next in 0..d.n() {
            if visited & (1 << next) != 0 {
                continue;
            }
            walk(
                d,
                target,
                next,
                visited | (1 << next),
                max_step.max(d.get(current, next)),
                best,
            );
        }
    }
    walk(d, j, i, 1 << i, 0.0, &mut best);
    Ok(best)
}

/// First strong-triangle violation `(i, j, k)` with
/// `m[i][k] > max(m[i][j], m[j][k])`, if any. Exact comparisons.
fn ultrametric_witness(m: &SquareMatrix) -> Option<(usize, usize, usize)> {
    let n = m.n();
    for i in 0..n {
        for k in (i + 1)..n {
            let direct = m.get(i, k);
            for j in 0..n {
                if j == i || j == k {
                    continue;
                }
                if direct > m.get(i, j).max(m.get(j, k)) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Whether a symmetric zero-diagonal matrix satisfies the strong triangle
/// inequality `m[i][k] <= max(m[i][j], m[j][k])` for all triples, exactly.
pub fn is_ultrametric(m: &SquareMatrix) -> bool {
    ultrametric_witness(m).is_none()
}

/// Chain distance inside a finite subset of the real line: the maximum gap
/// between consecutive members lying between `s` and `t`. This is the
/// independent oracle that developments are verified against.
///
/// `points` must be sorted ascending with distinct entries; `s` and `t` must
/// be members.
pub fn gap_chain_distance(points: &[f64], s: f64, t: f64) -> Result<f64> {
    let locate = |v: f64| -> Result<usize> {
        points
            .binary_search_by(|p| p.total_cmp(&v))
            .map_err(|_| Error::NotAMember { value: v })
    };
    let a = locate(s)?;
    let b = locate(t)?;
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let mut max_gap = 0.0f64;
    for k in lo..hi {
        max_gap = max_gap.max(points[k + 1] - points[k]);
    }
    Ok(max_gap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::Metric;

    pub(crate) fn line_space(coords: &[f64]) -> FiniteMetricSpace {
        let labels = coords.iter().map(|c| format!("{c}")).collect();
        let points: Vec<Vec<f64>> = coords.iter().map(|&c| vec![c]).collect();
        FiniteMetricSpace::from_points(labels, &points, Metric::Euclidean).unwrap()
    }

    #[test]
    fn two_points_at_distance_seven() {
        let space = line_space(&[0.0, 7.0]);
        let c = chain_distance(&space).unwrap();
        assert_eq!(c.get(0, 1), 7.0);
        assert_eq!(brute_force_chain_distance(&space, 0, 1).unwrap(), 7.0);
    }

    #[test]
    fn four_points_on_the_line() {
        // {0, 1, 1.5, 3}: refining through intermediate points caps every
        // chain step at the largest gap crossed.
        let space = line_space(&[0.0, 1.0, 1.5, 3.0]);
        let c = chain_distance(&space).unwrap();
        assert_eq!(c.get(0, 1), 1.0);
        assert_eq!(c.get(1, 2), 0.5);
        assert_eq!(c.get(0, 2), 1.0);
        assert_eq!(c.get(0, 3), 1.5);
        assert_eq!(c.get(1, 3), 1.5);
        assert_eq!(c.get(2, 3), 1.5);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(
                    c.get(i, j),
                    brute_force_chain_distance(&space, i, j).unwrap(),
                    "pair ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn triangle_sides_1_2_3() {
        let space = FiniteMetricSpace::from_rows(
            vec!["a".into(), "b".into(), "c".into()],
            &[
                vec![0.0, 1.0, 3.0],
                vec![1.0, 0.0, 2.0],
                vec![3.0, 2.0, 0.0],
            ],
        )
        .unwrap();
        let c = chain_distance(&space).unwrap();
        assert_eq!(c.get(0, 1), 1.0);
        assert_eq!(c.get(1, 2), 2.0);
        assert_eq!(c.get(0, 2), 2.0);
        assert_eq!(brute_force_chain_distance(&space, 0, 2).unwrap(), 2.0);
    }

    #[test]
    fn brute_force_rejects_big_spaces_and_bad_indices() {
        let space = line_space(&(0..11).map(|i| i as f64).collect::<Vec<_>>());
        assert!(matches!(
            brute_force_chain_distance(&space, 0, 1),
            Err(Error::TooLarge { n: 11, .. })
        ));
        let space = line_space(&[0.0, 1.0]);
        assert!(matches!(
            brute_force_chain_distance(&space, 0, 5),
            Err(Error::UnknownPoint { index: 5, .. })
        ));
        assert_eq!(brute_force_chain_distance(&space, 1, 1).unwrap(), 0.0);
    }

    #[test]
    fn chain_distance_rejects_invalid_space() {
        let space = FiniteMetricSpace::from_rows(
            vec!["a".into(), "b".into()],
            &[vec![0.0, 1.0], vec![2.0, 0.0]],
        )
        .unwrap();
        assert!(matches!(
            chain_distance(&space),
            Err(Error::InvalidSpace { .. })
        ));
    }

    #[test]
    fn chain_matrix_is_ultrametric_but_line_distances_are_not() {
        let space = line_space(&[0.0, 1.0, 3.0]);
        assert!(!is_ultrametric(space.dist()));
        let c = chain_distance(&space).unwrap();
        assert!(is_ultrametric(c.matrix()));
        // 1-point matrix: vacuously ultrametric.
        assert!(is_ultrametric(&SquareMatrix::zeros(1)));
    }

    #[test]
    fn try_new_rejects_non_ultrametric() {
        let space = line_space(&[0.0, 1.0, 3.0]);
        assert!(matches!(
            ChainMatrix::try_new(space.dist().clone()),
            Err(Error::NotUltrametric { .. })
        ));
        let c = chain_distance(&space).unwrap();
        assert!(ChainMatrix::try_new(c.matrix().clone()).is_ok());
    }

    #[test]
    fn gap_oracle_examples() {
        let pts = [0.0, 1.0, 1.5, 3.0];
        assert_eq!(gap_chain_distance(&pts, 0.0, 3.0).unwrap(), 1.5);
        assert_eq!(gap_chain_distance(&pts, 1.0, 1.0).unwrap(), 0.0);
        assert_eq!(gap_chain_distance(&[0.0, 10.0], 0.0, 10.0).unwrap(), 10.0);
        assert_eq!(gap_chain_distance(&pts, 3.0, 0.0).unwrap(), 1.5);
        assert!(matches!(
            gap_chain_distance(&pts, 0.25, 3.0),
            Err(Error::NotAMember { .. })
        ));
    }

    #[test]
    fn chain_agrees_with_gap_oracle_on_the_line() {
        let coords = [0.25, 1.0, 1.5, 3.0, 3.125, 10.0];
        let space = line_space(&coords);
        let c = chain_distance(&space).unwrap();
        for i in 0..coords.len() {
            for j in 0..coords.len() {
                assert_eq!(
                    c.get(i, j),
                    gap_chain_distance(&coords, coords[i], coords[j]).unwrap()
                );
            }
        }
    }

    #[test]
    fn rerunning_on_an_ultrametric_is_the_identity() {
        let space = line_space(&[0.0, 0.5, 2.0, 2.25, 9.0]);
        let c = chain_distance(&space).unwrap();
        let again_space =
            FiniteMetricSpace::new(space.labels().to_vec(), c.matrix().clone()).unwrap();
        let again = chain_distance(&again_space).unwrap();
        assert_eq!(again.matrix(), c.matrix());
    }
}
