//! Property tests for the chain-distance pipeline: the exhaustive oracle,
//! ultrametric structure, tree round trips, width/MST agreement, and
//! development verification.

use proptest::prelude::*;

use chaindev::{
    brute_force_chain_distance, build_development, build_development_with_order, build_tree,
    chain_distance, check_width_mst, diameter_identity, gap_chain_distance, is_ultrametric,
    mst_weight, tv_check, verify_development, width, FiniteMetricSpace, Metric, SquareMatrix,
};

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

fn space_from_upper(n: usize, upper: &[f64]) -> FiniteMetricSpace {
    let mut m = SquareMatrix::zeros(n);
    let mut it = upper.iter();
    for i in 0..n {
        for j in (i + 1)..n {
            m.set_sym(i, j, *it.next().unwrap());
        }
    }
    FiniteMetricSpace::new(labels(n), m).unwrap()
}

/// Random semimetrics with entries drawn from a coarse grid, so ties between
/// edges are common and the tie-breaking path gets exercised.
fn quantized_semimetric(max_n: usize) -> impl Strategy<Value = FiniteMetricSpace> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(1u32..=32, n * (n - 1) / 2).prop_map(move |raw| {
            let upper: Vec<f64> = raw.iter().map(|&v| v as f64 / 8.0).collect();
            space_from_upper(n, &upper)
        })
    })
}

/// Random semimetrics with continuous entries.
fn continuous_semimetric(max_n: usize) -> impl Strategy<Value = FiniteMetricSpace> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0.01f64..10.0, n * (n - 1) / 2)
            .prop_map(move |upper| space_from_upper(n, &upper))
    })
}

/// Random point clouds in the unit cube under Euclidean or Chebyshev metric.
fn point_cloud(max_n: usize) -> impl Strategy<Value = FiniteMetricSpace> {
    (1..=max_n, 1..=3usize, any::<bool>()).prop_flat_map(|(n, dim, chebyshev)| {
        prop::collection::vec(prop::collection::vec(0.0f64..1.0, dim), n).prop_map(move |pts| {
            let metric = if chebyshev {
                Metric::Chebyshev
            } else {
                Metric::Euclidean
            };
            FiniteMetricSpace::from_points(labels(pts.len()), &pts, metric).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn chain_distance_matches_the_exhaustive_oracle(space in quantized_semimetric(6)) {
        let c = chain_distance(&space).unwrap();
        for i in 0..space.n() {
            for j in 0..space.n() {
                let oracle = brute_force_chain_distance(&space, i, j).unwrap();
                prop_assert_eq!(c.get(i, j), oracle, "pair ({}, {})", i, j);
            }
        }
    }

    #[test]
    fn chain_matrix_is_dominated_and_ultrametric(space in continuous_semimetric(12)) {
        let c = chain_distance(&space).unwrap();
        for i in 0..space.n() {
            for j in 0..space.n() {
                prop_assert!(c.get(i, j) <= space.dist().get(i, j));
            }
        }
        prop_assert!(is_ultrametric(c.matrix()));
    }

    #[test]
    fn chain_distance_fixes_ultrametrics(space in quantized_semimetric(10)) {
        let c = chain_distance(&space).unwrap();
        let ultra = FiniteMetricSpace::new(space.labels().to_vec(), c.matrix().clone()).unwrap();
        let again = chain_distance(&ultra).unwrap();
        prop_assert_eq!(again.matrix(), c.matrix());
    }

    #[test]
    fn chain_distance_commutes_with_scaling(
        space in quantized_semimetric(8),
        scale in prop::sample::select(vec![0.5f64, 2.0, 3.0, 0.125, 7.5]),
    ) {
        let scaled_rows: Vec<Vec<f64>> = space
            .dist()
            .to_rows()
            .into_iter()
            .map(|row| row.into_iter().map(|v| v * scale).collect())
            .collect();
        let scaled = FiniteMetricSpace::from_rows(space.labels().to_vec(), &scaled_rows).unwrap();
        let c = chain_distance(&space).unwrap();
        let cs = chain_distance(&scaled).unwrap();
        for i in 0..space.n() {
            for j in 0..space.n() {
                prop_assert_eq!(cs.get(i, j), c.get(i, j) * scale);
            }
        }
    }

    #[test]
    fn chain_distance_commutes_with_relabeling(
        (space, perm) in (2..=8usize).prop_flat_map(|n| {
            (
                prop::collection::vec(1u32..=32, n * (n - 1) / 2).prop_map(move |raw| {
                    let upper: Vec<f64> = raw.iter().map(|&v| v as f64 / 8.0).collect();
                    space_from_upper(n, &upper)
                }),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            )
        })
    ) {
        let n = space.n();
        let mut permuted = SquareMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                permuted.set(i, j, space.dist().get(perm[i], perm[j]));
            }
        }
        let permuted_space = FiniteMetricSpace::new(labels(n), permuted).unwrap();
        let c = chain_distance(&space).unwrap();
        let cp = chain_distance(&permuted_space).unwrap();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(cp.get(i, j), c.get(perm[i], perm[j]));
            }
        }
    }

    #[test]
    fn chain_distance_on_the_line_is_the_max_gap(
        mut coords in prop::collection::btree_set(0u32..10_000, 2..30)
    ) {
        let coords: Vec<f64> = std::mem::take(&mut coords)
            .into_iter()
            .map(|v| v as f64 / 128.0)
            .collect();
        let points: Vec<Vec<f64>> = coords.iter().map(|&c| vec![c]).collect();
        let space =
            FiniteMetricSpace::from_points(labels(coords.len()), &points, Metric::Euclidean)
                .unwrap();
        let c = chain_distance(&space).unwrap();
        for i in 0..coords.len() {
            for j in 0..coords.len() {
                prop_assert_eq!(
                    c.get(i, j),
                    gap_chain_distance(&coords, coords[i], coords[j]).unwrap()
                );
            }
        }
    }

    #[test]
    fn lca_reproduces_the_chain_matrix(space in quantized_semimetric(12)) {
        let c = chain_distance(&space).unwrap();
        let tree = build_tree(&c);
        for i in 0..space.n() {
            for j in 0..space.n() {
                prop_assert_eq!(tree.lca_distance(i, j).unwrap(), c.get(i, j));
            }
        }
        // Rebuild from the LCA matrix: identical tree.
        prop_assert_eq!(&build_tree(&tree.chain_matrix()), &tree);
    }

    #[test]
    fn tree_structure_invariants(space in continuous_semimetric(16)) {
        let tree = build_tree(&chain_distance(&space).unwrap());
        let mut merge_total = 0usize;
        for node in tree.nodes() {
            if node.is_leaf() {
                prop_assert_eq!(node.r, 0.0);
                prop_assert_eq!(node.size(), 1);
            } else {
                prop_assert!(node.arity() >= 2);
                merge_total += node.arity() - 1;
                for &ch in &node.children {
                    let child = tree.node(ch);
                    if !child.is_leaf() {
                        prop_assert!(child.r < node.r);
                    }
                }
                // Children partition the members.
                let child_sum: usize =
                    node.children.iter().map(|&ch| tree.node(ch).size()).sum();
                prop_assert_eq!(child_sum, node.size());
            }
        }
        prop_assert_eq!(merge_total, space.n() - 1);
    }

    #[test]
    fn width_equals_mst_weight(space in point_cloud(24)) {
        prop_assume!(space.validate(false).is_valid());
        let report = check_width_mst(&space).unwrap();
        prop_assert!(report.pass, "width {} vs mst {}", report.width, report.mst_total);

        // The per-node term multiset matches the MST edge multiset exactly.
        let tree = build_tree(&chain_distance(&space).unwrap());
        let mut from_tree: Vec<f64> = Vec::new();
        for node in tree.nodes() {
            for _ in 0..node.arity().saturating_sub(1) {
                from_tree.push(node.r);
            }
        }
        from_tree.sort_by(f64::total_cmp);
        let mut from_mst: Vec<f64> =
            mst_weight(&space).unwrap().pairs.iter().map(|e| e.d).collect();
        from_mst.sort_by(f64::total_cmp);
        prop_assert_eq!(from_tree, from_mst);
    }

    #[test]
    fn developments_round_trip(space in point_cloud(16)) {
        prop_assume!(space.validate(false).is_valid());
        let tree = build_tree(&chain_distance(&space).unwrap());
        let dev = build_development(&tree);
        let report = verify_development(&space, &dev.coords).unwrap();
        prop_assert!(report.pass, "violations: {:?}", report.violations);
        prop_assert!(report.excess.unwrap().abs() <= 1e-9);
        prop_assert!(diameter_identity(&space, &dev.coords).unwrap().pass);
        prop_assert!(tv_check(&space, &dev.coords).unwrap().pass);

        // Mirror image is still a development.
        let mirrored: Vec<f64> = dev.coords.iter().map(|&c| -c).collect();
        prop_assert!(verify_development(&space, &mirrored).unwrap().pass);
    }

    #[test]
    fn child_arrangement_does_not_change_the_diameter(
        space in quantized_semimetric(10),
        rot in 0usize..4,
    ) {
        let tree = build_tree(&chain_distance(&space).unwrap());
        let base = build_development(&tree);
        let dev = build_development_with_order(&tree, |_, children| {
            children.rotate_left(rot % children.len());
            children.reverse();
        });
        prop_assert!(verify_development(&space, &dev.coords).unwrap().pass);
        prop_assert!((dev.diameter() - base.diameter()).abs() <= 1e-9 * base.diameter().max(1.0));
        prop_assert_eq!(dev.gap_multiset(), base.gap_multiset());
    }

    #[test]
    fn development_gaps_match_mst_edges(space in point_cloud(16)) {
        prop_assume!(space.validate(false).is_valid());
        let tree = build_tree(&chain_distance(&space).unwrap());
        let dev = build_development(&tree);
        let mut mst: Vec<f64> =
            mst_weight(&space).unwrap().pairs.iter().map(|e| e.d).collect();
        mst.sort_by(f64::total_cmp);
        prop_assert_eq!(dev.gap_multiset(), mst);
    }

    #[test]
    fn width_report_terms_sum_to_width(space in continuous_semimetric(16)) {
        let report = width(&build_tree(&chain_distance(&space).unwrap()));
        let plain: f64 = report.per_node_terms.iter().map(|&(_, t)| t).sum();
        let tol = 1e-12 * report.per_node_terms.len().max(1) as f64;
        prop_assert!((plain - report.width).abs() <= tol);
        prop_assert!(report.per_node_terms.iter().all(|&(_, t)| t > 0.0));
    }
}
