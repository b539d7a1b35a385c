//! Chain (minimax) distances and chain developments of finite metric spaces.
//!
//! Starting from a labeled dissimilarity matrix, this crate derives the chain
//! distance between all pairs (the smallest step size `eps` for which an
//! `eps`-chain joins them), builds the cluster tree of that ultrametric,
//! computes the width `w = sum r(v) (n(v) - 1)` over tree nodes, certifies
//! that the width equals the minimum-spanning-tree weight of the original
//! distances, and lays the points out on the real line so that chain
//! distances are preserved (a chain development, whose diameter is exactly
//! the width).
//!
//! A symbolic side module handles uniformly self-similar infinite compacts:
//! their width series is geometric, so existence of a chain development
//! reduces to a ratio test, finite truncations feed back into the exact
//! pipeline, and a ladder-style stretch realizes developments with any
//! diameter `w + c`.
//!
//! ```
//! use chaindev::{build_development, build_tree, chain_distance, width};
//! use chaindev::{FiniteMetricSpace, Metric};
//!
//! let space = FiniteMetricSpace::from_points(
//!     vec!["a".into(), "b".into(), "c".into(), "d".into()],
//!     &[vec![0.0], vec![1.0], vec![1.5], vec![3.0]],
//!     Metric::Euclidean,
//! )
//! .unwrap();
//! let chain = chain_distance(&space).unwrap();
//! let tree = build_tree(&chain);
//! assert_eq!(width(&tree).width, 3.0);
//!
//! let dev = build_development(&tree);
//! assert_eq!(dev.diameter(), 3.0);
//! ```

pub mod chain;
pub mod development;
mod error;
pub mod matrix;
pub mod selfsim;
pub mod space;
pub mod tree;
mod pairs;
mod unionfind;
pub mod width;

pub use chain::{
    brute_force_chain_distance, chain_distance, gap_chain_distance, is_ultrametric, ChainMatrix,
};
pub use development::{
    build_development, build_development_with_order, diameter_identity, tv_check,
    verify_development, Development, DiameterReport, TvReport, VerifyReport,
};
pub use error::{Error, Result};
pub use matrix::SquareMatrix;
pub use selfsim::{
    stretch, ExistenceVerdict, SelfSimilarSpec, SymbolicDevelopment, WidthSeries,
    DEFAULT_LEAF_CAP,
};
pub use space::{FiniteMetricSpace, Metric, ValidationReport, Violation};
pub use tree::{build_tree, ClusterNode, ClusterTree};
pub use width::{check_width_mst, mst_weight, width, CertEdge, DisCertificate, WidthMstReport, WidthReport};
