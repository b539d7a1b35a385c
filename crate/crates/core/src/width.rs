//! Width of a cluster tree and the measure of disconnectivity via minimum
//! spanning trees.
//!
//! Width sums `r(v) (n(v) - 1)` over tree nodes. The measure of
//! disconnectivity (least total distance of point identifications making the
//! space connected) equals the MST weight for finite spaces, and the two
//! quantities agree: each internal node with `n(v)` children accounts for
//! exactly `n(v) - 1` MST edges of weight `r(v)`, so the edge-weight multiset
//! and the per-node term multiset are bit-identical.

use crate::error::Result;
use crate::space::FiniteMetricSpace;
use crate::tree::ClusterTree;
use crate::unionfind::UnionFind;

/// Relative tolerance when comparing the width and MST pipelines; the two
/// sides sum the same multiset in different orders.
pub const WIDTH_MST_REL_TOL: f64 = 1e-9;

/// Width value plus the per-node decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct WidthReport {
    pub width: f64,
    /// `(node id, r(v) * (n(v) - 1))` for internal nodes, ascending by id.
    /// Leaf terms are zero and omitted.
    pub per_node_terms: Vec<(usize, f64)>,
}

/// Sums `r(v) (n(v) - 1)` over all nodes of the tree.
pub fn width(tree: &ClusterTree) -> WidthReport {
    let mut per_node_terms = Vec::new();
    for node in tree.nodes() {
        if !node.is_leaf() {
            per_node_terms.push((node.id, node.r * (node.arity() - 1) as f64));
        }
    }
    // Neumaier compensated sum: caterpillar trees produce thousands of tiny
    // terms and the acceptance tolerances are tight.
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for &(_, term) in &per_node_terms {
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    WidthReport {
        width: sum + comp,
        per_node_terms,
    }
}

/// One identification pair of the connectivity certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertEdge {
    pub i: usize,
    pub j: usize,
    pub d: f64,
}

/// Spanning-tree certificate: identifying each pair makes the quotient
/// space connected, and `total` is the least possible identification cost.
#[derive(Debug, Clone, PartialEq)]
pub struct DisCertificate {
    pub pairs: Vec<CertEdge>,
    pub total: f64,
}

impl DisCertificate {
    /// Union-find closure of the pairs has a single component over `n` points.
    pub fn connects(&self, n: usize) -> bool {
        let mut uf = UnionFind::new(n);
        for e in &self.pairs {
            uf.union(e.i, e.j);
        }
        uf.components() == 1
    }
}

/// Minimum spanning tree over the complete graph on the points: ascending
/// edge sweep with union-find, ties broken by lexicographic `(i, j)`.
pub fn mst_weight(space: &FiniteMetricSpace) -> Result<DisCertificate> {
    space.ensure_valid()?;
    let n = space.n();
    let edges = crate::pairs::sorted_pairs(space.dist());
    let mut uf = UnionFind::new(n);
    let mut pairs = Vec::with_capacity(n.saturating_sub(1));
    let mut total = 0.0f64;
    for &key in &edges {
        let (w, i, j) = crate::pairs::unpack(key);
        if uf.union(i, j).is_some() {
            pairs.push(CertEdge { i, j, d: w });
            total += w;
            if uf.components() == 1 {
                break;
            }
        }
    }
    Ok(DisCertificate { pairs, total })
}

/// Side-by-side comparison of the width and MST totals.
#[derive(Debug, Clone, PartialEq)]
pub struct WidthMstReport {
    pub width: f64,
    pub mst_total: f64,
    pub abs_diff: f64,
    pub pass: bool,
}

/// Computes the width through the chain/tree pipeline and the MST total
/// through the raw distances, and checks that they agree.
pub fn check_width_mst(space: &FiniteMetricSpace) -> Result<WidthMstReport> {
    let chain = crate::chain::chain_distance(space)?;
    let tree = crate::tree::build_tree(&chain);
    let w = width(&tree).width;
    let mst = mst_weight(space)?.total;
    let abs_diff = (w - mst).abs();
    Ok(WidthMstReport {
        width: w,
        mst_total: mst,
        abs_diff,
        pass: abs_diff <= WIDTH_MST_REL_TOL * w.abs().max(1.0),
    })
}
