//! The labeled cluster tree of an ultrametric matrix.
//!
//! Each node covers a cluster of points; its label `r` is the chain diameter
//! of that cluster, and its children are the maximal sub-clusters of strictly
//! smaller chain diameter. Equivalently this is the single-linkage dendrogram
//! with all merges at one height under one component flattened into a single
//! node, so every internal node has `n(v) >= 2` children and `r` strictly
//! decreases along every root-to-leaf path.
//!
//! The construction is deterministic: children are ordered ascending by their
//! smallest member index and node ids are assigned in breadth-first discovery
//! order, so exports are stable byte for byte.

use crate::chain::ChainMatrix;
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::unionfind::UnionFind;

/// One cluster of the tree.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterNode {
    pub id: usize,
    pub parent: Option<usize>,
    /// Child node ids, ordered ascending by smallest member index.
    pub children: Vec<usize>,
    /// Chain diameter of the cluster; 0 exactly for leaves.
    pub r: f64,
    /// Path length from the root.
    pub level: usize,
    /// Range of this cluster's members inside the tree's leaf order.
    span: (usize, usize),
}

impl ClusterNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Number of children, `n(v)`.
    pub fn arity(&self) -> usize {
        self.children.len()
    }

    /// Number of points in the cluster, `|Q(v)|`.
    pub fn size(&self) -> usize {
        self.span.1 - self.span.0
    }
}

/// Immutable cluster tree over point indices `0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterTree {
    nodes: Vec<ClusterNode>,
    root: usize,
    /// Point indices in left-to-right leaf order; each node's members are a
    /// contiguous slice of this.
    leaf_order: Vec<usize>,
    /// Leaf node id of each point index.
    point_leaf: Vec<usize>,
}

impl ClusterTree {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node(&self, id: usize) -> &ClusterNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> impl Iterator<Item = &ClusterNode> {
        self.nodes.iter()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn n_points(&self) -> usize {
        self.leaf_order.len()
    }

    /// Point indices of cluster `id`, `Q(v)`.
    pub fn members(&self, id: usize) -> &[usize] {
        let (a, b) = self.nodes[id].span;
        &self.leaf_order[a..b]
    }

    /// Point indices in left-to-right leaf order.
    pub fn leaf_order(&self) -> &[usize] {
        &self.leaf_order
    }

    pub fn leaf_of(&self, point: usize) -> Result<usize> {
        self.point_leaf.get(point).copied().ok_or(Error::UnknownPoint {
            index: point,
            n: self.n_points(),
        })
    }

    /// Lowest common ancestor of two points' leaves.
    pub fn lca(&self, i: usize, j: usize) -> Result<usize> {
        let mut a = self.leaf_of(i)?;
        let mut b = self.leaf_of(j)?;
        while self.nodes[a].level > self.nodes[b].level {
            a = self.nodes[a].parent.expect("non-root has a parent");
        }
        while self.nodes[b].level > self.nodes[a].level {
            b = self.nodes[b].parent.expect("non-root has a parent");
        }
        while a != b {
            a = self.nodes[a].parent.expect("walk meets at the root");
            b = self.nodes[b].parent.expect("walk meets at the root");
        }
        Ok(a)
    }

    /// `r` of the lowest common ancestor; equals the chain distance between
    /// `i` and `j`, and 0 when `i == j`.
    pub fn lca_distance(&self, i: usize, j: usize) -> Result<f64> {
        Ok(self.nodes[self.lca(i, j)?].r)
    }

    /// Reconstructs the full chain matrix from LCA labels. Quadratic; used
    /// for round-trip checks and small exports.
    pub fn chain_matrix(&self) -> ChainMatrix {
        let n = self.n_points();
        let mut m = SquareMatrix::zeros(n);
        // Walk node by node: two points' LCA is the deepest node containing
        // both, so fill each node's cross-child pairs with its r.
        for node in &self.nodes {
            if node.is_leaf() {
                continue;
            }
            for (ci, &a) in node.children.iter().enumerate() {
                for &b in node.children.iter().skip(ci + 1) {
                    for &p in self.members(a) {
                        for &q in self.members(b) {
                            m.set_sym(p, q, node.r);
                        }
                    }
                }
            }
        }
        ChainMatrix::from_computed(m)
    }

    /// DOT rendering with one node per cluster.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph cluster_tree {\n  node [shape=box];\n");
        for node in &self.nodes {
            out.push_str(&format!(
                "  n{} [label=\"r={} |Q|={}\"];\n",
                node.id,
                format_sig12(node.r),
                node.size()
            ));
        }
        for node in &self.nodes {
            for &child in &node.children {
                out.push_str(&format!("  n{} -- n{};\n", node.id, child));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// 12 significant digits, stable across runs.
pub(crate) fn format_sig12(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{:.11e}", v)
    }
}

// Construction state: merge-forest handles are leaves (points) or interim
// internal nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Handle {
    Leaf(usize),
    Node(usize),
}

#[derive(Debug)]
struct RawNode {
    r: f64,
    children: Vec<Handle>,
}

/// Builds the cluster tree of an ultrametric matrix.
///
/// Internally: a minimum spanning tree of the matrix (Prim, dense) replayed
/// in ascending weight order gives the merge sequence; merges that land on a
/// component whose current top node already carries the same height are
/// flattened into that node instead of nesting. For ultrametric input this
/// reproduces the recursive partition into maximal sub-clusters of strictly
/// smaller diameter.
pub fn build_tree(c: &ChainMatrix) -> ClusterTree {
    let n = c.n();
    if n == 1 {
        return ClusterTree {
            nodes: vec![ClusterNode {
                id: 0,
                parent: None,
                children: Vec::new(),
                r: 0.0,
                level: 0,
                span: (0, 1),
            }],
            root: 0,
            leaf_order: vec![0],
            point_leaf: vec![0],
        };
    }

    let mut edges = mst_edges(c.matrix());
    edges.sort_unstable_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then_with(|| a.1.cmp(&b.1))
            .then_with(|| a.2.cmp(&b.2))
    });

    let mut uf = UnionFind::new(n);
    let mut top: Vec<Handle> = (0..n).map(Handle::Leaf).collect();
    let mut arena: Vec<RawNode> = Vec::with_capacity(n);

    for &(w, i, j) in &edges {
        let (keep, lose) = uf
            .union(i as usize, j as usize)
            .expect("spanning edges each merge two components");
        let (ha, hb) = (top[keep], top[lose]);
        let merged = match (ha, hb) {
            (Handle::Node(x), Handle::Node(y))
                if arena[x].r == w && arena[y].r == w =>
            {
                let absorbed = std::mem::take(&mut arena[y].children);
                arena[x].children.extend(absorbed);
                Handle::Node(x)
            }
            (Handle::Node(x), other) if arena[x].r == w => {
                arena[x].children.push(other);
                Handle::Node(x)
            }
            (other, Handle::Node(y)) if arena[y].r == w => {
                arena[y].children.push(other);
                Handle::Node(y)
            }
            (a, b) => {
                arena.push(RawNode {
                    r: w,
                    children: vec![a, b],
                });
                Handle::Node(arena.len() - 1)
            }
        };
        top[keep] = merged;
    }

    let root_handle = top[uf.find(0)];
    canonicalize(n, &arena, root_handle)
}

/// Minimum spanning tree of a dense symmetric matrix (Prim). Returns the
/// `n - 1` edges unordered.
fn mst_edges(m: &SquareMatrix) -> Vec<(f64, u32, u32)> {
    let n = m.n();
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    let mut from = vec![0u32; n];
    let mut edges = Vec::with_capacity(n - 1);
    in_tree[0] = true;
    best[1..n].copy_from_slice(&m.row(0)[1..n]);
    for _ in 1..n {
        let mut pick = usize::MAX;
        let mut pick_w = f64::INFINITY;
        for j in 0..n {
            if !in_tree[j] && best[j] < pick_w {
                pick_w = best[j];
                pick = j;
            }
        }
        in_tree[pick] = true;
        let (a, b) = (from[pick].min(pick as u32), from[pick].max(pick as u32));
        edges.push((pick_w, a, b));
        for j in 0..n {
            if !in_tree[j] {
                let w = m.get(pick, j);
                if w < best[j] {
                    best[j] = w;
                    from[j] = pick as u32;
                }
            }
        }
    }
    edges
}

/// Orders children (ascending smallest member), lays out leaves, and assigns
/// breadth-first ids.
fn canonicalize(n: usize, arena: &[RawNode], root: Handle) -> ClusterTree {
    // Smallest member per arena node, post-order from the root. Arena slots
    // emptied by flattening are unreachable and stay untouched.
    let mut min_member = vec![usize::MAX; arena.len()];
    let handle_min = |mins: &[usize], h: Handle| match h {
        Handle::Leaf(p) => p,
        Handle::Node(x) => mins[x],
    };
    let mut order: Vec<(Handle, bool)> = vec![(root, false)];
    while let Some((h, done)) = order.pop() {
        if let Handle::Node(x) = h {
            if done {
                min_member[x] = arena[x]
                    .children
                    .iter()
                    .map(|&ch| handle_min(&min_member, ch))
                    .min()
                    .expect("internal nodes have children");
            } else {
                order.push((h, true));
                for &ch in &arena[x].children {
                    if matches!(ch, Handle::Node(_)) {
                        order.push((ch, false));
                    }
                }
            }
        }
    }

    let sorted_children: Vec<Vec<Handle>> = arena
        .iter()
        .map(|raw| {
            let mut ch = raw.children.clone();
            ch.sort_by_key(|&h| handle_min(&min_member, h));
            ch
        })
        .collect();

    // Breadth-first id assignment.
    let mut nodes: Vec<ClusterNode> = Vec::with_capacity(2 * n);
    let mut point_leaf = vec![usize::MAX; n];
    let mut arena_id = vec![usize::MAX; arena.len()];
    let mut queue: std::collections::VecDeque<(Handle, Option<usize>, usize)> =
        std::collections::VecDeque::new();
    queue.push_back((root, None, 0));
    while let Some((h, parent, level)) = queue.pop_front() {
        let id = nodes.len();
        if let Some(p) = parent {
            nodes[p].children.push(id);
        }
        let r = match h {
            Handle::Leaf(p) => {
                point_leaf[p] = id;
                0.0
            }
            Handle::Node(x) => {
                arena_id[x] = id;
                for &ch in &sorted_children[x] {
                    queue.push_back((ch, Some(id), level + 1));
                }
                arena[x].r
            }
        };
        nodes.push(ClusterNode {
            id,
            parent,
            children: Vec::new(),
            r,
            level,
            span: (0, 0),
        });
    }

    // Depth-first span assignment in the same child order.
    let mut leaf_order: Vec<usize> = Vec::with_capacity(n);
    let mut stack: Vec<(Handle, bool)> = vec![(root, false)];
    let mut entry_starts: Vec<usize> = Vec::new();
    while let Some((h, done)) = stack.pop() {
        match h {
            Handle::Leaf(p) => {
                let id = point_leaf[p];
                let at = leaf_order.len();
                leaf_order.push(p);
                nodes[id].span = (at, at + 1);
            }
            Handle::Node(x) => {
                if done {
                    let start = entry_starts.pop().expect("matched entry");
                    nodes[arena_id[x]].span = (start, leaf_order.len());
                } else {
                    entry_starts.push(leaf_order.len());
                    stack.push((h, true));
                    for &ch in sorted_children[x].iter().rev() {
                        stack.push((ch, false));
                    }
                }
            }
        }
    }

    ClusterTree {
        nodes,
        root: 0,
        leaf_order,
        point_leaf,
    }
}
