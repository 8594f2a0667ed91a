//! Graph construction: paths, cycles, rooted trees, the outerplanar gadget,
//! and lexicographic products with layer bookkeeping.
//!
//! Every graph is immutable once built. Vertices are `0..n`; neighbor lists
//! are strictly ascending, which gives the canonical edge order used by the
//! JSON form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an arbitrary edge list. Edge orientation and order
    /// do not matter and duplicate edges collapse; self-loops and endpoints
    /// outside `0..n` are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return invalid(format!("edge ({u},{v}) out of range for n={n}"));
            }
            if u == v {
                return invalid(format!("self-loop at vertex {u}"));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
            nbrs.dedup();
        }
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Graph { adj, edge_count })
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Vertices in breadth-first order from vertex 0, restarting from the
    /// smallest unvisited vertex when the graph is disconnected.
    pub fn bfs_order(&self) -> Vec<usize> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut head = order.len();
            order.push(root);
            while head < order.len() {
                let v = order[head];
                head += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        order.push(w);
                    }
                }
            }
        }
        order
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n()
    }

    /// Subgraph induced by the vertex prefix `0..m`.
    pub fn induced_prefix(&self, m: usize) -> Graph {
        let m = m.min(self.n());
        let adj: Vec<Vec<usize>> = self.adj[..m]
            .iter()
            .map(|nbrs| nbrs.iter().copied().filter(|&w| w < m).collect())
            .collect();
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, edge_count }
    }

    /// Graphviz DOT text, vertex ids as labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n() {
            out.push_str(&format!("  {v} [label=\"{v}\"];\n"));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Inner factor of a lexicographic product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InnerKind {
    Empty,
    Complete,
}

impl fmt::Display for InnerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InnerKind::Empty => f.write_str("empty"),
            InnerKind::Complete => f.write_str("complete"),
        }
    }
}

impl std::str::FromStr for InnerKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "empty" | "E" => Ok(InnerKind::Empty),
            "complete" | "K" => Ok(InnerKind::Complete),
            other => invalid(format!("unknown inner kind {other:?}")),
        }
    }
}

/// `base[E_k]` or `base[K_k]` together with its expanded graph.
///
/// Product vertex `(b, j)` is numbered `b * k + j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductGraph {
    base: Graph,
    inner: InnerKind,
    k: usize,
    view: Graph,
}

impl ProductGraph {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn inner(&self) -> InnerKind {
        self.inner
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn view(&self) -> &Graph {
        &self.view
    }

    pub fn vertex(&self, b: usize, j: usize) -> usize {
        b * self.k + j
    }

    /// Base vertex owning product vertex `v`.
    pub fn base_of(&self, v: usize) -> usize {
        v / self.k
    }

    /// The `k` product vertices of the layer over base vertex `b`.
    pub fn layer_vertices(&self, b: usize) -> Result<Vec<usize>> {
        if b >= self.base.n() {
            return invalid(format!(
                "base vertex {b} out of range (n={})",
                self.base.n()
            ));
        }
        Ok((b * self.k..(b + 1) * self.k).collect())
    }
}

/// Level data for a breadth-first numbered rooted tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTreeMeta {
    pub root: usize,
    pub level: Vec<usize>,
}

impl RootedTreeMeta {
    pub fn depth(&self) -> usize {
        self.level.iter().copied().max().unwrap_or(0)
    }
}

/// Vertex roles in the outerplanar gadget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterplanarMeta {
    /// Spine path `p_1..p_10`.
    pub spine: Vec<usize>,
    /// Apex adjacent to the whole spine.
    pub apex: usize,
    /// `hangers[i]` is the 24-vertex path attached to `spine[i]`.
    pub hangers: Vec<Vec<usize>>,
    /// Spine, apex and hanger vertices, in numbering order.
    pub core: Vec<usize>,
}

pub fn build_path(n: usize) -> Result<Graph> {
    if n == 0 {
        return invalid("path needs at least one vertex");
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

pub fn build_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return invalid(format!("cycle needs at least 3 vertices, got {n}"));
    }
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((n - 1, 0));
    Graph::from_edges(n, &edges)
}

pub fn build_complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return invalid("complete graph needs at least one vertex");
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Rooted tree where the root has `root_children` children, every other
/// internal vertex has `internal_children` children, and all leaves sit at
/// depth `leaf_depth`. Numbered breadth-first with the root at 0.
///
/// `(3, 2, 5)` is the cubic tree with 94 vertices; `(4, 3, 6)` the 4-regular
/// one with 1457.
pub fn build_rooted_tree(
    root_children: usize,
    internal_children: usize,
    leaf_depth: usize,
) -> Result<(Graph, RootedTreeMeta)> {
    if root_children == 0 {
        return invalid("root_children must be at least 1");
    }
    if leaf_depth == 0 {
        return invalid("leaf_depth must be at least 1");
    }
    if internal_children == 0 && leaf_depth > 1 {
        return invalid("internal_children = 0 only allows leaf_depth = 1");
    }
    let mut level = vec![0];
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    for depth in 1..=leaf_depth {
        let fan = if depth == 1 { root_children } else { internal_children };
        let mut next = Vec::with_capacity(frontier.len() * fan);
        for &parent in &frontier {
            for _ in 0..fan {
                let child = level.len();
                level.push(depth);
                edges.push((parent, child));
                next.push(child);
            }
        }
        frontier = next;
    }
    let g = Graph::from_edges(level.len(), &edges)?;
    Ok((g, RootedTreeMeta { root: 0, level }))
}

const SPINE_LEN: usize = 10;
const HANGER_LEN: usize = 24;
const LEAVES_PER_CORE: usize = 6;

/// The outerplanar gadget: spine `P_10`, an apex joined to the spine, a
/// 24-vertex path fully joined to each spine vertex, and six pendant leaves
/// on every one of those 251 core vertices.
///
/// Numbering: spine `0..10`, apex `10`, hanger `i` at `11 + 24 i ..`, then
/// leaves `251 + 6 v + t` for core vertex `v`.
pub fn build_outerplanar_g0() -> (Graph, OuterplanarMeta) {
    let spine: Vec<usize> = (0..SPINE_LEN).collect();
    let apex = SPINE_LEN;
    let hangers: Vec<Vec<usize>> = (0..SPINE_LEN)
        .map(|i| {
            let start = SPINE_LEN + 1 + HANGER_LEN * i;
            (start..start + HANGER_LEN).collect()
        })
        .collect();
    let core_len = SPINE_LEN + 1 + SPINE_LEN * HANGER_LEN;

    let mut edges = Vec::new();
    for w in spine.windows(2) {
        edges.push((w[0], w[1]));
    }
    for &p in &spine {
        edges.push((p, apex));
    }
    for (i, hanger) in hangers.iter().enumerate() {
        for w in hanger.windows(2) {
            edges.push((w[0], w[1]));
        }
        for &q in hanger {
            edges.push((spine[i], q));
        }
    }
    for v in 0..core_len {
        for t in 0..LEAVES_PER_CORE {
            edges.push((v, core_len + LEAVES_PER_CORE * v + t));
        }
    }
    let n = core_len * (1 + LEAVES_PER_CORE);
    let g = Graph::from_edges(n, &edges).expect("gadget edges are in range");
    let meta = OuterplanarMeta {
        spine,
        apex,
        hangers,
        core: (0..core_len).collect(),
    };
    (g, meta)
}

/// Lexicographic product `base[E_k]` or `base[K_k]`: `(b, j) ~ (b', j')` iff
/// `b ~ b'` in the base, or `b = b'`, the inner graph is complete and `j != j'`.
pub fn lex_product(base: &Graph, inner: InnerKind, k: usize) -> Result<ProductGraph> {
    if k == 0 {
        return invalid("product inner size k must be at least 1");
    }
    let n = base.n() * k;
    let mut edges = Vec::new();
    for (b, c) in base.edges() {
        for j in 0..k {
            for j2 in 0..k {
                edges.push((b * k + j, c * k + j2));
            }
        }
    }
    if inner == InnerKind::Complete {
        for b in 0..base.n() {
            for j in 0..k {
                for j2 in j + 1..k {
                    edges.push((b * k + j, b * k + j2));
                }
            }
        }
    }
    let view = Graph::from_edges(n, &edges)?;
    Ok(ProductGraph {
        base: base.clone(),
        inner,
        k,
        view,
    })
}

pub fn layer_vertices(pg: &ProductGraph, b: usize) -> Result<Vec<usize>> {
    pg.layer_vertices(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_sizes() {
        let p4 = build_path(4).unwrap();
        assert_eq!((p4.n(), p4.edge_count()), (4, 3));
        let p1 = build_path(1).unwrap();
        assert_eq!((p1.n(), p1.edge_count()), (1, 0));
        let p28 = build_path(28).unwrap();
        assert_eq!((p28.n(), p28.edge_count()), (28, 27));
        assert!(build_path(0).is_err());
    }

    #[test]
    fn cycle_sizes() {
        let c7 = build_cycle(7).unwrap();
        assert_eq!((c7.n(), c7.edge_count()), (7, 7));
        assert!((0..7).all(|v| c7.degree(v) == 2));
        let c3 = build_cycle(3).unwrap();
        assert_eq!(c3, build_complete(3).unwrap());
        assert_eq!(build_cycle(5).unwrap().edge_count(), 5);
        assert!(build_cycle(2).is_err());
    }

    #[test]
    fn rooted_tree_counts() {
        let (t36, meta) = build_rooted_tree(3, 2, 5).unwrap();
        assert_eq!(t36.n(), 1 + 3 + 6 + 12 + 24 + 48);
        assert_eq!(t36.n(), 94);
        assert_eq!(meta.depth(), 5);
        assert_eq!(t36.degree(0), 3);
        for v in 1..t36.n() {
            let expected = if meta.level[v] == 5 { 1 } else { 3 };
            assert_eq!(t36.degree(v), expected, "vertex {v}");
        }

        let (t47, _) = build_rooted_tree(4, 3, 6).unwrap();
        assert_eq!(t47.n(), 1 + 4 + 12 + 36 + 108 + 324 + 972);
        assert_eq!(t47.n(), 1457);

        let (edge, _) = build_rooted_tree(1, 0, 1).unwrap();
        assert_eq!(edge, build_path(2).unwrap());
    }

    #[test]
    fn rooted_tree_levels_step_by_one() {
        let (t, meta) = build_rooted_tree(3, 2, 4).unwrap();
        assert_eq!(meta.level[meta.root], 0);
        for (u, v) in t.edges() {
            assert_eq!(meta.level[u].abs_diff(meta.level[v]), 1);
        }
        assert!(t.is_connected());
        assert_eq!(t.edge_count(), t.n() - 1);
    }

    #[test]
    fn outerplanar_gadget() {
        let (g, meta) = build_outerplanar_g0();
        assert_eq!(meta.core.len(), 251);
        assert_eq!(g.n(), 1757);
        assert_eq!(g.degree(meta.apex), 16);
        // spine interior: 2 spine + apex + 24 hanger + 6 leaves
        assert_eq!(g.degree(meta.spine[4]), 33);
        for hanger in &meta.hangers {
            assert_eq!(hanger.len(), 24);
        }
        assert!(g.is_connected());
    }

    #[test]
    fn product_examples() {
        let p2 = build_path(2).unwrap();
        let pg = lex_product(&p2, InnerKind::Empty, 2).unwrap();
        assert_eq!((pg.view().n(), pg.view().edge_count()), (4, 4));
        assert!((0..4).all(|v| pg.view().degree(v) == 2));

        let p3 = build_path(3).unwrap();
        let pg = lex_product(&p3, InnerKind::Complete, 2).unwrap();
        assert_eq!((pg.view().n(), pg.view().edge_count()), (6, 11));

        let c5 = build_cycle(5).unwrap();
        let pg = lex_product(&c5, InnerKind::Complete, 1).unwrap();
        assert_eq!(pg.view(), &c5);

        assert!(lex_product(&c5, InnerKind::Empty, 0).is_err());
    }

    #[test]
    fn layers() {
        let p3 = build_path(3).unwrap();
        let pg = lex_product(&p3, InnerKind::Empty, 2).unwrap();
        assert_eq!(layer_vertices(&pg, 1).unwrap(), vec![2, 3]);
        assert_eq!(layer_vertices(&pg, 0).unwrap(), vec![0, 1]);
        assert!(layer_vertices(&pg, 3).is_err());

        let pg = lex_product(&p3, InnerKind::Complete, 3).unwrap();
        assert_eq!(layer_vertices(&pg, 2).unwrap(), vec![6, 7, 8]);
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        let g = Graph::from_edges(3, &[(1, 0), (0, 1), (2, 1)]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn dot_export() {
        let dot = build_path(3).unwrap().to_dot();
        assert!(dot.starts_with("graph G {"));
        assert!(dot.contains("0 -- 1;"));
        assert!(dot.contains("1 -- 2;"));
    }
}
