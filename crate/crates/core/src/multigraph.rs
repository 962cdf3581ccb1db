//! Finite undirected multigraphs with exact Laplacians.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::linalg::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge endpoint {index} out of range for {count} vertices")]
    EndpointOutOfRange { index: usize, count: usize },
    #[error("duplicate vertex label {0:?}")]
    DuplicateVertexLabel(String),
    #[error("duplicate edge label {0:?}")]
    DuplicateEdgeLabel(String),
    #[error("expected {expected} labels, got {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("unknown vertex label {0:?}")]
    UnknownVertex(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph needs at least 2 vertices, has {0}")]
    TooSmall(usize),
    #[error("root {root} out of range for {count} vertices")]
    RootOutOfRange { root: usize, count: usize },
}

/// Dense vertex index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Undirected edge with `u <= v`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub label: Option<String>,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn other(&self, w: usize) -> usize {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Multigraph with labelled vertices, parallel edges and loops.
///
/// Edges are kept sorted by `(u, v, label)`. Equality compares the vertex
/// count and the endpoint multiset only.
#[derive(Clone, Debug)]
pub struct Multigraph {
    labels: Vec<String>,
    edges: Vec<Edge>,
}

impl PartialEq for Multigraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count() == other.vertex_count()
            && self.edges.len() == other.edges.len()
            && self.edges.iter().zip(&other.edges).all(|(a, b)| a.endpoints() == b.endpoints())
    }
}

impl Eq for Multigraph {}

impl Multigraph {
    /// Graph on `n` vertices labelled `v0, v1, ...`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let labels = (0..n).map(|i| format!("v{i}")).collect();
        Self::with_labels(labels, edges)
    }

    pub fn with_labels(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        Self::build(labels, edges.into_iter().map(|(u, v)| (u, v, None)).collect())
    }

    /// Every edge carries a unique label.
    pub fn with_edge_labels(labels: Vec<String>, edges: Vec<(usize, usize, String)>) -> Result<Self, GraphError> {
        Self::build(labels, edges.into_iter().map(|(u, v, l)| (u, v, Some(l))).collect())
    }

    /// Graph given by vertex labels and label pairs.
    pub fn from_label_pairs(labels: Vec<String>, pairs: &[(String, String)]) -> Result<Self, GraphError> {
        let index = label_index(&labels)?;
        let look = |s: &String| index.get(s.as_str()).copied().ok_or_else(|| GraphError::UnknownVertex(s.clone()));
        let edges = pairs.iter().map(|(a, b)| Ok((look(a)?, look(b)?))).collect::<Result<Vec<_>, GraphError>>()?;
        Self::with_labels(labels, edges)
    }

    fn build(labels: Vec<String>, raw: Vec<(usize, usize, Option<String>)>) -> Result<Self, GraphError> {
        label_index(&labels)?;
        let n = labels.len();
        let mut seen = HashSet::new();
        let mut edges = Vec::with_capacity(raw.len());
        for (a, b, label) in raw {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::EndpointOutOfRange { index: x, count: n });
                }
            }
            if let Some(l) = &label {
                if !seen.insert(l.clone()) {
                    return Err(GraphError::DuplicateEdgeLabel(l.clone()));
                }
            }
            edges.push(Edge { u: a.min(b), v: a.max(b), label });
        }
        edges.sort();
        Ok(Multigraph { labels, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn has_edge_labels(&self) -> bool {
        !self.edges.is_empty() && self.edges.iter().all(|e| e.label.is_some())
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_loop()).count()
    }

    /// Number of non-loop edges at `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| !e.is_loop() && (e.u == v || e.v == v)).count()
    }

    /// Number of edges joining `a` and `b`.
    pub fn multiplicity(&self, a: usize, b: usize) -> usize {
        let (u, v) = (a.min(b), a.max(b));
        self.edges.iter().filter(|e| e.u == u && e.v == v).count()
    }

    /// Indices of the edges incident to each vertex, loops excluded.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertex_count()];
        for (k, e) in self.edges.iter().enumerate() {
            if !e.is_loop() {
                inc[e.u].push(k);
                inc[e.v].push(k);
            }
        }
        inc
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let inc = self.incidence();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &k in &inc[x] {
                let y = self.edges[k].other(x);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Connected, loopless, and with exactly `|V| - 1` edges.
    pub fn is_tree(&self) -> bool {
        self.vertex_count() >= 1
            && self.loop_count() == 0
            && self.edge_count() + 1 == self.vertex_count()
            && self.is_connected()
    }

    pub fn adjacency_matrix(&self) -> IntMatrix {
        let n = self.vertex_count();
        let mut a = IntMatrix::zeros(n, n);
        for e in self.edges.iter().filter(|e| !e.is_loop()) {
            a[(e.u, e.v)] += 1;
            a[(e.v, e.u)] += 1;
        }
        a
    }

    /// `D - A`, loops ignored.
    pub fn laplacian(&self) -> IntMatrix {
        let n = self.vertex_count();
        let mut l = IntMatrix::zeros(n, n);
        for e in self.edges.iter().filter(|e| !e.is_loop()) {
            l[(e.u, e.v)] -= 1;
            l[(e.v, e.u)] -= 1;
            l[(e.u, e.u)] += 1;
            l[(e.v, e.v)] += 1;
        }
        l
    }

    pub fn reduced_laplacian(&self, root: VertexId) -> Result<IntMatrix, GraphError> {
        let n = self.vertex_count();
        if n < 2 {
            return Err(GraphError::TooSmall(n));
        }
        if root.0 >= n {
            return Err(GraphError::RootOutOfRange { root: root.0, count: n });
        }
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(self.laplacian().minor(root.0, root.0))
    }

    /// Matrix-tree theorem via a Bareiss determinant.
    pub fn spanning_tree_count(&self) -> Result<BigInt, GraphError> {
        match self.vertex_count() {
            0 => Err(GraphError::TooSmall(0)),
            1 => Ok(BigInt::from(1)),
            _ => Ok(self.reduced_laplacian(VertexId(0))?.determinant().abs()),
        }
    }
}

fn label_index(labels: &[String]) -> Result<HashMap<&str, usize>, GraphError> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.as_str(), i).is_some() {
            return Err(GraphError::DuplicateVertexLabel(l.clone()));
        }
    }
    Ok(index)
}

/// Spanning-tree count by enumerating `(|V|-1)`-edge subsets. Exponential.
pub fn brute_force_spanning_trees(g: &Multigraph) -> u64 {
    let n = g.vertex_count();
    let edges: Vec<(usize, usize)> = g.edges().iter().filter(|e| !e.is_loop()).map(Edge::endpoints).collect();
    if n <= 1 {
        return 1;
    }
    let mut count = 0;
    let mut chosen = Vec::with_capacity(n - 1);
    subsets(&edges, 0, n - 1, &mut chosen, &mut |pick| {
        if acyclic(n, pick) {
            count += 1;
        }
    });
    count
}

fn subsets(
    edges: &[(usize, usize)],
    start: usize,
    k: usize,
    chosen: &mut Vec<(usize, usize)>,
    f: &mut impl FnMut(&[(usize, usize)]),
) {
    if chosen.len() == k {
        f(chosen);
        return;
    }
    let need = k - chosen.len();
    for i in start..edges.len() {
        if edges.len() - i < need {
            break;
        }
        chosen.push(edges[i]);
        subsets(edges, i + 1, k, chosen, f);
        chosen.pop();
    }
}

fn acyclic(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;
    use proptest::prelude::*;

    fn cycle(n: usize) -> Multigraph {
        Multigraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn adjacency_examples() {
        let c3 = cycle(3);
        assert_eq!(c3.adjacency_matrix(), IntMatrix::from_rows(vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]));
        let dbl = Multigraph::new(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(dbl.adjacency_matrix(), IntMatrix::from_rows(vec![vec![0, 2], vec![2, 0]]));
        let lp = Multigraph::new(1, [(0, 0)]).unwrap();
        assert_eq!(lp.adjacency_matrix(), IntMatrix::from_rows(vec![vec![0]]));
    }

    #[test]
    fn laplacian_examples() {
        let p2 = Multigraph::new(2, [(0, 1)]).unwrap();
        assert_eq!(p2.laplacian(), IntMatrix::from_rows(vec![vec![1, -1], vec![-1, 1]]));
        assert_eq!(cycle(3).laplacian(), IntMatrix::from_rows(vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]));
        let with_loop = Multigraph::new(3, [(0, 1), (1, 2), (2, 0), (1, 1)]).unwrap();
        assert_eq!(with_loop.laplacian(), cycle(3).laplacian());
    }

    #[test]
    fn reduced_laplacian_examples() {
        let p2 = Multigraph::new(2, [(0, 1)]).unwrap();
        for r in 0..2 {
            assert_eq!(p2.reduced_laplacian(VertexId(r)).unwrap(), IntMatrix::from_rows(vec![vec![1]]));
        }
        for r in 0..3 {
            let m = cycle(3).reduced_laplacian(VertexId(r)).unwrap();
            assert_eq!(m, IntMatrix::from_rows(vec![vec![2, -1], vec![-1, 2]]));
        }
        for r in 0..4 {
            assert_eq!(cycle(4).reduced_laplacian(VertexId(r)).unwrap().determinant(), BigInt::from(4));
        }
        let split = Multigraph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(split.reduced_laplacian(VertexId(0)), Err(GraphError::Disconnected));
        let single = Multigraph::new(1, []).unwrap();
        assert_eq!(single.reduced_laplacian(VertexId(0)), Err(GraphError::TooSmall(1)));
    }

    #[test]
    fn c4_has_four_trees_by_enumeration() {
        assert_eq!(brute_force_spanning_trees(&cycle(4)), 4);
        assert_eq!(cycle(4).spanning_tree_count().unwrap(), BigInt::from(4));
    }

    #[test]
    fn trees_have_one_spanning_tree() {
        let star = Multigraph::new(5, [(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
        assert!(star.is_tree());
        assert_eq!(star.spanning_tree_count().unwrap(), BigInt::from(1));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Multigraph::new(2, [(0, 2)]), Err(GraphError::EndpointOutOfRange { index: 2, count: 2 }));
        assert!(matches!(
            Multigraph::with_labels(vec!["a".into(), "a".into()], []),
            Err(GraphError::DuplicateVertexLabel(_))
        ));
        assert!(matches!(
            Multigraph::with_edge_labels(vec!["a".into(), "b".into()], vec![(0, 1, "e".into()), (1, 0, "e".into())]),
            Err(GraphError::DuplicateEdgeLabel(_))
        ));
    }

    #[test]
    fn equality_ignores_edge_order() {
        let a = Multigraph::new(3, [(0, 1), (2, 1), (0, 2)]).unwrap();
        let b = Multigraph::new(3, [(1, 2), (2, 0), (1, 0)]).unwrap();
        assert_eq!(a, b);
    }

    fn connected_graph() -> impl Strategy<Value = Multigraph> {
        (2usize..=6).prop_flat_map(|n| {
            let tree = proptest::collection::vec(any::<prop::sample::Index>(), n - 1);
            let extra = proptest::collection::vec((0..n, 0..n), 0..=5);
            (Just(n), tree, extra).prop_map(|(n, tree, extra)| {
                let mut edges: Vec<(usize, usize)> =
                    tree.iter().enumerate().map(|(i, ix)| (i + 1, ix.index(i + 1))).collect();
                edges.extend(extra);
                Multigraph::new(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn laplacian_rows_and_columns_sum_to_zero(g in connected_graph()) {
            let l = g.laplacian();
            for i in 0..l.rows() {
                prop_assert_eq!(l.row(i).iter().sum::<BigInt>(), BigInt::from(0));
                prop_assert_eq!(l.column(i).iter().sum::<BigInt>(), BigInt::from(0));
            }
        }

        #[test]
        fn tree_count_is_root_independent(g in connected_graph()) {
            let t = g.spanning_tree_count().unwrap();
            for r in 0..g.vertex_count() {
                prop_assert_eq!(g.reduced_laplacian(VertexId(r)).unwrap().determinant().abs(), t.clone());
            }
        }

        #[test]
        fn tree_count_matches_enumeration(g in connected_graph()) {
            prop_assume!(g.edge_count() - g.loop_count() <= 10);
            prop_assert_eq!(g.spanning_tree_count().unwrap(), BigInt::from(brute_force_spanning_trees(&g)));
        }

        #[test]
        fn loops_change_nothing(g in connected_graph(), at in any::<prop::sample::Index>()) {
            let v = at.index(g.vertex_count());
            let mut edges: Vec<(usize, usize)> = g.edges().iter().map(Edge::endpoints).collect();
            edges.push((v, v));
            let h = Multigraph::new(g.vertex_count(), edges).unwrap();
            prop_assert_eq!(h.laplacian(), g.laplacian());
            prop_assert_eq!(h.spanning_tree_count().unwrap(), g.spanning_tree_count().unwrap());
        }
    }
}
