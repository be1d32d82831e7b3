//! Finite undirected loopless graphs and positive edge weightings on them.
//!
//! Vertices are `0..n` internally; every external format (files, JSON, TSV)
//! uses the 1-based labels `1..=n`. Vertex order is the fixed labelling used
//! by all preorders, so outputs are deterministic under input order.

use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// A neighbour of a vertex together with the id of the connecting edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Neighbor {
    pub target: usize,
    pub edge: usize,
}

/// Undirected loopless graph in compressed adjacency form.
///
/// Edge ids index `edges()`, which lists each edge once as `(u, v)` with
/// `u < v`, sorted lexicographically. Adjacency lists ascend by target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    adjacency: Vec<Neighbor>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut list = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted(n, list))
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut adjacency = vec![Neighbor { target: 0, edge: 0 }; 2 * edges.len()];
        // edges are sorted, so each adjacency list comes out ascending:
        // lower neighbours of v arrive (as the `v` side) before higher ones.
        for (id, &(u, v)) in edges.iter().enumerate() {
            adjacency[fill[v]] = Neighbor { target: u, edge: id };
            fill[v] += 1;
        }
        for (id, &(u, v)) in edges.iter().enumerate() {
            adjacency[fill[u]] = Neighbor { target: v, edge: id };
            fill[u] += 1;
        }
        Graph {
            n,
            edges,
            offsets,
            adjacency,
        }
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut edges = Vec::with_capacity(n * (n - 1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Ok(Self::from_sorted(n, edges))
    }

    pub fn edgeless(n: usize) -> Result<Self> {
        Graph::new(n, std::iter::empty())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `E_v`: edges at `v`, oriented outward, ascending by target.
    pub fn neighbors(&self, v: usize) -> &[Neighbor] {
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let list = self.neighbors(u);
        list.binary_search_by_key(&v, |nb| nb.target)
            .ok()
            .map(|i| list[i].edge)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * (self.n - 1) / 2
    }

    /// Connected components, clusters ordered by smallest member.
    pub fn connected_components(&self) -> Partition {
        components_of(self.n, self.edges.iter().copied())
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// True iff each cluster of `p` induces a connected subgraph.
    pub fn is_connected_partition(&self, p: &Partition) -> Result<bool> {
        self.check_size(p)?;
        let inner = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| p.same_cluster(u, v));
        Ok(components_of(self.n, inner).len() == p.len())
    }

    pub(crate) fn check_size(&self, p: &Partition) -> Result<()> {
        if p.n() != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: p.n(),
            });
        }
        Ok(())
    }

    /// Hop distances from `source` by breadth-first search, restricted to
    /// vertices accepted by `allowed`. Unreached vertices get `None`.
    pub fn bfs_depths(&self, source: usize, allowed: impl Fn(usize) -> bool) -> Vec<Option<usize>> {
        let mut depth = vec![None; self.n];
        let mut queue = std::collections::VecDeque::new();
        depth[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = depth[u].unwrap();
            for nb in self.neighbors(u) {
                if depth[nb.target].is_none() && allowed(nb.target) {
                    depth[nb.target] = Some(du + 1);
                    queue.push_back(nb.target);
                }
            }
        }
        depth
    }
}

/// Connected components of the graph on `0..n` with the given edges.
pub fn components_of(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Partition {
    let mut uf = UnionFind::<usize>::new(n);
    for (u, v) in edges {
        uf.union(u, v);
    }
    Partition::from_labels(&uf.into_labeling()).expect("n >= 1")
}

/// Strictly positive weights supported exactly on the edges of a graph.
///
/// On a complete graph this is a distance on the vertex set. Non-edges carry
/// the implicit value 0 and are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoDistance {
    graph: Arc<Graph>,
    weights: Vec<f64>,
}

impl PseudoDistance {
    pub fn new(graph: Arc<Graph>, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != graph.edge_count() {
            return Err(Error::WeightCount {
                expected: graph.edge_count(),
                got: weights.len(),
            });
        }
        if let Some(&w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidWeight(w));
        }
        Ok(PseudoDistance { graph, weights })
    }

    /// Weights computed per edge as `f(u, v)` with `u < v`.
    pub fn from_fn(graph: Arc<Graph>, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let weights = graph.edges().iter().map(|&(u, v)| f(u, v)).collect();
        Self::new(graph, weights)
    }

    /// Complete-graph distance from a symmetric matrix with zero diagonal.
    /// Zero off-diagonal entries mean "no edge".
    pub fn from_matrix(matrix: &[Vec<f64>]) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut edges = Vec::new();
        let mut weights = Vec::new();
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            if row[i] != 0.0 {
                return Err(Error::Parse(format!("diagonal entry {} is not 0", i + 1)));
            }
            for j in i + 1..n {
                if row[j] != matrix[j][i] {
                    return Err(Error::Parse(format!(
                        "matrix is not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                if row[j] != 0.0 {
                    edges.push((i, j));
                    weights.push(row[j]);
                }
            }
        }
        Self::new(Arc::new(Graph::new(n, edges)?), weights)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn shared_graph(&self) -> Arc<Graph> {
        Arc::clone(&self.graph)
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, edge: usize) -> f64 {
        self.weights[edge]
    }

    /// `d(u, v)`, or `None` when `{u, v}` is not an edge.
    pub fn get(&self, u: usize, v: usize) -> Option<f64> {
        self.graph.edge_id(u, v).map(|e| self.weights[e])
    }

    /// `d(u, v)` with the implicit 0 for non-edges and the diagonal.
    pub fn value(&self, u: usize, v: usize) -> f64 {
        self.get(u, v).unwrap_or(0.0)
    }

    /// Iterates `(u, v, w)` with `u < v` in edge-id order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.graph
            .edges()
            .iter()
            .zip(&self.weights)
            .map(|(&(u, v), &w)| (u, v, w))
    }

    /// `alpha * d`, same support.
    pub fn scale(&self, alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidScale(alpha));
        }
        self.map_weights(|_, _, w| w * alpha)
    }

    /// Applies `f(u, v, w)` to every edge weight, keeping the support.
    pub fn map_weights(&self, mut f: impl FnMut(usize, usize, f64) -> f64) -> Result<Self> {
        let weights = self.iter().map(|(u, v, w)| f(u, v, w)).collect();
        Self::new(self.shared_graph(), weights)
    }

    pub fn same_support(&self, other: &PseudoDistance) -> bool {
        Arc::ptr_eq(&self.graph, &other.graph) || self.graph.edges() == other.graph.edges()
    }

    /// `g(P, d) = (x, y)` and `h(P, d) = (p, q)`: extremal intra- and
    /// inter-cluster weights over the edges of the graph.
    pub fn extremal_stats(&self, p: &Partition) -> Result<ExtremalStats> {
        self.graph.check_size(p)?;
        let mut stats = ExtremalStats::default();
        for (u, v, w) in self.iter() {
            if p.same_cluster(u, v) {
                stats.max_intra = Some(stats.max_intra.map_or(w, |x: f64| x.max(w)));
                stats.min_intra = Some(stats.min_intra.map_or(w, |x: f64| x.min(w)));
            } else {
                stats.min_inter = Some(stats.min_inter.map_or(w, |x: f64| x.min(w)));
                stats.max_inter = Some(stats.max_inter.map_or(w, |x: f64| x.max(w)));
            }
        }
        if p.is_trivial() {
            stats.min_inter = Some(0.0);
            stats.max_inter = Some(0.0);
        }
        Ok(stats)
    }

    pub fn max_weight(&self) -> Option<f64> {
        self.weights.iter().copied().reduce(f64::max)
    }
}

/// Extremal intra/inter-cluster weights of a partition. `None` marks an
/// empty candidate set; the trivial partition reports inter values as 0.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ExtremalStats {
    pub max_intra: Option<f64>,
    pub min_intra: Option<f64>,
    pub min_inter: Option<f64>,
    pub max_inter: Option<f64>,
}
