//! The Morse flow and the Morse partition.
//!
//! At every vertex the flow follows the unique maximal edge when that edge
//! is ascending; otherwise the vertex is a sink (critical). Deleting the
//! edges that carry no flow leaves a forest of rooted trees, one per
//! critical vertex, whose vertex sets form the Morse partition.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::graph::{components_of, Graph, Neighbor};
use crate::partition::Partition;
use crate::preorder::{EdgePreorder, Relation, VertexPreorder};

/// The flow map `Φ: V → V` plus the edge bookkeeping derived from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseFlow {
    phi: Vec<usize>,
    /// Edge id carrying the flow out of each vertex.
    used: Vec<Option<usize>>,
    critical_edges: Vec<usize>,
}

/// Decides `Φ(v)`: the target of the unique maximum of `E_v` when it is
/// ascending, otherwise `v`. Two passes over `E_v`.
fn flow_step(
    g: &Graph,
    pe: &(impl EdgePreorder + ?Sized),
    pv: &(impl VertexPreorder + ?Sized),
    v: usize,
) -> Option<Neighbor> {
    let out = g.neighbors(v);
    let (&first, rest) = out.split_first()?;
    // Any maximum survives this pass: once reached, nothing displaces it.
    let mut best = first;
    for &e in rest {
        if !pe.compare(v, e, best).is_le() {
            best = e;
        }
    }
    let unique = out
        .iter()
        .all(|&f| f.edge == best.edge || pe.compare(v, f, best) == Relation::Less);
    (unique && pv.precedes(v, best.target)).then_some(best)
}

/// Computes the Morse flow in `O(m)` comparisons, visiting vertices and
/// their edges in ascending label order.
pub fn morse_flow(
    g: &Graph,
    pe: &(impl EdgePreorder + ?Sized),
    pv: &(impl VertexPreorder + ?Sized),
) -> MorseFlow {
    let used: Vec<Option<usize>> = (0..g.n())
        .map(|v| flow_step(g, pe, pv, v).map(|nb| nb.edge))
        .collect();
    MorseFlow::assemble(g, used)
}

/// Same result as [`morse_flow`], with vertices processed in parallel.
pub fn morse_flow_parallel(
    g: &Graph,
    pe: &(impl EdgePreorder + ?Sized),
    pv: &(impl VertexPreorder + ?Sized),
) -> MorseFlow {
    let used: Vec<Option<usize>> = (0..g.n())
        .into_par_iter()
        .map(|v| flow_step(g, pe, pv, v).map(|nb| nb.edge))
        .collect();
    MorseFlow::assemble(g, used)
}

impl MorseFlow {
    fn assemble(g: &Graph, used: Vec<Option<usize>>) -> Self {
        let mut in_flow = vec![false; g.edge_count()];
        let phi = used
            .iter()
            .enumerate()
            .map(|(v, e)| match *e {
                Some(e) => {
                    debug_assert!(!in_flow[e], "both orientations of an edge in the flow");
                    in_flow[e] = true;
                    let (a, b) = g.edges()[e];
                    if a == v {
                        b
                    } else {
                        a
                    }
                }
                None => v,
            })
            .collect();
        let critical_edges = (0..g.edge_count()).filter(|&e| !in_flow[e]).collect();
        MorseFlow {
            phi,
            used,
            critical_edges,
        }
    }

    pub fn n(&self) -> usize {
        self.phi.len()
    }

    pub fn phi(&self) -> &[usize] {
        &self.phi
    }

    pub fn apply(&self, v: usize) -> usize {
        self.phi[v]
    }

    pub fn is_critical(&self, v: usize) -> bool {
        self.phi[v] == v
    }

    pub fn critical_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.is_critical(v)).collect()
    }

    /// Directed flow edges `(v, Φ(v))` for non-critical `v`, ascending by `v`.
    pub fn flow_edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .filter(|&v| !self.is_critical(v))
            .map(|v| (v, self.phi[v]))
            .collect()
    }

    /// Edge id carrying the flow out of `v`, if any.
    pub fn flow_edge_id(&self, v: usize) -> Option<usize> {
        self.used[v]
    }

    /// Ids of edges that carry no flow in either orientation.
    pub fn critical_edges(&self) -> &[usize] {
        &self.critical_edges
    }

    /// Components of `(V, E \ E_crit)`.
    pub fn partition(&self) -> Partition {
        components_of(self.n(), self.flow_edges())
    }

    /// Basins, rooted trees and depths, via memoized root lookup.
    pub fn forest(&self) -> MorseForest {
        let n = self.n();
        let mut depth: Vec<Option<usize>> = vec![None; n];
        let mut root = vec![usize::MAX; n];
        let mut stack = Vec::new();
        for start in 0..n {
            let mut v = start;
            while depth[v].is_none() && !self.is_critical(v) {
                stack.push(v);
                assert!(stack.len() <= n, "Morse flow contains a cycle");
                v = self.phi[v];
            }
            if depth[v].is_none() {
                depth[v] = Some(0);
                root[v] = v;
            }
            let (r, mut h) = (root[v], depth[v].unwrap());
            while let Some(u) = stack.pop() {
                h += 1;
                depth[u] = Some(h);
                root[u] = r;
            }
        }
        let mut basins: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut trees: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        let mut depths: BTreeMap<usize, usize> = BTreeMap::new();
        for v in 0..n {
            let r = root[v];
            basins.entry(r).or_default().push(v);
            let tree = trees.entry(r).or_default();
            if !self.is_critical(v) {
                tree.push((v, self.phi[v]));
            }
            let dv = depth[v].unwrap();
            let entry = depths.entry(r).or_insert(0);
            *entry = (*entry).max(dv);
        }
        MorseForest {
            root,
            depth: depth.into_iter().map(Option::unwrap).collect(),
            basins,
            trees,
            depths,
        }
    }

    /// Smallest `N` with `Φ^N = Φ^{N+1}`, found by composing the map
    /// directly.
    pub fn stabilization_step(&self) -> usize {
        let mut current: Vec<usize> = (0..self.n()).collect();
        let mut steps = 0;
        loop {
            let next: Vec<usize> = current.iter().map(|&v| self.phi[v]).collect();
            if next == current {
                return steps;
            }
            current = next;
            steps += 1;
        }
    }

    /// Follows the flow from `v` until it reaches a critical vertex.
    /// Returns the root and the visited path `v, Φ(v), …, root`.
    pub fn iterate(&self, v: usize) -> (usize, Vec<usize>) {
        let mut path = vec![v];
        let mut current = v;
        while !self.is_critical(current) {
            current = self.phi[current];
            path.push(current);
            assert!(path.len() <= self.n() + 1, "Morse flow contains a cycle");
        }
        (current, path)
    }
}

/// `x ∼_P Φ'(x)` for every `x`, with `P` the partition of `base`. When this
/// holds the partition of `other` refines that of `base`.
pub fn check_refinement_lemma(base: &MorseFlow, other: &MorseFlow) -> bool {
    assert_eq!(base.n(), other.n(), "flows on different vertex sets");
    let p = base.partition();
    (0..base.n()).all(|x| p.same_cluster(x, other.apply(x)))
}

/// Basins of attraction of the critical vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorseForest {
    #[serde(skip)]
    root: Vec<usize>,
    #[serde(skip)]
    depth: Vec<usize>,
    basins: BTreeMap<usize, Vec<usize>>,
    #[serde(skip)]
    trees: BTreeMap<usize, Vec<(usize, usize)>>,
    #[serde(skip)]
    depths: BTreeMap<usize, usize>,
}

impl MorseForest {
    /// Critical vertex whose basin contains `v`.
    pub fn root_of(&self, v: usize) -> usize {
        self.root[v]
    }

    /// Hops from `v` to its root.
    pub fn depth_of(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// `T_v` for each critical `v`, members ascending.
    pub fn basins(&self) -> &BTreeMap<usize, Vec<usize>> {
        &self.basins
    }

    /// Directed tree edges `(child, parent)` of each basin.
    pub fn trees(&self) -> &BTreeMap<usize, Vec<(usize, usize)>> {
        &self.trees
    }

    /// Depth of each basin's tree.
    pub fn depths(&self) -> &BTreeMap<usize, usize> {
        &self.depths
    }

    pub fn max_depth(&self) -> usize {
        self.depths.values().copied().max().unwrap_or(0)
    }

    pub fn partition(&self) -> Partition {
        let clusters: Vec<Vec<usize>> = self.basins.values().cloned().collect();
        Partition::from_clusters(self.root.len(), &clusters).expect("basins partition V")
    }

    /// Basins keyed and listed with 1-based labels, for JSON output.
    pub fn basins_one_based(&self) -> BTreeMap<usize, Vec<usize>> {
        self.basins
            .iter()
            .map(|(r, members)| (r + 1, members.iter().map(|v| v + 1).collect()))
            .collect()
    }
}

/// Output of the full Morse clustering pipeline.
#[derive(Clone, Debug)]
pub struct MorseClustering {
    pub partition: Partition,
    pub flow: MorseFlow,
    pub forest: MorseForest,
}

/// Morse flow followed by the connected components of the flow edges.
pub fn morse_partition(
    g: &Graph,
    pe: &(impl EdgePreorder + ?Sized),
    pv: &(impl VertexPreorder + ?Sized),
) -> MorseClustering {
    let flow = morse_flow(g, pe, pv);
    let partition = flow.partition();
    let forest = flow.forest();
    MorseClustering {
        partition,
        flow,
        forest,
    }
}
