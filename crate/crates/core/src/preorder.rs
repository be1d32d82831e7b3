//! Vertex and edge preorders driving the Morse flow.
//!
//! A preorder is exposed as a comparator returning a [`Relation`]. The flow
//! only ever compares edges that share a source vertex, so edge comparators
//! receive the source together with two outward edges.
//!
//! Four families are provided: `SiR` (scale-invariant and rich), `k`
//! (exactly k clusters on complete graphs), `delta` (distance threshold) and
//! the unsupervised common-neighbour weighting.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{Graph, Neighbor, PseudoDistance};

/// Outcome of comparing `a` against `b` in a preorder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `a ≺ b`
    Less,
    Equivalent,
    /// `b ≺ a`
    Greater,
    Incomparable,
}

impl Relation {
    pub fn reverse(self) -> Relation {
        match self {
            Relation::Less => Relation::Greater,
            Relation::Greater => Relation::Less,
            other => other,
        }
    }

    /// `a ⪯ b`
    pub fn is_le(self) -> bool {
        matches!(self, Relation::Less | Relation::Equivalent)
    }

    pub fn is_ge(self) -> bool {
        matches!(self, Relation::Greater | Relation::Equivalent)
    }
}

impl From<Ordering> for Relation {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Relation::Less,
            Ordering::Equal => Relation::Equivalent,
            Ordering::Greater => Relation::Greater,
        }
    }
}

pub trait VertexPreorder: Sync {
    fn compare(&self, u: usize, v: usize) -> Relation;

    /// Strict relation `u ≺ v`.
    fn precedes(&self, u: usize, v: usize) -> bool {
        self.compare(u, v) == Relation::Less
    }
}

pub trait EdgePreorder: Sync {
    /// Compares the outward edges `(source, a.target)` and `(source, b.target)`.
    fn compare(&self, source: usize, a: Neighbor, b: Neighbor) -> Relation;
}

impl<F> VertexPreorder for F
where
    F: Fn(usize, usize) -> Relation + Sync,
{
    fn compare(&self, u: usize, v: usize) -> Relation {
        self(u, v)
    }
}

impl<F> EdgePreorder for F
where
    F: Fn(usize, Neighbor, Neighbor) -> Relation + Sync,
{
    fn compare(&self, source: usize, a: Neighbor, b: Neighbor) -> Relation {
        self(source, a, b)
    }
}

impl VertexPreorder for Box<dyn VertexPreorder + Send + '_> {
    fn compare(&self, u: usize, v: usize) -> Relation {
        (**self).compare(u, v)
    }
}

impl EdgePreorder for Box<dyn EdgePreorder + Send + '_> {
    fn compare(&self, source: usize, a: Neighbor, b: Neighbor) -> Relation {
        (**self).compare(source, a, b)
    }
}

/// Relative tolerance for weight ties. Zero (the default) compares the
/// stored binary values exactly.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TieTolerance(pub f64);

impl TieTolerance {
    pub fn cmp(self, a: f64, b: f64) -> Ordering {
        if a == b || (self.0 > 0.0 && (a - b).abs() <= self.0 * a.abs().max(b.abs())) {
            Ordering::Equal
        } else if a < b {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

/// Total order by label rank. By default vertex `v` has rank `v`, i.e. the
/// input order; a custom ranking relabels the vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabelOrder {
    rank: Option<Vec<usize>>,
}

impl LabelOrder {
    pub fn identity() -> Self {
        LabelOrder { rank: None }
    }

    /// `rank[v]` is the position of `v` in the labelling; must be a
    /// permutation of `0..n`.
    pub fn from_ranks(rank: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; rank.len()];
        for &r in &rank {
            if r >= rank.len() || std::mem::replace(&mut seen[r], true) {
                return Err(Error::Parameter("ranking is not a permutation".into()));
            }
        }
        Ok(LabelOrder { rank: Some(rank) })
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank.as_ref().map_or(v, |r| r[v])
    }
}

impl VertexPreorder for LabelOrder {
    fn compare(&self, u: usize, v: usize) -> Relation {
        self.rank(u).cmp(&self.rank(v)).into()
    }
}

/// `v_i ≺ v_j` iff `j >= i + k`; vertices whose labels differ by less than
/// `k` are incomparable. The top `k` vertices have nothing above them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KStepOrder {
    k: usize,
    labels: LabelOrder,
}

impl KStepOrder {
    pub fn new(k: usize, labels: LabelOrder) -> Self {
        KStepOrder { k, labels }
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

impl VertexPreorder for KStepOrder {
    fn compare(&self, u: usize, v: usize) -> Relation {
        let (a, b) = (self.labels.rank(u), self.labels.rank(v));
        if a == b {
            Relation::Equivalent
        } else if b >= a + self.k {
            Relation::Less
        } else if a >= b + self.k {
            Relation::Greater
        } else {
            Relation::Incomparable
        }
    }
}

/// SiR-Morse edges: the shorter edge is the greater one, equal distances
/// are equivalent.
#[derive(Clone, Copy, Debug)]
pub struct NearestEdge<'a> {
    d: &'a PseudoDistance,
    tol: TieTolerance,
}

impl EdgePreorder for NearestEdge<'_> {
    fn compare(&self, _source: usize, a: Neighbor, b: Neighbor) -> Relation {
        self.tol
            .cmp(self.d.weight(b.edge), self.d.weight(a.edge))
            .into()
    }
}

/// Edge order shared by k-Morse and δ-Morse: candidate edges (admissible,
/// and below the threshold if any) beat every other edge; among candidates
/// the shorter is greater, with equal distances decided by the target's
/// label. All non-candidates are equivalent.
#[derive(Clone, Debug)]
pub struct CandidateEdge<'a, V> {
    d: &'a PseudoDistance,
    vertices: V,
    labels: LabelOrder,
    threshold: Option<f64>,
    tol: TieTolerance,
}

impl<V: VertexPreorder> CandidateEdge<'_, V> {
    fn is_candidate(&self, source: usize, e: Neighbor) -> bool {
        self.vertices.precedes(source, e.target)
            && self
                .threshold
                .is_none_or(|delta| self.tol.cmp(self.d.weight(e.edge), delta) == Ordering::Less)
    }
}

impl<V: VertexPreorder> EdgePreorder for CandidateEdge<'_, V> {
    fn compare(&self, source: usize, a: Neighbor, b: Neighbor) -> Relation {
        if a.edge == b.edge {
            return Relation::Equivalent;
        }
        match (self.is_candidate(source, a), self.is_candidate(source, b)) {
            (false, false) => Relation::Equivalent,
            (false, true) => Relation::Less,
            (true, false) => Relation::Greater,
            (true, true) => self
                .tol
                .cmp(self.d.weight(b.edge), self.d.weight(a.edge))
                .then_with(|| self.labels.rank(a.target).cmp(&self.labels.rank(b.target)))
                .into(),
        }
    }
}

/// Larger similarity is the greater edge; equal similarities are
/// equivalent.
#[derive(Clone, Copy, Debug)]
pub struct StrongestEdge<'a> {
    similarity: &'a [f64],
}

impl<'a> StrongestEdge<'a> {
    pub fn new(similarity: &'a [f64]) -> Self {
        StrongestEdge { similarity }
    }
}

impl EdgePreorder for StrongestEdge<'_> {
    fn compare(&self, _source: usize, a: Neighbor, b: Neighbor) -> Relation {
        self.similarity[a.edge]
            .total_cmp(&self.similarity[b.edge])
            .into()
    }
}

/// Vertices compared by `(w1, w2)` lexicographically, then by label.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralityOrder {
    max_weight: Vec<f64>,
    sum_weight: Vec<f64>,
}

impl CentralityOrder {
    pub fn max_weight(&self) -> &[f64] {
        &self.max_weight
    }

    pub fn sum_weight(&self) -> &[f64] {
        &self.sum_weight
    }
}

impl VertexPreorder for CentralityOrder {
    fn compare(&self, u: usize, v: usize) -> Relation {
        self.max_weight[u]
            .total_cmp(&self.max_weight[v])
            .then_with(|| self.sum_weight[u].total_cmp(&self.sum_weight[v]))
            .then_with(|| u.cmp(&v))
            .into()
    }
}

/// SiR-Morse: vertices by label, edges by ascending distance.
pub fn sir_preorders(d: &PseudoDistance) -> (LabelOrder, NearestEdge<'_>) {
    sir_preorders_with(d, LabelOrder::identity(), TieTolerance::default())
}

pub fn sir_preorders_with(
    d: &PseudoDistance,
    labels: LabelOrder,
    tol: TieTolerance,
) -> (LabelOrder, NearestEdge<'_>) {
    (labels, NearestEdge { d, tol })
}

/// k-Morse preorders; `k` must lie in `1..=n`.
pub fn k_preorders(
    d: &PseudoDistance,
    k: usize,
) -> Result<(KStepOrder, CandidateEdge<'_, KStepOrder>)> {
    k_preorders_with(d, k, LabelOrder::identity(), TieTolerance::default())
}

pub fn k_preorders_with(
    d: &PseudoDistance,
    k: usize,
    labels: LabelOrder,
    tol: TieTolerance,
) -> Result<(KStepOrder, CandidateEdge<'_, KStepOrder>)> {
    if k == 0 || k > d.n() {
        return Err(Error::Parameter(format!(
            "k must lie in 1..={}, got {k}",
            d.n()
        )));
    }
    let vertices = KStepOrder::new(k, labels.clone());
    let edges = CandidateEdge {
        d,
        vertices: vertices.clone(),
        labels,
        threshold: None,
        tol,
    };
    Ok((vertices, edges))
}

/// δ-Morse preorders; `delta` must be finite and positive.
pub fn delta_preorders(
    d: &PseudoDistance,
    delta: f64,
) -> Result<(LabelOrder, CandidateEdge<'_, LabelOrder>)> {
    delta_preorders_with(d, delta, LabelOrder::identity(), TieTolerance::default())
}

pub fn delta_preorders_with(
    d: &PseudoDistance,
    delta: f64,
    labels: LabelOrder,
    tol: TieTolerance,
) -> Result<(LabelOrder, CandidateEdge<'_, LabelOrder>)> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::Parameter(format!("delta must be positive, got {delta}")));
    }
    let edges = CandidateEdge {
        d,
        vertices: labels.clone(),
        labels: labels.clone(),
        threshold: Some(delta),
        tol,
    };
    Ok((labels, edges))
}

/// Common-neighbour counts `|N(i) ∩ N(j)|` per edge, indexed by edge id.
pub fn common_neighbour_weights(g: &Graph) -> Vec<f64> {
    g.edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (g.neighbors(u), g.neighbors(v));
            let (mut i, mut j, mut count) = (0, 0, 0usize);
            while i < a.len() && j < b.len() {
                match a[i].target.cmp(&b[j].target) {
                    Ordering::Less => i += 1,
                    Ordering::Greater => j += 1,
                    Ordering::Equal => {
                        count += 1;
                        i += 1;
                        j += 1;
                    }
                }
            }
            count as f64
        })
        .collect()
}

/// Unsupervised preorders built from the graph alone: common-neighbour
/// similarities on edges, and vertices ranked by the maximum then the sum
/// of their incident similarities. Returns the similarity vector that the
/// edge comparator must borrow.
pub fn unsupervised_preorders(g: &Graph) -> (CentralityOrder, Vec<f64>) {
    let similarity = common_neighbour_weights(g);
    let mut max_weight = vec![0.0f64; g.n()];
    let mut sum_weight = vec![0.0f64; g.n()];
    for v in 0..g.n() {
        for nb in g.neighbors(v) {
            let w = similarity[nb.edge];
            max_weight[v] = max_weight[v].max(w);
            sum_weight[v] += w;
        }
    }
    (
        CentralityOrder {
            max_weight,
            sum_weight,
        },
        similarity,
    )
}

/// Checks reflexivity, antisymmetry of the reported relation and
/// transitivity of `⪯` over all vertex pairs and triples.
pub fn audit_vertex_preorder(pv: &impl VertexPreorder, n: usize) -> std::result::Result<(), String> {
    let rel: Vec<Vec<Relation>> = (0..n)
        .map(|u| (0..n).map(|v| pv.compare(u, v)).collect())
        .collect();
    audit_relation(&rel, |i| format!("v{}", i + 1))
}

/// Same audit for the edge preorder restricted to each `E_v`.
pub fn audit_edge_preorder(
    g: &Graph,
    pe: &impl EdgePreorder,
) -> std::result::Result<(), String> {
    for v in 0..g.n() {
        let out = g.neighbors(v);
        let rel: Vec<Vec<Relation>> = out
            .iter()
            .map(|&a| out.iter().map(|&b| pe.compare(v, a, b)).collect())
            .collect();
        audit_relation(&rel, |i| format!("({}, {})", v + 1, out[i].target + 1))?;
    }
    Ok(())
}

fn audit_relation(
    rel: &[Vec<Relation>],
    name: impl Fn(usize) -> String,
) -> std::result::Result<(), String> {
    let n = rel.len();
    for a in 0..n {
        if rel[a][a] != Relation::Equivalent {
            return Err(format!("not reflexive at {}", name(a)));
        }
        for b in 0..n {
            if rel[a][b] != rel[b][a].reverse() {
                return Err(format!("asymmetric report for {} and {}", name(a), name(b)));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if !rel[a][b].is_le() {
                continue;
            }
            for c in 0..n {
                if rel[b][c].is_le() && !rel[a][c].is_le() {
                    return Err(format!(
                        "not transitive: {} ⪯ {} ⪯ {}",
                        name(a),
                        name(b),
                        name(c)
                    ));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn complete(weights: Vec<f64>, n: usize) -> PseudoDistance {
        PseudoDistance::new(Arc::new(Graph::complete(n).unwrap()), weights).unwrap()
    }

    fn nb(g: &Graph, u: usize, v: usize) -> Neighbor {
        Neighbor {
            target: v,
            edge: g.edge_id(u, v).unwrap(),
        }
    }

    #[test]
    fn sir_vertex_order_is_by_label() {
        let d = complete(vec![1.0; 10], 5);
        let (pv, _) = sir_preorders(&d);
        assert_eq!(pv.compare(1, 4), Relation::Less);
        assert_eq!(pv.compare(4, 1), Relation::Greater);
        assert_eq!(pv.compare(2, 2), Relation::Equivalent);
    }

    #[test]
    fn sir_edges_prefer_shorter() {
        // n = 3: edges (0,1)=3, (0,2)=1, (1,2)=1
        let d = complete(vec![3.0, 1.0, 1.0], 3);
        let g = d.graph();
        let (_, pe) = sir_preorders(&d);
        assert_eq!(pe.compare(0, nb(g, 0, 1), nb(g, 0, 2)), Relation::Less);
        // equal distances at vertex 2
        assert_eq!(pe.compare(2, nb(g, 2, 0), nb(g, 2, 1)), Relation::Equivalent);
    }

    #[test]
    fn tie_tolerance() {
        assert_eq!(TieTolerance(0.0).cmp(1.0, 1.0 + 1e-15), Ordering::Less);
        assert_eq!(TieTolerance(1e-12).cmp(1.0, 1.0 + 1e-15), Ordering::Equal);
        assert_eq!(TieTolerance(1e-12).cmp(1.0, 1.1), Ordering::Less);
    }

    #[test]
    fn k_step_relation() {
        let d = complete(vec![1.0; 10], 5);
        let (pv, _) = k_preorders(&d, 2).unwrap();
        // labels 1 and 4 (0-based 0 and 3)
        assert_eq!(pv.compare(0, 3), Relation::Less);
        assert_eq!(pv.compare(0, 1), Relation::Incomparable);
        assert_eq!(pv.compare(0, 2), Relation::Less);
        assert!(k_preorders(&d, 0).is_err());
        assert!(k_preorders(&d, 6).is_err());
        assert!(k_preorders(&d, 5).is_ok());
    }

    #[test]
    fn k_step_has_greater_vertex_iff_not_in_top_k() {
        let n = 8;
        let d = complete(vec![1.0; n * (n - 1) / 2], n);
        for k in 1..=n {
            let (pv, _) = k_preorders(&d, k).unwrap();
            for i in 0..n {
                let has_greater = (0..n).any(|j| pv.precedes(i, j));
                assert_eq!(has_greater, i + 1 <= n - k, "k={k} i={i}");
            }
        }
    }

    #[test]
    fn delta_threshold_edges_never_dominate() {
        // x1..x3 with d(1,2)=0.4, d(1,3)=0.9, d(2,3)=2, delta = 1
        let d = complete(vec![0.4, 0.9, 2.0], 3);
        let g = d.graph();
        let (_, pe) = delta_preorders(&d, 1.0).unwrap();
        assert_eq!(pe.compare(0, nb(g, 0, 2), nb(g, 0, 1)), Relation::Less);
        // at vertex 2 (label 2) the edge to 3 is admissible but over threshold
        assert_eq!(pe.compare(1, nb(g, 1, 2), nb(g, 1, 0)), Relation::Equivalent);
        assert!(delta_preorders(&d, 0.0).is_err());
        assert!(delta_preorders(&d, f64::NAN).is_err());
    }

    #[test]
    fn candidate_ties_are_broken_by_label() {
        let d = complete(vec![1.0, 1.0, 1.0, 1.0, 1.0, 1.0], 4);
        let g = d.graph();
        let (_, pe) = delta_preorders(&d, 2.0).unwrap();
        assert_eq!(pe.compare(0, nb(g, 0, 1), nb(g, 0, 3)), Relation::Less);
        let (_, pe) = k_preorders(&d, 1).unwrap();
        assert_eq!(pe.compare(0, nb(g, 0, 2), nb(g, 0, 3)), Relation::Less);
    }

    #[test]
    fn common_neighbours() {
        let tri = Graph::complete(3).unwrap();
        assert_eq!(common_neighbour_weights(&tri), vec![1.0; 3]);
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(common_neighbour_weights(&k4), vec![2.0; 6]);
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(common_neighbour_weights(&star), vec![0.0; 3]);
    }

    #[test]
    fn centrality_order_is_lexicographic() {
        // triangle 0-1-2 plus pendant 3 attached to 2
        let g = Graph::new(4, [(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        let (pv, sim) = unsupervised_preorders(&g);
        assert_eq!(sim, vec![1.0, 1.0, 1.0, 0.0]);
        assert_eq!(pv.max_weight(), &[1.0, 1.0, 1.0, 0.0]);
        assert_eq!(pv.sum_weight(), &[2.0, 2.0, 2.0, 0.0]);
        assert_eq!(pv.compare(3, 0), Relation::Less);
        assert_eq!(pv.compare(0, 1), Relation::Less);
        assert!(audit_vertex_preorder(&pv, 4).is_ok());
    }

    #[test]
    fn audit_catches_broken_relations() {
        let cyclic = |u: usize, v: usize| {
            if u == v {
                Relation::Equivalent
            } else if (u + 1) % 3 == v {
                Relation::Less
            } else {
                Relation::Greater
            }
        };
        assert!(audit_vertex_preorder(&cyclic, 3).is_err());
        let irreflexive = |_: usize, _: usize| Relation::Incomparable;
        assert!(audit_vertex_preorder(&irreflexive, 2).is_err());
    }
}
