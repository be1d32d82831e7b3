//! Executable checks of the clustering axioms.
//!
//! Scale-Invariance, Consistency and Monotonic Consistency are checked by
//! sampling; Richness and its graph variants by enumerating partitions and
//! feeding each one's witness distance back to the clustering function.
//! Failures carry a replayable counterexample.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{components_of, Graph, PseudoDistance};
use crate::instance::MorseInstance;
use crate::monotonic::{apply_monotonic, ExpansiveMap};
use crate::morse::MorseFlow;
use crate::partition::{all_partitions, Partition};
use crate::preorder::{LabelOrder, TieTolerance, VertexPreorder};
use crate::sampling::{random_complete, random_connected_graph, random_expansive_map, random_p_transformation};

/// A deterministic map from distances on a fixed graph to partitions.
pub trait ClusteringFunction: Sync {
    fn name(&self) -> String;

    fn cluster(&self, d: &PseudoDistance) -> Result<Partition>;

    /// The Morse flow behind the partition, for Morse clusterings.
    fn flow(&self, _d: &PseudoDistance) -> Option<Result<MorseFlow>> {
        None
    }
}

impl ClusteringFunction for MorseInstance {
    fn name(&self) -> String {
        self.to_string()
    }

    fn cluster(&self, d: &PseudoDistance) -> Result<Partition> {
        Ok(self.run(d)?.partition)
    }

    fn flow(&self, d: &PseudoDistance) -> Option<Result<MorseFlow>> {
        Some(self.run(d).map(|c| c.flow))
    }
}

/// A Morse instance under a fixed vertex labelling.
pub struct Labelled {
    pub instance: MorseInstance,
    pub labels: LabelOrder,
}

impl ClusteringFunction for Labelled {
    fn name(&self) -> String {
        format!("{} (relabelled)", self.instance)
    }

    fn cluster(&self, d: &PseudoDistance) -> Result<Partition> {
        Ok(self.instance.run_with(d, &self.labels, TieTolerance::default())?.partition)
    }

    fn flow(&self, d: &PseudoDistance) -> Option<Result<MorseFlow>> {
        Some(self.instance.run_with(d, &self.labels, TieTolerance::default()).map(|c| c.flow))
    }
}

/// Scale-α single linkage: connected components of the edges with
/// `d < α · max d`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaleAlphaSingleLinkage {
    alpha: f64,
}

impl ScaleAlphaSingleLinkage {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Parameter(format!("alpha must lie in (0, 1), got {alpha}")));
        }
        Ok(ScaleAlphaSingleLinkage { alpha })
    }
}

impl ClusteringFunction for ScaleAlphaSingleLinkage {
    fn name(&self) -> String {
        format!("single-linkage:{}", self.alpha)
    }

    fn cluster(&self, d: &PseudoDistance) -> Result<Partition> {
        single_linkage_scale_alpha(d, self.alpha)
    }
}

pub fn single_linkage_scale_alpha(d: &PseudoDistance, alpha: f64) -> Result<Partition> {
    ScaleAlphaSingleLinkage::new(alpha)?;
    let threshold = alpha * d.max_weight().unwrap_or(0.0);
    Ok(components_of(
        d.n(),
        d.iter().filter(|&(_, _, w)| w < threshold).map(|(u, v, _)| (u, v)),
    ))
}

/// Ignores the distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constant {
    Trivial,
    Singletons,
}

impl ClusteringFunction for Constant {
    fn name(&self) -> String {
        match self {
            Constant::Trivial => "constant-trivial".into(),
            Constant::Singletons => "constant-singletons".into(),
        }
    }

    fn cluster(&self, d: &PseudoDistance) -> Result<Partition> {
        Ok(match self {
            Constant::Trivial => Partition::trivial(d.n()),
            Constant::Singletons => Partition::singletons(d.n()),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    ScaleInvariance,
    Richness,
    ConnectedRichness,
    MorseRichness,
    Consistency,
    MonotonicConsistency,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::ScaleInvariance,
        Axiom::Richness,
        Axiom::ConnectedRichness,
        Axiom::MorseRichness,
        Axiom::Consistency,
        Axiom::MonotonicConsistency,
    ];

    fn as_str(self) -> &'static str {
        match self {
            Axiom::ScaleInvariance => "scale-invariance",
            Axiom::Richness => "richness",
            Axiom::ConnectedRichness => "connected-richness",
            Axiom::MorseRichness => "morse-richness",
            Axiom::Consistency => "consistency",
            Axiom::MonotonicConsistency => "monotonic-consistency",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Axiom::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown axiom `{s}`")))
    }
}

/// A failing input, with everything needed to replay it. Vertices in
/// `edges` and partitions are 1-based.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub edges: Vec<(usize, usize)>,
    pub d: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_prime: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map: Option<ExpansiveMap>,
    /// `F(d)`, or the partition the witness should produce for richness.
    pub before: Partition,
    /// `F(d')`, or what the witness actually produced.
    pub after: Partition,
    pub note: String,
}

impl Counterexample {
    fn new(d: &PseudoDistance, before: Partition, after: Partition, note: impl Into<String>) -> Self {
        Counterexample {
            edges: d.graph().edges().iter().map(|&(u, v)| (u + 1, v + 1)).collect(),
            d: d.weights().to_vec(),
            d_prime: None,
            alpha: None,
            map: None,
            before,
            after,
            note: note.into(),
        }
    }

    fn with_prime(mut self, d2: &PseudoDistance) -> Self {
        self.d_prime = Some(d2.weights().to_vec());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub function: String,
    pub passed: bool,
    /// Inputs examined before stopping.
    pub trials: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl AxiomReport {
    fn new(axiom: Axiom, f: &(impl ClusteringFunction + ?Sized), seed: Option<u64>) -> Self {
        AxiomReport {
            axiom,
            function: f.name(),
            passed: true,
            trials: 0,
            seed,
            counterexample: None,
        }
    }

    fn fail(mut self, c: Counterexample) -> Self {
        self.passed = false;
        self.counterexample = Some(c);
        self
    }
}

/// `F(α·d) = F(d)` for every `α` in `alphas`.
pub fn check_scale_invariance(
    f: &(impl ClusteringFunction + ?Sized),
    d: &PseudoDistance,
    alphas: &[f64],
) -> Result<AxiomReport> {
    let mut report = AxiomReport::new(Axiom::ScaleInvariance, f, None);
    let base = f.cluster(d)?;
    for &alpha in alphas {
        let scaled = d.scale(alpha)?;
        report.trials += 1;
        let after = f.cluster(&scaled)?;
        if after != base {
            let mut c = Counterexample::new(d, base, after, format!("F(d) != F({alpha} d)"));
            c.alpha = Some(alpha);
            return Ok(report.fail(c));
        }
    }
    Ok(report)
}

/// Eq. (2): intra-cluster weights do not grow, inter-cluster weights do
/// not shrink.
pub fn is_p_transformation(d: &PseudoDistance, d2: &PseudoDistance, p: &Partition) -> bool {
    d.same_support(d2)
        && d.iter()
            .zip(d2.weights())
            .all(|((u, v, a), &b)| if p.same_cluster(u, v) { b <= a } else { b >= a })
}

/// Samples `trials` random `F(d)`-transformations of `d` and compares
/// partitions. The sampler is seeded with `seed`.
pub fn check_consistency(
    f: &(impl ClusteringFunction + ?Sized),
    d: &PseudoDistance,
    trials: usize,
    seed: u64,
) -> Result<AxiomReport> {
    let mut report = AxiomReport::new(Axiom::Consistency, f, Some(seed));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = f.cluster(d)?;
    for _ in 0..trials {
        let d2 = random_p_transformation(d, &base, &mut rng);
        report.trials += 1;
        let after = f.cluster(&d2)?;
        if after != base {
            let c = Counterexample::new(d, base, after, "F(d') != F(d) for an F(d)-transformation d'");
            return Ok(report.fail(c.with_prime(&d2)));
        }
    }
    Ok(report)
}

/// Samples `trials` random expansive maps, applies each as an
/// `F(d)`-monotonic transformation and compares partitions, and for Morse
/// clusterings also the flows.
pub fn check_monotonic_consistency(
    f: &(impl ClusteringFunction + ?Sized),
    d: &PseudoDistance,
    trials: usize,
    seed: u64,
) -> Result<AxiomReport> {
    let mut report = AxiomReport::new(Axiom::MonotonicConsistency, f, Some(seed));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = f.cluster(d)?;
    let base_flow = f.flow(d).transpose()?;
    let x_max = 1.5 * d.max_weight().unwrap_or(1.0);
    for _ in 0..trials {
        let eta = random_expansive_map(x_max, &mut rng);
        let d2 = apply_monotonic(d, &base, &eta)?;
        assert!(
            is_p_transformation(d, &d2, &base),
            "a monotonic transformation must satisfy Eq. (2)"
        );
        report.trials += 1;
        let after = f.cluster(&d2)?;
        let flow_changed = match (&base_flow, f.flow(&d2).transpose()?) {
            (Some(a), Some(b)) => a.phi() != b.phi(),
            _ => false,
        };
        if after != base || flow_changed {
            let note = if after != base {
                "F(d') != F(d) for an F(d)-monotonic transformation d'"
            } else {
                "same partition but the Morse flow changed"
            };
            let mut c = Counterexample::new(d, base, after, note).with_prime(&d2);
            c.map = Some(eta);
            return Ok(report.fail(c));
        }
    }
    Ok(report)
}

/// Weight 1 from each vertex to the maximal vertex of its cluster, 2
/// everywhere else. SiR-Morse recovers `p` from it.
pub fn sir_richness_witness(p: &Partition) -> Result<PseudoDistance> {
    let n = p.n();
    if n < 3 {
        return Err(Error::Parameter(format!("richness witnesses need n >= 3, got {n}")));
    }
    let top: Vec<usize> = p.clusters().iter().map(|c| *c.last().unwrap()).collect();
    PseudoDistance::from_fn(Arc::new(Graph::complete(n)?), |u, v| {
        let m = top[p.cluster_of(u)];
        if p.same_cluster(u, v) && (u == m || v == m) {
            1.0
        } else {
            2.0
        }
    })
}

/// `δ/2` inside clusters, `δ` across. δ-Morse recovers `p` from it.
pub fn delta_richness_witness(p: &Partition, delta: f64) -> Result<PseudoDistance> {
    let n = p.n();
    if n < 3 {
        return Err(Error::Parameter(format!("richness witnesses need n >= 3, got {n}")));
    }
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::Parameter(format!("delta must be positive, got {delta}")));
    }
    PseudoDistance::from_fn(Arc::new(Graph::complete(n)?), |u, v| {
        if p.same_cluster(u, v) {
            delta / 2.0
        } else {
            delta
        }
    })
}

/// For each cluster, a spanning tree whose edges all point up the preorder
/// towards the root, as a parent array. `None` if some cluster has none.
///
/// Every ⪯-maximal vertex of a cluster is tried as root, growing the tree
/// breadth-first along strictly descending edges inside the cluster.
pub fn compatible_forest(g: &Graph, p: &Partition, pv: &impl VertexPreorder) -> Result<Option<Vec<Option<usize>>>> {
    g.check_size(p)?;
    let mut parent = vec![None; g.n()];
    'clusters: for cluster in p.clusters() {
        let roots = cluster
            .iter()
            .copied()
            .filter(|&r| !cluster.iter().any(|&w| pv.precedes(r, w)));
        for root in roots {
            let mut seen = vec![false; g.n()];
            seen[root] = true;
            let mut local = vec![(root, None)];
            let mut queue = VecDeque::from([root]);
            while let Some(w) = queue.pop_front() {
                for nb in g.neighbors(w) {
                    let x = nb.target;
                    if !seen[x] && p.same_cluster(x, root) && pv.precedes(x, w) {
                        seen[x] = true;
                        local.push((x, Some(w)));
                        queue.push_back(x);
                    }
                }
            }
            if local.len() == cluster.len() {
                for (v, up) in local {
                    parent[v] = up;
                }
                continue 'clusters;
            }
        }
        return Ok(None);
    }
    Ok(Some(parent))
}

/// Whether every cluster has a spanning tree of admissible edges directed
/// towards its root.
pub fn is_compatible(g: &Graph, p: &Partition, pv: &impl VertexPreorder) -> Result<bool> {
    Ok(compatible_forest(g, p, pv)?.is_some())
}

/// The path criterion for compatibility under a labelling: any two
/// co-clustered vertices are joined inside their cluster by a path with no
/// vertex strictly below both ends. Quadratic in the cluster size; meant as
/// an independent oracle for [`is_compatible`].
pub fn path_criterion(g: &Graph, p: &Partition, labels: &LabelOrder) -> Result<bool> {
    g.check_size(p)?;
    for cluster in p.clusters() {
        for (a, &u) in cluster.iter().enumerate() {
            for &v in &cluster[a + 1..] {
                let floor = labels.rank(u).min(labels.rank(v));
                let reach = g.bfs_depths(u, |x| p.same_cluster(x, u) && labels.rank(x) >= floor);
                if reach[v].is_none() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Output of [`graph_richness_witness`].
#[derive(Clone, Debug, PartialEq)]
pub struct GraphWitness {
    pub d: PseudoDistance,
    /// Labelling under which the Morse clustering recovers the partition.
    pub labels: LabelOrder,
    /// Parent of each vertex in the chosen spanning trees; `None` at roots.
    pub parent: Vec<Option<usize>>,
    /// Vertices moved to the top of the labelling, see below.
    pub lifted: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WitnessKind {
    /// Tree edges weighted by the depth of their lower end, other edges by
    /// `|V|`.
    Sir,
    /// Tree edges `δ/2`, other edges `δ`.
    Delta(f64),
}

/// Distance on `g` from which the SiR- or δ-Morse clustering recovers a
/// partition compatible with `labels`, reproducing the chosen spanning
/// trees as its Morse trees.
///
/// A singleton cluster `{v}` where `v` has one neighbour, ranked above it,
/// cannot be produced under `labels`: the lone edge is always the maximal
/// edge at `v` and it is ascending. Morse-Richness lets the vertex preorder
/// be chosen with the distance, so such vertices are moved to the top of
/// the labelling (keeping their relative order) and reported in `lifted`.
pub fn graph_richness_witness(
    g: &Graph,
    p: &Partition,
    labels: &LabelOrder,
    kind: WitnessKind,
) -> Result<GraphWitness> {
    if let WitnessKind::Delta(delta) = kind {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::Parameter(format!("delta must be positive, got {delta}")));
        }
    }
    let parent = compatible_forest(g, p, labels)?.ok_or(Error::Incompatible)?;
    let n = g.n();
    let lifted: Vec<usize> = (0..n)
        .filter(|&v| {
            p.clusters()[p.cluster_of(v)].len() == 1
                && g.degree(v) == 1
                && labels.rank(v) < labels.rank(g.neighbors(v)[0].target)
        })
        .collect();
    let labels = if lifted.is_empty() {
        labels.clone()
    } else {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (lifted.binary_search(&v).is_ok(), labels.rank(v)));
        let mut rank = vec![0; n];
        for (r, v) in order.into_iter().enumerate() {
            rank[v] = r;
        }
        LabelOrder::from_ranks(rank)?
    };
    let mut depth = vec![0usize; n];
    for v in 0..n {
        let mut x = v;
        while let Some(up) = parent[x] {
            depth[v] += 1;
            x = up;
        }
    }
    let is_tree = |u: usize, v: usize| parent[u] == Some(v) || parent[v] == Some(u);
    let d = PseudoDistance::from_fn(Arc::new(g.clone()), |u, v| match kind {
        WitnessKind::Sir if is_tree(u, v) => depth[u].max(depth[v]) as f64,
        WitnessKind::Sir => n as f64,
        WitnessKind::Delta(delta) if is_tree(u, v) => delta / 2.0,
        WitnessKind::Delta(delta) => delta,
    })?;
    Ok(GraphWitness { d, labels, parent, lifted })
}

/// Largest size accepted by [`enumerate_richness`]; Bell(9) = 21147.
pub const MAX_ENUMERATION: usize = 9;

/// Feeds every partition of `n` points through `witness` and checks that
/// `f` recovers it.
pub fn enumerate_richness(
    f: &(impl ClusteringFunction + ?Sized),
    n: usize,
    witness: impl Fn(&Partition) -> Result<PseudoDistance>,
) -> Result<AxiomReport> {
    if n > MAX_ENUMERATION {
        return Err(Error::Parameter(format!(
            "enumeration is limited to n <= {MAX_ENUMERATION}, got {n}"
        )));
    }
    let mut report = AxiomReport::new(Axiom::Richness, f, None);
    for p in all_partitions(n) {
        let d = witness(&p)?;
        report.trials += 1;
        let got = f.cluster(&d)?;
        if got != p {
            return Ok(report.fail(Counterexample::new(&d, p, got, "witness not recovered")));
        }
    }
    Ok(report)
}

/// Morse-Richness on `g`: every partition compatible with `labels` is
/// recovered from its [`graph_richness_witness`].
pub fn enumerate_morse_richness(
    instance: MorseInstance,
    g: &Graph,
    labels: &LabelOrder,
) -> Result<AxiomReport> {
    let kind = match instance {
        MorseInstance::Sir => WitnessKind::Sir,
        MorseInstance::Delta(delta) => WitnessKind::Delta(delta),
        _ => WitnessKind::Sir,
    };
    if g.n() > MAX_ENUMERATION {
        return Err(Error::Parameter(format!(
            "enumeration is limited to n <= {MAX_ENUMERATION}, got {}",
            g.n()
        )));
    }
    let mut report = AxiomReport::new(Axiom::MorseRichness, &instance, None);
    for p in all_partitions(g.n()) {
        if !is_compatible(g, &p, labels)? {
            continue;
        }
        let w = graph_richness_witness(g, &p, labels, kind)?;
        report.trials += 1;
        let got = instance.run_with(&w.d, &w.labels, TieTolerance::default())?.partition;
        if got != p {
            return Ok(report.fail(Counterexample::new(&w.d, p, got, "witness not recovered")));
        }
    }
    Ok(report)
}

/// Breadth-first order from `root` avoiding `skip`; returns the last
/// vertex reached, a leaf of the BFS tree.
fn farthest(g: &Graph, root: usize, skip: Option<usize>) -> usize {
    let depth = g.bfs_depths(root, |v| Some(v) != skip);
    (0..g.n())
        .filter(|&v| depth[v].is_some())
        .max_by_key(|&v| (depth[v], std::cmp::Reverse(v)))
        .unwrap()
}

/// One implication in the chain of the impossibility argument.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Link {
    pub axiom: Axiom,
    pub claim: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ImpossibilityReport {
    pub function: String,
    /// 1-based.
    pub s: usize,
    pub t: usize,
    pub p: Partition,
    pub p_prime: Partition,
    pub alpha: f64,
    pub links: Vec<Link>,
}

impl ImpossibilityReport {
    pub fn failed(&self) -> impl Iterator<Item = &Link> {
        self.links.iter().filter(|l| !l.holds)
    }
}

/// Runs the chain behind the impossibility theorem for graphs against `f`.
///
/// Picks `s`, then `t`, as far leaves of BFS trees so that
/// `P = {{s}, V∖{s}}` and `P' = {{s}, {t}, V∖{s,t}}` are connected, takes
/// `d`, `d'` from `witness`, builds the pseudo-distance `d*` and the scale
/// `α`, and evaluates each link. If `f` satisfied Scale-Invariance,
/// Consistency and Connected-Richness all links would hold and force
/// `P = P'`, so at least one fails.
pub fn impossibility_probe(
    f: &(impl ClusteringFunction + ?Sized),
    g: &Graph,
    witness: impl Fn(&Partition) -> Result<PseudoDistance>,
) -> Result<ImpossibilityReport> {
    let n = g.n();
    if n < 3 {
        return Err(Error::Parameter(format!("need at least 3 vertices, got {n}")));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let s = farthest(g, 0, None);
    let start = (0..n).find(|&v| v != s).unwrap();
    let t = farthest(g, start, Some(s));
    let rest: Vec<usize> = (0..n).filter(|&v| v != s).collect();
    let p = Partition::from_clusters(n, &[vec![s], rest.clone()])?;
    let rest2: Vec<usize> = rest.iter().copied().filter(|&v| v != t).collect();
    let p2 = Partition::from_clusters(n, &[vec![s], vec![t], rest2])?;
    let mut links = Vec::new();
    let mut link = |axiom, claim: String, holds| links.push(Link { axiom, claim, holds });

    // witnesses, shrunk so that min intra < max inter
    let mut prepare = |target: &Partition, tag: &str| -> Result<(PseudoDistance, f64, f64)> {
        let d = witness(target)?;
        let got = f.cluster(&d)?;
        link(Axiom::ConnectedRichness, format!("F({tag}) = {}", show(target)), got == *target);
        let h = d.extremal_stats(target)?;
        let q = h.max_inter.expect("partition is not trivial");
        match h.min_intra {
            Some(p) if p >= q => {
                let c = q / (2.0 * p);
                let shrunk = d.map_weights(|u, v, w| if target.same_cluster(u, v) { w * c } else { w })?;
                let same = f.cluster(&shrunk)? == got;
                link(Axiom::Consistency, format!("shrinking intra weights of {tag} keeps F"), same);
                Ok((shrunk, p * c, q))
            }
            Some(p) => Ok((d, p, q)),
            // only singletons: no intra constraint, any p < q works
            None => Ok((d, q / 2.0, q)),
        }
    };
    let (d, pp, q) = prepare(&p, "d")?;
    let (d2, pp2, q2) = prepare(&p2, "d'")?;

    // α·pp ≥ q2 and α·c ≤ pp2, guarding against rounding
    let mut alpha = q2 / pp;
    while alpha * pp < q2 {
        alpha = alpha.next_up();
    }
    let mut c = pp2 / alpha;
    while alpha * c > pp2 {
        c = c.next_down();
    }
    let star = PseudoDistance::from_fn(Arc::new(g.clone()), |u, v| {
        if u == s || v == s {
            q
        } else if u == t || v == t {
            pp
        } else {
            c
        }
    })?;
    let scaled = star.scale(alpha)?;
    assert!(is_p_transformation(&d, &star, &p), "d* must be a P-transformation of d");
    assert!(
        is_p_transformation(&d2, &scaled, &p2),
        "alpha d* must be a P'-transformation of d'"
    );
    let (f_d, f_d2) = (f.cluster(&d)?, f.cluster(&d2)?);
    let (f_star, f_scaled) = (f.cluster(&star)?, f.cluster(&scaled)?);
    link(Axiom::Consistency, "F(d*) = F(d)".into(), f_star == f_d);
    link(Axiom::Consistency, "F(alpha d*) = F(d')".into(), f_scaled == f_d2);
    link(Axiom::ScaleInvariance, "F(alpha d*) = F(d*)".into(), f_scaled == f_star);
    Ok(ImpossibilityReport {
        function: f.name(),
        s: s + 1,
        t: t + 1,
        p,
        p_prime: p2,
        alpha,
        links,
    })
}

fn show(p: &Partition) -> String {
    serde_json::to_string(&p.to_one_based()).unwrap()
}

/// Weight 1 on intra-cluster edges and 4 on the others.
pub fn two_level_witness(g: &Graph, p: &Partition) -> Result<PseudoDistance> {
    PseudoDistance::from_fn(Arc::new(g.clone()), |u, v| if p.same_cluster(u, v) { 1.0 } else { 4.0 })
}

/// Randomised check of one axiom for a Morse instance on inputs with `n`
/// vertices: complete graphs with weights in `[1, 10)` for the sampled
/// axioms, all partitions for Richness, and a random connected sparse graph
/// for the graph variants.
pub fn check_instance(
    instance: MorseInstance,
    axiom: Axiom,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<AxiomReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = AxiomReport::new(axiom, &instance, Some(seed));
    match axiom {
        Axiom::Richness => {
            let delta = match instance {
                MorseInstance::Delta(delta) => Some(delta),
                _ => None,
            };
            let mut r = enumerate_richness(&instance, n, |p| match delta {
                Some(delta) => delta_richness_witness(p, delta),
                None => sir_richness_witness(p),
            })?;
            r.seed = Some(seed);
            return Ok(r);
        }
        Axiom::ConnectedRichness | Axiom::MorseRichness => {
            for _ in 0..trials.max(1) {
                let g = random_connected_graph(n, 0.2, &mut rng);
                let labels = if axiom == Axiom::ConnectedRichness {
                    LabelOrder::identity()
                } else {
                    random_labels(n, &mut rng)
                };
                let mut r = enumerate_morse_richness(instance, &g, &labels)?;
                report.trials += r.trials;
                if !r.passed {
                    r.axiom = axiom;
                    r.trials = report.trials;
                    r.seed = Some(seed);
                    return Ok(r);
                }
            }
            return Ok(report);
        }
        _ => {}
    }
    for _ in 0..trials {
        let d = random_complete(n, &mut rng);
        let sub_seed = rng.random();
        let r = match axiom {
            Axiom::ScaleInvariance => {
                let alphas = [0.1, 3.0, 1000.0, rng.random_range(0.01..100.0)];
                check_scale_invariance(&instance, &d, &alphas)?
            }
            Axiom::Consistency => check_consistency(&instance, &d, 1, sub_seed)?,
            _ => check_monotonic_consistency(&instance, &d, 1, sub_seed)?,
        };
        report.trials += 1;
        if !r.passed {
            report.passed = false;
            report.counterexample = r.counterexample;
            return Ok(report);
        }
    }
    Ok(report)
}

fn random_labels(n: usize, rng: &mut impl Rng) -> LabelOrder {
    use rand::seq::SliceRandom;
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(rng);
    LabelOrder::from_ranks(rank).unwrap()
}
