//! Random instances for property checks: distances, graphs, partitions,
//! `P`-transformations and expansive maps. Every sampler takes the RNG
//! explicitly so runs replay from a seed.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, Exp1};

use crate::error::Result;
use crate::graph::{Graph, PseudoDistance};
use crate::monotonic::ExpansiveMap;
use crate::partition::Partition;

/// Independent weights uniform in `[lo, hi)` on the edges of `g`.
pub fn random_weights(g: Arc<Graph>, lo: f64, hi: f64, rng: &mut impl Rng) -> PseudoDistance {
    let weights = (0..g.edge_count()).map(|_| rng.random_range(lo..hi)).collect();
    PseudoDistance::new(g, weights).expect("weights are positive")
}

/// Complete graph on `n` vertices with weights uniform in `[1, 10)`.
pub fn random_complete(n: usize, rng: &mut impl Rng) -> PseudoDistance {
    random_weights(Arc::new(Graph::complete(n).expect("n > 0")), 1.0, 10.0, rng)
}

/// Connected graph: a random recursive tree plus each remaining pair with
/// probability `extra`.
pub fn random_connected_graph(n: usize, extra: f64, rng: &mut impl Rng) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.random_range(0..i);
        edges.push((order[i].min(order[j]), order[i].max(order[j])));
    }
    let mut present = vec![vec![false; n]; n];
    for &(u, v) in &edges {
        present[u][v] = true;
    }
    for u in 0..n {
        for v in u + 1..n {
            if !present[u][v] && rng.random_bool(extra) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("simple graph")
}

/// Uniformly random labels with a random number of clusters.
pub fn random_partition(n: usize, rng: &mut impl Rng) -> Partition {
    let k = rng.random_range(1..=n);
    let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..k)).collect();
    Partition::from_labels(&labels).expect("labels cover 0..n")
}

/// Scales each intra-cluster weight by a factor in `[0.5, 1]` and each
/// inter-cluster weight by a factor in `[1, 2]`, independently.
pub fn random_p_transformation(d: &PseudoDistance, p: &Partition, rng: &mut impl Rng) -> PseudoDistance {
    d.map_weights(|u, v, w| {
        if p.same_cluster(u, v) {
            w * rng.random_range(0.5..=1.0)
        } else {
            w * rng.random_range(1.0..=2.0)
        }
    })
    .expect("factors are positive")
}

/// Piecewise-linear expansive map with 1 to 5 breakpoints in `(0, x_max]`
/// and slopes `1 + Exp(1)` capped at 10, tail included.
pub fn random_expansive_map(x_max: f64, rng: &mut impl Rng) -> ExpansiveMap {
    let mut xs: Vec<f64> = (0..rng.random_range(1..=5))
        .map(|_| rng.random_range(0.0..x_max) + f64::EPSILON * x_max)
        .collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let (mut px, mut py) = (0.0, 0.0);
    let mut points = Vec::with_capacity(xs.len());
    for x in xs {
        py += slope(rng) * (x - px);
        px = x;
        points.push((x, py));
    }
    let tail = slope(rng);
    ExpansiveMap::new(points, tail).expect("slopes are at least 1")
}

fn slope(rng: &mut impl Rng) -> f64 {
    let e: f64 = Exp1.sample(rng);
    (1.0 + e).min(10.0)
}

/// Subcluster emphasis: inside the cluster `c = c1 ∪ c2` the pairs within
/// `c1` and within `c2` shrink by factors in `[0.05, 0.45]`, while pairs
/// between `c1` and `c2` and all other pairs keep their weight. Base
/// weights in `[1, 2)` make this a `P`-transformation that no global `η`
/// realises.
pub fn subcluster_emphasis(
    d: &PseudoDistance,
    c1: &[usize],
    c2: &[usize],
    rng: &mut impl Rng,
) -> Result<PseudoDistance> {
    let mut side = vec![0u8; d.n()];
    for &v in c1 {
        side[v] = 1;
    }
    for &v in c2 {
        side[v] = 2;
    }
    d.map_weights(|u, v, w| {
        if side[u] != 0 && side[u] == side[v] {
            w * rng.random_range(0.05..=0.45)
        } else {
            w
        }
    })
}

/// A complete-graph instance of [`subcluster_emphasis`] with its partition:
/// `n` in `4..=8`, a cluster of size at least 3 split in two halves, one of
/// which has two or more points.
pub struct ProblematicInstance {
    pub d: PseudoDistance,
    pub d_prime: PseudoDistance,
    pub partition: Partition,
}

pub fn problematic_instance(rng: &mut impl Rng) -> ProblematicInstance {
    let n = rng.random_range(4..=8);
    let d = random_weights(Arc::new(Graph::complete(n).unwrap()), 1.0, 2.0, rng);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let size = rng.random_range(3..=n);
    let (cluster, rest) = perm.split_at(size);
    let cut = rng.random_range(1..size);
    let (mut c1, mut c2) = (cluster[..cut].to_vec(), cluster[cut..].to_vec());
    if c1.len() < 2 {
        std::mem::swap(&mut c1, &mut c2);
    }
    let mut labels = vec![0; n];
    for &v in rest {
        labels[v] = 1 + rng.random_range(0..rest.len());
    }
    let partition = Partition::from_labels(&relabel(&labels)).unwrap();
    let d_prime = subcluster_emphasis(&d, &c1, &c2, rng).unwrap();
    ProblematicInstance { d, d_prime, partition }
}

fn relabel(labels: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = map.len();
            *map.entry(l).or_insert(next)
        })
        .collect()
}

/// Metric on `n` points: Euclidean distances between uniform points in the
/// unit square plus a constant in `[0.05, 0.5]`. The offset makes every
/// triangle inequality strict, so the result has no aligned triples and
/// survives rounding.
pub fn random_metric(n: usize, rng: &mut impl Rng) -> PseudoDistance {
    let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.random(), rng.random())).collect();
    let offset = rng.random_range(0.05..=0.5);
    PseudoDistance::from_fn(Arc::new(Graph::complete(n).unwrap()), |u, v| {
        let (dx, dy) = (pts[u].0 - pts[v].0, pts[u].1 - pts[v].1);
        dx.hypot(dy) + offset
    })
    .expect("positive weights")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monotonic::{aligned_triples, triangle_violation};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn connected_graphs_are_connected() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..20 {
            assert!(random_connected_graph(n, 0.1, &mut rng).is_connected());
        }
    }

    #[test]
    fn expansive_maps_are_valid_and_replay() {
        let mut a = ChaCha8Rng::seed_from_u64(9);
        let mut b = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let eta = random_expansive_map(10.0, &mut a);
            assert_eq!(eta, random_expansive_map(10.0, &mut b));
            let pts = eta.points();
            assert!((2..=6).contains(&pts.len()));
        }
    }

    #[test]
    fn random_metrics_are_strict() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 3..9 {
            let d = random_metric(n, &mut rng);
            assert_eq!(triangle_violation(&d, 0.0).unwrap(), None);
            assert!(aligned_triples(&d).unwrap().is_empty());
        }
    }

    #[test]
    fn p_transformation_respects_direction() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let d = random_complete(6, &mut rng);
        let p = random_partition(6, &mut rng);
        let d2 = random_p_transformation(&d, &p, &mut rng);
        for ((u, v, a), &b) in d.iter().zip(d2.weights()) {
            assert!(if p.same_cluster(u, v) { b <= a } else { b >= a });
        }
    }
}
