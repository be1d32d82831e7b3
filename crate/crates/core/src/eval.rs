//! Planted-partition benchmark graphs and NMI scoring.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, PseudoDistance};
use crate::instance::MorseInstance;
use crate::partition::Partition;

/// A graph with equal-size planted communities.
#[derive(Clone, Debug, PartialEq)]
pub struct PlantedBenchmark {
    pub graph: Arc<Graph>,
    pub truth: Partition,
    /// Expected fraction of a vertex's edges leaving its community.
    pub mu: f64,
    pub seed: u64,
}

/// Each vertex picks `round(degree (1 − μ) / 2)` partners in its own
/// community (at least one when `μ < 1`) and `round(degree μ / 2)` outside
/// it; with both ends counted the expected degree is `degree`. Community
/// sizes differ by at most one.
pub fn generate_planted(
    n: usize,
    communities: usize,
    degree: usize,
    mu: f64,
    seed: u64,
) -> Result<PlantedBenchmark> {
    if communities == 0 || n < communities {
        return Err(Error::Parameter(format!(
            "need 1 <= communities <= n, got {communities} communities for n = {n}"
        )));
    }
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::Parameter(format!("mu must lie in [0, 1], got {mu}")));
    }
    let min_size = n / communities;
    if degree == 0 || degree >= min_size {
        return Err(Error::Parameter(format!(
            "degree must lie in 1..{min_size} (the smallest community size), got {degree}"
        )));
    }
    let labels: Vec<usize> = (0..n).map(|v| v * communities / n).collect();
    let truth = Partition::from_labels(&labels)?;
    let k_in = {
        let k = (degree as f64 * (1.0 - mu) / 2.0).round() as usize;
        if mu < 1.0 { k.max(1) } else { k }
    };
    let k_out = (degree as f64 * mu / 2.0).round() as usize;
    if k_out > 0 && communities == 1 {
        return Err(Error::Parameter("mixing needs at least two communities".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = BTreeSet::new();
    for v in 0..n {
        let own = &truth.clusters()[labels[v]];
        let mates: Vec<usize> = own.iter().copied().filter(|&u| u != v).collect();
        for i in sample(&mut rng, mates.len(), k_in.min(mates.len())) {
            let u = mates[i];
            edges.insert((u.min(v), u.max(v)));
        }
        let others = n - own.len();
        for i in sample(&mut rng, others, k_out.min(others)) {
            // skip over the vertex's own community, which is contiguous
            let u = if i < own[0] { i } else { i + own.len() };
            edges.insert((u.min(v), u.max(v)));
        }
    }
    Ok(PlantedBenchmark {
        graph: Arc::new(Graph::new(n, edges)?),
        truth,
        mu,
        seed,
    })
}

fn entropy(counts: impl Iterator<Item = usize>, n: f64) -> f64 {
    counts
        .filter(|&c| c > 0)
        .map(|c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .sum()
}

/// Normalised mutual information, `I(p; q)` over the arithmetic mean of
/// `H(p)` and `H(q)`, natural logarithms. Equal partitions score 1; when
/// both entropies vanish otherwise the score is 0.
pub fn nmi(p: &Partition, q: &Partition) -> Result<f64> {
    if p.n() != q.n() {
        return Err(Error::SizeMismatch { left: p.n(), right: q.n() });
    }
    if p == q {
        return Ok(1.0);
    }
    let n = p.n() as f64;
    let mut table = vec![vec![0usize; q.len()]; p.len()];
    for v in 0..p.n() {
        table[p.cluster_of(v)][q.cluster_of(v)] += 1;
    }
    let hp = entropy(p.clusters().iter().map(Vec::len), n);
    let hq = entropy(q.clusters().iter().map(Vec::len), n);
    let denom = (hp + hq) / 2.0;
    if denom == 0.0 {
        return Ok(0.0);
    }
    let mut mi = 0.0;
    for (i, row) in table.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if c > 0 {
                let c = c as f64;
                let a = p.clusters()[i].len() as f64;
                let b = q.clusters()[j].len() as f64;
                mi += c / n * (c * n / (a * b)).ln();
            }
        }
    }
    Ok((mi / denom).clamp(0.0, 1.0))
}

/// Clusters the benchmark graph with unit weights and scores the result
/// against the planted partition.
pub fn run_benchmark(instance: MorseInstance, bench: &PlantedBenchmark) -> Result<f64> {
    let d = PseudoDistance::new(bench.graph.clone(), vec![1.0; bench.graph.edge_count()])?;
    nmi(&instance.run(&d)?.partition, &bench.truth)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub mu: f64,
    pub mean_nmi: f64,
    /// Sample standard deviation; 0 for a single seed.
    pub std: f64,
    pub runs: usize,
}

/// Shape of the benchmark graphs in a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BenchmarkShape {
    pub n: usize,
    pub communities: usize,
    pub degree: usize,
}

/// Mean and spread of the NMI over `seeds` for every mixing level.
pub fn sweep(
    instance: MorseInstance,
    shape: BenchmarkShape,
    mus: &[f64],
    seeds: std::ops::Range<u64>,
) -> Result<Vec<SweepRow>> {
    mus.iter()
        .map(|&mu| {
            let scores = seeds
                .clone()
                .into_par_iter()
                .map(|seed| {
                    let b = generate_planted(shape.n, shape.communities, shape.degree, mu, seed)?;
                    run_benchmark(instance, &b)
                })
                .collect::<Result<Vec<f64>>>()?;
            let runs = scores.len();
            let mean = scores.iter().sum::<f64>() / runs.max(1) as f64;
            let std = if runs > 1 {
                (scores.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (runs - 1) as f64).sqrt()
            } else {
                0.0
            };
            Ok(SweepRow { mu, mean_nmi: mean, std, runs })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn pt(n: usize, clusters: &[&[usize]]) -> Partition {
        let c: Vec<Vec<usize>> = clusters.iter().map(|c| c.iter().map(|v| v - 1).collect()).collect();
        Partition::from_clusters(n, &c).unwrap()
    }

    #[test]
    fn nmi_examples() {
        let p = pt(4, &[&[1, 2], &[3, 4]]);
        assert_eq!(nmi(&p, &p).unwrap(), 1.0);
        assert_eq!(nmi(&Partition::singletons(4), &Partition::trivial(4)).unwrap(), 0.0);
        let q = pt(4, &[&[1, 3], &[2, 4]]);
        assert_relative_eq!(nmi(&p, &q).unwrap(), 0.0, epsilon = 1e-15);
        assert_eq!(nmi(&Partition::trivial(3), &Partition::trivial(3)).unwrap(), 1.0);
        assert!(nmi(&p, &Partition::trivial(3)).is_err());
    }

    #[test]
    fn nmi_hand_computed() {
        // p = {{1,2},{3,4}}, q = {{1,2,3},{4}}: H(p) = ln 2,
        // H(q) = -(3/4) ln(3/4) - (1/4) ln(1/4), I = H(q) - H(q|p) = H(q) - (1/2) ln 2
        let p = pt(4, &[&[1, 2], &[3, 4]]);
        let q = pt(4, &[&[1, 2, 3], &[4]]);
        let hq = -(0.75f64 * 0.75f64.ln() + 0.25 * 0.25f64.ln());
        let mi = hq - 0.5 * 2f64.ln();
        let expected = mi / ((2f64.ln() + hq) / 2.0);
        assert_relative_eq!(nmi(&p, &q).unwrap(), expected, max_relative = 1e-12);
        assert_relative_eq!(nmi(&q, &p).unwrap(), expected, max_relative = 1e-12);
    }

    #[test]
    fn planted_is_deterministic() {
        let a = generate_planted(200, 4, 10, 0.2, 7).unwrap();
        let b = generate_planted(200, 4, 10, 0.2, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.graph, generate_planted(200, 4, 10, 0.2, 8).unwrap().graph);
    }

    #[test]
    fn planted_extremes() {
        let b = generate_planted(60, 3, 8, 0.0, 1).unwrap();
        assert!(b.graph.edges().iter().all(|&(u, v)| b.truth.same_cluster(u, v)));
        assert!(b.graph.connected_components().is_refinement_of(&b.truth).unwrap());
        for v in 0..60 {
            assert!(b.graph.degree(v) >= 1);
        }
        let b = generate_planted(60, 2, 8, 1.0, 1).unwrap();
        assert!(b.graph.edges().iter().all(|&(u, v)| !b.truth.same_cluster(u, v)));
    }

    #[test]
    fn planted_rejects_bad_parameters() {
        assert!(generate_planted(10, 5, 2, 0.1, 0).is_err());
        assert!(generate_planted(10, 0, 2, 0.1, 0).is_err());
        assert!(generate_planted(10, 2, 2, 1.5, 0).is_err());
        assert!(generate_planted(10, 1, 4, 0.5, 0).is_err());
    }

    #[test]
    fn single_community_scores_one() {
        let b = generate_planted(12, 1, 6, 0.0, 3).unwrap();
        assert!(b.truth.is_trivial());
        let t = Partition::trivial(12);
        assert_eq!(nmi(&t, &b.truth).unwrap(), 1.0);
        // any other answer carries no information about a single community
        assert_eq!(nmi(&Partition::singletons(12), &b.truth).unwrap(), 0.0);
    }
}
