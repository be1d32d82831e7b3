//! Vertex partitions with canonical ordering.
//!
//! Clusters are kept sorted by their smallest member and members ascend
//! inside each cluster, so two partitions are equal exactly when they are
//! equal as sets of sets.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    labels: Vec<usize>,
    clusters: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds a partition from arbitrary cluster labels, one per vertex.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut remap: std::collections::HashMap<usize, usize> = Default::default();
        let mut canonical = Vec::with_capacity(labels.len());
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        for (v, &label) in labels.iter().enumerate() {
            let next = remap.len();
            let c = *remap.entry(label).or_insert(next);
            if c == clusters.len() {
                clusters.push(Vec::new());
            }
            clusters[c].push(v);
            canonical.push(c);
        }
        Ok(Partition {
            labels: canonical,
            clusters,
        })
    }

    /// Builds a partition of `0..n` from explicit clusters, validating
    /// disjointness, coverage and non-emptiness.
    pub fn from_clusters(n: usize, clusters: &[Vec<usize>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut labels = vec![usize::MAX; n];
        for (c, cluster) in clusters.iter().enumerate() {
            if cluster.is_empty() {
                return Err(Error::InvalidPartition(format!("cluster {c} is empty")));
            }
            for &v in cluster {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if labels[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {} appears in more than one cluster",
                        v + 1
                    )));
                }
                labels[v] = c;
            }
        }
        if let Some(v) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "vertex {} is not covered",
                v + 1
            )));
        }
        Partition::from_labels(&labels)
    }

    /// The one-cluster partition `{V}`.
    pub fn trivial(n: usize) -> Self {
        Partition::from_labels(&vec![0; n.max(1)]).expect("n >= 1")
    }

    pub fn singletons(n: usize) -> Self {
        Partition::from_labels(&(0..n.max(1)).collect::<Vec<_>>()).expect("n >= 1")
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    /// Canonical cluster index of `v`.
    pub fn cluster_of(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn same_cluster(&self, u: usize, v: usize) -> bool {
        self.labels[u] == self.labels[v]
    }

    pub fn is_trivial(&self) -> bool {
        self.clusters.len() == 1
    }

    /// True iff every cluster of `self` lies inside some cluster of `coarser`.
    pub fn is_refinement_of(&self, coarser: &Partition) -> Result<bool> {
        if self.n() != coarser.n() {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: coarser.n(),
            });
        }
        Ok(self.clusters.iter().all(|cluster| {
            let target = coarser.labels[cluster[0]];
            cluster.iter().all(|&v| coarser.labels[v] == target)
        }))
    }

    /// Clusters with 1-based members, the external representation.
    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.clusters
            .iter()
            .map(|c| c.iter().map(|v| v + 1).collect())
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct PartitionRepr {
    n: usize,
    clusters: Vec<Vec<usize>>,
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PartitionRepr {
            n: self.n(),
            clusters: self.to_one_based(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PartitionRepr::deserialize(deserializer)?;
        let mut clusters = Vec::with_capacity(repr.clusters.len());
        for cluster in &repr.clusters {
            let mut zero_based = Vec::with_capacity(cluster.len());
            for &v in cluster {
                if v == 0 {
                    return Err(serde::de::Error::custom("vertex indices are 1-based"));
                }
                zero_based.push(v - 1);
            }
            clusters.push(zero_based);
        }
        Partition::from_clusters(repr.n, &clusters).map_err(serde::de::Error::custom)
    }
}

/// Enumerates every set partition of `0..n` via restricted growth strings.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut rgs = vec![0usize; n];
    loop {
        out.push(Partition::from_labels(&rgs).expect("n >= 1"));
        // advance to the next restricted growth string
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            let max_prefix = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= max_prefix {
                rgs[i] += 1;
                for x in rgs.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, clusters: &[&[usize]]) -> Partition {
        let c: Vec<Vec<usize>> = clusters.iter().map(|c| c.iter().map(|v| v - 1).collect()).collect();
        Partition::from_clusters(n, &c).unwrap()
    }

    #[test]
    fn canonical_order_gives_set_equality() {
        let a = p(4, &[&[4, 3], &[2, 1]]);
        let b = p(4, &[&[1, 2], &[3, 4]]);
        assert_eq!(a, b);
        assert_eq!(a.to_one_based(), vec![vec![1, 2], vec![3, 4]]);
    }

    #[test]
    fn rejects_overlap_gaps_and_empties() {
        assert!(Partition::from_clusters(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::from_clusters(3, &[vec![0, 1]]).is_err());
        assert!(Partition::from_clusters(3, &[vec![0, 1, 2], vec![]]).is_err());
        assert!(Partition::from_clusters(3, &[vec![0, 1, 5]]).is_err());
    }

    #[test]
    fn refinement_examples() {
        let singles = p(3, &[&[1], &[2], &[3]]);
        let pair = p(3, &[&[1, 2], &[3]]);
        assert!(singles.is_refinement_of(&pair).unwrap());
        assert!(!pair.is_refinement_of(&singles).unwrap());
        assert!(pair.is_refinement_of(&pair).unwrap());
        assert!(pair.is_refinement_of(&Partition::trivial(4)).is_err());
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (1..=7).map(|n| all_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52, 203, 877]);
    }

    #[test]
    fn json_is_one_based_and_canonical() {
        let part = p(3, &[&[3], &[2, 1]]);
        let json = serde_json::to_string(&part).unwrap();
        assert_eq!(json, r#"{"n":3,"clusters":[[1,2],[3]]}"#);
        let back: Partition = serde_json::from_str(&json).unwrap();
        assert_eq!(back, part);
        assert!(serde_json::from_str::<Partition>(r#"{"n":2,"clusters":[[0,1]]}"#).is_err());
    }
}
