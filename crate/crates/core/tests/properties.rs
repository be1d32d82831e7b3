use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use morse_core::eval::nmi;
use morse_core::monotonic::{apply_monotonic, detect_monotonic, Exactness};
use morse_core::morse::morse_flow_parallel;
use morse_core::preorder::{
    audit_edge_preorder, audit_vertex_preorder, delta_preorders, k_preorders, sir_preorders,
    unsupervised_preorders, StrongestEdge,
};
use morse_core::sampling::{
    random_complete, random_connected_graph, random_expansive_map, random_partition, random_weights,
};
use morse_core::{morse_flow, MorseInstance, Partition, PseudoDistance};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sparse(n: usize, seed: u64) -> PseudoDistance {
    let mut r = rng(seed);
    let g = Arc::new(random_connected_graph(n, 0.5, &mut r));
    random_weights(g, 1.0, 5.0, &mut r)
}

fn instances(n: usize) -> Vec<MorseInstance> {
    vec![
        MorseInstance::Sir,
        MorseInstance::K(1 + n / 3),
        MorseInstance::Delta(3.0),
        MorseInstance::Unsupervised,
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transformation_is_recovered(n in 3usize..9, seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_complete(n, &mut r);
        let p = random_partition(n, &mut r);
        let eta = random_expansive_map(d.max_weight().unwrap() * 1.5, &mut r);
        let d2 = apply_monotonic(&d, &p, &eta).unwrap();
        let w = detect_monotonic(&d, &d2, &p, Exactness::Tolerant).unwrap();
        prop_assert!(w.is_valid());
        // the recovered map reproduces d' from d
        let back = apply_monotonic(&d, &p, w.map().unwrap()).unwrap();
        for ((_, _, a), (_, _, b)) in back.iter().zip(d2.iter()) {
            prop_assert!((a - b).abs() <= 1e-9 * b.max(1.0));
        }
    }

    #[test]
    fn valid_witness_is_expansive(n in 3usize..8, seed in any::<u64>()) {
        // random pairs are usually not related; whatever comes back must be sound
        let mut r = rng(seed);
        let d = random_complete(n, &mut r);
        let d2 = random_weights(d.shared_graph(), 1.0, 10.0, &mut r);
        let p = random_partition(n, &mut r);
        let w = detect_monotonic(&d, &d2, &p, Exactness::Tolerant).unwrap();
        if let Some(eta) = w.map() {
            let back = apply_monotonic(&d, &p, eta).unwrap();
            for ((_, _, a), (_, _, b)) in back.iter().zip(d2.iter()) {
                prop_assert!((a - b).abs() <= 1e-9 * b.max(1.0));
            }
        }
    }

    #[test]
    fn expansive_maps(seed in any::<u64>(), x in 0.0f64..20.0, y in 0.0f64..20.0) {
        let mut r = rng(seed);
        let f = random_expansive_map(10.0, &mut r);
        let g = random_expansive_map(10.0, &mut r);
        let (fx, fy) = (f.eval(x).unwrap(), f.eval(y).unwrap());
        prop_assert!(fx >= x - 1e-12);
        if x < y {
            prop_assert!(fy - fx >= (y - x) * (1.0 - 1e-9));
        }
        prop_assert!((f.eval_inv(fx).unwrap() - x).abs() <= 1e-9 * x.max(1.0));
        let h = f.compose(&g);
        let direct = g.eval(fx).unwrap();
        prop_assert!((h.eval(x).unwrap() - direct).abs() <= 1e-9 * direct.max(1.0));
    }

    #[test]
    fn nmi_is_symmetric_and_bounded(n in 1usize..30, seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_partition(n, &mut r);
        let q = random_partition(n, &mut r);
        let a = nmi(&p, &q).unwrap();
        prop_assert!((a - nmi(&q, &p).unwrap()).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&a));
        prop_assert_eq!(nmi(&p, &p).unwrap(), 1.0);
    }

    #[test]
    fn sparse_clusters_are_connected(n in 2usize..40, seed in any::<u64>()) {
        let d = sparse(n, seed);
        for instance in instances(n) {
            let out = instance.run(&d).unwrap();
            prop_assert!(d.graph().is_connected_partition(&out.partition).unwrap(), "{}", instance);
            prop_assert_eq!(&out.partition, &out.flow.partition());
            // every cluster holds exactly one critical vertex
            for c in out.partition.clusters() {
                prop_assert_eq!(c.iter().filter(|&&v| out.flow.is_critical(v)).count(), 1);
            }
        }
    }

    #[test]
    fn parallel_flow_matches(n in 2usize..60, seed in any::<u64>()) {
        let d = sparse(n, seed);
        let (pv, pe) = sir_preorders(&d);
        prop_assert_eq!(morse_flow(d.graph(), &pe, &pv), morse_flow_parallel(d.graph(), &pe, &pv));
    }

    #[test]
    fn partition_json_round_trip(n in 1usize..20, seed in any::<u64>()) {
        let p = random_partition(n, &mut rng(seed));
        let text = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<Partition>(&text).unwrap(), p);
    }

    #[test]
    fn preorders_are_preorders(n in 2usize..9, seed in any::<u64>()) {
        let d = sparse(n, seed);
        let g = d.graph();
        let (pv, pe) = sir_preorders(&d);
        prop_assert!(audit_vertex_preorder(&pv, n).is_ok());
        prop_assert!(audit_edge_preorder(g, &pe).is_ok());
        let (pv, pe) = k_preorders(&d, 1 + n / 3).unwrap();
        prop_assert!(audit_vertex_preorder(&pv, n).is_ok());
        prop_assert!(audit_edge_preorder(g, &pe).is_ok());
        let (pv, pe) = delta_preorders(&d, 3.0).unwrap();
        prop_assert!(audit_vertex_preorder(&pv, n).is_ok());
        prop_assert!(audit_edge_preorder(g, &pe).is_ok());
        let (pv, sim) = unsupervised_preorders(g);
        prop_assert!(audit_vertex_preorder(&pv, n).is_ok());
        prop_assert!(audit_edge_preorder(g, &StrongestEdge::new(&sim)).is_ok());
    }
}
