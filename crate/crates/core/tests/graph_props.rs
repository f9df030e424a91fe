use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tuza_cochain::fuzz::random_instance;
use tuza_cochain::graph::{verify_hitting, verify_packing, Adjacency, GeneralGraph, HittingSet, TrianglePacking};
use tuza_cochain::oracle::max_cut_complement;
use tuza_cochain::recognize::recognize_cochain;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mirror_is_an_involution_up_to_relabelling(seed in any::<u64>()) {
        let g = random_instance(&mut ChaCha8Rng::seed_from_u64(seed), 5, 5);
        let (h, map) = g.mirror();
        prop_assert_eq!(h.profile().unwrap(), g.profile().unwrap().swapped());
        let (back, map2) = h.mirror();
        prop_assert_eq!(&back, &g);
        for (v, &w) in map2.iter().enumerate() {
            prop_assert_eq!(map[w], v);
        }
    }

    #[test]
    fn shuffled_cochain_graphs_are_recognised(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_instance(&mut rng, 4, 4);
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let shuffled = GeneralGraph::new(n, g.to_general().edges().map(|e| (perm[e.0], perm[e.1]))).unwrap();
        let r = recognize_cochain(&shuffled).unwrap();
        prop_assert_eq!(r.graph.edge_count(), g.edge_count());
        for u in 0..n {
            for v in 0..n {
                prop_assert_eq!(r.graph.adjacent(u, v), shuffled.adjacent(r.relabel[u], r.relabel[v]));
            }
        }
    }

    #[test]
    fn trivial_certificates_verify(seed in any::<u64>()) {
        let g = random_instance(&mut ChaCha8Rng::seed_from_u64(seed), 4, 4);
        let all: HittingSet = g.to_general().edges().collect();
        prop_assert!(verify_hitting(&g, &all).unwrap());
        prop_assert!(verify_hitting(&g, &max_cut_complement(&g)).unwrap());
        prop_assert!(verify_packing(&g, &TrianglePacking::new()).unwrap());
    }

    #[test]
    fn realisations_have_their_profile(l in 1usize..6, m in 1usize..6, x in 0usize..12, y in 0usize..12, dense: bool) {
        let p = tuza_cochain::graph::CaseProfile::new(l, m, x, y);
        match p.realize(dense) {
            Some(g) => prop_assert_eq!(g.profile().unwrap(), p),
            None => prop_assert!(!p.is_realizable()),
        }
    }
}
