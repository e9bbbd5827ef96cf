//! Randomized invariants across modules.

use arcorient_core::connectivity::{alpha, is_k_arc_connected, is_k_edge_connected, lambda};
use arcorient_core::corpus::{random_multigraph, random_trail, trail_union};
use arcorient_core::orientation::{extend_to_well_balanced, extends, k_arc_orientation};
use arcorient_core::{GraphDocument, Multigraph, VertexId};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph(seed: u64, n: usize, extra: usize) -> Multigraph {
    random_multigraph(&mut ChaCha8Rng::seed_from_u64(seed), n, n - 1 + extra)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn menger_duality(seed in any::<u64>(), n in 2usize..8, extra in 0usize..10) {
        let g = graph(seed, n, extra);
        let (x, y) = (VertexId(0), VertexId(n as u64 - 1));
        let c = lambda(&g, x, y).unwrap();
        prop_assert_eq!(c.paths.len() as u32, c.value);
        prop_assert_eq!(c.min_cut.size() as u32, c.value);
        prop_assert_eq!(g.boundary(&c.min_cut.side).len() as u32, c.value);
        prop_assert!(c.min_cut.side.contains(&x) && !c.min_cut.side.contains(&y));
        let used: std::collections::BTreeSet<_> = c.paths.iter().flatten().collect();
        prop_assert_eq!(used.len(), c.paths.iter().map(Vec::len).sum::<usize>());
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), n in 1usize..8, extra in 0usize..8) {
        let g = graph(seed, n, extra);
        let doc = GraphDocument::from_graph(&g);
        let back = GraphDocument::parse(&doc.to_json()).unwrap().to_graph().unwrap();
        prop_assert_eq!(GraphDocument::from_graph(&back), doc);
    }

    #[test]
    fn union_of_cycles_orients(seed in any::<u64>(), n in 2usize..7, noise in 0usize..3) {
        let g = trail_union(&mut ChaCha8Rng::seed_from_u64(seed), n, 2, noise);
        prop_assert!(is_k_edge_connected(&g, 4));
        let d = k_arc_orientation(&g, 2).unwrap();
        prop_assert!(d.is_total());
        prop_assert!(is_k_arc_connected(&d, 2));
    }

    #[test]
    fn trail_extension_keeps_trail(seed in any::<u64>(), n in 2usize..7, extra in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_multigraph(&mut rng, n, n - 1 + extra);
        let h = random_trail(&mut rng, &g);
        let d = extend_to_well_balanced(&g, &h).unwrap();
        prop_assert!(extends(&d, &h));
        prop_assert!(d.is_total());
        // well-balanced implies strongly connected whenever g is 2-edge-connected
        if is_k_edge_connected(&g, 2) {
            prop_assert!(alpha(&d, VertexId(0), VertexId(n as u64 - 1)).unwrap() >= 1);
        }
    }

    #[test]
    fn contraction_preserves_outer_cuts(seed in any::<u64>(), n in 3usize..8, extra in 0usize..8) {
        let g = graph(seed, n, extra);
        let block = [VertexId(0), VertexId(1)].into();
        let (h, v) = g.contracted(&block).unwrap();
        prop_assert_eq!(h.edge_count() + g.multiplicity(VertexId(0), VertexId(1)), g.edge_count());
        prop_assert_eq!(h.degree(v), g.boundary(&block).len());
    }
}
