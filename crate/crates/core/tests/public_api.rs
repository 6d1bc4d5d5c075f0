//! Cross-module properties through the public API.

use proptest::prelude::*;
use robsub_core::constructions::{random_graph, random_rgraph};
use robsub_core::io;
use robsub_core::topo::{classify_surface, euler_characteristic, find_face_cycle_exact, split_cycle};
use robsub_core::rainbow::SearchOutcome;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_lists_round_trip(n in 1usize..30, p in 0.0f64..1.0, seed in any::<u64>()) {
        let g = random_graph(n, p, seed).unwrap();
        let back = io::parse_edge_list(&io::write_edge_list(&g, None)).unwrap();
        prop_assert_eq!(back.graph, g);
    }

    #[test]
    fn hyperedge_lists_round_trip(n in 3usize..12, p in 0.0f64..1.0, seed in any::<u64>()) {
        let g = random_rgraph(3, n, p, seed).unwrap();
        let back = io::parse_hyperedge_list(&io::write_hyperedge_list(&g), None).unwrap();
        prop_assert_eq!(back.graph, g);
    }

    /// Every cycle the exact finder returns triangulates a cylinder or a Möbius strip.
    #[test]
    fn found_cycles_are_strips(ell in 5usize..9, p in 0.3f64..0.9, seed in any::<u64>()) {
        let g = random_rgraph(3, ell + 1, p, seed).unwrap();
        if let SearchOutcome::Found(c) = find_face_cycle_exact(&g, ell, 5_000_000) {
            prop_assert_eq!(euler_characteristic(3, &c.walk.edges()).unwrap(), 0);
            prop_assert!(classify_surface(&c).is_ok());
            let (a, b) = split_cycle(&c).unwrap();
            prop_assert!(a.proper && b.proper);
            prop_assert!(a.internal().is_disjoint(&b.internal()));
        }
    }
}
