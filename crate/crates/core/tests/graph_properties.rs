mod common;

use common::{edges_within, quads, random_graph, v};
use proptest::prelude::*;
use trichrome::graph::{contains_k4, find_diamond, find_tadpoles, named, Graph, VertexId};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (4..=max_n, 1.0f64..8.0, any::<u64>()).prop_map(|(n, d, seed)| random_graph(n, d, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn contractions_keep_a_partition_and_simplicity(g in graph_strategy(14), picks in proptest::collection::vec(any::<u64>(), 0..10)) {
        let n = g.vertex_count();
        let mut h = g.clone();
        let mut done = 0;
        for p in picks {
            let non: Vec<(VertexId, VertexId)> = h.non_edges().collect();
            if non.is_empty() {
                break;
            }
            let (a, b) = non[(p % non.len() as u64) as usize];
            let s = h.contract(a, b).unwrap();
            done += 1;
            prop_assert!(h.check_invariants().is_ok());
            prop_assert!(!h.has_edge(s, s));
            let part = h.partition();
            prop_assert_eq!(part.len(), n - done);
            prop_assert!(part.is_consistent_with(&h, n));
        }
    }

    #[test]
    fn find_diamond_matches_subset_enumeration(g in graph_strategy(10)) {
        // A diamond is a 4-set with exactly five edges.
        let brute = quads(&g).iter().any(|q| edges_within(&g, q) == 5);
        let found = find_diamond(&g);
        prop_assert_eq!(found.is_some(), brute);
        if let Some(w) = found {
            prop_assert!(w.holds_in(&g));
        }
    }

    #[test]
    fn contains_k4_matches_subset_enumeration(g in graph_strategy(12)) {
        let brute = quads(&g).iter().any(|q| edges_within(&g, q) == 6);
        let found = contains_k4(&g);
        prop_assert_eq!(found.is_some(), brute);
        if let Some(q) = found {
            prop_assert_eq!(edges_within(&g, &q), 6);
        }
    }

    #[test]
    fn diamond_pairs_are_forced_in_every_coloring(g in graph_strategy(10)) {
        if let Some(w) = find_diamond(&g) {
            let (u, x) = w.pair;
            let (z, y) = w.spine;
            let q = [u, x, z, y];
            let mut colorings = 0;
            for code in 0..81u32 {
                let c: Vec<u32> = (0..4).map(|i| code / 3u32.pow(i) % 3).collect();
                let proper = (0..4).all(|i| (i + 1..4).all(|j| !g.has_edge(q[i], q[j]) || c[i] != c[j]));
                if proper {
                    colorings += 1;
                    prop_assert_eq!(c[0], c[1]);
                }
            }
            prop_assert!(colorings > 0);
        }
    }

    #[test]
    fn tadpoles_close_to_k4(g in graph_strategy(10)) {
        for t in find_tadpoles(&g).take(20) {
            prop_assert!(t.holds_in(&g));
            let closed = g.with_edge(t.x, t.w).unwrap().with_edge(t.y, t.w).unwrap();
            prop_assert_eq!(edges_within(&closed, &[t.x, t.y, t.z, t.w]), 6);
        }
    }
}

#[test]
fn named_graphs_have_expected_shapes() {
    assert_eq!(named::petersen().edge_count(), 15);
    assert_eq!(named::grotzsch().edge_count(), 20);
    assert!(contains_k4(&named::grotzsch()).is_none());
    assert!(find_diamond(&named::grotzsch()).is_none());
    assert!(find_diamond(&named::wheel(5)).is_some());
    let ico = named::icosahedron();
    assert!(ico.vertices().all(|x| ico.degree(x) == 5));
    assert!(named::octahedron().vertices().all(|x| named::octahedron().degree(x) == 4));
    assert!(!named::octahedron().has_edge(v(0), v(1)));
}
