mod common;

use common::{brute_3colorable, random_batch, random_graph};
use trichrome::certificate::verify_coloring;
use trichrome::graph::named;
use trichrome::oracle::{backtrack_3col, backtrack_3col_limited, exhaustive_3col, EXHAUSTIVE_LIMIT};

#[test]
fn exhaustive_and_backtracking_agree() {
    let batch = random_batch(600, 12, 2.0, 8.0, 0x0dd);
    let mut yes = 0;
    for g in &batch {
        let ex = exhaustive_3col(g).unwrap();
        let (bt, _) = backtrack_3col(g);
        assert_eq!(ex.is_some(), bt.is_some());
        for c in ex.iter().chain(bt.iter()) {
            assert!(verify_coloring(g, c));
        }
        yes += ex.is_some() as usize;
    }
    // Both verdicts are well represented.
    assert!(yes > 100 && yes < 500, "{yes} of {} colorable", batch.len());
}

#[test]
fn exhaustive_matches_assignment_enumeration() {
    for seed in 0..150 {
        let g = random_graph(9, 2.0 + (seed % 7) as f64, seed);
        assert_eq!(exhaustive_3col(&g).unwrap().is_some(), brute_3colorable(&g));
    }
}

#[test]
fn exhaustive_refuses_large_inputs() {
    assert!(exhaustive_3col(&named::cycle(EXHAUSTIVE_LIMIT)).is_ok());
    assert!(exhaustive_3col(&named::cycle(EXHAUSTIVE_LIMIT + 1)).is_err());
}

#[test]
fn backtracking_budget_is_reported() {
    let g = random_graph(60, 4.7, 11);
    let r = backtrack_3col_limited(&g, 5);
    assert!(r.exhausted && r.coloring.is_none());
    assert!(r.nodes <= 6);
    let full = backtrack_3col_limited(&g, u64::MAX);
    assert!(!full.exhausted);
}
