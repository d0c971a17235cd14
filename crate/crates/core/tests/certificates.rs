mod common;

use common::{brute_3colorable, random_graph, tampered_certificates};
use proptest::prelude::*;
use trichrome::certificate::{
    certificate_size, check_uncolorability, verification_step_count, verify_coloring, verify_uncolorability,
    SolverOutcome, UncolorabilityCertificate,
};
use trichrome::generators::{derive_seed, gen_er_connected};
use trichrome::graph::{named, Graph, VertexId};
use trichrome::harness::analysis::log_log_slope;
use trichrome::solver::{bfs_3col, SolveConfig};

fn uncolorability(g: &Graph) -> Option<UncolorabilityCertificate> {
    match bfs_3col(g, &SolveConfig::default()).unwrap().0 {
        SolverOutcome::No(c) => Some(c),
        _ => None,
    }
}

#[test]
fn verifier_leaves_the_graph_untouched() {
    let g = named::grotzsch();
    let before = g.clone();
    let cert = uncolorability(&g).unwrap();
    assert!(verify_uncolorability(&g, &cert));
    assert_eq!(g, before);
}

#[test]
fn wheel_certificate_from_the_solver_verifies() {
    let w5 = named::wheel(5);
    let cert = uncolorability(&w5).unwrap();
    assert!(!cert.steps.is_empty());
    assert!(check_uncolorability(&w5, &cert).0.is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    /// Whatever the verifier accepts is backed by brute force, including
    /// certificates with shuffled steps.
    #[test]
    fn accepted_certificates_are_sound(n in 4usize..=9, d in 2.0f64..8.0, seed in any::<u64>(), swap in any::<(u8, u8)>()) {
        let g = random_graph(n, d, seed);
        match bfs_3col(&g, &SolveConfig::default()).unwrap().0 {
            SolverOutcome::No(cert) => {
                prop_assert!(verify_uncolorability(&g, &cert));
                prop_assert!(!brute_3colorable(&g));
                let mut permuted = cert.clone();
                if permuted.steps.len() >= 2 {
                    let k = permuted.steps.len();
                    permuted.steps.swap(swap.0 as usize % k, swap.1 as usize % k);
                }
                if verify_uncolorability(&g, &permuted) {
                    prop_assert!(!brute_3colorable(&g));
                }
            }
            SolverOutcome::Yes(c) => {
                prop_assert!(verify_coloring(&g, &c));
                prop_assert!(brute_3colorable(&g));
            }
            SolverOutcome::Undetermined => {}
        }
    }
}

#[test]
fn structural_tampers_are_rejected() {
    let tampers = tampered_certificates();
    for t in &tampers {
        assert!(!verify_uncolorability(&t.graph, &t.cert), "{} accepted", t.kind);
    }
    assert!(tampers.len() >= 200, "only {} tampers", tampers.len());
    assert!(tampers.iter().any(|t| t.kind == "nested k4"));
}

#[test]
fn verification_cost_is_polynomial() {
    let mut pts = Vec::new();
    for n in [20usize, 30, 45, 60, 80, 100] {
        for i in 0..30 {
            let g = gen_er_connected(n, 5.5, derive_seed(n as u64, i)).unwrap();
            if let Some(c) = uncolorability(&g) {
                let size = certificate_size(&c).max(1);
                pts.push(((n * size) as f64, verification_step_count(&g, &c) as f64));
            }
        }
    }
    let slope = log_log_slope(&pts).unwrap();
    assert!(slope <= 3.0, "slope {slope}");
}

#[test]
fn certificates_reference_live_ids_only() {
    let g = named::grotzsch();
    let cert = uncolorability(&g).unwrap();
    let mut t = cert.clone();
    t.k4[0] = VertexId(10_000);
    assert!(check_uncolorability(&g, &t).0.unwrap_err().reason.contains("not live"));
}
