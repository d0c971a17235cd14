//! Checks certificates without running the solver: a solver-produced
//! refutation of the Grotzsch graph, then the same certificate with its
//! final clique corrupted.
//!
//! `cargo run --example verify_certificate`

use trichrome::certificate::{certificate_size, check_uncolorability, parse_certificate, Certificate, SolverOutcome};
use trichrome::graph::{named, VertexId};
use trichrome::solver::{bfs_3col, SolveConfig};

fn main() {
    let g = named::grotzsch();
    let SolverOutcome::No(cert) = bfs_3col(&g, &SolveConfig::default()).unwrap().0 else {
        unreachable!("the Grotzsch graph needs four colors");
    };
    let text = Certificate::Uncolorability(cert.clone()).to_text();
    println!("{text}");

    // Verification works from the text alone.
    let Certificate::Uncolorability(parsed) = parse_certificate(&text).unwrap() else { unreachable!() };
    let (verdict, steps) = check_uncolorability(&g, &parsed);
    println!("valid: {} ({} steps, size {}, {steps} verifier operations)", verdict.is_ok(), parsed.steps.len(), certificate_size(&parsed));

    let mut forged = parsed;
    forged.k4[3] = VertexId(0);
    match check_uncolorability(&g, &forged).0 {
        Ok(()) => println!("forged certificate accepted"),
        Err(r) => println!("forged certificate rejected: {r}"),
    }
}
