//! Solves a few classic graphs, printing the verdict, the smallest budget
//! that settled it and the certificate text.
//!
//! `cargo run --example solve_named`

use trichrome::certificate::{verify_coloring, verify_uncolorability, write_coloring, write_uncolorability, SolverOutcome};
use trichrome::graph::named;
use trichrome::solver::{bfs_3col, SolveConfig};

fn main() {
    let graphs = [
        ("K4", named::complete(4)),
        ("W5", named::wheel(5)),
        ("Grotzsch", named::grotzsch()),
        ("Petersen", named::petersen()),
        ("C5", named::cycle(5)),
        ("K3,3", named::complete_bipartite(3, 3)),
        ("icosahedron", named::icosahedron()),
    ];
    for (name, g) in graphs {
        let (outcome, alpha) = bfs_3col(&g, &SolveConfig::default()).expect("improved mode accepts any graph");
        println!("{name}: verdict {} at alpha {}", outcome.verdict(), alpha.value);
        match &outcome {
            SolverOutcome::Yes(c) => {
                assert!(verify_coloring(&g, c));
                print!("{}", write_coloring(c));
            }
            SolverOutcome::No(c) => {
                assert!(verify_uncolorability(&g, c));
                print!("{}", write_uncolorability(c));
            }
            SolverOutcome::Undetermined => println!("undetermined"),
        }
        println!();
    }
}
