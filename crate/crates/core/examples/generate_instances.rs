//! Draws one instance of each model and writes it as DIMACS to stdout.
//!
//! `cargo run --example generate_instances -- [seed]`

use trichrome::dimacs::write_dimacs_with_comments;
use trichrome::generators::{generate, GenSpec, Model};

fn main() {
    let seed = std::env::args().nth(1).map_or(7, |s| s.parse().expect("seed is an integer"));
    for (model, n, d) in [(Model::PseudoPlanar, 12, 3.5), (Model::Planar4Regular, 10, 0.0), (Model::ErConnected, 12, 4.74)] {
        let spec = GenSpec::new(model, n, d, seed);
        let g = generate(&spec).unwrap();
        print!("{}", write_dimacs_with_comments(&g, &[format!("gen {}", spec.describe())]));
        println!();
    }
}
