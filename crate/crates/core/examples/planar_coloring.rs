//! Planar inputs: the embedding, the planar driver on a pseudo-planar graph,
//! and the direct coloring of an even triangulation.
//!
//! `cargo run --example planar_coloring`

use trichrome::generators::gen_pseudo_planar;
use trichrome::graph::named;
use trichrome::planarity::{color_even_triangulation, is_planar};
use trichrome::solver::{Mode, SolveConfig, Solver};

fn main() {
    let oct = named::octahedron();
    let emb = is_planar(&oct).expect("the octahedron is planar");
    println!("octahedron: {} faces", emb.faces().len());
    // Every vertex has degree 4, so the three antipodal pairs are the classes.
    let classes = color_even_triangulation(&oct, &emb).unwrap().expect("even triangulation");
    println!("classes {classes:?}");

    println!("K3,3 planar: {}", is_planar(&named::complete_bipartite(3, 3)).is_some());

    for d in [2.8, 3.1, 3.4, 3.7] {
        let g = gen_pseudo_planar(200, d, 2024).unwrap();
        let mut s = Solver::new(SolveConfig { mode: Mode::Planar, check_planarity: true, ..SolveConfig::default() });
        let (outcome, alpha) = s.bfs_3col(&g).unwrap();
        let st = s.stats();
        println!(
            "pseudo-planar n=200 d={d}: verdict {} at alpha {}, {} calls, {} of {} audited graphs non-planar",
            outcome.verdict(),
            alpha.value,
            st.calls,
            st.planarity_violations,
            st.planarity_checks
        );
    }
}
