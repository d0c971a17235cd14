//! Solver against DSATUR backtracking on pseudo-planar graphs near the
//! coloring threshold: worst time per size for both.
//!
//! `cargo run --release --example backtracking_scaling`

use std::time::Instant;

use trichrome::generators::{derive_seed, gen_pseudo_planar};
use trichrome::oracle::backtrack_3col_limited;
use trichrome::solver::{bfs_3col, Mode, SolveConfig};

fn main() {
    let cfg = SolveConfig { mode: Mode::Planar, ..SolveConfig::default() };
    println!("   n  solver_max_s  backtrack_max_s  backtrack_max_nodes");
    for n in (20..=200).step_by(20) {
        let (mut solver_max, mut bt_max, mut nodes_max) = (0f64, 0f64, 0u64);
        for i in 0..30 {
            let g = gen_pseudo_planar(n, 4.2, derive_seed(n as u64, i)).unwrap();
            let t = Instant::now();
            bfs_3col(&g, &cfg).unwrap();
            solver_max = solver_max.max(t.elapsed().as_secs_f64());
            let t = Instant::now();
            let r = backtrack_3col_limited(&g, 5_000_000);
            bt_max = bt_max.max(t.elapsed().as_secs_f64());
            nodes_max = nodes_max.max(r.nodes);
        }
        println!("{n:>4}  {solver_max:>12.5}  {bt_max:>15.5}  {nodes_max:>19}");
    }
}
