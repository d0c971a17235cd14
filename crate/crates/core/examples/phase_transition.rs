//! Fraction of colorable connected random graphs on 100 vertices as the
//! average degree crosses the threshold, with the budget each one needed.
//!
//! `cargo run --release --example phase_transition -- [graphs-per-point]`

use trichrome::certificate::Verdict;
use trichrome::generators::{derive_seed, gen_er_connected};
use trichrome::harness::analysis::logistic_fit;
use trichrome::solver::{bfs_3col, SolveConfig};

fn main() {
    let per: u64 = std::env::args().nth(1).map_or(40, |s| s.parse().expect("count is an integer"));
    let cfg = SolveConfig { max_calls: Some(2_000_000), ..SolveConfig::default() };
    let mut points = Vec::new();
    println!("   d  p(yes)  alpha<=0  alpha<=1  undetermined");
    for step in 0..=12 {
        let d = 3.0 + 0.25 * step as f64;
        let (mut yes, mut low, mut one, mut undet) = (0, 0, 0, 0);
        for i in 0..per {
            let g = gen_er_connected(100, d, derive_seed(step, i)).unwrap();
            let (outcome, alpha) = bfs_3col(&g, &cfg).unwrap();
            match outcome.verdict() {
                Verdict::Undetermined => undet += 1,
                v => {
                    yes += (v == Verdict::Yes) as usize;
                    low += (alpha.value == 0) as usize;
                    one += (alpha.value <= 1) as usize;
                    points.push((d, v == Verdict::Yes));
                }
            }
        }
        println!("{d:>4.2}  {:>6.3}  {low:>8}  {one:>8}  {undet:>12}", yes as f64 / per as f64);
    }
    if let Some(fit) = logistic_fit(&points) {
        println!("crossover at d = {:.3}", fit.midpoint());
    }
}
