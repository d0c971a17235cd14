//! Runs a shrunken experiment sweep in memory and prints its summary.
//!
//! `cargo run --release --example experiment_summary -- [1-4] [group-size]`

use trichrome::harness::{run_experiment, ExperimentConfig, Scale};

fn main() {
    let mut args = std::env::args().skip(1);
    let experiment = args.next().map_or(4, |s| s.parse().expect("experiment is 1 to 4"));
    let mut cfg = ExperimentConfig::new(experiment, Scale::Desk);
    cfg.group_size = Some(args.next().map_or(5, |s| s.parse().expect("group size is an integer")));
    let out = run_experiment(&cfg).unwrap();
    print!("{}", out.summary);
}
