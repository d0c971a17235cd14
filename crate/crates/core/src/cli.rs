//! The `trichrome` command line.
//!
//! Exit codes: `solve` returns 0 (3-colorable), 1 (not 3-colorable) or 2
//! (undetermined); `verify` returns 0 (valid) or 1 (invalid). Failures exit
//! with 64 (usage), 65 (malformed input data) or 66 (unreadable or
//! unwritable file).

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::certificate::{check_coloring, check_uncolorability, parse_certificate, Certificate, SolverOutcome};
use crate::dimacs::{parse_dimacs, write_dimacs_with_comments};
use crate::generators::{derive_seed, generate, GenSpec, Model, DEFAULT_OP_PROBS};
use crate::graph::Graph;
use crate::harness::{audit_certificates, run_experiment, ExperimentConfig, Scale, SEED_ENV};
use crate::solver::{Mode, SolveConfig, Solver};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_UNDETERMINED: i32 = 2;
pub const EXIT_VALID: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_IO: i32 = 66;

pub const UNDETERMINED_MESSAGE: &str = "undetermined for the current value of α";

#[derive(Parser, Debug)]
#[command(name = "trichrome", version, about = "Certifying parametric 3-coloring")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide 3-colorability of a DIMACS graph and optionally write the certificate.
    Solve(SolveArgs),
    /// Check a certificate against a DIMACS graph without running the solver.
    Verify(VerifyArgs),
    /// Write seeded random instances as DIMACS files.
    Generate(GenerateArgs),
    /// Run one of the four experiment sweeps.
    Experiment(ExperimentArgs),
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    pub file: PathBuf,
    /// Fixed recursion budget.
    #[arg(long, conflicts_with = "auto")]
    pub alpha: Option<u32>,
    /// Raise the budget from 0 until the outcome is determinate (default).
    #[arg(long)]
    pub auto: bool,
    #[arg(long, default_value_t = 6)]
    pub alpha_max: u32,
    /// general, planar or improved.
    #[arg(long, default_value = "improved")]
    pub mode: Mode,
    /// Certificate output path.
    #[arg(long)]
    pub cert: Option<PathBuf>,
    /// Also report the largest observed alpha over this many random orderings.
    #[arg(long, default_value_t = 0)]
    pub shuffles: u32,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
    /// Give up after this many decision calls.
    #[arg(long)]
    pub max_calls: Option<u64>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub graph: PathBuf,
    pub cert: PathBuf,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// planar, planar4reg or er.
    #[arg(long)]
    pub model: Model,
    #[arg(long)]
    pub n: usize,
    /// Average degree (ignored by planar4reg).
    #[arg(long, default_value_t = 4.0)]
    pub d: f64,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Operation probabilities of planar4reg, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 4)]
    pub probs: Option<Vec<f64>>,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct ExperimentArgs {
    /// 1, 2, 3 or 4.
    #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
    pub experiment: u8,
    /// desk or full.
    #[arg(long, default_value = "desk")]
    pub scale: Scale,
    #[arg(long, default_value = "experiment-out")]
    pub out: PathBuf,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 6)]
    pub alpha_max: u32,
    #[arg(long, default_value_t = crate::harness::DEFAULT_MAX_CALLS)]
    pub max_calls: u64,
    /// Override the sweep's solver mode.
    #[arg(long)]
    pub mode: Option<Mode>,
    /// Override the number of instances per sweep point.
    #[arg(long)]
    pub group_size: Option<usize>,
    /// Worker threads (defaults to the available parallelism).
    #[arg(long)]
    pub threads: Option<usize>,
}

/// Failure that ends a command with a sysexits-style status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn data(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_DATA, message: format!("{}: {e}", path.display()) }
}

fn io(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_IO, message: format!("{}: {e}", path.display()) }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io(path, e))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let parsed = parse_dimacs(&read(path)?).map_err(|e| data(path, e))?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(parsed.graph)
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit status.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

pub fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Solve(a) => cmd_solve(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Generate(a) => cmd_generate(&a),
        Command::Experiment(a) => cmd_experiment(&a),
    }
}

pub fn cmd_solve(a: &SolveArgs) -> Result<i32, Failure> {
    let g = read_graph(&a.file)?;
    let cfg = SolveConfig {
        alpha: a.alpha.unwrap_or(0),
        alpha_max: a.alpha_max,
        mode: a.mode,
        rng_seed: a.seed,
        check_planarity: false,
        max_calls: a.max_calls,
    };
    let mut solver = Solver::new(cfg);
    let usage = |e: crate::solver::SolveError| Failure { code: EXIT_USAGE, message: e.to_string() };
    let (outcome, alpha) = match a.alpha {
        Some(k) => (solver.solve_configured(&g).map_err(usage)?, Some(k)),
        None => {
            let (o, seen) = solver.bfs_3col(&g).map_err(usage)?;
            (o, (!seen.exceeded).then_some(seen.value))
        }
    };
    let stats = solver.take_stats();
    let text = match &outcome {
        SolverOutcome::Yes(c) => Some(Certificate::Coloring(c.clone()).to_text()),
        SolverOutcome::No(c) => Some(Certificate::Uncolorability(c.clone()).to_text()),
        SolverOutcome::Undetermined => None,
    };
    match (&a.cert, &text) {
        (Some(path), Some(text)) => fs::write(path, text).map_err(|e| io(path, e))?,
        (None, Some(text)) if a.alpha.is_none() && !matches!(outcome, SolverOutcome::Yes(_)) => {
            log::info!("certificate:\n{text}")
        }
        _ => {}
    }
    println!("verdict {}", outcome.verdict());
    match alpha {
        Some(k) => println!("alpha {k}"),
        None => println!("alpha >{}", a.alpha_max),
    }
    println!("calls {}", stats.calls);
    if a.shuffles > 0 {
        let worst = solver.observed_alpha_over_orderings(&g, a.shuffles).map_err(usage)?;
        let shown = if worst.exceeded { format!(">{}", a.alpha_max) } else { worst.value.to_string() };
        println!("alpha over {} orderings {shown}", a.shuffles + 1);
    }
    Ok(match outcome {
        SolverOutcome::Yes(_) => EXIT_YES,
        SolverOutcome::No(_) => EXIT_NO,
        SolverOutcome::Undetermined => {
            println!("{UNDETERMINED_MESSAGE}");
            EXIT_UNDETERMINED
        }
    })
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<i32, Failure> {
    let g = read_graph(&a.graph)?;
    let cert = parse_certificate(&read(&a.cert)?).map_err(|e| data(&a.cert, e))?;
    let result = match &cert {
        Certificate::Coloring(c) => check_coloring(&g, c),
        Certificate::Uncolorability(c) => check_uncolorability(&g, c).0.map_err(|r| r.to_string()),
    };
    Ok(match result {
        Ok(()) => {
            println!("valid");
            EXIT_VALID
        }
        Err(reason) => {
            println!("invalid: {reason}");
            EXIT_INVALID
        }
    })
}

pub fn cmd_generate(a: &GenerateArgs) -> Result<i32, Failure> {
    fs::create_dir_all(&a.out).map_err(|e| io(&a.out, e))?;
    for i in 0..a.count {
        let mut spec = GenSpec::new(a.model, a.n, a.d, derive_seed(a.seed, i as u64));
        spec.op_probs = match &a.probs {
            Some(p) => [p[0], p[1], p[2], p[3]],
            None => DEFAULT_OP_PROBS,
        };
        let g = generate(&spec).map_err(|e| Failure { code: EXIT_USAGE, message: e.to_string() })?;
        let path = a.out.join(format!("{}_{}_{}_{}.col", a.model, a.n, a.seed, i));
        let text = write_dimacs_with_comments(&g, &[format!("gen {}", spec.describe())]);
        fs::write(&path, text).map_err(|e| io(&path, e))?;
        println!("{}", path.display());
    }
    Ok(0)
}

pub fn cmd_experiment(a: &ExperimentArgs) -> Result<i32, Failure> {
    let mut cfg = ExperimentConfig::new(a.experiment, a.scale);
    cfg.seed = a.seed;
    cfg.alpha_max = a.alpha_max;
    cfg.max_calls = Some(a.max_calls);
    cfg.mode = a.mode;
    cfg.group_size = a.group_size;
    if let Some(t) = a.threads {
        cfg.threads = t;
    }
    cfg.out_dir = Some(a.out.clone());
    let out = run_experiment(&cfg).map_err(|e| Failure { code: EXIT_IO, message: e.to_string() })?;
    print!("{}", out.summary);
    let audit = audit_certificates(&a.out).map_err(|e| Failure { code: EXIT_IO, message: e.to_string() })?;
    println!("certificate audit: {} checked, {} failed", audit.checked, audit.failures.len());
    for (id, reason) in &audit.failures {
        println!("  {id}: {reason}");
    }
    println!("wall time {:.1}s, output in {}", out.wall_time_s, a.out.display());
    Ok(0)
}
