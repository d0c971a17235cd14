//! Batch experiments: instance plans, the instance-parallel runner, CSV
//! records and the certificate audit.
//!
//! Every planned instance yields exactly one [`ExperimentRecord`]; outcomes
//! no budget resolved are kept with verdict `inf`. Records are sorted by
//! instance index before they are written, so output does not depend on the
//! number of worker threads.

pub mod analysis;

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::certificate::{
    certificate_size, check_coloring, check_uncolorability, parse_certificate, write_coloring, write_uncolorability,
    Certificate, SolverOutcome, Verdict,
};
use crate::dimacs::{parse_dimacs, write_dimacs_with_comments};
use crate::generators::{derive_seed, generate, GenError, GenSpec, Model};
use crate::oracle::backtrack_3col_limited;
use crate::solver::{Mode, SolveConfig, SolveError, Solver};
pub use analysis::{AlphaHistogram, GroupRow, Grouping, Summary};

pub const CSV_HEADER: [&str; 10] =
    ["id", "model", "n", "m", "avg_degree", "verdict", "alpha", "time_s", "calls", "cert_size"];
pub const BASELINE_HEADER: [&str; 7] = ["id", "n", "m", "verdict", "time_s", "nodes", "exhausted"];

/// Environment variable holding the default global seed.
pub const SEED_ENV: &str = "TRICHROME_SEED";

/// Decision-call budget per instance in experiments.
pub const DEFAULT_MAX_CALLS: u64 = 50_000_000;
/// Search-node budget per instance for the backtracking baseline.
pub const DEFAULT_BASELINE_NODES: u64 = 5_000_000;

/// The seed in `TRICHROME_SEED`, or 0.
pub fn default_seed() -> u64 {
    std::env::var(SEED_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(0)
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("experiment must be 1, 2, 3 or 4, got {0}")]
    UnknownExperiment(u8),
    #[error("instance {id}: {source}")]
    Generate { id: String, source: GenError },
    #[error("instance {id}: {source}")]
    Solve { id: String, source: SolveError },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {message}")]
    Data { path: PathBuf, message: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> HarnessError + '_ {
    move |source| HarnessError::Io { path: path.to_path_buf(), source }
}

/// One solved instance; `avg_degree` is exactly `2m / n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRecord {
    pub id: String,
    pub model: String,
    pub n: usize,
    pub m: usize,
    pub avg_degree: f64,
    pub verdict: Verdict,
    /// Smallest budget that resolved the instance; `alpha_max + 1` with
    /// verdict `inf` when none did.
    pub alpha: u32,
    pub time_s: f64,
    pub calls: u64,
    /// Steps of the uncolorability certificate (nested ones included), or
    /// the number of colored vertices.
    pub cert_size: usize,
}

impl ExperimentRecord {
    fn fields(&self) -> [String; 10] {
        [
            self.id.clone(),
            self.model.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.avg_degree.to_string(),
            self.verdict.code().to_string(),
            self.alpha.to_string(),
            format!("{:.6}", self.time_s),
            self.calls.to_string(),
            self.cert_size.to_string(),
        ]
    }
}

/// Backtracking run on the same instance. `verdict` is `None` when the node
/// budget ran out.
#[derive(Clone, Debug, PartialEq)]
pub struct BaselineRecord {
    pub id: String,
    pub n: usize,
    pub m: usize,
    pub verdict: Option<bool>,
    pub time_s: f64,
    pub nodes: u64,
}

pub fn write_records_csv<W: io::Write>(out: W, records: &[ExperimentRecord]) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record(r.fields())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records_csv<R: io::Read>(input: R) -> Result<Vec<ExperimentRecord>, String> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers().map_err(|e| e.to_string())?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(format!("unexpected header {:?}", header.iter().collect::<Vec<_>>()));
    }
    let mut out = Vec::new();
    for (i, row) in rd.records().enumerate() {
        let row = row.map_err(|e| e.to_string())?;
        let bad = |what: &str| format!("row {}: bad {what}", i + 2);
        let num = |k: usize, what: &str| row[k].parse::<u64>().map_err(|_| bad(what));
        let verdict = match &row[5] {
            "0" => Verdict::No,
            "1" => Verdict::Yes,
            "inf" => Verdict::Undetermined,
            _ => return Err(bad("verdict")),
        };
        out.push(ExperimentRecord {
            id: row[0].to_string(),
            model: row[1].to_string(),
            n: num(2, "n")? as usize,
            m: num(3, "m")? as usize,
            avg_degree: row[4].parse().map_err(|_| bad("avg_degree"))?,
            verdict,
            alpha: num(6, "alpha")? as u32,
            time_s: row[7].parse().map_err(|_| bad("time_s"))?,
            calls: num(8, "calls")?,
            cert_size: num(9, "cert_size")? as usize,
        });
    }
    Ok(out)
}

pub fn write_baseline_csv<W: io::Write>(out: W, records: &[BaselineRecord]) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(BASELINE_HEADER)?;
    for b in records {
        w.write_record([
            b.id.clone(),
            b.n.to_string(),
            b.m.to_string(),
            match b.verdict {
                Some(true) => "1".into(),
                Some(false) => "0".into(),
                None => "inf".into(),
            },
            format!("{:.6}", b.time_s),
            b.nodes.to_string(),
            (b.verdict.is_none() as u8).to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Scale {
    #[default]
    Desk,
    Full,
}

impl std::str::FromStr for Scale {
    type Err = String;
    fn from_str(s: &str) -> Result<Scale, String> {
        match s {
            "desk" => Ok(Scale::Desk),
            "full" => Ok(Scale::Full),
            _ => Err(format!("unknown scale `{s}` (expected desk or full)")),
        }
    }
}

/// Sweep shape of one experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    pub model: Model,
    pub sizes: Vec<usize>,
    pub group_size: usize,
    /// Average degree drawn uniformly per instance; unused by `planar4reg`.
    pub degree: (f64, f64),
    pub baseline: bool,
    pub mode: Mode,
    pub grouping: Grouping,
}

impl Sweep {
    /// Desk scale keeps every sweep shape and shrinks only group sizes and
    /// the largest n of the planar sweeps.
    pub fn for_experiment(experiment: u8, scale: Scale) -> Result<Sweep, HarnessError> {
        let full = scale == Scale::Full;
        let planar_sizes = |max: usize| (1..=max / 100).map(|k| 100 * k).collect::<Vec<_>>();
        Ok(match experiment {
            1 => Sweep {
                model: Model::PseudoPlanar,
                sizes: (10..=100).collect(),
                group_size: 100,
                degree: (2.0, 5.0),
                baseline: true,
                mode: Mode::Planar,
                grouping: Grouping::ByN,
            },
            2 | 3 => Sweep {
                model: if experiment == 2 { Model::PseudoPlanar } else { Model::Planar4Regular },
                sizes: planar_sizes(if full { 1000 } else { 400 }),
                group_size: if full { 1000 } else { 50 },
                degree: (2.0, 5.0),
                baseline: false,
                mode: Mode::Planar,
                grouping: Grouping::ByN,
            },
            4 => Sweep {
                model: Model::ErConnected,
                sizes: vec![100],
                group_size: if full { 10_000 } else { 2000 },
                degree: (3.0, 6.0),
                baseline: false,
                mode: Mode::Improved,
                grouping: Grouping::ByDegree { start: 3.0, width: 0.25 },
            },
            other => return Err(HarnessError::UnknownExperiment(other)),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub index: usize,
    pub id: String,
    pub spec: GenSpec,
}

/// Instances of `sweep` in sweep order. Instance `i` is generated from
/// `derive_seed(seed, i)` and named `<model>_<n>_<seed>_<i>`.
pub fn plan(sweep: &Sweep, seed: u64) -> Vec<Instance> {
    let mut out = Vec::with_capacity(sweep.sizes.len() * sweep.group_size);
    for &n in &sweep.sizes {
        for _ in 0..sweep.group_size {
            let index = out.len();
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed ^ 0x5eed_d15c_0de5, index as u64));
            let (lo, mut hi) = sweep.degree;
            if sweep.model == Model::PseudoPlanar {
                hi = hi.min(6.0 - 12.0 / n as f64);
            }
            let d = lo + (hi - lo) * rng.random::<f64>();
            let spec = GenSpec::new(sweep.model, n, d, derive_seed(seed, index as u64));
            out.push(Instance { index, id: format!("{}_{}_{}_{}", sweep.model, n, seed, index), spec });
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub experiment: u8,
    pub scale: Scale,
    pub seed: u64,
    pub alpha_max: u32,
    pub max_calls: Option<u64>,
    pub baseline_nodes: u64,
    /// Overrides the sweep's solver mode.
    pub mode: Option<Mode>,
    /// Overrides the sweep's group size.
    pub group_size: Option<usize>,
    pub threads: usize,
    /// Where CSVs, the summary, certificates and archived instances go.
    pub out_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(experiment: u8, scale: Scale) -> ExperimentConfig {
        ExperimentConfig {
            experiment,
            scale,
            seed: default_seed(),
            alpha_max: 6,
            max_calls: Some(DEFAULT_MAX_CALLS),
            baseline_nodes: DEFAULT_BASELINE_NODES,
            mode: None,
            group_size: None,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            out_dir: None,
        }
    }

    pub fn sweep(&self) -> Result<Sweep, HarnessError> {
        let mut sweep = Sweep::for_experiment(self.experiment, self.scale)?;
        if let Some(mode) = self.mode {
            sweep.mode = mode;
        }
        if let Some(g) = self.group_size {
            sweep.group_size = g;
        }
        Ok(sweep)
    }
}

#[derive(Clone, Debug)]
pub struct Solved {
    pub record: ExperimentRecord,
    pub baseline: Option<BaselineRecord>,
    /// Certificate text for determinate outcomes.
    pub certificate: Option<String>,
    /// The instance in DIMACS form, kept for No and undetermined outcomes.
    pub dimacs: Option<String>,
    /// Whether the emitted certificate passed the independent verifier.
    pub certificate_ok: bool,
    pub odd_vertex_bailouts: u64,
}

/// Generates and solves one instance; the certificate is checked in memory.
pub fn run_instance(
    inst: &Instance,
    mode: Mode,
    alpha_max: u32,
    max_calls: Option<u64>,
    baseline_nodes: Option<u64>,
) -> Result<Solved, HarnessError> {
    let g = generate(&inst.spec).map_err(|source| HarnessError::Generate { id: inst.id.clone(), source })?;
    let cfg = SolveConfig { alpha_max, mode, rng_seed: inst.spec.seed, max_calls, ..SolveConfig::default() };
    let mut solver = Solver::new(cfg);
    let start = Instant::now();
    let (outcome, alpha) =
        solver.bfs_3col(&g).map_err(|source| HarnessError::Solve { id: inst.id.clone(), source })?;
    let time_s = start.elapsed().as_secs_f64();
    let (cert_size, certificate, certificate_ok) = match &outcome {
        SolverOutcome::No(c) => (certificate_size(c), Some(write_uncolorability(c)), check_uncolorability(&g, c).0.is_ok()),
        SolverOutcome::Yes(c) => (g.vertex_count(), Some(write_coloring(c)), check_coloring(&g, c).is_ok()),
        SolverOutcome::Undetermined => (0, None, true),
    };
    let (n, m) = (g.vertex_count(), g.edge_count());
    let record = ExperimentRecord {
        id: inst.id.clone(),
        model: inst.spec.model.to_string(),
        n,
        m,
        avg_degree: 2.0 * m as f64 / n as f64,
        verdict: outcome.verdict(),
        alpha: alpha.value,
        time_s,
        calls: solver.stats().calls,
        cert_size,
    };
    let baseline = baseline_nodes.map(|budget| {
        let start = Instant::now();
        let r = backtrack_3col_limited(&g, budget);
        BaselineRecord {
            id: inst.id.clone(),
            n,
            m,
            verdict: (!r.exhausted).then_some(r.coloring.is_some()),
            time_s: start.elapsed().as_secs_f64(),
            nodes: r.nodes,
        }
    });
    let dimacs = (outcome.verdict() != Verdict::Yes)
        .then(|| write_dimacs_with_comments(&g, &[format!("gen {}", inst.spec.describe())]));
    let odd_vertex_bailouts = solver.stats().odd_vertex_bailouts;
    Ok(Solved { record, baseline, certificate, dimacs, certificate_ok, odd_vertex_bailouts })
}

/// Runs `items` on `threads` workers and returns results in input order.
fn parallel_map<T: Sync, R: Send>(items: &[T], threads: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..threads.max(1).min(items.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let r = f(&items[i]);
                results.lock().expect("no worker panicked")[i] = Some(r);
            });
        }
    });
    results.into_inner().expect("no worker panicked").into_iter().map(|r| r.expect("every item ran")).collect()
}

#[derive(Clone, Debug)]
pub struct ExperimentOutput {
    pub records: Vec<ExperimentRecord>,
    pub baseline: Vec<BaselineRecord>,
    pub summary: Summary,
    pub wall_time_s: f64,
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput, HarnessError> {
    let sweep = cfg.sweep()?;
    let instances = plan(&sweep, cfg.seed);
    let start = Instant::now();
    let baseline_nodes = sweep.baseline.then_some(cfg.baseline_nodes);
    let solved = parallel_map(&instances, cfg.threads, |inst| {
        let r = run_instance(inst, sweep.mode, cfg.alpha_max, cfg.max_calls, baseline_nodes);
        if let Ok(s) = &r {
            log::debug!("{} verdict={} alpha={} t={:.4}", s.record.id, s.record.verdict, s.record.alpha, s.record.time_s);
        }
        r
    })
    .into_iter()
    .collect::<Result<Vec<Solved>, HarnessError>>()?;
    let wall_time_s = start.elapsed().as_secs_f64();

    let records: Vec<ExperimentRecord> = solved.iter().map(|s| s.record.clone()).collect();
    let baseline: Vec<BaselineRecord> = solved.iter().filter_map(|s| s.baseline.clone()).collect();
    let title = format!(
        "experiment {} ({} scale, model {}, mode {:?}, seed {})",
        cfg.experiment,
        match cfg.scale {
            Scale::Desk => "desk",
            Scale::Full => "full",
        },
        sweep.model,
        sweep.mode,
        cfg.seed
    );
    let mut summary = Summary::build(&title, &records, &baseline, sweep.grouping, cfg.alpha_max);
    summary.certificate_failures = solved.iter().filter(|s| !s.certificate_ok).count();
    summary.odd_vertex_instances = solved.iter().filter(|s| s.odd_vertex_bailouts > 0).count();

    if let Some(dir) = &cfg.out_dir {
        write_outputs(dir, &solved, &records, &baseline, &summary)?;
    }
    Ok(ExperimentOutput { records, baseline, summary, wall_time_s })
}

fn write_outputs(
    dir: &Path,
    solved: &[Solved],
    records: &[ExperimentRecord],
    baseline: &[BaselineRecord],
    summary: &Summary,
) -> Result<(), HarnessError> {
    for sub in ["certs", "instances"] {
        let p = dir.join(sub);
        fs::create_dir_all(&p).map_err(io_err(&p))?;
    }
    let path = dir.join("records.csv");
    write_records_csv(fs::File::create(&path).map_err(io_err(&path))?, records)?;
    if !baseline.is_empty() {
        let path = dir.join("baseline.csv");
        write_baseline_csv(fs::File::create(&path).map_err(io_err(&path))?, baseline)?;
    }
    let path = dir.join("summary.txt");
    fs::write(&path, summary.to_string()).map_err(io_err(&path))?;
    for s in solved {
        if let Some(text) = &s.dimacs {
            let path = dir.join("instances").join(format!("{}.col", s.record.id));
            fs::write(&path, text).map_err(io_err(&path))?;
        }
        if let (Verdict::No, Some(text)) = (s.record.verdict, &s.certificate) {
            let path = dir.join("certs").join(format!("{}.cert", s.record.id));
            fs::write(&path, text).map_err(io_err(&path))?;
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub checked: usize,
    /// `(instance id, reason)` for every No row whose files do not verify.
    pub failures: Vec<(String, String)>,
}

/// Re-reads every No row's instance and certificate from `dir` and checks
/// them with the independent verifier.
pub fn audit_certificates(dir: &Path) -> Result<AuditReport, HarnessError> {
    let path = dir.join("records.csv");
    let records = read_records_csv(fs::File::open(&path).map_err(io_err(&path))?)
        .map_err(|message| HarnessError::Data { path: path.clone(), message })?;
    let mut report = AuditReport::default();
    for r in records.iter().filter(|r| r.verdict == Verdict::No) {
        report.checked += 1;
        let graph_path = dir.join("instances").join(format!("{}.col", r.id));
        let cert_path = dir.join("certs").join(format!("{}.cert", r.id));
        let outcome = (|| -> Result<(), String> {
            let g = parse_dimacs(&fs::read_to_string(&graph_path).map_err(|e| format!("{}: {e}", graph_path.display()))?)
                .map_err(|e| e.to_string())?
                .graph;
            let text = fs::read_to_string(&cert_path).map_err(|e| format!("{}: {e}", cert_path.display()))?;
            match parse_certificate(&text).map_err(|e| e.to_string())? {
                Certificate::Uncolorability(c) => check_uncolorability(&g, &c).0.map_err(|e| e.to_string()),
                Certificate::Coloring(_) => Err("a No row carries a coloring".into()),
            }
        })();
        if let Err(reason) = outcome {
            report.failures.push((r.id.clone(), reason));
        }
    }
    Ok(report)
}
