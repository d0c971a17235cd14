//! Aggregate statistics over experiment records.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use super::{BaselineRecord, ExperimentRecord};
use crate::certificate::Verdict;

/// Minimum number of samples before a tail bound is audited.
pub const AUDIT_MIN_SAMPLES: usize = 30;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TimeStats {
    pub count: usize,
    pub mean: f64,
    pub max: f64,
}

impl TimeStats {
    fn of(times: impl Iterator<Item = f64>) -> TimeStats {
        let (mut count, mut sum, mut max) = (0usize, 0.0, 0.0f64);
        for t in times {
            count += 1;
            sum += t;
            max = max.max(t);
        }
        TimeStats { count, mean: if count == 0 { 0.0 } else { sum / count as f64 }, max }
    }
}

/// One row of the per-group table: a vertex count, or a degree bin.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupRow {
    pub label: String,
    /// Group position on the sweep axis (n, or the bin midpoint of d).
    pub x: f64,
    pub yes: usize,
    pub no: usize,
    pub undetermined: usize,
    pub yes_time: TimeStats,
    pub no_time: TimeStats,
    /// Baseline times for the same instances, when a baseline was run.
    pub baseline_time: Option<TimeStats>,
    pub baseline_no_nodes_max: Option<u64>,
}

impl GroupRow {
    pub fn total(&self) -> usize {
        self.yes + self.no + self.undetermined
    }

    pub fn solver_max_time(&self) -> f64 {
        self.yes_time.max.max(self.no_time.max)
    }
}

/// Tail check of the observed-alpha distribution against `2^-(k+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TailCheck {
    pub k: u32,
    /// Fraction of samples whose alpha exceeds `k`.
    pub fraction: f64,
    pub bound: f64,
    /// Three binomial standard deviations of the bound at this sample size.
    pub slack: f64,
    pub audited: bool,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlphaHistogram {
    /// `counts[k]` instances resolved at alpha `k`.
    pub counts: Vec<usize>,
    /// Instances no budget resolved (cap reached or call budget spent).
    pub capped: usize,
    pub total: usize,
    pub tails: Vec<TailCheck>,
}

impl AlphaHistogram {
    pub fn from_records(records: &[ExperimentRecord], alpha_max: u32) -> AlphaHistogram {
        let mut counts = vec![0usize; alpha_max as usize + 1];
        let mut capped = 0;
        for r in records {
            if r.verdict == Verdict::Undetermined {
                capped += 1;
            } else {
                counts[(r.alpha as usize).min(alpha_max as usize)] += 1;
            }
        }
        let total = records.len();
        let tails = (0..=alpha_max)
            .map(|k| {
                // Capped instances count as exceeding every k.
                let above: usize = counts[k as usize + 1..].iter().sum::<usize>() + capped;
                let fraction = if total == 0 { 0.0 } else { above as f64 / total as f64 };
                let bound = 0.5f64.powi(k as i32 + 1);
                let slack = if total == 0 { 0.0 } else { 3.0 * (bound * (1.0 - bound) / total as f64).sqrt() };
                let audited = total >= AUDIT_MIN_SAMPLES;
                TailCheck { k, fraction, bound, slack, audited, ok: !audited || fraction <= bound + slack }
            })
            .collect();
        AlphaHistogram { counts, capped, total, tails }
    }

    pub fn max_observed(&self) -> Option<u32> {
        self.counts.iter().rposition(|&c| c > 0).map(|k| k as u32)
    }

    /// Counts never increase with alpha.
    pub fn is_monotone(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn tail_violations(&self) -> Vec<&TailCheck> {
        self.tails.iter().filter(|t| !t.ok).collect()
    }
}

/// Logistic model `P(yes | x) = 1 / (1 + exp(-(b0 + b1 x)))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogisticFit {
    pub b0: f64,
    pub b1: f64,
}

impl LogisticFit {
    /// The `x` at which yes and no are equally likely.
    pub fn midpoint(&self) -> f64 {
        -self.b0 / self.b1
    }
}

/// Maximum-likelihood logistic fit by Newton iterations. `None` when the
/// outcomes do not overlap enough for a finite fit.
pub fn logistic_fit(points: &[(f64, bool)]) -> Option<LogisticFit> {
    let yes = points.iter().filter(|p| p.1).count();
    if yes == 0 || yes == points.len() {
        return None;
    }
    let mean = points.iter().map(|p| p.0).sum::<f64>() / points.len() as f64;
    let (mut b0, mut b1) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let (mut g0, mut g1, mut h00, mut h01, mut h11) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for &(x, y) in points {
            let z = x - mean;
            let p = 1.0 / (1.0 + (-(b0 + b1 * z)).exp());
            let r = if y { 1.0 } else { 0.0 } - p;
            let w = p * (1.0 - p);
            g0 += r;
            g1 += r * z;
            h00 += w;
            h01 += w * z;
            h11 += w * z * z;
        }
        let det = h00 * h11 - h01 * h01;
        if det.abs() < 1e-12 {
            return None;
        }
        let d0 = (h11 * g0 - h01 * g1) / det;
        let d1 = (h00 * g1 - h01 * g0) / det;
        b0 += d0;
        b1 += d1;
        if !b0.is_finite() || !b1.is_finite() {
            return None;
        }
        if d0.abs() + d1.abs() < 1e-10 {
            break;
        }
    }
    // Undo the centering.
    Some(LogisticFit { b0: b0 - b1 * mean, b1 })
}

/// Least-squares slope of `ln y` against `ln x` over points with `y > 0`.
pub fn log_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points.iter().filter(|p| p.0 > 0.0 && p.1 > 0.0).map(|p| (p.0.ln(), p.1.ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// How records are grouped for the per-group table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Grouping {
    ByN,
    /// Bins of `width` over the average degree, starting at `start`.
    ByDegree { start: f64, width: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub title: String,
    pub records: usize,
    pub groups: Vec<GroupRow>,
    pub histogram: AlphaHistogram,
    /// Logistic midpoint of yes/no over the average degree.
    pub degree_crossover: Option<f64>,
    /// Slope of the solver's per-n max time against n on a log-log scale,
    /// fitted over `n >= tail_from`.
    pub solver_tail_slope: Option<f64>,
    pub baseline_tail_slope: Option<f64>,
    pub tail_from: usize,
    /// Smallest n from which the baseline's max time stays above the
    /// solver's for the rest of the sweep.
    pub time_crossover_n: Option<usize>,
    pub certificate_failures: usize,
    pub disagreements: usize,
    /// Instances on which the planar driver met an odd-degree vertex in an
    /// otherwise finished triangulation.
    pub odd_vertex_instances: usize,
}

impl Summary {
    pub fn build(
        title: &str,
        records: &[ExperimentRecord],
        baseline: &[BaselineRecord],
        grouping: Grouping,
        alpha_max: u32,
    ) -> Summary {
        let key = |r: &ExperimentRecord| -> (i64, String, f64) {
            match grouping {
                Grouping::ByN => (r.n as i64, format!("n={}", r.n), r.n as f64),
                Grouping::ByDegree { start, width } => {
                    let b = ((r.avg_degree - start) / width).floor().max(0.0) as i64;
                    let lo = start + b as f64 * width;
                    (b, format!("d=[{lo:.2},{:.2})", lo + width), lo + width / 2.0)
                }
            }
        };
        let base: BTreeMap<&str, &BaselineRecord> = baseline.iter().map(|b| (b.id.as_str(), b)).collect();
        let mut buckets: BTreeMap<i64, (String, f64, Vec<&ExperimentRecord>)> = BTreeMap::new();
        for r in records {
            let (k, label, x) = key(r);
            buckets.entry(k).or_insert_with(|| (label, x, Vec::new())).2.push(r);
        }
        let mut disagreements = 0;
        let groups: Vec<GroupRow> = buckets
            .into_values()
            .map(|(label, x, rs)| {
                let count = |v| rs.iter().filter(|r| r.verdict == v).count();
                let times = |v| TimeStats::of(rs.iter().filter(|r| r.verdict == v).map(|r| r.time_s));
                let bs: Vec<&BaselineRecord> = rs.iter().filter_map(|r| base.get(r.id.as_str()).copied()).collect();
                for (r, b) in rs.iter().filter_map(|r| base.get(r.id.as_str()).map(|b| (r, b))) {
                    if let Some(bv) = b.verdict {
                        if r.verdict != Verdict::Undetermined && (r.verdict == Verdict::Yes) != bv {
                            disagreements += 1;
                        }
                    }
                }
                GroupRow {
                    label,
                    x,
                    yes: count(Verdict::Yes),
                    no: count(Verdict::No),
                    undetermined: count(Verdict::Undetermined),
                    yes_time: times(Verdict::Yes),
                    no_time: times(Verdict::No),
                    baseline_time: (!bs.is_empty()).then(|| TimeStats::of(bs.iter().map(|b| b.time_s))),
                    baseline_no_nodes_max: bs.iter().filter(|b| b.verdict == Some(false)).map(|b| b.nodes).max(),
                }
            })
            .collect();

        let points: Vec<(f64, bool)> = records
            .iter()
            .filter(|r| r.verdict != Verdict::Undetermined)
            .map(|r| (r.avg_degree, r.verdict == Verdict::Yes))
            .collect();
        let degree_crossover = match grouping {
            Grouping::ByDegree { .. } => logistic_fit(&points).map(|f| f.midpoint()),
            Grouping::ByN => None,
        };

        let n_max = records.iter().map(|r| r.n).max().unwrap_or(0);
        let tail_from = n_max / 2;
        let tail = |f: &dyn Fn(&GroupRow) -> Option<f64>| {
            let pts: Vec<(f64, f64)> =
                groups.iter().filter(|g| g.x >= tail_from as f64).filter_map(|g| f(g).map(|y| (g.x, y))).collect();
            log_log_slope(&pts)
        };
        let (solver_tail_slope, baseline_tail_slope, time_crossover_n) = match grouping {
            Grouping::ByN => {
                let crossover = if baseline.is_empty() {
                    None
                } else {
                    let mut from = None;
                    for g in groups.iter().rev() {
                        match g.baseline_time.as_ref() {
                            Some(b) if b.max > g.solver_max_time() => from = Some(g.x as usize),
                            _ => break,
                        }
                    }
                    from
                };
                (
                    tail(&|g| Some(g.solver_max_time())),
                    if baseline.is_empty() { None } else { tail(&|g| g.baseline_time.as_ref().map(|b| b.max)) },
                    crossover,
                )
            }
            Grouping::ByDegree { .. } => (None, None, None),
        };

        Summary {
            title: title.to_string(),
            records: records.len(),
            groups,
            histogram: AlphaHistogram::from_records(records, alpha_max),
            degree_crossover,
            solver_tail_slope,
            baseline_tail_slope,
            tail_from,
            time_crossover_n,
            certificate_failures: 0,
            disagreements,
            odd_vertex_instances: 0,
        }
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), |x| format!("{x:.3}"))
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {}", self.title)?;
        writeln!(f, "instances: {}", self.records)?;
        writeln!(f)?;
        let with_base = self.groups.iter().any(|g| g.baseline_time.is_some());
        let mut head = String::from("group              yes    no   inf  p(yes)  yes_mean   yes_max   no_mean    no_max");
        if with_base {
            head.push_str("   bt_mean    bt_max  bt_no_nodes");
        }
        writeln!(f, "{head}")?;
        for g in &self.groups {
            let mut line = String::new();
            let det = g.yes + g.no;
            let p = if det == 0 { f64::NAN } else { g.yes as f64 / det as f64 };
            write!(
                line,
                "{:<16} {:>5} {:>5} {:>5}  {:>6.3} {:>9.5} {:>9.5} {:>9.5} {:>9.5}",
                g.label, g.yes, g.no, g.undetermined, p, g.yes_time.mean, g.yes_time.max, g.no_time.mean, g.no_time.max
            )
            .expect("string write");
            if let Some(b) = &g.baseline_time {
                write!(line, " {:>9.5} {:>9.5} {:>12}", b.mean, b.max, g.baseline_no_nodes_max.unwrap_or(0))
                    .expect("string write");
            }
            writeln!(f, "{line}")?;
        }
        writeln!(f)?;
        let h = &self.histogram;
        writeln!(f, "alpha  count  fraction  2^-(k+1)  P(alpha>k)  bound+3sd  ok")?;
        for (k, &c) in h.counts.iter().enumerate() {
            let t = &h.tails[k];
            let frac = if h.total == 0 { 0.0 } else { c as f64 / h.total as f64 };
            let ok = if !t.audited { "-" } else if t.ok { "yes" } else { "NO" };
            writeln!(
                f,
                "{k:>5} {c:>6} {frac:>9.4} {:>9.4} {:>11.4} {:>10.4}  {ok}",
                0.5f64.powi(k as i32 + 1),
                t.fraction,
                t.bound + t.slack
            )?;
        }
        writeln!(f, "capped {:>5}", h.capped)?;
        writeln!(f, "histogram monotone: {}", h.is_monotone())?;
        writeln!(f, "max observed alpha: {}", h.max_observed().map_or("n/a".into(), |a| a.to_string()))?;
        if self.degree_crossover.is_some() {
            writeln!(f, "yes/no crossover (logistic midpoint in d): {}", opt(self.degree_crossover))?;
        }
        if self.solver_tail_slope.is_some() || self.baseline_tail_slope.is_some() {
            writeln!(f, "log-log slope of max time for n >= {}: solver {}, baseline {}", self.tail_from, opt(self.solver_tail_slope), opt(self.baseline_tail_slope))?;
            writeln!(
                f,
                "baseline max time stays above solver max time from n = {}",
                self.time_crossover_n.map_or("n/a (never)".into(), |n| n.to_string())
            )?;
        }
        writeln!(f, "certificate failures: {}", self.certificate_failures)?;
        writeln!(f, "verdict disagreements with baseline: {}", self.disagreements)?;
        writeln!(f, "instances with odd-vertex bailouts: {}", self.odd_vertex_instances)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logistic_recovers_a_known_midpoint() {
        // Deterministic sample from P(yes | x) = 1 / (1 + e^{2(x - 4.7)}).
        let mut pts = Vec::new();
        for i in 0..600 {
            let x = 3.0 + 3.0 * i as f64 / 600.0;
            let p = 1.0 / (1.0 + (2.0 * (x - 4.7)).exp());
            for j in 0..10 {
                pts.push((x, (j as f64 + 0.5) / 10.0 < p));
            }
        }
        let fit = logistic_fit(&pts).unwrap();
        assert!((fit.midpoint() - 4.7).abs() < 0.05, "{fit:?}");
        assert!(fit.b1 < 0.0);
        assert_eq!(logistic_fit(&[(1.0, true), (2.0, true)]), None);
    }

    #[test]
    fn slope_of_a_power_law() {
        let pts: Vec<(f64, f64)> = (1..20).map(|n| (n as f64, 3.0 * (n as f64).powi(3))).collect();
        assert!((log_log_slope(&pts).unwrap() - 3.0).abs() < 1e-9);
        assert_eq!(log_log_slope(&[(1.0, 1.0)]), None);
    }

    fn rec(alpha: u32, verdict: Verdict) -> ExperimentRecord {
        ExperimentRecord {
            id: String::new(),
            model: "er".into(),
            n: 10,
            m: 20,
            avg_degree: 4.0,
            verdict,
            alpha,
            time_s: 0.0,
            calls: 1,
            cert_size: 0,
        }
    }

    #[test]
    fn histogram_tails() {
        let mut rs: Vec<ExperimentRecord> = (0..60).map(|_| rec(0, Verdict::Yes)).collect();
        rs.extend((0..30).map(|_| rec(1, Verdict::No)));
        rs.extend((0..10).map(|_| rec(7, Verdict::Undetermined)));
        let h = AlphaHistogram::from_records(&rs, 6);
        assert_eq!(h.counts[..2], [60, 30]);
        assert_eq!(h.capped, 10);
        assert!(h.is_monotone());
        assert!((h.tails[0].fraction - 0.4).abs() < 1e-12);
        assert!(h.tails[0].ok);
        // 10% capped stays under 2^-4 + 3 sd = 0.135 but exceeds
        // 2^-5 + 3 sd = 0.084.
        assert!(h.tails[3].ok);
        assert!(!h.tails[4].ok);
        assert_eq!(h.max_observed(), Some(1));
    }
}
