//! The parametric 3-coloring procedures.
//!
//! The decision routine ([`Solver::is_3_colorable`]) exhausts forced diamond
//! contractions, stops at a K4 (no) or a triangle (yes), and otherwise spends
//! its recursion budget `alpha` testing, for each non-edge `uv`, whether
//! `G + uv` is uncolorable; such a pair is forced together and the scan
//! restarts. The planar decision routine tests tadpoles instead of non-edges:
//! if `G / xw` is uncolorable then `y w` is forced.
//!
//! The coloring drivers repeatedly contract non-adjacent pairs that the
//! decision routine does not rule out and join the ones it does rule out.
//! [`Mode::Improved`] grows one complete vertex and finishes by 2-coloring
//! its neighbourhood, [`Mode::General`] contracts down to three vertices, and
//! [`Mode::Planar`] grows a planar triangulation and colors it when every
//! degree is even.
//!
//! Every determinate outcome carries a certificate. Colorings are expressed
//! over the live vertices of the input graph. Whenever a nested call returns
//! a coloring, that coloring is also valid for the graph that spawned it
//! (nested graphs only add constraints), so it is returned at once.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::certificate::{
    ColoringCertificate, ContractionStep, Justification, SolverOutcome, UncolorabilityCertificate,
};
use crate::graph::{
    contains_k4, diamond_at, find_tadpoles, induced_neighborhood, k4_at, two_coloring, Graph, VertexId,
};
use crate::planarity::{
    color_even_triangulation, face_sharing_nonedge, is_planar, is_planar_triangulation, planar_preserving_nonedges,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    /// Contract arbitrary non-adjacent pairs down to three vertices.
    General,
    /// Planarity-preserving reduction to an even triangulation.
    Planar,
    /// Grow a complete vertex, then 2-color its neighbourhood.
    #[default]
    Improved,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Mode, String> {
        match s {
            "general" => Ok(Mode::General),
            "planar" => Ok(Mode::Planar),
            "improved" => Ok(Mode::Improved),
            _ => Err(format!("unknown mode `{s}` (expected general, planar or improved)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveConfig {
    pub alpha: u32,
    /// Highest budget tried by [`Solver::bfs_3col`].
    pub alpha_max: u32,
    pub mode: Mode,
    /// Seed for random vertex orderings.
    pub rng_seed: u64,
    /// Re-test planarity of every intermediate graph in planar mode and
    /// count the failures in [`SolveStats::planarity_violations`].
    pub check_planarity: bool,
    /// Give up (undetermined) once this many decision calls were made.
    pub max_calls: Option<u64>,
}

impl Default for SolveConfig {
    fn default() -> SolveConfig {
        SolveConfig {
            alpha: 0,
            alpha_max: 6,
            mode: Mode::Improved,
            rng_seed: 0,
            check_planarity: false,
            max_calls: None,
        }
    }
}

/// Smallest budget at which the auto loop produced a determinate outcome.
/// When `exceeded` is set no budget up to `alpha_max` sufficed and `value`
/// is `alpha_max + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ObservedAlpha {
    pub value: u32,
    pub exceeded: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SolveStats {
    /// Decision calls, nested ones included.
    pub calls: u64,
    /// Decision calls indexed by recursion depth.
    pub calls_by_depth: Vec<u64>,
    pub max_depth: u32,
    /// Largest number of diamond contractions inside one decision call.
    pub max_diamond_rounds: u64,
    /// Calls whose diamond contractions exceeded `C(n, 2)`.
    pub diamond_round_violations: u64,
    /// Top-level decision calls checked against `C(n, 2)^(alpha + 1)`.
    pub envelope_checks: u64,
    pub envelope_violations: u64,
    /// Largest observed ratio of calls to `C(n, 2)^(alpha + 1)`.
    pub max_envelope_ratio: f64,
    pub planarity_checks: u64,
    pub planarity_violations: u64,
    pub k4_bailouts: u64,
    pub non_bipartite_bailouts: u64,
    pub odd_vertex_bailouts: u64,
    pub budget_exhausted: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("planar mode requires a planar input graph")]
    NotPlanar,
    #[error("alpha {alpha} exceeds alpha_max {alpha_max}")]
    AlphaAboveMax { alpha: u32, alpha_max: u32 },
    #[error("random orderings need a graph without contraction history")]
    ContractedInput,
}

enum Seeds {
    All,
    Only(Vec<VertexId>),
}

enum Scan {
    Forced(ContractionStep),
    Colored(Vec<Vec<VertexId>>),
    Nothing,
}

/// Internal outcome: colorings are classes of original vertices.
enum Found {
    No(UncolorabilityCertificate),
    Yes(Vec<Vec<VertexId>>),
    Undetermined,
}

fn pairs(n: usize) -> f64 {
    (n * n.saturating_sub(1) / 2) as f64
}

/// Classes of original vertices under `color`, which maps live vertices of
/// `g` to a color index.
fn lift(g: &Graph, color: impl Fn(VertexId) -> usize) -> Vec<Vec<VertexId>> {
    let mut classes = vec![Vec::new(); 3];
    for (live, members) in g.partition().classes() {
        classes[color(*live)].extend_from_slice(members);
    }
    classes
}

fn partition_coloring(g: &Graph) -> Vec<Vec<VertexId>> {
    let live: Vec<VertexId> = g.vertices().collect();
    debug_assert!(live.len() <= 3);
    lift(g, |v| live.iter().position(|&x| x == v).expect("live vertex"))
}

/// Re-expresses classes of originals over the live vertices of `input`,
/// dropping empty classes and sorting.
fn express(input: &Graph, classes: Vec<Vec<VertexId>>) -> ColoringCertificate {
    let mut root = vec![None; input.original_count()];
    for (live, members) in input.partition().classes() {
        for m in members {
            root[m.index()] = Some(*live);
        }
    }
    let mut out: Vec<Vec<VertexId>> = classes
        .into_iter()
        .map(|class| {
            let mut c: Vec<VertexId> = class.into_iter().filter_map(|o| root[o.index()]).collect();
            c.sort();
            c.dedup();
            c
        })
        .filter(|c| !c.is_empty())
        .collect();
    out.sort();
    ColoringCertificate { classes: out }
}

pub struct Solver {
    cfg: SolveConfig,
    stats: SolveStats,
}

impl Solver {
    pub fn new(cfg: SolveConfig) -> Solver {
        Solver { cfg, stats: SolveStats::default() }
    }

    pub fn config(&self) -> &SolveConfig {
        &self.cfg
    }

    pub fn stats(&self) -> &SolveStats {
        &self.stats
    }

    pub fn take_stats(&mut self) -> SolveStats {
        std::mem::take(&mut self.stats)
    }

    /// Decision routine for general graphs.
    pub fn is_3_colorable(&mut self, g: &Graph, alpha: u32) -> SolverOutcome {
        let found = self.top_decide(g.clone(), alpha, false);
        self.publish(g, found)
    }

    /// Decision routine that branches on tadpoles. Requires a planar input.
    pub fn is_3_colorable_planar(&mut self, g: &Graph, alpha: u32) -> Result<SolverOutcome, SolveError> {
        if is_planar(g).is_none() {
            return Err(SolveError::NotPlanar);
        }
        let found = self.top_decide(g.clone(), alpha, true);
        Ok(self.publish(g, found))
    }

    /// Coloring driver that grows a complete vertex.
    pub fn general_3col(&mut self, g: &Graph, alpha: u32) -> SolverOutcome {
        let found = self.improved(g, alpha);
        self.publish(g, found)
    }

    /// Coloring driver that contracts arbitrary non-adjacent pairs.
    pub fn general_3col_basic(&mut self, g: &Graph, alpha: u32) -> SolverOutcome {
        let found = self.basic(g, alpha);
        self.publish(g, found)
    }

    /// Planarity-preserving coloring driver. Requires a planar input.
    pub fn general_3col_planar(&mut self, g: &Graph, alpha: u32) -> Result<SolverOutcome, SolveError> {
        if is_planar(g).is_none() {
            return Err(SolveError::NotPlanar);
        }
        let found = self.planar(g, alpha);
        Ok(self.publish(g, found))
    }

    /// Runs the configured driver at budget `alpha`.
    pub fn solve(&mut self, g: &Graph, alpha: u32) -> Result<SolverOutcome, SolveError> {
        match self.cfg.mode {
            Mode::Improved => Ok(self.general_3col(g, alpha)),
            Mode::General => Ok(self.general_3col_basic(g, alpha)),
            Mode::Planar => self.general_3col_planar(g, alpha),
        }
    }

    /// Runs the configured driver at the configured budget.
    pub fn solve_configured(&mut self, g: &Graph) -> Result<SolverOutcome, SolveError> {
        if self.cfg.alpha > self.cfg.alpha_max {
            return Err(SolveError::AlphaAboveMax { alpha: self.cfg.alpha, alpha_max: self.cfg.alpha_max });
        }
        self.solve(g, self.cfg.alpha)
    }

    /// Tries budgets `0..=alpha_max` in turn, one component at a time, and
    /// returns the first determinate outcome with the budget it needed.
    pub fn bfs_3col(&mut self, g: &Graph) -> Result<(SolverOutcome, ObservedAlpha), SolveError> {
        if self.cfg.mode == Mode::Planar && is_planar(g).is_none() {
            return Err(SolveError::NotPlanar);
        }
        let components: Vec<Graph> = match g.components() {
            comps if comps.len() <= 1 => vec![g.clone()],
            comps => comps.iter().map(|c| g.induced(c)).collect(),
        };
        let mut pending: Vec<usize> = (0..components.len()).collect();
        let mut classes = vec![Vec::new(); 3];
        for alpha in 0..=self.cfg.alpha_max {
            let mut still = Vec::new();
            for &i in &pending {
                match self.run_mode(&components[i], alpha) {
                    Found::No(cert) => {
                        let seen = ObservedAlpha { value: alpha, exceeded: false };
                        return Ok((SolverOutcome::No(cert), seen));
                    }
                    Found::Yes(c) => {
                        for (all, part) in classes.iter_mut().zip(c) {
                            all.extend(part);
                        }
                    }
                    Found::Undetermined => still.push(i),
                }
            }
            pending = still;
            if pending.is_empty() {
                let seen = ObservedAlpha { value: alpha, exceeded: false };
                return Ok((SolverOutcome::Yes(express(g, classes)), seen));
            }
            if self.stats.budget_exhausted {
                break;
            }
        }
        let seen = ObservedAlpha { value: self.cfg.alpha_max + 1, exceeded: true };
        Ok((SolverOutcome::Undetermined, seen))
    }

    /// Largest observed alpha over `shuffles` random relabelings of `g`,
    /// drawn from the configured seed.
    pub fn observed_alpha_over_orderings(&mut self, g: &Graph, shuffles: u32) -> Result<ObservedAlpha, SolveError> {
        if g.next_id().index() != g.original_count() {
            return Err(SolveError::ContractedInput);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.rng_seed);
        let mut worst = self.bfs_3col(g)?.1;
        for _ in 0..shuffles {
            let mut perm: Vec<u32> = (0..g.original_count() as u32).collect();
            perm.shuffle(&mut rng);
            let seen = self.bfs_3col(&g.relabeled(&perm))?.1;
            if seen.value > worst.value {
                worst = seen;
            }
        }
        Ok(worst)
    }

    fn publish(&self, input: &Graph, found: Found) -> SolverOutcome {
        match found {
            Found::No(c) => SolverOutcome::No(c),
            Found::Yes(classes) => SolverOutcome::Yes(express(input, classes)),
            Found::Undetermined => SolverOutcome::Undetermined,
        }
    }

    fn run_mode(&mut self, g: &Graph, alpha: u32) -> Found {
        match self.cfg.mode {
            Mode::Improved => self.improved(g, alpha),
            Mode::General => self.basic(g, alpha),
            Mode::Planar => self.planar(g, alpha),
        }
    }

    fn aborted(&self) -> bool {
        self.stats.budget_exhausted
    }

    /// A decision call made by a driver, audited against the call envelope.
    fn top_decide(&mut self, g: Graph, alpha: u32, planar: bool) -> Found {
        let n = g.vertex_count();
        let before = self.stats.calls;
        let found = self.decide(g, alpha, 0, Seeds::All, planar);
        if n >= 3 && !self.aborted() {
            let spent = (self.stats.calls - before) as f64;
            let bound = pairs(n).powi(alpha as i32 + 1);
            self.stats.envelope_checks += 1;
            self.stats.max_envelope_ratio = self.stats.max_envelope_ratio.max(spent / bound);
            if spent > bound {
                self.stats.envelope_violations += 1;
            }
        }
        found
    }

    fn audit_planarity(&mut self, g: &Graph) {
        if self.cfg.check_planarity {
            self.stats.planarity_checks += 1;
            if is_planar(g).is_none() {
                self.stats.planarity_violations += 1;
            }
        }
    }

    fn decide(&mut self, mut g: Graph, alpha: u32, depth: u32, seeds: Seeds, planar: bool) -> Found {
        if self.cfg.max_calls.is_some_and(|m| self.stats.calls >= m) {
            self.stats.budget_exhausted = true;
        }
        if self.aborted() {
            return Found::Undetermined;
        }
        self.stats.calls += 1;
        let d = depth as usize;
        if self.stats.calls_by_depth.len() <= d {
            self.stats.calls_by_depth.resize(d + 1, 0);
        }
        self.stats.calls_by_depth[d] += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        if planar {
            self.audit_planarity(&g);
        }

        let n0 = g.vertex_count();
        let mut steps: Vec<ContractionStep> = Vec::new();
        let mut pending: Vec<VertexId> = match seeds {
            Seeds::All => {
                if let Some(k4) = contains_k4(&g) {
                    return Found::No(UncolorabilityCertificate { steps, k4 });
                }
                g.vertices().collect()
            }
            Seeds::Only(vs) => {
                if let Some(k4) = vs.iter().find_map(|&s| k4_at(&g, s)) {
                    return Found::No(UncolorabilityCertificate { steps, k4 });
                }
                vs
            }
        };
        pending.reverse();
        let mut rounds = 0u64;
        loop {
            let closed = exhaust_diamonds(&mut g, &mut pending, &mut steps, &mut rounds);
            self.stats.max_diamond_rounds = self.stats.max_diamond_rounds.max(rounds);
            if rounds as f64 > pairs(n0) {
                self.stats.diamond_round_violations += 1;
            }
            if let Some(k4) = closed {
                return Found::No(UncolorabilityCertificate { steps, k4 });
            }
            if planar && rounds > 0 {
                self.audit_planarity(&g);
            }
            if g.is_complete() && g.vertex_count() <= 3 {
                return Found::Yes(partition_coloring(&g));
            }
            if alpha == 0 {
                return Found::Undetermined;
            }
            let scan = if planar {
                self.scan_tadpoles(&g, alpha, depth)
            } else {
                self.scan_non_edges(&g, alpha, depth)
            };
            match scan {
                Scan::Forced(step) => {
                    let (u, v) = step.pair;
                    let s = g.contract(u, v).expect("forced pair is a live non-edge");
                    steps.push(step);
                    if let Some(k4) = k4_at(&g, s) {
                        return Found::No(UncolorabilityCertificate { steps, k4 });
                    }
                    pending.push(s);
                }
                Scan::Colored(c) => return Found::Yes(c),
                Scan::Nothing => return Found::Undetermined,
            }
        }
    }

    fn scan_non_edges(&mut self, g: &Graph, alpha: u32, depth: u32) -> Scan {
        // `g` is diamond-free and K4-free here. A budget-0 child on `g + uv`
        // can only contract a diamond through the new edge, which needs a
        // common neighbour of `u` and `v`; without one it is undetermined.
        let leaf = alpha == 1 && g.vertex_count() > 3;
        let mut candidates: Vec<(usize, VertexId, VertexId)> = g
            .non_edges()
            .map(|(u, v)| (g.common_neighbor_count(u, v), u, v))
            .filter(|&(c, _, _)| !leaf || c > 0)
            .collect();
        // Pairs with many common neighbours are the likeliest to be forced.
        candidates.sort_by_key(|&(c, u, v)| (std::cmp::Reverse(c), u, v));
        for (_, u, v) in candidates {
            if self.aborted() {
                break;
            }
            let h = g.with_edge(u, v).expect("non-edge");
            match self.decide(h, alpha - 1, depth + 1, Seeds::Only(vec![u, v]), false) {
                Found::No(nested) => {
                    return Scan::Forced(ContractionStep {
                        pair: (u, v),
                        justification: Justification::NestedEdge(Box::new(nested)),
                    })
                }
                Found::Yes(c) => return Scan::Colored(c),
                Found::Undetermined => {}
            }
        }
        Scan::Nothing
    }

    fn scan_tadpoles(&mut self, g: &Graph, alpha: u32, depth: u32) -> Scan {
        // G / xw depends only on (x, w), so each pair is tested once per scan.
        let mut tried: HashSet<(VertexId, VertexId)> = HashSet::new();
        for t in find_tadpoles(g) {
            if self.aborted() {
                break;
            }
            if !tried.insert((t.x, t.w)) {
                continue;
            }
            let (h, s) = g.contracted(t.x, t.w).expect("tadpole x w is a live non-edge");
            match self.decide(h, alpha - 1, depth + 1, Seeds::Only(vec![s]), true) {
                Found::No(nested) => {
                    return Scan::Forced(ContractionStep {
                        pair: (t.y, t.w),
                        justification: Justification::NestedTadpole { tadpole: t, nested: Box::new(nested) },
                    })
                }
                Found::Yes(c) => return Scan::Colored(c),
                Found::Undetermined => {}
            }
        }
        Scan::Nothing
    }

    fn improved(&mut self, g: &Graph, alpha: u32) -> Found {
        match self.top_decide(g.clone(), alpha, false) {
            Found::Undetermined => {}
            found => return found,
        }
        let mut g = g.clone();
        let Some(mut u) = g.vertices().max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))) else {
            return Found::Yes(Vec::new());
        };
        while g.degree(u) + 1 < g.vertex_count() {
            if self.aborted() {
                return Found::Undetermined;
            }
            let v = g
                .vertices()
                .filter(|&v| v != u && !g.has_edge(u, v))
                .min_by_key(|&v| (g.common_neighbor_count(u, v), v))
                .expect("u is not complete");
            let (h, s) = g.contracted(u, v).expect("non-neighbour");
            match self.top_decide(h.clone(), alpha, false) {
                Found::No(_) => g.add_edge(u, v).expect("non-neighbour"),
                Found::Yes(c) => return Found::Yes(c),
                Found::Undetermined => {
                    g = h;
                    u = s;
                }
            }
            if k4_at(&g, u).is_some() {
                self.stats.k4_bailouts += 1;
                return Found::Undetermined;
            }
            if two_coloring(&induced_neighborhood(&g, u)).is_none() {
                self.stats.non_bipartite_bailouts += 1;
                return Found::Undetermined;
            }
        }
        let Some([a, b]) = two_coloring(&induced_neighborhood(&g, u)) else {
            self.stats.non_bipartite_bailouts += 1;
            return Found::Undetermined;
        };
        Found::Yes(lift(&g, |x| {
            if x == u {
                0
            } else if a.binary_search(&x).is_ok() {
                1
            } else {
                debug_assert!(b.binary_search(&x).is_ok());
                2
            }
        }))
    }

    fn basic(&mut self, g: &Graph, alpha: u32) -> Found {
        match self.top_decide(g.clone(), alpha, false) {
            Found::Undetermined => {}
            found => return found,
        }
        let mut g = g.clone();
        while g.vertex_count() > 3 {
            if self.aborted() {
                return Found::Undetermined;
            }
            let Some((u, v)) = g.non_edges().next() else {
                self.stats.k4_bailouts += 1;
                return Found::Undetermined;
            };
            let (h, s) = g.contracted(u, v).expect("non-edge");
            let touched = match self.top_decide(h.clone(), alpha, false) {
                Found::No(_) => {
                    g.add_edge(u, v).expect("non-edge");
                    u
                }
                Found::Yes(c) => return Found::Yes(c),
                Found::Undetermined => {
                    g = h;
                    s
                }
            };
            if k4_at(&g, touched).is_some() {
                self.stats.k4_bailouts += 1;
                return Found::Undetermined;
            }
        }
        Found::Yes(partition_coloring(&g))
    }

    fn planar(&mut self, g: &Graph, alpha: u32) -> Found {
        match self.top_decide(g.clone(), alpha, true) {
            Found::Undetermined => {}
            found => return found,
        }
        let mut g = g.clone();
        let emb = loop {
            if self.aborted() {
                return Found::Undetermined;
            }
            if g.is_complete() && g.vertex_count() <= 3 {
                return Found::Yes(partition_coloring(&g));
            }
            self.stats.planarity_checks += 1;
            let Some(emb) = is_planar(&g) else {
                self.stats.planarity_violations += 1;
                return Found::Undetermined;
            };
            if is_planar_triangulation(&g, &emb) {
                break emb;
            }
            let (u, v) = match face_sharing_nonedge(&g, &emb) {
                Some(p) => p,
                None => *planar_preserving_nonedges(&g)
                    .expect("planar")
                    .first()
                    .expect("a planar graph that is not a triangulation has a planar-preserving non-edge"),
            };
            let (h, s) = g.contracted(u, v).expect("non-edge");
            let touched = match self.top_decide(h.clone(), alpha, true) {
                Found::No(_) => {
                    g.add_edge(u, v).expect("non-edge");
                    u
                }
                Found::Yes(c) => return Found::Yes(c),
                Found::Undetermined => {
                    g = h;
                    s
                }
            };
            if k4_at(&g, touched).is_some() {
                self.stats.k4_bailouts += 1;
                return Found::Undetermined;
            }
        };
        match color_even_triangulation(&g, &emb) {
            Ok(Some(classes)) => Found::Yes(lift(&g, |x| {
                classes.iter().position(|c| c.contains(&x)).expect("every vertex is colored")
            })),
            Ok(None) => {
                self.stats.odd_vertex_bailouts += 1;
                Found::Undetermined
            }
            Err(_) => Found::Undetermined,
        }
    }
}

/// Contracts diamonds found at pending vertices until none is left. New
/// diamonds and K4s after a contraction always contain the survivor, so only
/// survivors are re-queued.
fn exhaust_diamonds(
    g: &mut Graph,
    pending: &mut Vec<VertexId>,
    steps: &mut Vec<ContractionStep>,
    rounds: &mut u64,
) -> Option<[VertexId; 4]> {
    while let Some(x) = pending.pop() {
        if !g.is_live(x) {
            continue;
        }
        let Some(d) = diamond_at(g, x) else { continue };
        let (a, b) = d.pair;
        let s = g.contract(a, b).expect("diamond pair is a live non-edge");
        steps.push(ContractionStep { pair: d.pair, justification: Justification::Diamond { spine: d.spine } });
        *rounds += 1;
        if let Some(k4) = k4_at(g, s) {
            return Some(k4);
        }
        if g.is_live(x) {
            pending.push(x);
        }
        pending.push(s);
    }
    None
}

pub fn is_3_colorable(g: &Graph, alpha: u32) -> SolverOutcome {
    Solver::new(SolveConfig::default()).is_3_colorable(g, alpha)
}

pub fn is_3_colorable_planar(g: &Graph, alpha: u32) -> Result<SolverOutcome, SolveError> {
    Solver::new(SolveConfig::default()).is_3_colorable_planar(g, alpha)
}

pub fn general_3col(g: &Graph, alpha: u32) -> SolverOutcome {
    Solver::new(SolveConfig::default()).general_3col(g, alpha)
}

pub fn general_3col_planar(g: &Graph, alpha: u32) -> Result<SolverOutcome, SolveError> {
    Solver::new(SolveConfig::default()).general_3col_planar(g, alpha)
}

pub fn bfs_3col(g: &Graph, cfg: &SolveConfig) -> Result<(SolverOutcome, ObservedAlpha), SolveError> {
    Solver::new(cfg.clone()).bfs_3col(g)
}
