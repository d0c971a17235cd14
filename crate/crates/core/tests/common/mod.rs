#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trichrome::graph::{Graph, VertexId};

pub fn v(i: u32) -> VertexId {
    VertexId(i)
}

/// Uniform graph with `n` vertices and `round(d n / 2)` edges (capped at
/// the complete graph); may be disconnected.
pub fn random_graph(n: usize, d: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(u32, u32)> =
        (0..n as u32).flat_map(|a| (a + 1..n as u32).map(move |b| (a, b))).collect();
    pairs.shuffle(&mut rng);
    let m = ((d * n as f64 / 2.0).round() as usize).min(pairs.len());
    Graph::from_edges(n, pairs.into_iter().take(m)).unwrap()
}

/// `count` graphs with `n` in `4..=max_n` and degree in `[lo, hi]`, drawn
/// from one seed.
pub fn random_batch(count: usize, max_n: usize, lo: f64, hi: f64, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(4..=max_n);
            let d = rng.random_range(lo..=hi);
            random_graph(n, d, rng.random())
        })
        .collect()
}

/// Brute-force proper 3-colorability over all `3^n` assignments.
pub fn brute_3colorable(g: &Graph) -> bool {
    let vs: Vec<VertexId> = g.vertices().collect();
    let n = vs.len();
    let pos = |x: VertexId| vs.iter().position(|&y| y == x).unwrap();
    let edges: Vec<(usize, usize)> = g.edges().map(|(a, b)| (pos(a), pos(b))).collect();
    let mut color = vec![0u8; n];
    loop {
        if edges.iter().all(|&(a, b)| color[a] != color[b]) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            color[i] += 1;
            if color[i] < 3 {
                break;
            }
            color[i] = 0;
            i += 1;
        }
    }
}

/// All 4-subsets of the live vertices.
pub fn quads(g: &Graph) -> Vec<[VertexId; 4]> {
    let vs: Vec<VertexId> = g.vertices().collect();
    let mut out = Vec::new();
    for a in 0..vs.len() {
        for b in a + 1..vs.len() {
            for c in b + 1..vs.len() {
                for d in c + 1..vs.len() {
                    out.push([vs[a], vs[b], vs[c], vs[d]]);
                }
            }
        }
    }
    out
}

pub fn edges_within(g: &Graph, q: &[VertexId; 4]) -> usize {
    let mut e = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            e += g.has_edge(q[i], q[j]) as usize;
        }
    }
    e
}

/// Graphs for the format round-trips: named shapes, every generator model and
/// small uniform graphs, some with isolated vertices.
pub fn format_corpus() -> Vec<Graph> {
    use trichrome::generators::{derive_seed, gen_4regular_planar, gen_er_connected, gen_pseudo_planar, DEFAULT_OP_PROBS};
    use trichrome::graph::named;
    let mut out = vec![
        named::complete(4),
        named::complete(1),
        Graph::new(3),
        named::wheel(5),
        named::cycle(5),
        named::petersen(),
        named::grotzsch(),
        named::complete_bipartite(3, 3),
        named::octahedron(),
        named::icosahedron(),
        named::diamond(),
        named::tadpole(),
    ];
    for i in 0..20 {
        out.push(gen_pseudo_planar(30 + i as usize, 4.0, derive_seed(31, i)).unwrap());
        out.push(gen_4regular_planar(30, DEFAULT_OP_PROBS, derive_seed(32, i)).unwrap());
        out.push(gen_er_connected(40, 3.0 + i as f64 * 0.15, derive_seed(33, i)).unwrap());
    }
    out.extend(random_batch(100, 12, 1.0, 8.0, 34));
    out
}

fn refutation(g: &Graph) -> Option<trichrome::certificate::UncolorabilityCertificate> {
    use trichrome::certificate::SolverOutcome;
    use trichrome::solver::{bfs_3col, SolveConfig};
    match bfs_3col(g, &SolveConfig::default()).unwrap().0 {
        SolverOutcome::No(c) => Some(c),
        _ => None,
    }
}

/// The graph in scope before top-level step `upto`.
pub fn scope_before(g: &Graph, cert: &trichrome::certificate::UncolorabilityCertificate, upto: usize) -> Graph {
    let mut h = g.clone();
    for s in &cert.steps[..upto] {
        h.contract(s.pair.0, s.pair.1).unwrap();
    }
    h
}

/// A certificate and graph pair that must not verify.
pub struct Tamper {
    pub kind: &'static str,
    pub graph: Graph,
    pub cert: trichrome::certificate::UncolorabilityCertificate,
}

/// Refutations with at least one step, from small dense graphs, from
/// sparser ones near the threshold and from graphs that need nested
/// certificates.
pub fn refuted_instances() -> Vec<(Graph, trichrome::certificate::UncolorabilityCertificate)> {
    use trichrome::generators::{derive_seed, gen_er_connected};
    let small = random_batch(400, 12, 3.5, 8.0, 17);
    let near = (0..40).map(|i| gen_er_connected(40, 5.2, derive_seed(23, i)).unwrap());
    let nested = (0..30).map(|i| gen_er_connected(60, 4.9, derive_seed(29, i)).unwrap());
    small
        .into_iter()
        .chain(near)
        .chain(nested)
        .chain([trichrome::graph::named::grotzsch()])
        .filter_map(|g| refutation(&g).filter(|c| !c.steps.is_empty()).map(|c| (g, c)))
        .collect()
}

/// Dropped steps, a wrong final clique vertex, a spine vertex that misses the
/// pair, witness edges flipped in the input and a wrong clique in a nested
/// certificate.
pub fn tampered_certificates() -> Vec<Tamper> {
    use trichrome::certificate::{ContractionStep, Justification};
    let mut out = Vec::new();
    for (g, cert) in refuted_instances() {
        for i in 0..cert.steps.len() {
            let mut t = cert.clone();
            t.steps.remove(i);
            out.push(Tamper { kind: "dropped step", graph: g.clone(), cert: t });
        }

        let last = scope_before(&g, &cert, cert.steps.len());
        if let Some(x) =
            last.vertices().find(|&x| !cert.k4.contains(&x) && !cert.k4[1..].iter().all(|&y| last.has_edge(x, y)))
        {
            let mut t = cert.clone();
            t.k4[0] = x;
            out.push(Tamper { kind: "wrong k4", graph: g.clone(), cert: t });
        }

        for (i, step) in cert.steps.iter().enumerate() {
            let scope = scope_before(&g, &cert, i);
            let (u, v) = step.pair;
            match &step.justification {
                &Justification::Diamond { spine: (z, w) } => {
                    if let Some(x) = scope.vertices().find(|&x| ![u, v, z, w].contains(&x) && !scope.has_edge(u, x)) {
                        let mut t = cert.clone();
                        t.steps[i] =
                            ContractionStep { pair: (u, v), justification: Justification::Diamond { spine: (x, w) } };
                        out.push(Tamper { kind: "spine swap", graph: g.clone(), cert: t });
                    }
                    if i == 0 {
                        let mut h = g.clone();
                        h.remove_edge(u, z).unwrap();
                        out.push(Tamper { kind: "witness edge removed", graph: h, cert: cert.clone() });
                        let mut h = g.clone();
                        h.add_edge(u, v).unwrap();
                        out.push(Tamper { kind: "pair edge added", graph: h, cert: cert.clone() });
                    }
                }
                Justification::NestedEdge(nested) => {
                    let mut inner = (**nested).clone();
                    inner.k4.swap(0, 3);
                    inner.k4[0] = u;
                    inner.k4[1] = u;
                    let mut t = cert.clone();
                    t.steps[i].justification = Justification::NestedEdge(Box::new(inner));
                    out.push(Tamper { kind: "nested k4", graph: g.clone(), cert: t });
                }
                Justification::NestedTadpole { .. } => {}
            }
        }
    }
    out
}

/// Certificates the solver emits for the corpus in improved and general mode.
pub fn corpus_certificates() -> Vec<trichrome::certificate::Certificate> {
    use trichrome::certificate::{Certificate, SolverOutcome};
    use trichrome::solver::{Mode, SolveConfig, Solver};
    let mut out = Vec::new();
    for g in format_corpus() {
        for mode in [Mode::Improved, Mode::General] {
            let mut s = Solver::new(SolveConfig { mode, max_calls: Some(200_000), ..SolveConfig::default() });
            match s.bfs_3col(&g).unwrap().0 {
                SolverOutcome::Yes(c) => out.push(Certificate::Coloring(c)),
                SolverOutcome::No(c) => out.push(Certificate::Uncolorability(c)),
                SolverOutcome::Undetermined => {}
            }
        }
    }
    out
}
