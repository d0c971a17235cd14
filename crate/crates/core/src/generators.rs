//! Seeded random instance families.
//!
//! * `pseudo_planar`: a random stacked triangulation thinned to `⌊dn/2⌋`
//!   edges. A random spanning tree of the triangulation is kept first so the
//!   result is connected with exactly that many edges. Up to 100 attempts are
//!   drawn; the first one without a K4 is returned, otherwise the last.
//! * `planar4reg`: 4-regular planar graphs grown from the octahedron by local
//!   expansions that keep the graph simple, planar and 4-regular.
//! * `er`: a Hamiltonian path over a random permutation plus uniformly chosen
//!   extra edges, `⌊dn/2⌋` edges in total.
//!
//! All families finish with a uniformly random relabeling, so vertex ids carry
//! no trace of the construction order. Generation is a pure function of the
//! [`GenSpec`].

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{contains_k4, Graph, VertexId};
use crate::planarity::is_planar;

pub const K4_FREE_ATTEMPTS: usize = 100;

/// Operation probabilities of the 4-regular family: double edge split,
/// octahedral expansion, ladder expansion, triangle inflation.
pub const DEFAULT_OP_PROBS: [f64; 4] = [0.80, 0.05, 0.10, 0.05];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    PseudoPlanar,
    Planar4Regular,
    ErConnected,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::PseudoPlanar => "planar",
            Model::Planar4Regular => "planar4reg",
            Model::ErConnected => "er",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Model {
    type Err = String;
    fn from_str(s: &str) -> Result<Model, String> {
        match s {
            "planar" | "pseudo_planar" => Ok(Model::PseudoPlanar),
            "planar4reg" | "planar_4regular" => Ok(Model::Planar4Regular),
            "er" | "er_connected" => Ok(Model::ErConnected),
            _ => Err(format!("unknown model `{s}` (expected planar, planar4reg or er)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenSpec {
    pub model: Model,
    pub n: usize,
    /// Target average degree; ignored by `planar4reg`.
    pub avg_degree: f64,
    /// Ignored except by `planar4reg`.
    pub op_probs: [f64; 4],
    pub seed: u64,
}

impl GenSpec {
    pub fn new(model: Model, n: usize, avg_degree: f64, seed: u64) -> GenSpec {
        GenSpec { model, n, avg_degree, op_probs: DEFAULT_OP_PROBS, seed }
    }

    /// Edge count implied by `avg_degree`.
    pub fn target_edges(&self) -> usize {
        (self.avg_degree * self.n as f64 / 2.0 + 1e-9).floor() as usize
    }

    /// One-line description for file headers.
    pub fn describe(&self) -> String {
        match self.model {
            Model::Planar4Regular => format!(
                "model={} n={} ops={},{},{},{} seed={}",
                self.model, self.n, self.op_probs[0], self.op_probs[1], self.op_probs[2], self.op_probs[3], self.seed
            ),
            _ => format!("model={} n={} d={} seed={}", self.model, self.n, self.avg_degree, self.seed),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("average degree {d} is outside [{lo}, {hi}] for n = {n}")]
    InfeasibleDegree { n: usize, d: f64, lo: f64, hi: f64 },
    #[error("{0} vertices are too few for this model")]
    TooFewVertices(usize),
    #[error("operation probabilities must be non-negative and sum to 1, got {0:?}")]
    BadProbabilities([f64; 4]),
    #[error("no 4-regular planar graph on {0} vertices is reachable from the octahedron")]
    Unreachable(usize),
}

/// Independent per-instance seed derived from a batch seed.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    mix(seed ^ mix(index))
}

pub fn generate(spec: &GenSpec) -> Result<Graph, GenError> {
    match spec.model {
        Model::PseudoPlanar => gen_pseudo_planar(spec.n, spec.avg_degree, spec.seed),
        Model::Planar4Regular => gen_4regular_planar(spec.n, spec.op_probs, spec.seed),
        Model::ErConnected => gen_er_connected(spec.n, spec.avg_degree, spec.seed),
    }
}

fn relabeled(n: usize, edges: &[(u32, u32)], rng: &mut ChaCha8Rng) -> Graph {
    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm.shuffle(rng);
    Graph::from_edges(n, edges.iter().map(|&(a, b)| (perm[a as usize], perm[b as usize])))
        .expect("generated edge lists are simple")
}

/// Edges of a random stacked triangulation on `n >= 3` vertices.
fn stacked_triangulation(n: usize, rng: &mut ChaCha8Rng) -> Vec<(u32, u32)> {
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut faces: Vec<[u32; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    for v in 3..n as u32 {
        let i = rng.random_range(0..faces.len());
        let [a, b, c] = faces[i];
        faces[i] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([c, a, v]);
        edges.extend([(a, v), (b, v), (c, v)]);
    }
    edges
}

pub fn gen_pseudo_planar(n: usize, d: f64, seed: u64) -> Result<Graph, GenError> {
    if n < 4 {
        return Err(GenError::TooFewVertices(n));
    }
    let hi = 6.0 - 12.0 / n as f64;
    if !(2.0..=hi + 1e-9).contains(&d) {
        return Err(GenError::InfeasibleDegree { n, d, lo: 2.0, hi });
    }
    let m = GenSpec::new(Model::PseudoPlanar, n, d, seed).target_edges();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = None;
    for _ in 0..K4_FREE_ATTEMPTS {
        let mut pool = stacked_triangulation(n, &mut rng);
        pool.shuffle(&mut rng);
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let (mut kept, mut rest) = (Vec::with_capacity(m), Vec::new());
        for (a, b) in pool {
            let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
            if ra != rb {
                parent[ra] = rb;
                kept.push((a, b));
            } else {
                rest.push((a, b));
            }
        }
        // `rest` is already in uniformly random order.
        kept.extend(rest.into_iter().take(m - (n - 1)));
        let g = relabeled(n, &kept, &mut rng);
        if contains_k4(&g).is_none() {
            return Ok(g);
        }
        last = Some(g);
    }
    Ok(last.expect("at least one attempt"))
}

pub fn gen_er_connected(n: usize, d: f64, seed: u64) -> Result<Graph, GenError> {
    if n < 2 {
        return Err(GenError::TooFewVertices(n));
    }
    let m = GenSpec::new(Model::ErConnected, n, d, seed).target_edges();
    let max = n * (n - 1) / 2;
    if m < n - 1 || m > max {
        let lo = 2.0 * (n - 1) as f64 / n as f64;
        return Err(GenError::InfeasibleDegree { n, d, lo, hi: (n - 1) as f64 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.shuffle(&mut rng);
    let key = |a: u32, b: u32| if a < b { (a, b) } else { (b, a) };
    let mut edges: Vec<(u32, u32)> = order.windows(2).map(|w| key(w[0], w[1])).collect();
    let mut present: HashSet<(u32, u32)> = edges.iter().copied().collect();
    if m - edges.len() > max / 2 {
        let mut free: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|a| (a + 1..n as u32).map(move |b| (a, b)))
            .filter(|p| !present.contains(p))
            .collect();
        free.shuffle(&mut rng);
        edges.extend(free.into_iter().take(m - (n - 1)));
    } else {
        while edges.len() < m {
            let (a, b) = (rng.random_range(0..n as u32), rng.random_range(0..n as u32));
            if a != b && present.insert(key(a, b)) {
                edges.push(key(a, b));
            }
        }
    }
    Ok(Graph::from_edges(n, edges).expect("simple by construction"))
}

/// Mutable 4-regular plane graph under expansion.
struct Quartic {
    adj: Vec<BTreeSet<u32>>,
}

impl Quartic {
    fn octahedron() -> Quartic {
        let mut adj = vec![BTreeSet::new(); 6];
        for a in 0..6u32 {
            for b in 0..6u32 {
                if a != b && a / 2 != b / 2 {
                    adj[a as usize].insert(b);
                }
            }
        }
        Quartic { adj }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    fn graph(&self) -> Graph {
        let edges = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.iter().filter(move |&&b| b > a as u32).map(move |&b| (a as u32, b)));
        Graph::from_edges(self.len(), edges).expect("simple")
    }

    fn link(&mut self, a: u32, b: u32) {
        self.adj[a as usize].insert(b);
        self.adj[b as usize].insert(a);
    }

    fn unlink(&mut self, a: u32, b: u32) {
        self.adj[a as usize].remove(&b);
        self.adj[b as usize].remove(&a);
    }

    fn fresh(&mut self) -> u32 {
        self.adj.push(BTreeSet::new());
        (self.adj.len() - 1) as u32
    }
}

/// Face boundary edges `(walk[i], walk[i+1])`.
fn face_edges(face: &[VertexId]) -> Vec<(u32, u32)> {
    (0..face.len()).map(|i| (face[i].0, face[(i + 1) % face.len()].0)).collect()
}

fn disjoint(es: &[(u32, u32)]) -> bool {
    let mut vs: Vec<u32> = es.iter().flat_map(|&(a, b)| [a, b]).collect();
    vs.sort();
    vs.windows(2).all(|w| w[0] != w[1])
}

const INCREMENTS: [usize; 4] = [1, 4, 2, 3];

/// Applies operation `op` at a random site. Returns false (graph untouched)
/// when no site exists.
fn expand(q: &mut Quartic, op: usize, rng: &mut ChaCha8Rng) -> bool {
    let emb = is_planar(&q.graph()).expect("the family stays planar");
    let faces = emb.faces();
    match op {
        // Double edge split: new vertex joined to the ends of two disjoint
        // edges of one face.
        0 => {
            let sites: Vec<[(u32, u32); 2]> = faces
                .iter()
                .flat_map(|f| {
                    let es = face_edges(f);
                    let k = es.len();
                    (0..k).flat_map(move |i| (i + 1..k).map(move |j| (i, j))).filter_map(move |(i, j)| {
                        disjoint(&[es[i], es[j]]).then_some([es[i], es[j]])
                    })
                })
                .collect();
            let Some(&[(a, b), (c, d)]) = sites.choose(rng) else { return false };
            q.unlink(a, b);
            q.unlink(c, d);
            let x = q.fresh();
            for y in [a, b, c, d] {
                q.link(x, y);
            }
            true
        }
        // Octahedral expansion: subdivide the four edges at a vertex and join
        // the subdivision vertices in rotation order.
        1 => {
            let v = rng.random_range(0..q.len() as u32);
            let rot: Vec<u32> = emb.rotation(VertexId(v)).iter().map(|x| x.0).collect();
            let ring: Vec<u32> = rot
                .iter()
                .map(|&a| {
                    q.unlink(v, a);
                    let p = q.fresh();
                    q.link(v, p);
                    q.link(p, a);
                    p
                })
                .collect();
            for i in 0..4 {
                q.link(ring[i], ring[(i + 1) % 4]);
            }
            true
        }
        // Ladder expansion: triangles a b c and c b d share the edge b c.
        // Remove the path a-b-c-d and add adjacent x, y with x ~ a b c and
        // y ~ b c d.
        2 => {
            let darts: HashMap<(u32, u32), usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| f.len() == 3)
                .flat_map(|(i, f)| face_edges(f).into_iter().map(move |e| (e, i)))
                .collect();
            let mut sites: Vec<[u32; 4]> = Vec::new();
            for (&(b, c), &i) in &darts {
                if let Some(&j) = darts.get(&(c, b)) {
                    let third = |k: usize| faces[k].iter().map(|v| v.0).find(|&v| v != b && v != c).expect("triangle");
                    let (a, d) = (third(i), third(j));
                    if a != d {
                        sites.push([a, b, c, d]);
                    }
                }
            }
            sites.sort();
            let Some(&[a, b, c, d]) = sites.choose(rng) else { return false };
            for (s, t) in [(a, b), (b, c), (c, d)] {
                q.unlink(s, t);
            }
            let x = q.fresh();
            let y = q.fresh();
            q.link(x, y);
            for t in [a, b, c] {
                q.link(x, t);
            }
            for t in [b, c, d] {
                q.link(y, t);
            }
            true
        }
        // Triangle inflation: subdivide the sides of a triangular face and
        // join the three subdivision vertices.
        _ => {
            let tris: Vec<&Vec<VertexId>> = faces.iter().filter(|f| f.len() == 3).collect();
            let Some(f) = tris.choose(rng) else { return false };
            let corners = [f[0].0, f[1].0, f[2].0];
            let mids: Vec<u32> = (0..3)
                .map(|i| {
                    let (s, t) = (corners[i], corners[(i + 1) % 3]);
                    q.unlink(s, t);
                    let p = q.fresh();
                    q.link(s, p);
                    q.link(p, t);
                    p
                })
                .collect();
            for i in 0..3 {
                q.link(mids[i], mids[(i + 1) % 3]);
            }
            true
        }
    }
}

pub fn gen_4regular_planar(n: usize, op_probs: [f64; 4], seed: u64) -> Result<Graph, GenError> {
    if op_probs.iter().any(|&p| p < 0.0) || (op_probs.iter().sum::<f64>() - 1.0).abs() > 1e-6 {
        return Err(GenError::BadProbabilities(op_probs));
    }
    if n < 6 {
        return Err(GenError::TooFewVertices(n));
    }
    if n == 7 {
        return Err(GenError::Unreachable(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q = Quartic::octahedron();
    let mut failures = 0;
    while q.len() < n {
        let left = n - q.len();
        let weights: Vec<f64> = (0..4).map(|i| if INCREMENTS[i] <= left { op_probs[i] } else { 0.0 }).collect();
        let total: f64 = weights.iter().sum();
        // Only the double edge split fits the last step; fall back to it even
        // when its probability is zero.
        let op = if total <= 0.0 {
            0
        } else {
            let mut r = rng.random_range(0.0..total);
            let mut op = 0;
            while op < 3 && r >= weights[op] {
                r -= weights[op];
                op += 1;
            }
            op
        };
        let before = q.adj.clone();
        if expand(&mut q, op, &mut rng) && is_planar(&q.graph()).is_some() {
            failures = 0;
        } else {
            q.adj = before;
            failures += 1;
            if failures > 1000 {
                return Err(GenError::Unreachable(n));
            }
        }
    }
    let edges: Vec<(u32, u32)> = q.graph().edges().map(|(a, b)| (a.0, b.0)).collect();
    Ok(relabeled(n, &edges, &mut rng))
}
