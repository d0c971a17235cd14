//! Certificate checking. The replay keeps its own ordered adjacency map and
//! shares no code with the detectors in `graph`, so a bug there cannot make
//! a bad certificate pass here.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{ColoringCertificate, ContractionStep, Justification, UncolorabilityCertificate};
use crate::graph::{Graph, VertexId};

/// Why a certificate was rejected. `path` holds the 0-based step index at
/// each nesting level, outermost first; it is empty when the final K4 check
/// fails. Messages number steps and vertices from 1, as the text format does.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub path: Vec<usize>,
    pub reason: String,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.reason)
        } else {
            let path: Vec<String> = self.path.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "step {}: {}", path.join("."), self.reason)
        }
    }
}

impl std::error::Error for Rejection {}

/// A vertex id as written in files.
struct Id(VertexId);

impl fmt::Display for Id {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 .0 + 1)
    }
}

/// True iff `c` has at most three classes that partition the live vertices of
/// `g` and no edge joins two vertices of the same class.
pub fn verify_coloring(g: &Graph, c: &ColoringCertificate) -> bool {
    check_coloring(g, c).is_ok()
}

pub fn check_coloring(g: &Graph, c: &ColoringCertificate) -> Result<(), String> {
    if c.classes.len() > 3 {
        return Err(format!("{} classes, at most 3 allowed", c.classes.len()));
    }
    let mut color: BTreeMap<VertexId, usize> = BTreeMap::new();
    for (i, class) in c.classes.iter().enumerate() {
        for &v in class {
            if !g.is_live(v) {
                return Err(format!("vertex {} is not in the graph", Id(v)));
            }
            if color.insert(v, i).is_some() {
                return Err(format!("vertex {} appears twice", Id(v)));
            }
        }
    }
    if let Some(v) = g.vertices().find(|v| !color.contains_key(v)) {
        return Err(format!("vertex {} is uncolored", Id(v)));
    }
    for (u, v) in g.edges() {
        if color[&u] == color[&v] {
            return Err(format!("edge {}-{} is monochromatic", Id(u), Id(v)));
        }
    }
    Ok(())
}

pub fn verify_uncolorability(g: &Graph, cert: &UncolorabilityCertificate) -> bool {
    check_uncolorability(g, cert).0.is_ok()
}

/// Replays `cert` on a copy of `g`. Returns the verdict together with the
/// number of elementary operations spent (adjacency probes and moved
/// adjacency entries), counted up to the point of rejection.
pub fn check_uncolorability(g: &Graph, cert: &UncolorabilityCertificate) -> (Result<(), Rejection>, u64) {
    let mut replay = Replay::from_graph(g);
    let result = replay.run(cert);
    (result, replay.ops)
}

/// Number of steps, nested certificates included.
pub fn certificate_size(cert: &UncolorabilityCertificate) -> usize {
    cert.steps
        .iter()
        .map(|s| {
            1 + match &s.justification {
                Justification::Diamond { .. } => 0,
                Justification::NestedEdge(c) => certificate_size(c),
                Justification::NestedTadpole { nested, .. } => certificate_size(nested),
            }
        })
        .sum()
}

/// Elementary operations the verifier spends on `cert`.
pub fn verification_step_count(g: &Graph, cert: &UncolorabilityCertificate) -> u64 {
    check_uncolorability(g, cert).1
}

#[derive(Clone)]
struct Scope {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    next: u32,
}

struct Replay {
    root: Scope,
    ops: u64,
}

fn reject(path: &[usize], reason: String) -> Rejection {
    Rejection { path: path.to_vec(), reason }
}

impl Replay {
    fn from_graph(g: &Graph) -> Replay {
        let adj = g.vertices().map(|v| (v, g.neighbors(v).collect())).collect();
        Replay { root: Scope { adj, next: g.next_id().0 }, ops: 0 }
    }

    fn run(&mut self, cert: &UncolorabilityCertificate) -> Result<(), Rejection> {
        let scope = self.root.clone();
        self.check(scope, cert, &mut Vec::new())
    }

    fn live(&mut self, s: &Scope, v: VertexId) -> bool {
        self.ops += 1;
        s.adj.contains_key(&v)
    }

    fn adjacent(&mut self, s: &Scope, a: VertexId, b: VertexId) -> bool {
        self.ops += 1;
        s.adj.get(&a).is_some_and(|n| n.contains(&b))
    }

    fn require_live(&mut self, s: &Scope, vs: &[VertexId], path: &[usize]) -> Result<(), Rejection> {
        for (i, &v) in vs.iter().enumerate() {
            if !self.live(s, v) {
                return Err(reject(path, format!("vertex {} is not live", Id(v))));
            }
            if vs[..i].contains(&v) {
                return Err(reject(path, format!("vertex {} is repeated", Id(v))));
            }
        }
        Ok(())
    }

    fn require_edges(&mut self, s: &Scope, edges: &[(VertexId, VertexId)], path: &[usize]) -> Result<(), Rejection> {
        for &(a, b) in edges {
            if !self.adjacent(s, a, b) {
                return Err(reject(path, format!("witness edge {}-{} is missing", Id(a), Id(b))));
            }
        }
        Ok(())
    }

    fn require_non_edges(
        &mut self,
        s: &Scope,
        pairs: &[(VertexId, VertexId)],
        path: &[usize],
    ) -> Result<(), Rejection> {
        for &(a, b) in pairs {
            if self.adjacent(s, a, b) {
                return Err(reject(path, format!("{}-{} must not be an edge", Id(a), Id(b))));
            }
        }
        Ok(())
    }

    fn merge(&mut self, s: &mut Scope, u: VertexId, v: VertexId) {
        let survivor = VertexId(s.next);
        s.next += 1;
        let mut union = s.adj.remove(&u).unwrap_or_default();
        union.extend(s.adj.remove(&v).unwrap_or_default());
        for x in &union {
            self.ops += 1;
            let row = s.adj.get_mut(x).expect("neighbours are live");
            row.remove(&u);
            row.remove(&v);
            row.insert(survivor);
        }
        s.adj.insert(survivor, union);
    }

    fn check(&mut self, mut s: Scope, cert: &UncolorabilityCertificate, path: &mut Vec<usize>) -> Result<(), Rejection> {
        for (i, step) in cert.steps.iter().enumerate() {
            path.push(i);
            self.check_step(&mut s, step, path)?;
            path.pop();
        }
        let k = cert.k4;
        self.require_live(&s, &k, path)?;
        for a in 0..4 {
            for b in a + 1..4 {
                if !self.adjacent(&s, k[a], k[b]) {
                    return Err(reject(path, format!("final vertices {} {} are not adjacent", Id(k[a]), Id(k[b]))));
                }
            }
        }
        Ok(())
    }

    fn check_step(&mut self, s: &mut Scope, step: &ContractionStep, path: &mut Vec<usize>) -> Result<(), Rejection> {
        let (u, v) = step.pair;
        self.require_live(s, &[u, v], path)?;
        self.require_non_edges(s, &[(u, v)], path)?;
        match &step.justification {
            Justification::Diamond { spine: (z, w) } => {
                let (z, w) = (*z, *w);
                self.require_live(s, &[u, v, z, w], path)?;
                self.require_edges(s, &[(z, w), (u, z), (u, w), (v, z), (v, w)], path)?;
            }
            Justification::NestedEdge(nested) => {
                let mut inner = s.clone();
                inner.adj.get_mut(&u).expect("checked live").insert(v);
                inner.adj.get_mut(&v).expect("checked live").insert(u);
                self.ops += 2 + inner.adj.len() as u64;
                self.check(inner, nested, path)?;
            }
            Justification::NestedTadpole { tadpole: t, nested } => {
                self.require_live(s, &[t.x, t.y, t.z, t.w], path)?;
                self.require_edges(s, &[(t.x, t.y), (t.y, t.z), (t.x, t.z), (t.z, t.w)], path)?;
                self.require_non_edges(s, &[(t.x, t.w), (t.y, t.w)], path)?;
                let same = (u, v) == (t.y, t.w) || (u, v) == (t.w, t.y);
                if !same {
                    return Err(reject(path, format!("tadpole step must contract {} {}", Id(t.y), Id(t.w))));
                }
                let mut inner = s.clone();
                self.ops += inner.adj.len() as u64;
                self.merge(&mut inner, t.x, t.w);
                self.check(inner, nested, path)?;
            }
        }
        self.merge(s, u, v);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named, TadpoleWitness};

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn k4_cert() -> UncolorabilityCertificate {
        UncolorabilityCertificate { steps: vec![], k4: [v(0), v(1), v(2), v(3)] }
    }

    #[test]
    fn coloring_examples() {
        let k3 = named::complete(3);
        let ok = ColoringCertificate { classes: vec![vec![v(0)], vec![v(1)], vec![v(2)]] };
        assert!(verify_coloring(&k3, &ok));
        let bad = ColoringCertificate { classes: vec![vec![v(0), v(1)], vec![v(2)]] };
        assert!(!verify_coloring(&k3, &bad));
        let c5 = named::cycle(5);
        let c = ColoringCertificate { classes: vec![vec![v(0), v(2)], vec![v(1), v(3)], vec![v(4)]] };
        assert!(verify_coloring(&c5, &c));
        let missing = ColoringCertificate { classes: vec![vec![v(0), v(2)], vec![v(1), v(3)]] };
        assert!(!verify_coloring(&c5, &missing));
        let four = ColoringCertificate { classes: vec![vec![v(0)], vec![v(1)], vec![v(2)], vec![]] };
        assert!(!verify_coloring(&k3, &four));
    }

    #[test]
    fn k4_with_empty_steps_is_accepted() {
        let g = named::complete(4);
        assert!(verify_uncolorability(&g, &k4_cert()));
        let mut wrong = k4_cert();
        wrong.k4[3] = v(4);
        assert!(!verify_uncolorability(&g, &wrong));
        assert_eq!(certificate_size(&k4_cert()), 0);
    }

    #[test]
    fn w5_by_two_diamonds() {
        // Rim 0..4, hub 5. Pair 0 2 sees spine 1 5; survivor 6 sees 1 3 4 5.
        // Pair 1 3 sees spine 5 6; survivor 7 sees 4 5 6, closing K4 4 5 6 7.
        let g = named::wheel(5);
        let cert = UncolorabilityCertificate {
            steps: vec![
                ContractionStep { pair: (v(0), v(2)), justification: Justification::Diamond { spine: (v(1), v(5)) } },
                ContractionStep { pair: (v(1), v(3)), justification: Justification::Diamond { spine: (v(5), v(6)) } },
            ],
            k4: [v(4), v(5), v(6), v(7)],
        };
        let (res, ops) = check_uncolorability(&g, &cert);
        assert_eq!(res, Ok(()));
        assert!(ops > 0);
        assert_eq!(certificate_size(&cert), 2);

        let mut tampered = cert.clone();
        tampered.steps.remove(1);
        let (res, _) = check_uncolorability(&g, &tampered);
        assert!(res.is_err());
    }

    #[test]
    fn nested_edge_sizes_and_replay() {
        // Diamond with its pair joined by a nested K4 certificate.
        let g = named::diamond();
        let cert = UncolorabilityCertificate {
            steps: vec![ContractionStep { pair: (v(0), v(1)), justification: Justification::NestedEdge(Box::new(k4_cert())) }],
            k4: [v(0); 4],
        };
        assert_eq!(certificate_size(&cert), 1);
        let (res, _) = check_uncolorability(&g, &cert);
        let err = res.unwrap_err();
        assert!(err.path.is_empty());
    }

    #[test]
    fn tadpole_step_requires_the_y_w_pair() {
        // Triangle 0 1 2 with tail 3 on 2, and 4 adjacent to 0 1 3.
        let g = Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (0, 4), (1, 4), (3, 4)]).unwrap();
        let t = TadpoleWitness { x: v(0), y: v(1), z: v(2), w: v(3) };
        // g / 0 3 has survivor 5 seeing 1 2 4, and 2 !~ 4.
        let nested = UncolorabilityCertificate { steps: vec![], k4: [v(1), v(2), v(4), v(5)] };
        let step = ContractionStep {
            pair: (v(1), v(3)),
            justification: Justification::NestedTadpole { tadpole: t, nested: Box::new(nested.clone()) },
        };
        let cert = UncolorabilityCertificate { steps: vec![step], k4: [v(0); 4] };
        let err = check_uncolorability(&g, &cert).0.unwrap_err();
        assert_eq!(err.path, vec![0]);

        let wrong_pair = ContractionStep {
            pair: (v(0), v(3)),
            justification: Justification::NestedTadpole { tadpole: t, nested: Box::new(nested) },
        };
        let cert = UncolorabilityCertificate { steps: vec![wrong_pair], k4: [v(0); 4] };
        let err = check_uncolorability(&g, &cert).0.unwrap_err();
        assert!(err.reason.contains("tadpole"));
    }

    #[test]
    fn verifier_does_not_mutate_input() {
        let g = named::wheel(5);
        let before = g.clone();
        let _ = check_uncolorability(&g, &k4_cert());
        assert_eq!(g, before);
    }
}
