//! Ground-truth 3-colorability deciders that share nothing with the solver.
//!
//! [`exhaustive_3col`] is plain ordered search with color-symmetry breaking
//! and is only meant for tiny graphs. [`backtrack_3col`] is a DSATUR-style
//! backtracker with forward checking; it is the baseline the solver is timed
//! against and reports how many search nodes it expanded.

use thiserror::Error;

use crate::certificate::ColoringCertificate;
use crate::graph::{Graph, VertexId};

pub const EXHAUSTIVE_LIMIT: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("exhaustive search is limited to {EXHAUSTIVE_LIMIT} vertices, got {0}")]
    TooLarge(usize),
}

struct Compact {
    ids: Vec<VertexId>,
    adj: Vec<Vec<usize>>,
}

impl Compact {
    fn new(g: &Graph) -> Compact {
        let ids: Vec<VertexId> = g.vertices().collect();
        let mut pos = vec![usize::MAX; g.next_id().index()];
        for (i, v) in ids.iter().enumerate() {
            pos[v.index()] = i;
        }
        let adj = ids.iter().map(|&v| g.neighbors(v).map(|w| pos[w.index()]).collect()).collect();
        Compact { ids, adj }
    }

    fn classes(&self, color: &[u8]) -> ColoringCertificate {
        let mut classes = vec![Vec::new(), Vec::new(), Vec::new()];
        for (i, &c) in color.iter().enumerate() {
            classes[c as usize].push(self.ids[i]);
        }
        ColoringCertificate { classes }
    }
}

/// Exact 3-coloring by exhaustive search, or `None` when none exists.
pub fn exhaustive_3col(g: &Graph) -> Result<Option<ColoringCertificate>, OracleError> {
    let n = g.vertex_count();
    if n > EXHAUSTIVE_LIMIT {
        return Err(OracleError::TooLarge(n));
    }
    let c = Compact::new(g);
    let mut color = vec![u8::MAX; n];

    fn assign(c: &Compact, color: &mut [u8], i: usize, used: u8) -> bool {
        if i == color.len() {
            return true;
        }
        // A color beyond the first unused one is a relabeling of it.
        for k in 0..(used + 1).min(3) {
            if c.adj[i].iter().all(|&j| j > i || color[j] != k) {
                color[i] = k;
                if assign(c, color, i + 1, used.max(k + 1)) {
                    return true;
                }
            }
        }
        color[i] = u8::MAX;
        false
    }

    Ok(assign(&c, &mut color, 0, 0).then(|| c.classes(&color)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BacktrackResult {
    pub coloring: Option<ColoringCertificate>,
    pub nodes: u64,
    /// True when the node budget ran out before the search finished; the
    /// coloring is then `None` without implying uncolorability.
    pub exhausted: bool,
}

/// DSATUR backtracking: always branch on the uncolored vertex with the fewest
/// remaining colors (ties: most uncolored neighbours, then lowest id), and
/// fail as soon as some neighbour's domain empties.
pub fn backtrack_3col(g: &Graph) -> (Option<ColoringCertificate>, u64) {
    let r = backtrack_3col_limited(g, u64::MAX);
    (r.coloring, r.nodes)
}

pub fn backtrack_3col_limited(g: &Graph, node_budget: u64) -> BacktrackResult {
    let c = Compact::new(g);
    let n = c.ids.len();
    let mut s = Search {
        adj: &c.adj,
        domain: vec![0b111; n],
        color: vec![u8::MAX; n],
        nodes: 0,
        budget: node_budget,
        exhausted: false,
        trail: Vec::new(),
    };
    let found = s.run(0, 0);
    BacktrackResult {
        coloring: found.then(|| c.classes(&s.color)),
        nodes: s.nodes,
        exhausted: s.exhausted,
    }
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    domain: Vec<u8>,
    color: Vec<u8>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
    trail: Vec<(usize, u8)>,
}

impl Search<'_> {
    fn pick(&self) -> Option<usize> {
        let mut best: Option<(u32, usize, usize)> = None;
        for v in 0..self.color.len() {
            if self.color[v] != u8::MAX {
                continue;
            }
            let size = self.domain[v].count_ones();
            let free = self.adj[v].iter().filter(|&&w| self.color[w] == u8::MAX).count();
            let better = match best {
                None => true,
                Some((bs, bf, _)) => size < bs || (size == bs && free > bf),
            };
            if better {
                best = Some((size, free, v));
            }
        }
        best.map(|b| b.2)
    }

    fn run(&mut self, colored: usize, used: u8) -> bool {
        if colored == self.color.len() {
            return true;
        }
        if self.nodes >= self.budget {
            self.exhausted = true;
            return false;
        }
        self.nodes += 1;
        let v = self.pick().expect("an uncolored vertex remains");
        for k in 0..(used + 1).min(3) {
            if self.domain[v] & (1 << k) == 0 {
                continue;
            }
            let mark = self.trail.len();
            self.color[v] = k;
            let mut dead = false;
            for i in 0..self.adj[v].len() {
                let w = self.adj[v][i];
                if self.color[w] == u8::MAX && self.domain[w] & (1 << k) != 0 {
                    self.trail.push((w, self.domain[w]));
                    self.domain[w] &= !(1 << k);
                    if self.domain[w] == 0 {
                        dead = true;
                        break;
                    }
                }
            }
            if !dead && self.run(colored + 1, used.max(k + 1)) {
                return true;
            }
            while self.trail.len() > mark {
                let (w, d) = self.trail.pop().expect("trail entry");
                self.domain[w] = d;
            }
            self.color[v] = u8::MAX;
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify_coloring;
    use crate::graph::named;

    #[test]
    fn exhaustive_named() {
        assert_eq!(exhaustive_3col(&named::complete(4)).unwrap(), None);
        let c5 = named::cycle(5);
        assert!(verify_coloring(&c5, &exhaustive_3col(&c5).unwrap().unwrap()));
        assert_eq!(exhaustive_3col(&named::grotzsch()).unwrap(), None);
        assert_eq!(exhaustive_3col(&named::wheel(5)).unwrap(), None);
        assert!(exhaustive_3col(&named::petersen()).unwrap().is_some());
        assert_eq!(exhaustive_3col(&Graph::new(17)), Err(OracleError::TooLarge(17)));
        assert!(exhaustive_3col(&Graph::new(0)).unwrap().is_some());
    }

    #[test]
    fn backtracking_named() {
        let (none, nodes) = backtrack_3col(&named::complete(4));
        assert_eq!(none, None);
        assert!(nodes <= 4);
        let k33 = named::complete_bipartite(3, 3);
        let (c, _) = backtrack_3col(&k33);
        assert!(verify_coloring(&k33, &c.unwrap()));
        assert_eq!(backtrack_3col(&named::grotzsch()).0, None);
        let ico = named::icosahedron();
        assert_eq!(backtrack_3col(&ico).0, None);
    }

    #[test]
    fn budget_stops_search() {
        let r = backtrack_3col_limited(&named::grotzsch(), 3);
        assert!(r.exhausted);
        assert_eq!(r.coloring, None);
        assert_eq!(r.nodes, 3);
    }
}
