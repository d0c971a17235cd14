//! Small-subgraph detectors: diamonds (K112), K4 and tadpoles (T31).
//!
//! Every scan walks vertices and neighbourhoods in ascending id order, so the
//! first witness reported for a given graph is always the same.

use super::{Graph, VertexId};

/// A K112 ("diamond") whose two degree-2 vertices `pair` are not adjacent.
/// In every 3-coloring the pair shares a color, so contracting it is forced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DiamondWitness {
    pub pair: (VertexId, VertexId),
    pub spine: (VertexId, VertexId),
}

impl DiamondWitness {
    pub fn holds_in(&self, g: &Graph) -> bool {
        let (u, v) = self.pair;
        let (z, w) = self.spine;
        let distinct = u != v && u != z && u != w && v != z && v != w && z != w;
        distinct
            && g.has_edge(z, w)
            && g.has_edge(u, z)
            && g.has_edge(u, w)
            && g.has_edge(v, z)
            && g.has_edge(v, w)
            && !g.has_edge(u, v)
    }
}

/// A triangle `x y z` with a tail `w` hanging off `z` and not adjacent to
/// `x` or `y`. Any 3-coloring gives `w` the color of `x` or of `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TadpoleWitness {
    pub x: VertexId,
    pub y: VertexId,
    pub z: VertexId,
    pub w: VertexId,
}

impl TadpoleWitness {
    pub fn holds_in(&self, g: &Graph) -> bool {
        let TadpoleWitness { x, y, z, w } = *self;
        let distinct = x != y && x != z && x != w && y != z && y != w && z != w;
        distinct
            && g.has_edge(x, y)
            && g.has_edge(y, z)
            && g.has_edge(x, z)
            && g.has_edge(z, w)
            && !g.has_edge(x, w)
            && !g.has_edge(y, w)
    }
}

fn spine(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// First diamond found by scanning spine edges `(z, w)` ascending and looking
/// for a non-adjacent pair in `N(z) ∩ N(w)`.
pub fn find_diamond(g: &Graph) -> Option<DiamondWitness> {
    for (z, w) in g.edges() {
        for u in g.common_neighbors_iter(z, w) {
            for v in g.common_neighbors_iter(z, w).filter(|&v| v > u) {
                if !g.has_edge(u, v) {
                    return Some(DiamondWitness { pair: (u, v), spine: (z, w) });
                }
            }
        }
    }
    None
}

/// First diamond that contains `s`, either on its spine or in its pair.
pub fn diamond_at(g: &Graph, s: VertexId) -> Option<DiamondWitness> {
    if !g.is_live(s) {
        return None;
    }
    for w in g.neighbors(s) {
        for a in g.common_neighbors_iter(s, w) {
            for b in g.common_neighbors_iter(s, w).filter(|&b| b > a) {
                if !g.has_edge(a, b) {
                    return Some(DiamondWitness { pair: (a, b), spine: spine(s, w) });
                }
            }
        }
    }
    for z in g.neighbors(s) {
        for w in g.common_neighbors_iter(s, z).filter(|&w| w > z) {
            for t in g.common_neighbors_iter(z, w) {
                if t != s && !g.has_edge(s, t) {
                    return Some(DiamondWitness { pair: spine(s, t), spine: (z, w) });
                }
            }
        }
    }
    None
}

/// Four mutually adjacent vertices in ascending order, if any exist.
pub fn contains_k4(g: &Graph) -> Option<[VertexId; 4]> {
    for (a, b) in g.edges() {
        for c in g.common_neighbors_iter(a, b).filter(|&c| c > b) {
            for d in g.common_neighbors_iter(a, b).filter(|&d| d > c) {
                if g.has_edge(c, d) {
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    None
}

/// A K4 containing `s`, sorted ascending.
pub fn k4_at(g: &Graph, s: VertexId) -> Option<[VertexId; 4]> {
    if !g.is_live(s) {
        return None;
    }
    for a in g.neighbors(s) {
        for b in g.common_neighbors_iter(s, a).filter(|&b| b > a) {
            for c in g.common_neighbors_iter(s, a).filter(|&c| c > b) {
                if g.has_edge(b, c) {
                    let mut q = [s, a, b, c];
                    q.sort();
                    return Some(q);
                }
            }
        }
    }
    None
}

/// Every tadpole witness, with the triangle roles `x`, `y` reported in both
/// orders. Enumeration runs over `z` ascending, then the tail `w`, then `x`,
/// then `y`.
pub fn find_tadpoles(g: &Graph) -> impl Iterator<Item = TadpoleWitness> + '_ {
    g.vertices().flat_map(move |z| {
        g.neighbors(z).flat_map(move |w| {
            g.neighbors(z)
                .filter(move |&x| x != w && !g.has_edge(x, w))
                .flat_map(move |x| {
                    g.common_neighbors_iter(z, x)
                        .filter(move |&y| !g.has_edge(y, w))
                        .map(move |y| TadpoleWitness { x, y, z, w })
                })
        })
    })
}
