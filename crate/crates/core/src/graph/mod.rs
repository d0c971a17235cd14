//! Simple undirected graphs whose vertex ids stay stable across contractions.
//!
//! A [`Graph`] is created on `n` original vertices with ids `0..n`. Contracting
//! two non-adjacent vertices retires both ids and creates a fresh survivor id
//! (`next_id`, then incremented), so every id names exactly one vertex over the
//! whole history of a graph value. Each graph remembers which id every retired
//! vertex merged into; [`Graph::partition`] turns that history into the
//! [`MergePartition`] of original vertices.
//!
//! Adjacency is stored as one bitset row per id. Rows are sized for `2n` ids,
//! which is enough for any contraction sequence: every contraction consumes one
//! id and removes one live vertex.

mod detect;
pub mod named;
mod structure;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use detect::{
    contains_k4, diamond_at, find_diamond, find_tadpoles, k4_at, DiamondWitness, TadpoleWitness,
};
pub use structure::{common_neighbors, induced_neighborhood, is_bipartite, two_coloring};

/// Identifier of a vertex. Original vertices are `0..n`; contraction survivors
/// get fresh ids from `n` upward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} is not live")]
    DeadVertex(VertexId),
    #[error("loop at vertex {0}")]
    Loop(VertexId),
    #[error("cannot contract adjacent vertices {0} and {1}")]
    Adjacent(VertexId, VertexId),
    #[error("edge {0}-{1} is already present")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge {0}-{1} is not present")]
    MissingEdge(VertexId, VertexId),
}

const NONE: u32 = u32::MAX;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    capacity: usize,
    words: usize,
    rows: Vec<u64>,
    alive: Vec<u64>,
    degree: Vec<u32>,
    merged_into: Vec<u32>,
    originals: usize,
    next_id: u32,
    live: usize,
    edges: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.vertices().map(|v| v.0).collect::<Vec<_>>())
            .field("edges", &self.edges().map(|(u, v)| (u.0, v.0)).collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on original vertices `0..n`.
    pub fn new(n: usize) -> Graph {
        let capacity = (2 * n).max(1);
        let words = capacity.div_ceil(64);
        let mut alive = vec![0u64; words];
        for v in 0..n {
            alive[v / 64] |= 1 << (v % 64);
        }
        Graph {
            capacity,
            words,
            rows: vec![0; capacity * words],
            alive,
            degree: vec![0; capacity],
            merged_into: vec![NONE; capacity],
            originals: n,
            next_id: n as u32,
            live: n,
            edges: 0,
        }
    }

    /// Builds a graph on `0..n` from an edge list. Loops are rejected; repeated
    /// edges are rejected too so callers notice malformed input.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }

    /// Number of original vertices this graph was created with.
    pub fn original_count(&self) -> usize {
        self.originals
    }

    /// Id the next contraction survivor will receive.
    pub fn next_id(&self) -> VertexId {
        VertexId(self.next_id)
    }

    pub fn vertex_count(&self) -> usize {
        self.live
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// Whether `v` is a live vertex of this graph.
    #[inline]
    pub fn is_live(&self, v: VertexId) -> bool {
        let i = v.index();
        i < self.capacity && self.alive[i / 64] & (1 << (i % 64)) != 0
    }

    #[inline]
    fn row(&self, v: VertexId) -> &[u64] {
        let start = v.index() * self.words;
        &self.rows[start..start + self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        let (ui, vi) = (u.index(), v.index());
        ui < self.capacity && vi < self.capacity && self.rows[ui * self.words + vi / 64] & (1 << (vi % 64)) != 0
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.degree.get(v.index()).copied().unwrap_or(0) as usize
    }

    /// Live vertices in ascending id order.
    pub fn vertices(&self) -> BitIter<'_> {
        BitIter::new(&self.alive)
    }

    /// Neighbours of `v` in ascending id order (empty for dead ids).
    pub fn neighbors(&self, v: VertexId) -> BitIter<'_> {
        if v.index() < self.capacity {
            BitIter::new(self.row(v))
        } else {
            BitIter::new(&[])
        }
    }

    /// Edges `(u, v)` with `u < v`, ordered lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices()
            .flat_map(move |u| self.neighbors(u).filter(move |&v| u < v).map(move |v| (u, v)))
    }

    /// Unordered non-adjacent pairs `(u, v)` with `u < v`, ordered lexicographically.
    pub fn non_edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices().flat_map(move |u| {
            self.vertices()
                .filter(move |&v| u < v && !self.has_edge(u, v))
                .map(move |v| (u, v))
        })
    }

    /// Common neighbours of `u` and `v`, ascending.
    pub fn common_neighbors_iter(&self, u: VertexId, v: VertexId) -> BitIter<'_> {
        if u.index() < self.capacity && v.index() < self.capacity {
            BitIter::masked(self.row(u), Some(self.row(v)))
        } else {
            BitIter::new(&[])
        }
    }

    pub fn common_neighbor_count(&self, u: VertexId, v: VertexId) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// True when every pair of live vertices is adjacent.
    pub fn is_complete(&self) -> bool {
        let n = self.live;
        n < 2 || self.edges == n * (n - 1) / 2
    }

    fn check_live(&self, v: VertexId) -> Result<(), GraphError> {
        if self.is_live(v) {
            Ok(())
        } else {
            Err(GraphError::DeadVertex(v))
        }
    }

    #[inline]
    fn set_bit(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
    }

    #[inline]
    fn clear_bit(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] &= !(1 << (v % 64));
    }

    /// Adds the edge `uv`. Both ends must be live, distinct and non-adjacent.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::Loop(u));
        }
        self.check_live(u)?;
        self.check_live(v)?;
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        self.set_bit(u.index(), v.index());
        self.set_bit(v.index(), u.index());
        self.degree[u.index()] += 1;
        self.degree[v.index()] += 1;
        self.edges += 1;
        Ok(())
    }

    /// Returns `self + uv` as a new value.
    pub fn with_edge(&self, u: VertexId, v: VertexId) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        g.add_edge(u, v)?;
        Ok(g)
    }

    /// Deletes the edge `uv`; both endpoints stay live.
    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        self.clear_bit(u.index(), v.index());
        self.clear_bit(v.index(), u.index());
        self.degree[u.index()] -= 1;
        self.degree[v.index()] -= 1;
        self.edges -= 1;
        Ok(())
    }

    /// Identifies the non-adjacent vertices `u` and `v` into a fresh survivor
    /// whose neighbourhood is `N(u) ∪ N(v)`. Returns the survivor id.
    pub fn contract(&mut self, u: VertexId, v: VertexId) -> Result<VertexId, GraphError> {
        if u == v {
            return Err(GraphError::Loop(u));
        }
        self.check_live(u)?;
        self.check_live(v)?;
        if self.has_edge(u, v) {
            return Err(GraphError::Adjacent(u, v));
        }
        let s = self.next_id as usize;
        assert!(s < self.capacity, "survivor id space exhausted");
        let (ui, vi, w) = (u.index(), v.index(), self.words);
        let merged: Vec<u64> = (0..w).map(|k| self.rows[ui * w + k] | self.rows[vi * w + k]).collect();
        let before = self.degree[ui] as usize + self.degree[vi] as usize;
        let mut after = 0usize;
        for x in BitIter::new(&merged) {
            let xi = x.index();
            let shared = self.has_edge(x, u) && self.has_edge(x, v);
            self.clear_bit(xi, ui);
            self.clear_bit(xi, vi);
            self.set_bit(xi, s);
            if shared {
                self.degree[xi] -= 1;
            }
            after += 1;
        }
        self.rows[s * w..(s + 1) * w].copy_from_slice(&merged);
        self.rows[ui * w..(ui + 1) * w].fill(0);
        self.rows[vi * w..(vi + 1) * w].fill(0);
        self.edges -= before - after;
        self.degree[s] = after as u32;
        self.degree[ui] = 0;
        self.degree[vi] = 0;
        self.alive[ui / 64] &= !(1 << (ui % 64));
        self.alive[vi / 64] &= !(1 << (vi % 64));
        self.alive[s / 64] |= 1 << (s % 64);
        self.merged_into[ui] = s as u32;
        self.merged_into[vi] = s as u32;
        self.next_id += 1;
        self.live -= 1;
        let survivor = VertexId(s as u32);
        debug_assert!(
            !self.has_edge(survivor, survivor)
                && self.neighbors(survivor).all(|x| self.is_live(x) && self.has_edge(x, survivor)),
            "contraction left a loop or an asymmetric row at {survivor}"
        );
        Ok(survivor)
    }

    /// Returns `self / uv` as a new value together with the survivor id.
    pub fn contracted(&self, u: VertexId, v: VertexId) -> Result<(Graph, VertexId), GraphError> {
        let mut g = self.clone();
        let s = g.contract(u, v)?;
        Ok((g, s))
    }

    /// Subgraph induced by `keep`. Ids, id space and contraction history are
    /// preserved; vertices outside `keep` simply disappear.
    pub fn induced(&self, keep: &[VertexId]) -> Graph {
        let mut mask = vec![0u64; self.words];
        for &v in keep {
            if self.is_live(v) {
                mask[v.index() / 64] |= 1 << (v.index() % 64);
            }
        }
        let mut g = self.clone();
        g.alive = mask.clone();
        g.live = 0;
        g.edges = 0;
        for i in 0..self.capacity {
            let keep_i = mask[i / 64] & (1 << (i % 64)) != 0;
            let w = self.words;
            if keep_i {
                for k in 0..w {
                    g.rows[i * w + k] &= mask[k];
                }
                let d: u32 = g.rows[i * w..(i + 1) * w].iter().map(|x| x.count_ones()).sum();
                g.degree[i] = d;
                g.edges += d as usize;
                g.live += 1;
            } else {
                g.rows[i * w..(i + 1) * w].fill(0);
                g.degree[i] = 0;
            }
        }
        g.edges /= 2;
        g
    }

    /// Connected components, each sorted ascending, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.capacity];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s.index()] {
                continue;
            }
            seen[s.index()] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for y in self.neighbors(x) {
                    if !seen[y.index()] {
                        seen[y.index()] = true;
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Renames original vertex `i` to `perm[i]`. Only valid on graphs without
    /// contraction history.
    pub fn relabeled(&self, perm: &[u32]) -> Graph {
        assert_eq!(perm.len(), self.originals, "permutation length must match vertex count");
        assert_eq!(self.next_id as usize, self.originals, "cannot relabel a contracted graph");
        let mut g = Graph::new(self.originals);
        for (u, v) in self.edges() {
            g.add_edge(VertexId(perm[u.index()]), VertexId(perm[v.index()]))
                .expect("permutation keeps the graph simple");
        }
        g
    }

    /// Partition of original vertices into the classes absorbed by each live vertex.
    pub fn partition(&self) -> MergePartition {
        let mut root = vec![NONE; self.capacity];
        for id in (0..self.next_id as usize).rev() {
            root[id] = if self.is_live(VertexId(id as u32)) {
                id as u32
            } else if self.merged_into[id] != NONE {
                root[self.merged_into[id] as usize]
            } else {
                NONE
            };
        }
        let mut classes: BTreeMap<VertexId, Vec<VertexId>> =
            self.vertices().map(|v| (v, Vec::new())).collect();
        for (orig, &r) in root.iter().enumerate().take(self.originals) {
            if r != NONE {
                if let Some(c) = classes.get_mut(&VertexId(r)) {
                    c.push(VertexId(orig as u32));
                }
            }
        }
        MergePartition { classes }
    }

    /// Structural self-check: symmetric rows, no loops, rows only name live
    /// vertices, and cached degree/edge counts match.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut total = 0usize;
        let mut live = 0usize;
        for i in 0..self.capacity {
            let v = VertexId(i as u32);
            let deg: usize = self.row(v).iter().map(|x| x.count_ones() as usize).sum();
            if deg != self.degree[i] as usize {
                return Err(format!("degree cache of {v} is stale"));
            }
            if !self.is_live(v) {
                if deg != 0 {
                    return Err(format!("dead vertex {v} has neighbours"));
                }
                continue;
            }
            live += 1;
            if self.has_edge(v, v) {
                return Err(format!("loop at {v}"));
            }
            for x in self.neighbors(v) {
                if !self.is_live(x) {
                    return Err(format!("edge {v}-{x} to dead vertex"));
                }
                if !self.has_edge(x, v) {
                    return Err(format!("edge {v}-{x} is not symmetric"));
                }
            }
            total += deg;
        }
        if live != self.live {
            return Err("live count is stale".into());
        }
        if total != 2 * self.edges {
            return Err("edge count is stale".into());
        }
        Ok(())
    }
}

/// Partition of the original vertices into super-vertex classes, keyed by
/// the live vertex that absorbed them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergePartition {
    classes: BTreeMap<VertexId, Vec<VertexId>>,
}

impl MergePartition {
    pub fn classes(&self) -> &BTreeMap<VertexId, Vec<VertexId>> {
        &self.classes
    }

    pub fn class_of(&self, v: VertexId) -> Option<&[VertexId]> {
        self.classes.get(&v).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Checks that classes are disjoint, cover `0..originals` exactly once and
    /// are keyed by the live vertices of `g`.
    pub fn is_consistent_with(&self, g: &Graph, originals: usize) -> bool {
        let mut seen = vec![false; originals];
        for members in self.classes.values() {
            for m in members {
                match seen.get_mut(m.index()) {
                    Some(s) if !*s => *s = true,
                    _ => return false,
                }
            }
        }
        seen.iter().all(|&s| s) && self.classes.keys().copied().eq(g.vertices())
    }
}

/// Iterator over the set bits of a bitset row (optionally intersected with a
/// second row), yielding vertex ids ascending.
pub struct BitIter<'a> {
    words: &'a [u64],
    mask: Option<&'a [u64]>,
    index: usize,
    current: u64,
}

impl<'a> BitIter<'a> {
    fn new(words: &'a [u64]) -> BitIter<'a> {
        BitIter::masked(words, None)
    }

    fn masked(words: &'a [u64], mask: Option<&'a [u64]>) -> BitIter<'a> {
        let mut it = BitIter { words, mask, index: 0, current: 0 };
        it.current = it.word(0);
        it
    }

    #[inline]
    fn word(&self, k: usize) -> u64 {
        match (self.words.get(k), self.mask) {
            (Some(w), Some(m)) => w & m[k],
            (Some(w), None) => *w,
            (None, _) => 0,
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = VertexId;

    #[inline]
    fn next(&mut self) -> Option<VertexId> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(VertexId((self.index * 64 + bit) as u32));
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.word(self.index);
        }
    }
}
