//! Planarity testing with embeddings, planar-preserving non-edges, and the
//! 3-coloring of even planar triangulations.
//!
//! [`is_planar`] runs the left-right planarity test (DFS orientation, conflict
//! pair testing, then embedding by side signs). Every embedding it returns is
//! checked against Euler's formula before it is handed out, so a returned
//! rotation system is itself a proof of planarity.

use std::collections::{BTreeMap, HashMap, HashSet};

use thiserror::Error;

use crate::graph::{Graph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarityError {
    #[error("graph is not planar")]
    NotPlanar,
    #[error("graph is not a planar triangulation")]
    NotTriangulation,
    #[error("forced color propagation reached an inconsistent face at vertex {0}")]
    PropagationConflict(VertexId),
}

/// Rotation system: for each vertex, its neighbours in clockwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarEmbedding {
    rotation: BTreeMap<VertexId, Vec<VertexId>>,
}

impl PlanarEmbedding {
    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        self.rotation.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.rotation.keys().copied()
    }

    /// Face boundary walks. After traversing the dart `u -> v` the walk
    /// continues with `v -> w`, where `w` precedes `u` in the clockwise
    /// rotation at `v`. Isolated vertices contribute no walk.
    pub fn faces(&self) -> Vec<Vec<VertexId>> {
        let mut position: HashMap<(VertexId, VertexId), usize> = HashMap::new();
        for (&v, rot) in &self.rotation {
            for (i, &w) in rot.iter().enumerate() {
                position.insert((v, w), i);
            }
        }
        let mut used: HashSet<(VertexId, VertexId)> = HashSet::new();
        let mut faces = Vec::new();
        for (&v, rot) in &self.rotation {
            for &w in rot {
                if used.contains(&(v, w)) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (v, w);
                while used.insert((a, b)) {
                    face.push(a);
                    let rot_b = &self.rotation[&b];
                    let i = position[&(b, a)];
                    let next = rot_b[(i + rot_b.len() - 1) % rot_b.len()];
                    (a, b) = (b, next);
                }
                faces.push(face);
            }
        }
        faces
    }

    /// True when this rotation system describes `g` (same vertices, each
    /// rotation a permutation of the neighbourhood) and has genus zero.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        if !self.vertices().eq(g.vertices()) {
            return false;
        }
        for v in g.vertices() {
            let mut rot = self.rotation(v).to_vec();
            rot.sort();
            if !rot.iter().copied().eq(g.neighbors(v)) {
                return false;
            }
        }
        let isolated = g.vertices().filter(|&v| g.degree(v) == 0).count();
        let components = g.components().len();
        let faces = self.faces().len();
        // Per component with edges: V - E + F = 2; an isolated vertex counts one face.
        g.vertex_count() + faces + isolated == 2 * components + g.edge_count()
    }
}

/// Returns a planar embedding of `g`, or `None` when `g` is not planar.
pub fn is_planar(g: &Graph) -> Option<PlanarEmbedding> {
    let ids: Vec<VertexId> = g.vertices().collect();
    let n = ids.len();
    if n > 2 && g.edge_count() > 3 * n - 6 {
        return None;
    }
    let index: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> = ids.iter().map(|&v| g.neighbors(v).map(|w| index[&w]).collect()).collect();
    let rotation = LeftRight::new(adj).run()?;
    let embedding = PlanarEmbedding {
        rotation: rotation
            .into_iter()
            .enumerate()
            .map(|(i, rot)| (ids[i], rot.into_iter().map(|j| ids[j]).collect()))
            .collect(),
    };
    assert!(embedding.is_valid_for(g), "left-right test produced an invalid embedding");
    Some(embedding)
}

/// All non-edges `uv` (with `u < v`) such that `g + uv` stays planar.
pub fn planar_preserving_nonedges(g: &Graph) -> Result<Vec<(VertexId, VertexId)>, PlanarityError> {
    if is_planar(g).is_none() {
        return Err(PlanarityError::NotPlanar);
    }
    Ok(g.non_edges()
        .filter(|&(u, v)| {
            let h = g.with_edge(u, v).expect("non-edge");
            is_planar(&h).is_some()
        })
        .collect())
}

/// Smallest non-adjacent pair sharing a face of `emb` (or lying in different
/// components). Any such pair is planar-preserving.
pub fn face_sharing_nonedge(g: &Graph, emb: &PlanarEmbedding) -> Option<(VertexId, VertexId)> {
    let mut best: Option<(VertexId, VertexId)> = None;
    let mut consider = |a: VertexId, b: VertexId| {
        let p = if a < b { (a, b) } else { (b, a) };
        if best.is_none_or(|q| p < q) {
            best = Some(p);
        }
    };
    for face in emb.faces() {
        let mut vs = face.clone();
        vs.sort();
        vs.dedup();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if !g.has_edge(vs[i], vs[j]) {
                    consider(vs[i], vs[j]);
                }
            }
        }
    }
    let comps = g.components();
    if comps.len() > 1 {
        consider(comps[0][0], comps[1][0]);
    }
    best
}

/// True iff `g` has at least three vertices, is connected, and every face of
/// `emb` is a triangle.
pub fn is_planar_triangulation(g: &Graph, emb: &PlanarEmbedding) -> bool {
    let n = g.vertex_count();
    n >= 3 && g.is_connected() && g.edge_count() == 3 * n - 6 && emb.faces().iter().all(|f| f.len() == 3)
}

/// 3-colors a planar triangulation whose degrees are all even by fixing one
/// face and propagating the forced third color across shared edges. Returns
/// `Ok(None)` when some vertex has odd degree.
pub fn color_even_triangulation(
    g: &Graph,
    emb: &PlanarEmbedding,
) -> Result<Option<[Vec<VertexId>; 3]>, PlanarityError> {
    if !is_planar_triangulation(g, emb) {
        return Err(PlanarityError::NotTriangulation);
    }
    if g.vertices().any(|v| g.degree(v) % 2 == 1) {
        return Ok(None);
    }
    let faces = emb.faces();
    let mut face_of: HashMap<(VertexId, VertexId), usize> = HashMap::new();
    for (i, f) in faces.iter().enumerate() {
        for k in 0..3 {
            face_of.insert((f[k], f[(k + 1) % 3]), i);
        }
    }
    let mut color: HashMap<VertexId, u8> = HashMap::new();
    for (k, &v) in faces[0].iter().enumerate() {
        color.insert(v, k as u8);
    }
    let mut visited = vec![false; faces.len()];
    visited[0] = true;
    let mut queue = vec![0usize];
    while let Some(fi) = queue.pop() {
        let f = &faces[fi];
        for k in 0..3 {
            let (a, b) = (f[k], f[(k + 1) % 3]);
            let gi = face_of[&(b, a)];
            let opposite = faces[gi].iter().copied().find(|&x| x != a && x != b).expect("triangle");
            let forced = 3 - color[&a] - color[&b];
            match color.get(&opposite) {
                Some(&c) if c != forced => return Err(PlanarityError::PropagationConflict(opposite)),
                Some(_) => {}
                None => {
                    color.insert(opposite, forced);
                }
            }
            if !visited[gi] {
                visited[gi] = true;
                queue.push(gi);
            }
        }
    }
    let mut classes = [Vec::new(), Vec::new(), Vec::new()];
    for v in g.vertices() {
        classes[color[&v] as usize].push(v);
    }
    Ok(Some(classes))
}

#[derive(Clone, Copy, Default, Debug)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Default, Debug)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

const UNSET: usize = usize::MAX;

/// State of the left-right planarity test on a graph with vertices `0..n`.
/// Oriented edges are numbered in creation order.
struct LeftRight {
    adj: Vec<Vec<usize>>,
    height: Vec<usize>,
    parent_edge: Vec<Option<usize>>,
    roots: Vec<usize>,
    src: Vec<usize>,
    dst: Vec<usize>,
    out: Vec<Vec<usize>>,
    oriented: HashSet<(usize, usize)>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<i64>,
    reference: Vec<Option<usize>>,
    side: Vec<i64>,
    lowpt_edge: Vec<Option<usize>>,
    stack_bottom: Vec<usize>,
    stack: Vec<ConflictPair>,
    left_ref: Vec<usize>,
    right_ref: Vec<usize>,
    cw: Vec<HashMap<usize, usize>>,
    ccw: Vec<HashMap<usize, usize>>,
    first_nbr: Vec<Option<usize>>,
}

impl LeftRight {
    fn new(adj: Vec<Vec<usize>>) -> LeftRight {
        let n = adj.len();
        LeftRight {
            adj,
            height: vec![UNSET; n],
            parent_edge: vec![None; n],
            roots: Vec::new(),
            src: Vec::new(),
            dst: Vec::new(),
            out: vec![Vec::new(); n],
            oriented: HashSet::new(),
            lowpt: Vec::new(),
            lowpt2: Vec::new(),
            nesting_depth: Vec::new(),
            reference: Vec::new(),
            side: Vec::new(),
            lowpt_edge: Vec::new(),
            stack_bottom: Vec::new(),
            stack: Vec::new(),
            left_ref: vec![UNSET; n],
            right_ref: vec![UNSET; n],
            cw: vec![HashMap::new(); n],
            ccw: vec![HashMap::new(); n],
            first_nbr: vec![None; n],
        }
    }

    fn run(mut self) -> Option<Vec<Vec<usize>>> {
        let n = self.adj.len();
        for v in 0..n {
            if self.height[v] == UNSET {
                self.height[v] = 0;
                self.roots.push(v);
                self.orient(v);
            }
        }
        let edges = self.src.len();
        self.reference = vec![None; edges];
        self.side = vec![1; edges];
        self.lowpt_edge = vec![None; edges];
        self.stack_bottom = vec![0; edges];
        self.sort_out_edges();
        for r in self.roots.clone() {
            if !self.test(r) {
                return None;
            }
        }
        for e in 0..edges {
            let s = self.sign(e);
            self.nesting_depth[e] *= s;
        }
        self.sort_out_edges();
        for v in 0..n {
            let mut previous = None;
            for k in 0..self.out[v].len() {
                let w = self.dst[self.out[v][k]];
                self.add_half_edge_cw(v, w, previous);
                previous = Some(w);
            }
        }
        for r in self.roots.clone() {
            self.embed(r);
        }
        Some(
            (0..n)
                .map(|v| {
                    let mut rot = Vec::with_capacity(self.adj[v].len());
                    if let Some(first) = self.first_nbr[v] {
                        let mut w = first;
                        loop {
                            rot.push(w);
                            w = self.cw[v][&w];
                            if w == first {
                                break;
                            }
                        }
                    }
                    rot
                })
                .collect(),
        )
    }

    fn sort_out_edges(&mut self) {
        for v in 0..self.out.len() {
            let mut out = std::mem::take(&mut self.out[v]);
            out.sort_by_key(|&e| self.nesting_depth[e]);
            self.out[v] = out;
        }
    }

    fn orient(&mut self, v: usize) {
        let parent = self.parent_edge[v];
        for k in 0..self.adj[v].len() {
            let w = self.adj[v][k];
            if !self.oriented.insert((v.min(w), v.max(w))) {
                continue;
            }
            let vw = self.src.len();
            self.src.push(v);
            self.dst.push(w);
            self.out[v].push(vw);
            self.lowpt.push(self.height[v]);
            self.lowpt2.push(self.height[v]);
            self.nesting_depth.push(0);
            if self.height[w] == UNSET {
                self.parent_edge[w] = Some(vw);
                self.height[w] = self.height[v] + 1;
                self.orient(w);
            } else {
                self.lowpt[vw] = self.height[w];
            }
            self.nesting_depth[vw] = 2 * self.lowpt[vw] as i64;
            if self.lowpt2[vw] < self.height[v] {
                self.nesting_depth[vw] += 1;
            }
            if let Some(e) = parent {
                if self.lowpt[vw] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                    self.lowpt[e] = self.lowpt[vw];
                } else if self.lowpt[vw] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                }
            }
        }
    }

    fn conflicting(&self, interval: &Interval, edge: usize) -> bool {
        match interval.high {
            Some(h) if !interval.is_empty() => self.lowpt[h] > self.lowpt[edge],
            _ => false,
        }
    }

    fn lowest(&self, pair: &ConflictPair) -> usize {
        let low = |i: &Interval| self.lowpt[i.low.expect("non-empty interval has a low edge")];
        if pair.left.is_empty() {
            low(&pair.right)
        } else if pair.right.is_empty() {
            low(&pair.left)
        } else {
            low(&pair.left).min(low(&pair.right))
        }
    }

    fn test(&mut self, v: usize) -> bool {
        let parent = self.parent_edge[v];
        let out = self.out[v].clone();
        for (i, &ei) in out.iter().enumerate() {
            let w = self.dst[ei];
            self.stack_bottom[ei] = self.stack.len();
            if Some(ei) == self.parent_edge[w] {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = Some(ei);
                self.stack.push(ConflictPair {
                    left: Interval::default(),
                    right: Interval { low: Some(ei), high: Some(ei) },
                });
            }
            if self.lowpt[ei] < self.height[v] {
                let e = parent.expect("only non-root vertices have return edges below them");
                if i == 0 {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if let Some(e) = parent {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        loop {
            let Some(mut q) = self.stack.pop() else { break };
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let q_low = q.right.low.expect("return edge interval");
            if self.lowpt[q_low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else if let Some(pl) = p.right.low {
                    self.reference[pl] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q_low] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().expect("checked non-empty");
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(pl) = p.right.low {
                self.reference[pl] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else if let Some(pl) = p.left.low {
                self.reference[pl] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != self.height[u] {
                break;
            }
            let p = self.stack.pop().expect("checked non-empty");
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.reference[l] = p.right.low;
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() {
                if let Some(r) = p.right.low {
                    self.reference[r] = p.left.low;
                    self.side[r] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = self.stack.last().expect("a return edge keeps a conflict pair on the stack");
            let (hl, hr) = (top.left.high, top.right.high);
            self.reference[e] = match (hl, hr) {
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                (Some(l), None) => Some(l),
                _ => hr,
            };
        }
    }

    fn sign(&mut self, e: usize) -> i64 {
        // Resolve the reference chain iteratively: side(e) *= sign(ref(e)).
        let mut chain = vec![e];
        while let Some(r) = self.reference[*chain.last().expect("non-empty")] {
            chain.push(r);
        }
        for k in (0..chain.len() - 1).rev() {
            let (x, r) = (chain[k], chain[k + 1]);
            self.side[x] *= self.side[r];
            self.reference[x] = None;
        }
        self.side[e]
    }

    fn add_half_edge_cw(&mut self, start: usize, end: usize, reference: Option<usize>) {
        match reference {
            None => {
                self.cw[start].insert(end, end);
                self.ccw[start].insert(end, end);
                self.first_nbr[start] = Some(end);
            }
            Some(r) => {
                let cw_ref = self.cw[start][&r];
                self.cw[start].insert(r, end);
                self.cw[start].insert(end, cw_ref);
                self.ccw[start].insert(cw_ref, end);
                self.ccw[start].insert(end, r);
            }
        }
    }

    fn add_half_edge_ccw(&mut self, start: usize, end: usize, reference: Option<usize>) {
        match reference {
            None => self.add_half_edge_cw(start, end, None),
            Some(r) => {
                let ccw_ref = self.ccw[start][&r];
                self.add_half_edge_cw(start, end, Some(ccw_ref));
                if self.first_nbr[start] == Some(r) {
                    self.first_nbr[start] = Some(end);
                }
            }
        }
    }

    fn add_half_edge_first(&mut self, start: usize, end: usize) {
        let reference = self.first_nbr[start];
        self.add_half_edge_ccw(start, end, reference);
    }

    fn embed(&mut self, v: usize) {
        let out = self.out[v].clone();
        for ei in out {
            let w = self.dst[ei];
            if Some(ei) == self.parent_edge[w] {
                self.add_half_edge_first(w, v);
                self.left_ref[v] = w;
                self.right_ref[v] = w;
                self.embed(w);
            } else if self.side[ei] == 1 {
                let r = self.right_ref[w];
                self.add_half_edge_cw(w, v, Some(r));
            } else {
                let l = self.left_ref[w];
                self.add_half_edge_ccw(w, v, Some(l));
                self.left_ref[w] = v;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn kuratowski_graphs_are_not_planar() {
        assert!(is_planar(&named::complete(4)).is_some());
        assert!(is_planar(&named::complete(5)).is_none());
        assert!(is_planar(&named::complete_bipartite(3, 3)).is_none());
        assert!(is_planar(&named::petersen()).is_none());
        // Triangle-free and 4-chromatic, so not planar.
        assert!(is_planar(&named::grotzsch()).is_none());
        let mut k5e = named::complete(5);
        k5e.remove_edge(v(0), v(1)).unwrap();
        assert!(is_planar(&k5e).is_some());
    }

    #[test]
    fn embeddings_satisfy_euler() {
        for g in [
            named::complete(4),
            named::octahedron(),
            named::icosahedron(),
            named::wheel(7),
            named::path(5),
            Graph::from_edges(6, [(0, 1), (2, 3), (3, 4)]).unwrap(),
        ] {
            let emb = is_planar(&g).expect("planar");
            assert!(emb.is_valid_for(&g));
        }
    }

    #[test]
    fn triangulation_detection() {
        let k4 = named::complete(4);
        assert!(is_planar_triangulation(&k4, &is_planar(&k4).unwrap()));
        let c4 = named::cycle(4);
        assert!(!is_planar_triangulation(&c4, &is_planar(&c4).unwrap()));
        let oct = named::octahedron();
        assert!(is_planar_triangulation(&oct, &is_planar(&oct).unwrap()));
    }

    #[test]
    fn planar_preserving_nonedges_examples() {
        assert_eq!(
            planar_preserving_nonedges(&named::cycle(4)).unwrap(),
            vec![(v(0), v(2)), (v(1), v(3))]
        );
        assert!(planar_preserving_nonedges(&named::icosahedron()).unwrap().is_empty());
        assert_eq!(planar_preserving_nonedges(&named::path(3)).unwrap(), vec![(v(0), v(2))]);
        assert_eq!(
            planar_preserving_nonedges(&named::complete(5)),
            Err(PlanarityError::NotPlanar)
        );
    }

    #[test]
    fn even_triangulation_coloring() {
        let oct = named::octahedron();
        let emb = is_planar(&oct).unwrap();
        let classes = color_even_triangulation(&oct, &emb).unwrap().unwrap();
        for class in &classes {
            assert_eq!(class.len(), 2);
            assert!(!oct.has_edge(class[0], class[1]));
        }
        let k4 = named::complete(4);
        assert_eq!(color_even_triangulation(&k4, &is_planar(&k4).unwrap()), Ok(None));
        let ico = named::icosahedron();
        assert_eq!(color_even_triangulation(&ico, &is_planar(&ico).unwrap()), Ok(None));
        let c4 = named::cycle(4);
        assert_eq!(
            color_even_triangulation(&c4, &is_planar(&c4).unwrap()),
            Err(PlanarityError::NotTriangulation)
        );
    }

    #[test]
    fn face_sharing_pair_is_planar_preserving() {
        let g = named::cycle(6);
        let emb = is_planar(&g).unwrap();
        let (a, b) = face_sharing_nonedge(&g, &emb).unwrap();
        assert_eq!((a, b), (v(0), v(2)));
        assert!(is_planar(&g.with_edge(a, b).unwrap()).is_some());
        let oct = named::octahedron();
        assert_eq!(face_sharing_nonedge(&oct, &is_planar(&oct).unwrap()), None);
    }
}
