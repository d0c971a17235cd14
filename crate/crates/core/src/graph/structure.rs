use std::collections::VecDeque;

use super::{Graph, VertexId};

pub fn common_neighbors(g: &Graph, u: VertexId, v: VertexId) -> Vec<VertexId> {
    if !g.is_live(u) || !g.is_live(v) {
        return Vec::new();
    }
    g.common_neighbors_iter(u, v).collect()
}

/// Subgraph induced by `N(u)`, keeping ids.
pub fn induced_neighborhood(g: &Graph, u: VertexId) -> Graph {
    let nbrs: Vec<_> = g.neighbors(u).collect();
    g.induced(&nbrs)
}

/// Proper 2-coloring found by BFS over each component, or `None` when an odd
/// cycle exists. Each side is sorted ascending.
pub fn two_coloring(g: &Graph) -> Option<[Vec<VertexId>; 2]> {
    let mut side: Vec<Option<u8>> = vec![None; g.next_id().index()];
    let mut sides = [Vec::new(), Vec::new()];
    for s in g.vertices() {
        if side[s.index()].is_some() {
            continue;
        }
        side[s.index()] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let sx = side[x.index()].expect("queued vertices are colored");
            sides[sx as usize].push(x);
            for y in g.neighbors(x) {
                match side[y.index()] {
                    None => {
                        side[y.index()] = Some(1 - sx);
                        queue.push_back(y);
                    }
                    Some(sy) if sy == sx => return None,
                    Some(_) => {}
                }
            }
        }
    }
    sides[0].sort();
    sides[1].sort();
    Some(sides)
}

pub fn is_bipartite(g: &Graph) -> bool {
    two_coloring(g).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn wheel_hub_neighborhoods() {
        let w5 = named::wheel(5);
        let hub = VertexId(5);
        let n5 = induced_neighborhood(&w5, hub);
        assert_eq!(n5.vertex_count(), 5);
        assert_eq!(n5.edge_count(), 5);
        assert!(!is_bipartite(&n5));

        let w6 = named::wheel(6);
        let n6 = induced_neighborhood(&w6, VertexId(6));
        assert_eq!(n6.edge_count(), 6);
        assert!(is_bipartite(&n6));
        let [a, b] = two_coloring(&n6).unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(b.len(), 3);
    }

    #[test]
    fn diamond_pair_common_neighbors_are_the_spine() {
        let g = named::diamond();
        assert_eq!(common_neighbors(&g, VertexId(0), VertexId(1)), vec![VertexId(2), VertexId(3)]);
    }

    #[test]
    fn bipartite_k33_and_edgeless() {
        assert!(is_bipartite(&named::complete_bipartite(3, 3)));
        assert!(is_bipartite(&Graph::new(4)));
        assert!(!is_bipartite(&named::complete(3)));
    }
}
