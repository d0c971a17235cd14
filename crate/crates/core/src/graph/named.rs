//! Small named graphs used throughout the tests and examples.

use super::Graph;

fn build(n: usize, edges: &[(u32, u32)]) -> Graph {
    Graph::from_edges(n, edges.iter().copied()).expect("named graphs are simple")
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n as u32)
        .flat_map(|a| (a + 1..n as u32).map(move |b| (a, b)))
        .collect();
    build(n, &edges)
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<_> = (0..a as u32)
        .flat_map(|i| (0..b as u32).map(move |j| (i, a as u32 + j)))
        .collect();
    build(a + b, &edges)
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n as u32).map(|i| (i - 1, i)).collect();
    build(n, &edges)
}

/// Cycle `0 - 1 - ... - (n-1) - 0`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let mut edges: Vec<_> = (1..n as u32).map(|i| (i - 1, i)).collect();
    edges.push((0, n as u32 - 1));
    build(n, &edges)
}

/// Cycle on `0..rim` plus hub `rim` joined to every rim vertex.
pub fn wheel(rim: usize) -> Graph {
    let mut edges: Vec<_> = cycle(rim).edges().map(|(a, b)| (a.0, b.0)).collect();
    edges.extend((0..rim as u32).map(|i| (i, rim as u32)));
    build(rim + 1, &edges)
}

/// K4 minus the edge `0-1`: pair `0, 1`, spine `2, 3`.
pub fn diamond() -> Graph {
    build(4, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

/// Triangle `0 1 2` with tail `3` attached to `2`.
pub fn tadpole() -> Graph {
    build(4, &[(0, 1), (0, 2), (1, 2), (2, 3)])
}

pub fn petersen() -> Graph {
    build(
        10,
        &[
            (0, 1), (1, 2), (2, 3), (3, 4), (0, 4),
            (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            (5, 7), (7, 9), (6, 9), (6, 8), (5, 8),
        ],
    )
}

/// Mycielskian of C5: triangle-free with chromatic number 4.
pub fn grotzsch() -> Graph {
    let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)];
    for i in 0..5u32 {
        edges.push((5 + i, (i + 1) % 5));
        edges.push((5 + i, (i + 4) % 5));
        edges.push((10, 5 + i));
    }
    build(11, &edges)
}

/// Octahedron: all pairs except the antipodal ones `0-1`, `2-3`, `4-5`.
pub fn octahedron() -> Graph {
    let edges: Vec<_> = (0..6u32)
        .flat_map(|a| (a + 1..6).map(move |b| (a, b)))
        .filter(|&(a, b)| !(a % 2 == 0 && b == a + 1))
        .collect();
    build(6, &edges)
}

/// Icosahedron: top `0`, upper ring `1..=5`, lower ring `6..=10`, bottom `11`.
pub fn icosahedron() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5u32 {
        let (u, un) = (1 + i, 1 + (i + 1) % 5);
        let (l, ln) = (6 + i, 6 + (i + 1) % 5);
        edges.extend([(0, u), (u, un), (l, ln), (l, 11), (u, l), (u, ln)]);
    }
    build(12, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(petersen().edge_count(), 15);
        assert!(petersen().vertices().all(|v| petersen().degree(v) == 3));
        assert_eq!(grotzsch().edge_count(), 20);
        assert_eq!(octahedron().edge_count(), 12);
        assert!(octahedron().vertices().all(|v| octahedron().degree(v) == 4));
        let ico = icosahedron();
        assert_eq!(ico.edge_count(), 30);
        assert!(ico.vertices().all(|v| ico.degree(v) == 5));
        assert_eq!(wheel(5).edge_count(), 10);
        assert_eq!(complete_bipartite(3, 3).edge_count(), 9);
    }
}
