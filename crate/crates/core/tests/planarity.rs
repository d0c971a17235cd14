mod common;

use std::collections::{BTreeMap, HashSet};

use common::random_graph;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trichrome::certificate::{verify_coloring, ColoringCertificate};
use trichrome::generators::gen_pseudo_planar;
use trichrome::graph::{named, Graph, VertexId};
use trichrome::planarity::{
    color_even_triangulation, is_planar, is_planar_triangulation, planar_preserving_nonedges,
};

/// Faces of the rotation system `rot`, counted by tracing darts.
fn face_count(rot: &BTreeMap<VertexId, Vec<VertexId>>) -> usize {
    let mut seen: HashSet<(VertexId, VertexId)> = HashSet::new();
    let mut faces = 0;
    for (&a, nbrs) in rot {
        for &b in nbrs {
            if seen.contains(&(a, b)) {
                continue;
            }
            faces += 1;
            let (mut x, mut y) = (a, b);
            while seen.insert((x, y)) {
                let r = &rot[&y];
                let i = r.iter().position(|&t| t == x).unwrap();
                let next = r[(i + 1) % r.len()];
                (x, y) = (y, next);
            }
        }
    }
    faces
}

/// Planarity by trying every rotation system of every component; `None`
/// when there are too many to try.
fn planar_by_rotations(g: &Graph, limit: u64) -> Option<bool> {
    for comp in g.components() {
        let h = g.induced(&comp);
        let vs: Vec<VertexId> = h.vertices().collect();
        let (n, m) = (vs.len(), h.edge_count());
        if m == 0 {
            continue;
        }
        let mut total: u64 = 1;
        for &x in &vs {
            total = total.saturating_mul((1..h.degree(x).max(1) as u64).product::<u64>().max(1));
        }
        if total > limit {
            return None;
        }
        // Each vertex keeps its first neighbour fixed and permutes the rest.
        let options: Vec<Vec<Vec<VertexId>>> = vs
            .iter()
            .map(|&x| {
                let nb: Vec<VertexId> = h.neighbors(x).collect();
                let mut out = Vec::new();
                permutations(&nb[1..], &mut |p| {
                    let mut r = vec![nb[0]];
                    r.extend_from_slice(p);
                    out.push(r);
                });
                out
            })
            .collect();
        let mut idx = vec![0usize; n];
        let mut found = false;
        'outer: loop {
            let rot: BTreeMap<VertexId, Vec<VertexId>> =
                vs.iter().zip(&idx).map(|(&x, &i)| (x, options[vs.iter().position(|&y| y == x).unwrap()][i].clone())).collect();
            if n + face_count(&rot) == m + 2 {
                found = true;
                break;
            }
            for k in 0..n {
                idx[k] += 1;
                if idx[k] < options[k].len() {
                    continue 'outer;
                }
                idx[k] = 0;
            }
            break;
        }
        if !found {
            return Some(false);
        }
    }
    Some(true)
}

fn permutations(items: &[VertexId], f: &mut impl FnMut(&[VertexId])) {
    fn go(items: &mut Vec<VertexId>, k: usize, f: &mut impl FnMut(&[VertexId])) {
        if k == items.len() {
            f(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            go(items, k + 1, f);
            items.swap(k, i);
        }
    }
    go(&mut items.to_vec(), 0, f);
}

#[test]
fn rotation_oracle_sanity() {
    assert_eq!(planar_by_rotations(&named::complete(4), 1_000_000), Some(true));
    assert_eq!(planar_by_rotations(&named::complete(5), 1_000_000), Some(false));
    assert_eq!(planar_by_rotations(&named::complete_bipartite(3, 3), 1_000_000), Some(false));
    assert_eq!(planar_by_rotations(&named::octahedron(), 1_000_000), Some(true));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn lr_test_agrees_with_rotation_enumeration(n in 5usize..=8, d in 2.0f64..5.0, seed in any::<u64>()) {
        let g = random_graph(n, d, seed);
        if let Some(expected) = planar_by_rotations(&g, 200_000) {
            let emb = is_planar(&g);
            prop_assert_eq!(emb.is_some(), expected);
            if let Some(e) = emb {
                prop_assert!(e.is_valid_for(&g));
            }
        }
    }

    #[test]
    fn planar_preserving_pairs_are_exactly_the_planar_additions(n in 5usize..=30, frac in 0.0f64..1.0, seed in any::<u64>()) {
        let d = 2.0 + frac * (6.0 - 12.0 / n as f64 - 2.0);
        let g = gen_pseudo_planar(n, d, seed).unwrap();
        let yielded: HashSet<(VertexId, VertexId)> = planar_preserving_nonedges(&g).unwrap().into_iter().collect();
        for (a, b) in g.non_edges() {
            let planar = is_planar(&g.with_edge(a, b).unwrap()).is_some();
            prop_assert_eq!(yielded.contains(&(a, b)) || yielded.contains(&(b, a)), planar);
        }
    }
}

/// Even triangulation grown from the octahedron by gluing octahedra into
/// random faces; every degree stays even.
fn even_triangulation(steps: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(u32, u32)> = named::octahedron().edges().map(|(a, b)| (a.0, b.0)).collect();
    let mut faces: Vec<[u32; 3]> = Vec::new();
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                faces.push([a, b, c]);
            }
        }
    }
    let mut n = 6u32;
    for _ in 0..steps {
        let i = rng.random_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        let (x, y, z) = (n, n + 1, n + 2);
        n += 3;
        edges.extend([(x, a), (x, b), (y, b), (y, c), (z, c), (z, a), (x, y), (y, z), (z, x)]);
        faces.extend([[a, b, x], [b, c, y], [c, a, z], [a, x, z], [b, y, x], [c, z, y], [x, y, z]]);
    }
    let mut perm: Vec<u32> = (0..n).collect();
    perm.shuffle(&mut rng);
    Graph::from_edges(n as usize, edges.into_iter().map(|(a, b)| (perm[a as usize], perm[b as usize]))).unwrap()
}

#[test]
fn even_triangulations_are_colored_properly() {
    for seed in 0..60 {
        let g = even_triangulation((seed % 12) as usize, seed);
        assert!(g.vertices().all(|x| g.degree(x) % 2 == 0));
        let emb = is_planar(&g).expect("planar by construction");
        assert!(is_planar_triangulation(&g, &emb));
        let classes = color_even_triangulation(&g, &emb).unwrap().expect("even triangulations are 3-colorable");
        let c = ColoringCertificate { classes: classes.to_vec() };
        assert!(verify_coloring(&g, &c));
    }
}

#[test]
fn odd_triangulations_are_not_colored() {
    let ico = named::icosahedron();
    let emb = is_planar(&ico).unwrap();
    assert_eq!(color_even_triangulation(&ico, &emb).unwrap(), None);
    assert!(is_planar(&named::petersen()).is_none());
    assert!(is_planar(&named::wheel(7)).is_some());
    assert!(!is_planar_triangulation(&named::cycle(5), &is_planar(&named::cycle(5)).unwrap()));
}
