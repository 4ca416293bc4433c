#![allow(dead_code)]

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sepcolor::gen::{gen_graph, GraphKind};
use sepcolor::graph::{PlaneGraph, Vertex};
use sepcolor::lists::{ColorSet, ListAssignment};

pub fn kind() -> impl Strategy<Value = GraphKind> {
    prop_oneof![
        (3usize..40).prop_map(|n| GraphKind::Stacked { n }),
        (3usize..13, 0usize..30).prop_map(|(k, m)| GraphKind::Polygon { k, m }),
        (3usize..12).prop_map(|k| GraphKind::Wheel { k }),
    ]
}

pub fn small_kind() -> impl Strategy<Value = GraphKind> {
    prop_oneof![
        (3usize..=9).prop_map(|n| GraphKind::Stacked { n }),
        (3usize..=6, 0usize..=3).prop_map(|(k, m)| GraphKind::Polygon { k, m }),
        (3usize..=8).prop_map(|k| GraphKind::Wheel { k }),
    ]
}

pub fn graph(kind: GraphKind, seed: u64) -> PlaneGraph {
    gen_graph(kind, seed).expect("strategy sizes are valid")
}

/// Edge list of `g` with each edge kept with probability `keep`.
pub fn thin(g: &PlaneGraph, keep: f64, seed: u64) -> Vec<(Vertex, Vertex)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    g.edges().into_iter().filter(|_| rng.gen_bool(keep)).collect()
}

/// `g` with vertex `v` renamed `perm[v]`.
pub fn relabel(g: &PlaneGraph, perm: &[Vertex]) -> PlaneGraph {
    let mut rot = vec![Vec::new(); perm.len()];
    for v in g.vertices() {
        rot[perm[v]] = g.neighbours(v).iter().map(|&u| perm[u]).collect();
    }
    PlaneGraph::new(rot, g.outer_hint().map(|(a, b)| (perm[a], perm[b]))).expect("relabelling keeps the embedding")
}

pub fn permutation(n: usize, seed: u64) -> Vec<Vertex> {
    let mut p: Vec<Vertex> = (0..n).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}

pub fn relabel_lists(l: &ListAssignment, perm: &[Vertex]) -> ListAssignment {
    ListAssignment::from_lists(l.lists().iter().map(|(&v, c)| (perm[v], c.clone())).collect())
}

/// Lists of random sizes in `1..=max` from a small palette, so that both
/// colourable and uncolourable instances occur.
pub fn random_lists(g: &PlaneGraph, max: usize, palette: usize, seed: u64) -> ListAssignment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut l = ListAssignment::new();
    for v in g.vertices() {
        let size = rng.gen_range(1..=max);
        let picks = rand::seq::index::sample(&mut rng, palette, size.min(palette));
        l.set_list(v, picks.iter().map(|i| i as i64 + 1).collect::<ColorSet>());
    }
    l
}
