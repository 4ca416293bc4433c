mod common;

use common::{graph, kind, permutation, relabel, relabel_lists, small_kind, thin};
use proptest::prelude::*;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sepcolor::gen::{gen_list_assignment, gen_rooted_assignment, gen_wheel, ListMode, RootedProfile, DEFAULT_PALETTE};
use sepcolor::graph::{embed_edges, RootedInstance};
use sepcolor::lists::{check_valid, verify_coloring, Color, ColorSet, ListAssignment, RootPairs};
use sepcolor::oracle::{brute_force_color, enumerate_all, OracleStatus, DEFAULT_BUDGET};
use sepcolor::solver::{claim1_alternative, solve, solve_edges, solve_rooted, CaseLabel};

fn separated(g: &sepcolor::graph::PlaneGraph, s: usize, seed: u64) -> ListAssignment {
    gen_list_assignment(g, ListMode::Separated { k: 4, s }, if s == 1 { 13 } else { DEFAULT_PALETTE }, seed).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn generated_instances_colour(k in kind(), seed: u64, s in 1usize..=2) {
        let g = graph(k, seed);
        let l = separated(&g, s, seed);
        let (f, t) = solve(&g, &l).unwrap();
        prop_assert!(verify_coloring(&g, &l, &f).is_empty());
        prop_assert_eq!(f.len(), g.vertex_count());
        prop_assert!(f.values().all(|&c| c > 0));
        prop_assert_eq!(t.validity_failures(), 0);
        prop_assert!(t.steps.iter().all(|s| s.n >= 3));
    }

    #[test]
    fn solving_is_deterministic(k in kind(), seed: u64) {
        let g = graph(k, seed);
        let l = separated(&g, 2, seed);
        prop_assert_eq!(solve(&g, &l).unwrap(), solve(&g, &l).unwrap());
    }

    #[test]
    fn arbitrary_planar_graphs_colour(k in kind(), seed: u64, keep in 0.2f64..1.0, extra in 0usize..3) {
        // thinned triangulations give bridges, cut vertices, long faces and isolated vertices
        let g = graph(k, seed);
        let n = g.slot_count() + extra;
        let edges = thin(&g, keep, seed);
        let h = embed_edges(n, &edges).unwrap();
        let l = separated(&h, 2, seed);
        let (f, _) = solve_edges(n, &edges, &l).unwrap();
        prop_assert!(verify_coloring(&h, &l, &f).is_empty());
        prop_assert_eq!(f.len(), n);
    }

    #[test]
    fn larger_lists_are_truncated(k in kind(), seed: u64) {
        let g = graph(k, seed);
        let base = separated(&g, 2, seed);
        let mut wide = base.clone();
        for v in g.vertices() {
            let mut c: Vec<Color> = base.list(v).unwrap().iter().collect();
            c.push(1000 + v as Color);
            wide.set_list(v, c.into_iter().collect());
        }
        let (f, _) = solve(&g, &wide).unwrap();
        prop_assert!(verify_coloring(&g, &base, &f).is_empty());
    }

    #[test]
    fn rooted_instances_colour(k in kind(), seed: u64, b: bool, palette in 5usize..10) {
        let g = graph(k, seed);
        let profile = if b { RootedProfile::B } else { RootedProfile::A };
        let Ok((inst, l)) = gen_rooted_assignment(&g, profile, palette, seed) else { return Ok(()) };
        let (f, t) = solve_rooted(&inst, &l).unwrap();
        prop_assert!(verify_coloring(inst.graph(), &l, &f).is_empty());
        prop_assert_eq!(t.validity_failures(), 0);
        let first = t.steps[0];
        prop_assert_eq!(first.n, inst.vertex_count());
        prop_assert_eq!(first.verdict, check_valid(&inst, &l).verdict());
    }

    #[test]
    fn small_outputs_are_enumerated(k in small_kind(), seed: u64, b: bool) {
        let g = graph(k, seed);
        let profile = if b { RootedProfile::B } else { RootedProfile::A };
        let Ok((inst, l)) = gen_rooted_assignment(&g, profile, 6, seed) else { return Ok(()) };
        let (f, _) = solve_rooted(&inst, &l).unwrap();
        let all = enumerate_all(inst.graph(), &l, 1_000_000);
        prop_assert!(!all.capped);
        prop_assert!(all.colorings.contains(&f));
    }

    #[test]
    fn oracle_agrees_on_existence(k in small_kind(), seed: u64) {
        let g = graph(k, seed);
        let l = separated(&g, 2, seed);
        prop_assert!(solve(&g, &l).is_ok());
        let r = brute_force_color(&g, &l, DEFAULT_BUDGET);
        prop_assert_eq!(r.status, OracleStatus::Found);
    }

    #[test]
    fn relabelling_keeps_solvability(k in kind(), seed: u64) {
        let g = graph(k, seed);
        let l = separated(&g, 2, seed);
        let p = permutation(g.slot_count(), seed);
        let (h, m) = (relabel(&g, &p), relabel_lists(&l, &p));
        let (f, _) = solve(&h, &m).unwrap();
        prop_assert!(verify_coloring(&h, &m, &f).is_empty());
    }
}

/// Wheels with rim 3-lists from a five-colour palette and two root pairs,
/// the tightest setting for the alternative-colouring cascade.
fn tight_wheel(seed: u64) -> Option<(RootedInstance, ListAssignment)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(4..=7);
    let inst = RootedInstance::new(gen_wheel(k), (0, k - 1)).unwrap();
    let pick = |rng: &mut ChaCha8Rng, pal: usize, size: usize| -> ColorSet {
        index::sample(rng, pal, size).iter().map(|i| i as Color + 1).collect()
    };
    let mut lists: std::collections::BTreeMap<usize, ColorSet> = (1..k - 1).map(|v| (v, pick(&mut rng, 5, 3))).collect();
    lists.insert(k, pick(&mut rng, 6, 4));
    let mut pairs = Vec::new();
    while pairs.len() < 2 {
        let p = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        if p.0 != p.1 && !pairs.contains(&p) {
            pairs.push(p);
        }
    }
    let l = ListAssignment::rooted(lists, RootPairs::new((0, k - 1), pairs));
    check_valid(&inst, &l).verdict().is_valid().then_some((inst, l))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn alternative_colourings_differ(seed: u64) {
        let Some((inst, l)) = tight_wheel(seed) else { return Ok(()) };
        let (f, _) = solve_rooted(&inst, &l).unwrap();
        let k = inst.boundary().len();
        for y in 1..k - 1 {
            for x in [y - 1, y + 1] {
                let (h, t) = claim1_alternative(&inst, &l, &f, x, y).unwrap();
                prop_assert!(verify_coloring(inst.graph(), &l, &h).is_empty());
                prop_assert_ne!((h[&x], h[&y]), (f[&x], f[&y]));
                prop_assert!(t.steps.iter().any(|s| s.case == CaseLabel::Claim1LPrime));
            }
        }
    }
}
