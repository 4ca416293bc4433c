mod common;

use std::collections::BTreeMap;

use common::{graph, kind, random_lists, small_kind};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sepcolor::gen::{gen_list_assignment, gen_rooted_assignment, ListMode, RootedProfile, DEFAULT_PALETTE};
use sepcolor::graph::{primary_boundary_neighbours, RootedInstance};
use sepcolor::lists::{
    check_separation, check_valid, is_good_neighbour, normalize_good_neighbour, tilde_lists, verify_coloring, Color,
    ColorSet, Coloring, ListAssignment, RootPairs,
};
use sepcolor::oracle::enumerate_all;

fn rename(l: &ListAssignment, map: &BTreeMap<Color, Color>) -> ListAssignment {
    let lists = l.lists().iter().map(|(&v, c)| (v, c.iter().map(|x| map[&x]).collect::<ColorSet>())).collect();
    match l.root() {
        Some(r) => ListAssignment::rooted(
            lists,
            RootPairs::new(r.edge, r.pairs.iter().map(|&(a, b)| (map[&a], map[&b])).collect()),
        ),
        None => ListAssignment::from_lists(lists),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn tilde_bounded_by_pairs(k in kind(), seed: u64, b: bool) {
        let g = graph(k, seed);
        let profile = if b { RootedProfile::B } else { RootedProfile::A };
        if let Ok((inst, l)) = gen_rooted_assignment(&g, profile, DEFAULT_PALETTE, seed) {
            let t = tilde_lists(&l).unwrap();
            let (v1, v2) = inst.root();
            prop_assert!(t[&v1].len() <= l.root_pairs().len());
            prop_assert!(t[&v2].len() <= l.root_pairs().len());
        }
    }

    #[test]
    fn separation_is_monotone(k in kind(), seed: u64) {
        let g = graph(k, seed);
        let l = gen_list_assignment(&g, ListMode::Separated { k: 4, s: 1 }, 12, seed).unwrap();
        prop_assert!(check_separation(&g, &l, 1).is_empty());
        prop_assert!(check_separation(&g, &l, 2).is_empty());
        let r = random_lists(&g, 4, 6, seed);
        if check_separation(&g, &r, 1).is_empty() {
            prop_assert!(check_separation(&g, &r, 2).is_empty());
        }
    }

    #[test]
    fn normalization_touches_only_u(k in kind(), seed: u64) {
        let g = graph(k, seed);
        let Ok((inst, l)) = gen_rooted_assignment(&g, RootedProfile::B, DEFAULT_PALETTE, seed) else {
            return Ok(());
        };
        let v = check_valid(&inst, &l).report.v_star.unwrap();
        let (a, b) = primary_boundary_neighbours(&inst, v).unwrap();
        for u in [a, b] {
            // widen u to four colours sharing both colours of v, then normalize
            if inst.is_root(u) {
                continue;
            }
            let lv = l.list(v).unwrap().clone();
            let mut wide: Vec<Color> = lv.iter().collect();
            wide.extend([100, 101]);
            let mut m = l.clone();
            m.set_list(u, wide.into_iter().collect());
            let out = normalize_good_neighbour(&m, v, u).unwrap();
            for w in inst.graph().vertices() {
                if w != u {
                    prop_assert_eq!(out.list(w), m.list(w));
                }
            }
            prop_assert_eq!(out.root_pairs(), m.root_pairs());
            prop_assert!(is_good_neighbour(&inst, &out, v, u).unwrap());
        }
    }

    #[test]
    fn verdict_ignores_colour_names(k in kind(), seed: u64, b: bool) {
        let g = graph(k, seed);
        let profile = if b { RootedProfile::B } else { RootedProfile::A };
        let Ok((inst, mut l)) = gen_rooted_assignment(&g, profile, DEFAULT_PALETTE, seed) else {
            return Ok(());
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // perturb some lists so invalid verdicts also occur
        for v in inst.graph().vertices() {
            if !inst.is_root(v) && rng.gen_bool(0.1) {
                let mut c: Vec<Color> = l.list(v).unwrap().iter().collect();
                c.truncate(rng.gen_range(1..=c.len()));
                l.set_list(v, c.into_iter().collect());
            }
        }
        let palette: Vec<Color> = l.palette().iter().chain(l.root_pairs().iter().flat_map(|&(a, b)| [a, b])).collect();
        let mut image: Vec<Color> = (0..palette.len() as Color).map(|i| 7 * i + 3).collect();
        image.shuffle(&mut rng);
        let map: BTreeMap<Color, Color> = palette.into_iter().zip(image).collect();
        let before = check_valid(&inst, &l).report;
        let after = check_valid(&inst, &rename(&l, &map)).report;
        prop_assert_eq!(before.verdict, after.verdict);
        prop_assert_eq!(before.v_star, after.v_star);
    }

    #[test]
    fn verifier_matches_enumeration(k in small_kind(), seed: u64) {
        let g = graph(k, seed);
        let l = random_lists(&g, 3, 4, seed);
        let all = enumerate_all(&g, &l, 1_000_000);
        prop_assert!(!all.capped);
        for f in &all.colorings {
            prop_assert!(verify_coloring(&g, &l, f).is_empty());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..200 {
            let f: Coloring = g
                .vertices()
                .map(|v| {
                    let c: Vec<Color> = l.list(v).unwrap().iter().collect();
                    (v, *c.choose(&mut rng).unwrap())
                })
                .collect();
            prop_assert_eq!(verify_coloring(&g, &l, &f).is_empty(), all.colorings.contains(&f));
        }
    }

    #[test]
    fn rooted_verifier_checks_pairs(k in small_kind(), seed: u64) {
        let g = graph(k, seed);
        let Ok((inst, l)) = gen_rooted_assignment(&g, RootedProfile::A, 6, seed) else { return Ok(()) };
        let all = enumerate_all(inst.graph(), &l, 1_000_000);
        let (v1, v2) = inst.root();
        for f in &all.colorings {
            prop_assert!(l.root_pairs().contains(&(f[&v1], f[&v2])));
            prop_assert!(verify_coloring(inst.graph(), &l, f).is_empty());
        }
    }
}

#[test]
fn rooted_instance_rejects_inner_edge() {
    let g = graph(sepcolor::gen::GraphKind::Wheel { k: 5 }, 0);
    assert!(RootedInstance::new(g, (0, 5)).is_err());
}
