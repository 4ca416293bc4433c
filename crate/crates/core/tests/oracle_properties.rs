mod common;

use common::{graph, permutation, random_lists, relabel, relabel_lists, small_kind};
use proptest::prelude::*;
use sepcolor::lists::verify_coloring;
use sepcolor::oracle::{brute_force_color, enumerate_all, OracleStatus, DEFAULT_BUDGET};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn search_is_complete(k in small_kind(), seed: u64, max in 1usize..=4, palette in 2usize..=5) {
        let g = graph(k, seed);
        let l = random_lists(&g, max, palette, seed);
        let r = brute_force_color(&g, &l, DEFAULT_BUDGET);
        let all = enumerate_all(&g, &l, 1);
        prop_assert_ne!(r.status, OracleStatus::Aborted);
        prop_assert_eq!(r.status == OracleStatus::Found, !all.colorings.is_empty());
        if let Some(f) = &r.coloring {
            prop_assert!(verify_coloring(&g, &l, f).is_empty());
        }
    }

    #[test]
    fn enumeration_is_exhaustive(k in small_kind(), seed: u64) {
        // count colourings independently by walking the full product of lists
        let g = graph(k, seed);
        let l = random_lists(&g, 4, 5, seed);
        let vs: Vec<_> = g.vertices().collect();
        let lists: Vec<Vec<i64>> = vs.iter().map(|&v| l.list(v).unwrap().iter().collect()).collect();
        let mut idx = vec![0usize; vs.len()];
        let mut count = 0usize;
        'outer: loop {
            let ok = g.edges().iter().all(|&(a, b)| {
                let ia = vs.iter().position(|&v| v == a).unwrap();
                let ib = vs.iter().position(|&v| v == b).unwrap();
                lists[ia][idx[ia]] != lists[ib][idx[ib]]
            });
            count += ok as usize;
            for i in 0..vs.len() {
                idx[i] += 1;
                if idx[i] < lists[i].len() {
                    continue 'outer;
                }
                idx[i] = 0;
            }
            break;
        }
        let all = enumerate_all(&g, &l, usize::MAX);
        prop_assert_eq!(all.colorings.len(), count);
    }

    #[test]
    fn feasibility_survives_relabelling(k in small_kind(), seed: u64) {
        let g = graph(k, seed);
        let l = random_lists(&g, 4, 5, seed);
        let p = permutation(g.slot_count(), seed);
        let a = brute_force_color(&g, &l, DEFAULT_BUDGET).status;
        let b = brute_force_color(&relabel(&g, &p), &relabel_lists(&l, &p), DEFAULT_BUDGET).status;
        prop_assert_eq!(a, b);
    }
}
