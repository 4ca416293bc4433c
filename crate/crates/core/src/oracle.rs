//! Exhaustive list colouring by backtracking, independent of the solver.

use serde::{Deserialize, Serialize};

use crate::graph::{PlaneGraph, Vertex};
use crate::lists::{Color, Coloring, ListAssignment};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleStatus {
    Found,
    Infeasible,
    Aborted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub status: OracleStatus,
    pub coloring: Option<Coloring>,
    pub nodes: u64,
}

/// Positions of the root vertices and their allowed colour pairs.
type RootConstraint = (usize, usize, Vec<(Color, Color)>);

/// Dense copy of the problem: vertices renumbered `0..k` in id order.
struct Problem {
    ids: Vec<Vertex>,
    adj: Vec<Vec<usize>>,
    domains: Vec<Vec<Color>>,
    /// Root positions and allowed pairs, when rooted.
    root: Option<RootConstraint>,
}

impl Problem {
    fn new(g: &PlaneGraph, l: &ListAssignment) -> Self {
        let ids: Vec<Vertex> = g.vertices().collect();
        let local = |v: Vertex| ids.binary_search(&v).expect("vertex of g");
        let adj = ids.iter().map(|&v| g.neighbours(v).iter().map(|&u| local(u)).collect()).collect();
        let domains = ids.iter().map(|&v| l.tilde(v).iter().collect()).collect();
        let root = l
            .root()
            .filter(|r| g.contains(r.edge.0) && g.contains(r.edge.1))
            .map(|r| (local(r.edge.0), local(r.edge.1), r.pairs.clone()));
        Problem { ids, adj, domains, root }
    }

    fn pair_ok(&self, assign: &[Option<Color>], v: usize, c: Color) -> bool {
        let Some((a, b, pairs)) = &self.root else { return true };
        let (ca, cb) = if v == *a {
            (Some(c), assign[*b])
        } else if v == *b {
            (assign[*a], Some(c))
        } else {
            return true;
        };
        match (ca, cb) {
            (Some(x), Some(y)) => pairs.contains(&(x, y)),
            (Some(x), None) => pairs.iter().any(|&(p, _)| p == x),
            (None, Some(y)) => pairs.iter().any(|&(_, q)| q == y),
            (None, None) => true,
        }
    }

    fn to_coloring(&self, assign: &[Option<Color>]) -> Coloring {
        self.ids.iter().zip(assign).map(|(&v, c)| (v, c.expect("complete"))).collect()
    }
}

/// Depth-first search choosing the vertex with fewest remaining colours
/// (ties by id), colours ascending, with forward checking. Root pairs are
/// enforced as a binary constraint on the root edge.
pub fn brute_force_color(g: &PlaneGraph, l: &ListAssignment, budget: u64) -> OracleResult {
    let p = Problem::new(g, l);
    let k = p.ids.len();
    let mut assign: Vec<Option<Color>> = vec![None; k];
    let mut domains = p.domains.clone();
    let mut nodes = 0u64;
    let status = match mrv(&p, &mut assign, &mut domains, &mut nodes, budget) {
        Some(true) => OracleStatus::Found,
        Some(false) => OracleStatus::Infeasible,
        None => OracleStatus::Aborted,
    };
    OracleResult {
        status,
        coloring: (status == OracleStatus::Found).then(|| p.to_coloring(&assign)),
        nodes,
    }
}

/// `Some(found)` on completion, `None` when the budget ran out.
fn mrv(
    p: &Problem,
    assign: &mut [Option<Color>],
    domains: &mut [Vec<Color>],
    nodes: &mut u64,
    budget: u64,
) -> Option<bool> {
    let Some(v) = (0..assign.len())
        .filter(|&v| assign[v].is_none())
        .min_by_key(|&v| (domains[v].len(), v))
    else {
        return Some(true);
    };
    for c in domains[v].clone() {
        if !p.pair_ok(assign, v, c) {
            continue;
        }
        *nodes += 1;
        if *nodes > budget {
            return None;
        }
        assign[v] = Some(c);
        let mut pruned = Vec::new();
        let mut wiped = false;
        for &u in &p.adj[v] {
            if assign[u].is_none() {
                if let Some(i) = domains[u].iter().position(|&d| d == c) {
                    domains[u].remove(i);
                    pruned.push((u, i));
                    wiped |= domains[u].is_empty();
                }
            }
        }
        if !wiped {
            match mrv(p, assign, domains, nodes, budget) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
        }
        for &(u, i) in pruned.iter().rev() {
            domains[u].insert(i, c);
        }
        assign[v] = None;
    }
    Some(false)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub colorings: Vec<Coloring>,
    /// Set when the cap stopped the enumeration early.
    pub capped: bool,
}

/// All colourings in lexicographic order of `(f(v))` over increasing vertex
/// ids, stopping after `cap`.
pub fn enumerate_all(g: &PlaneGraph, l: &ListAssignment, cap: usize) -> Enumeration {
    let p = Problem::new(g, l);
    let mut assign = vec![None; p.ids.len()];
    let mut out = Vec::new();
    let capped = !lex(&p, 0, &mut assign, &mut out, cap);
    Enumeration { colorings: out, capped }
}

/// Returns false once the cap is hit.
fn lex(p: &Problem, v: usize, assign: &mut [Option<Color>], out: &mut Vec<Coloring>, cap: usize) -> bool {
    if v == assign.len() {
        if out.len() == cap {
            return false;
        }
        out.push(p.to_coloring(assign));
        return true;
    }
    for &c in &p.domains[v] {
        if p.adj[v].iter().any(|&u| assign[u] == Some(c)) || !p.pair_ok(assign, v, c) {
            continue;
        }
        assign[v] = Some(c);
        let go_on = lex(p, v + 1, assign, out, cap);
        assign[v] = None;
        if !go_on {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lists::{verify_coloring, ColorSet, RootPairs};

    fn cycle(n: usize) -> PlaneGraph {
        let rot = (0..n).map(|i| vec![(i + 1) % n, (i + n - 1) % n]).collect();
        PlaneGraph::new(rot, Some((0, 1))).unwrap()
    }

    fn uniform(n: usize, list: &[Color]) -> ListAssignment {
        let mut l = ListAssignment::new();
        for v in 0..n {
            l.set_list(v, ColorSet::from(list.to_vec()));
        }
        l
    }

    #[test]
    fn triangle_two_colours_infeasible() {
        let r = brute_force_color(&cycle(3), &uniform(3, &[1, 2]), DEFAULT_BUDGET);
        assert_eq!(r.status, OracleStatus::Infeasible);
    }

    #[test]
    fn even_cycle_alternates() {
        let g = cycle(6);
        let l = uniform(6, &[1, 2]);
        let r = brute_force_color(&g, &l, DEFAULT_BUDGET);
        assert_eq!(r.status, OracleStatus::Found);
        assert!(verify_coloring(&g, &l, r.coloring.as_ref().unwrap()).is_empty());
    }

    #[test]
    fn k4_three_colours_infeasible() {
        let g = crate::graph::embed_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(brute_force_color(&g, &uniform(4, &[1, 2, 3]), DEFAULT_BUDGET).status, OracleStatus::Infeasible);
    }

    #[test]
    fn budget_aborts() {
        let g = crate::graph::embed_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(brute_force_color(&g, &uniform(4, &[1, 2, 3]), 2).status, OracleStatus::Aborted);
    }

    #[test]
    fn triangle_enumeration() {
        let g = cycle(3);
        let mut l = ListAssignment::new();
        l.set_list(0, ColorSet::from([1, 2]));
        l.set_list(1, ColorSet::from([2, 3]));
        l.set_list(2, ColorSet::from([3, 1]));
        let e = enumerate_all(&g, &l, 100);
        let want: Vec<Coloring> = vec![[(0, 1), (1, 2), (2, 3)].into(), [(0, 2), (1, 3), (2, 1)].into()];
        assert_eq!(e.colorings, want);
        assert!(!e.capped);
    }

    #[test]
    fn trivial_enumerations() {
        let edge = PlaneGraph::new(vec![vec![1], vec![0]], Some((0, 1))).unwrap();
        assert!(enumerate_all(&edge, &uniform(2, &[1]), 10).colorings.is_empty());
        let single = PlaneGraph::new(vec![vec![]], None).unwrap();
        assert_eq!(enumerate_all(&single, &uniform(1, &[1, 2]), 10).colorings.len(), 2);
        let e = enumerate_all(&single, &uniform(1, &[1, 2]), 1);
        assert!(e.capped && e.colorings.len() == 1);
    }

    #[test]
    fn root_pairs_constrain() {
        let g = cycle(3);
        let mut lists = std::collections::BTreeMap::new();
        lists.insert(2, ColorSet::from([1, 4]));
        let l = ListAssignment::rooted(lists, RootPairs::new((0, 1), vec![(1, 2), (1, 3)]));
        let e = enumerate_all(&g, &l, 100);
        assert_eq!(e.colorings.len(), 2);
        assert!(e.colorings.iter().all(|f| f[&0] == 1 && f[&2] == 4));
        assert_eq!(brute_force_color(&g, &l, DEFAULT_BUDGET).status, OracleStatus::Found);
    }
}
