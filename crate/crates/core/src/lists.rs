//! Colours, list assignments (plain and rooted), and the checks built on them.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{primary_boundary_neighbours, PlaneGraph, RootedInstance, Vertex};

/// Colour identifier. User palettes are non-negative; negative colours are
/// reserved for apex vertices added during preprocessing.
pub type Color = i64;

/// A sorted set of colours. Lists in this crate hold at most a handful of
/// colours, so a sorted vector beats a tree.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<Color>", into = "Vec<Color>")]
pub struct ColorSet(Vec<Color>);

impl ColorSet {
    pub fn new() -> Self {
        ColorSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: Color) -> bool {
        self.0.binary_search(&c).is_ok()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Color> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.0
    }

    pub fn first(&self) -> Option<Color> {
        self.0.first().copied()
    }

    pub fn insert(&mut self, c: Color) -> bool {
        match self.0.binary_search(&c) {
            Ok(_) => false,
            Err(i) => {
                self.0.insert(i, c);
                true
            }
        }
    }

    pub fn remove(&mut self, c: Color) -> bool {
        match self.0.binary_search(&c) {
            Ok(i) => {
                self.0.remove(i);
                true
            }
            Err(_) => false,
        }
    }

    /// This set with every colour in `cs` removed.
    pub fn without(&self, cs: &[Color]) -> ColorSet {
        ColorSet(self.0.iter().copied().filter(|c| !cs.contains(c)).collect())
    }

    pub fn intersection(&self, other: &ColorSet) -> ColorSet {
        ColorSet(self.iter().filter(|&c| other.contains(c)).collect())
    }

    pub fn intersection_len(&self, other: &ColorSet) -> usize {
        let (mut i, mut j, mut n) = (0, 0, 0);
        let (a, b) = (&self.0, &other.0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }

    /// The `k` smallest colours.
    pub fn truncated(&self, k: usize) -> ColorSet {
        ColorSet(self.0.iter().take(k).copied().collect())
    }
}

impl From<Vec<Color>> for ColorSet {
    fn from(mut v: Vec<Color>) -> Self {
        v.sort_unstable();
        v.dedup();
        ColorSet(v)
    }
}

impl From<ColorSet> for Vec<Color> {
    fn from(s: ColorSet) -> Self {
        s.0
    }
}

impl<const N: usize> From<[Color; N]> for ColorSet {
    fn from(a: [Color; N]) -> Self {
        ColorSet::from(a.to_vec())
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        ColorSet::from(iter.into_iter().collect::<Vec<_>>())
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// Allowed ordered colour pairs on a directed root edge `(v1, v2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootPairs {
    pub edge: (Vertex, Vertex),
    /// Sorted, distinct, each with distinct components.
    pub pairs: Vec<(Color, Color)>,
}

impl RootPairs {
    pub fn new(edge: (Vertex, Vertex), mut pairs: Vec<(Color, Color)>) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        RootPairs { edge, pairs }
    }

    pub fn firsts(&self) -> ColorSet {
        self.pairs.iter().map(|&(c, _)| c).collect()
    }

    pub fn seconds(&self) -> ColorSet {
        self.pairs.iter().map(|&(_, d)| d).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ListError {
    #[error("list assignment is not rooted")]
    NotRooted,
    #[error("{0} is not a primary boundary neighbour of {1}")]
    NotPrimaryNeighbour(Vertex, Vertex),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
}

/// Per-vertex colour lists, optionally with a rooted edge carrying pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ListAssignment {
    lists: BTreeMap<Vertex, ColorSet>,
    root: Option<RootPairs>,
}

impl ListAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_lists(lists: BTreeMap<Vertex, ColorSet>) -> Self {
        ListAssignment { lists, root: None }
    }

    /// A rooted assignment; any plain lists on the root vertices are dropped.
    pub fn rooted(mut lists: BTreeMap<Vertex, ColorSet>, root: RootPairs) -> Self {
        lists.remove(&root.edge.0);
        lists.remove(&root.edge.1);
        ListAssignment {
            lists,
            root: Some(root),
        }
    }

    pub fn lists(&self) -> &BTreeMap<Vertex, ColorSet> {
        &self.lists
    }

    pub fn root(&self) -> Option<&RootPairs> {
        self.root.as_ref()
    }

    pub fn root_pairs(&self) -> &[(Color, Color)] {
        self.root.as_ref().map_or(&[], |r| &r.pairs)
    }

    pub fn is_root(&self, v: Vertex) -> bool {
        self.root.as_ref().is_some_and(|r| r.edge.0 == v || r.edge.1 == v)
    }

    pub fn list(&self, v: Vertex) -> Option<&ColorSet> {
        self.lists.get(&v)
    }

    pub fn set_list(&mut self, v: Vertex, list: ColorSet) {
        self.lists.insert(v, list);
    }

    pub fn set_pairs(&mut self, pairs: Vec<(Color, Color)>) {
        let edge = self.root.as_ref().expect("rooted assignment").edge;
        self.root = Some(RootPairs::new(edge, pairs));
    }

    pub fn remove_list(&mut self, v: Vertex) -> Option<ColorSet> {
        self.lists.remove(&v)
    }

    /// Removes colour `c` from the list of `v` (no-op for root or unlisted vertices).
    pub fn delete_color(&mut self, v: Vertex, c: Color) {
        if let Some(l) = self.lists.get_mut(&v) {
            l.remove(c);
        }
    }

    /// The associated list of `v`: the plain list, or the projection of the
    /// root pairs onto `v`'s coordinate.
    pub fn tilde(&self, v: Vertex) -> ColorSet {
        if let Some(r) = &self.root {
            if v == r.edge.0 {
                return r.firsts();
            }
            if v == r.edge.1 {
                return r.seconds();
            }
        }
        self.lists.get(&v).cloned().unwrap_or_default()
    }

    /// Keeps only lists of vertices satisfying `keep`; pairs are unchanged.
    pub fn restricted(&self, keep: impl Fn(Vertex) -> bool) -> ListAssignment {
        ListAssignment {
            lists: self.lists.iter().filter(|(&v, _)| keep(v)).map(|(&v, l)| (v, l.clone())).collect(),
            root: self.root.clone(),
        }
    }

    /// Re-roots: drops the lists of the new root vertices and installs `pairs`.
    pub fn with_root(&self, edge: (Vertex, Vertex), pairs: Vec<(Color, Color)>) -> ListAssignment {
        let mut lists = self.lists.clone();
        lists.remove(&edge.0);
        lists.remove(&edge.1);
        ListAssignment {
            lists,
            root: Some(RootPairs::new(edge, pairs)),
        }
    }

    /// Plain lists truncated to their `k` smallest colours.
    pub fn truncated(&self, k: usize) -> ListAssignment {
        ListAssignment {
            lists: self.lists.iter().map(|(&v, l)| (v, l.truncated(k))).collect(),
            root: self.root.clone(),
        }
    }

    /// Every colour in any list or root pair.
    pub fn palette(&self) -> ColorSet {
        let mut out: Vec<Color> = self.lists.values().flat_map(|l| l.iter()).collect();
        for &(c, d) in self.root_pairs() {
            out.push(c);
            out.push(d);
        }
        ColorSet::from(out)
    }
}

/// The associated assignment: plain lists off the root, projections of the
/// pairs on the root vertices.
pub fn tilde_lists(l: &ListAssignment) -> Result<BTreeMap<Vertex, ColorSet>, ListError> {
    let r = l.root().ok_or(ListError::NotRooted)?;
    let mut out = l.lists().clone();
    out.insert(r.edge.0, r.firsts());
    out.insert(r.edge.1, r.seconds());
    Ok(out)
}

/// Edges `xy` (with `x < y`) whose associated lists share more than `s` colours.
pub fn check_separation(g: &PlaneGraph, l: &ListAssignment, s: usize) -> Vec<(Vertex, Vertex)> {
    g.edges()
        .into_iter()
        .filter(|&(u, v)| l.tilde(u).intersection_len(&l.tilde(v)) > s)
        .collect()
}

pub fn is_good_neighbour(
    inst: &RootedInstance,
    l: &ListAssignment,
    v: Vertex,
    u: Vertex,
) -> Result<bool, ListError> {
    let (a, b) =
        primary_boundary_neighbours(inst, v).map_err(|_| ListError::NotPrimaryNeighbour(u, v))?;
    if u != a && u != b {
        return Err(ListError::NotPrimaryNeighbour(u, v));
    }
    Ok(good_neighbour_test(l, v, u))
}

fn good_neighbour_test(l: &ListAssignment, v: Vertex, u: Vertex) -> bool {
    let tu = l.tilde(u);
    tu.len() == 4 || tu.intersection_len(&l.tilde(v)) <= 1
}

/// Drops the largest colour of `L(u) ∩ L(v)` from `u`'s list (or the pairs
/// using it, when `u` is a root vertex).
pub fn normalize_good_neighbour(
    l: &ListAssignment,
    v: Vertex,
    u: Vertex,
) -> Result<ListAssignment, ListError> {
    let tu = l.tilde(u);
    let common = tu.intersection(&l.tilde(v));
    if tu.len() != 4 || common.len() != 2 {
        return Err(ListError::PreconditionUnmet(format!(
            "need |L({u})| = 4 and |L({u}) ∩ L({v})| = 2, have {} and {}",
            tu.len(),
            common.len()
        )));
    }
    let drop = common.iter().next_back().expect("two common colours");
    let mut out = l.clone();
    match l.root() {
        Some(r) if r.edge.0 == u => {
            out.set_pairs(r.pairs.iter().copied().filter(|&(c, _)| c != drop).collect());
        }
        Some(r) if r.edge.1 == u => {
            out.set_pairs(r.pairs.iter().copied().filter(|&(_, d)| d != drop).collect());
        }
        _ => out.delete_color(u, drop),
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "valid-A")]
    ValidA,
    #[serde(rename = "valid-B")]
    ValidB,
    #[serde(rename = "invalid")]
    Invalid,
}

impl Verdict {
    pub fn is_valid(self) -> bool {
        self != Verdict::Invalid
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    NotRooted,
    RootMismatch { expected: (Vertex, Vertex) },
    RootPairNotDistinct { pair: (Color, Color) },
    NoRootPairs,
    TooFewRootPairs { have: usize },
    MissingList { vertex: Vertex },
    InteriorListSize { vertex: Vertex, size: usize },
    BoundaryListTooSmall { vertex: Vertex, size: usize },
    SeveralDeficient { vertices: Vec<Vertex> },
    NoGoodNeighbour { vertex: Vertex },
    Separation { u: Vertex, v: Vertex },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub verdict: Verdict,
    pub v_star: Option<Vertex>,
    pub good_neighbour: Option<Vertex>,
    pub violations: Vec<Violation>,
}

/// Outcome of [`check_valid`]: the report and the normalized assignment the
/// solver continues with.
#[derive(Debug, Clone)]
pub struct Validity {
    pub report: ValidityReport,
    pub normalized: ListAssignment,
}

impl Validity {
    pub fn verdict(&self) -> Verdict {
        self.report.verdict
    }
}

/// Checks conditions (A)/(B) on a rooted instance. When (B) holds the good
/// neighbour is chosen (a root vertex with a single associated colour first,
/// then the smaller id) and, if it qualifies only by having four colours, it
/// is normalized so that it shares at most one colour with `v*`.
pub fn check_valid(inst: &RootedInstance, l: &ListAssignment) -> Validity {
    let mut violations = Vec::new();
    let invalid = |violations: Vec<Violation>| Validity {
        report: ValidityReport {
            verdict: Verdict::Invalid,
            v_star: None,
            good_neighbour: None,
            violations,
        },
        normalized: l.clone(),
    };

    let Some(root) = l.root() else {
        return invalid(vec![Violation::NotRooted]);
    };
    if root.edge != inst.root() {
        return invalid(vec![Violation::RootMismatch { expected: inst.root() }]);
    }
    for &(c, d) in &root.pairs {
        if c == d {
            violations.push(Violation::RootPairNotDistinct { pair: (c, d) });
        }
    }
    for (u, v) in check_separation(inst.graph(), l, 2) {
        violations.push(Violation::Separation { u, v });
    }

    let g = inst.graph();
    for v in g.vertices() {
        if inst.is_root(v) {
            continue;
        }
        let Some(list) = l.list(v) else {
            violations.push(Violation::MissingList { vertex: v });
            continue;
        };
        if inst.is_interior(v) && list.len() != 4 {
            violations.push(Violation::InteriorListSize { vertex: v, size: list.len() });
        }
    }

    let mut deficient = Vec::new();
    for v in inst.free_boundary() {
        let size = l.list(v).map_or(0, ColorSet::len);
        if size < 2 {
            violations.push(Violation::BoundaryListTooSmall { vertex: v, size });
        } else if size == 2 {
            deficient.push(v);
        }
    }

    let pairs = root.pairs.len();
    if pairs == 0 {
        violations.push(Violation::NoRootPairs);
    }
    if !violations.is_empty() {
        return invalid(violations);
    }

    match deficient.as_slice() {
        [] => Validity {
            report: ValidityReport {
                verdict: Verdict::ValidA,
                v_star: None,
                good_neighbour: None,
                violations,
            },
            normalized: l.clone(),
        },
        &[v_star] => {
            if pairs < 2 {
                return invalid(vec![Violation::TooFewRootPairs { have: pairs }]);
            }
            let (a, b) = primary_boundary_neighbours(inst, v_star).expect("free boundary vertex");
            let good: Vec<Vertex> = [a, b].into_iter().filter(|&u| good_neighbour_test(l, v_star, u)).collect();
            let preferred = good
                .iter()
                .copied()
                .find(|&u| inst.is_root(u) && l.tilde(u).len() == 1)
                .or_else(|| good.iter().copied().min());
            let Some(u) = preferred else {
                return invalid(vec![Violation::NoGoodNeighbour { vertex: v_star }]);
            };
            let normalized = if l.tilde(u).intersection_len(&l.tilde(v_star)) > 1 {
                normalize_good_neighbour(l, v_star, u).expect("four colours sharing two with v*")
            } else {
                l.clone()
            };
            Validity {
                report: ValidityReport {
                    verdict: Verdict::ValidB,
                    v_star: Some(v_star),
                    good_neighbour: Some(u),
                    violations,
                },
                normalized,
            }
        }
        _ => invalid(vec![Violation::SeveralDeficient { vertices: deficient }]),
    }
}

/// A total map from vertices to colours.
pub type Coloring = BTreeMap<Vertex, Color>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ColoringViolation {
    Uncolored { vertex: Vertex },
    EdgeConflict { u: Vertex, v: Vertex },
    ListBreach { vertex: Vertex },
    PairBreach { pair: (Color, Color) },
}

/// Every way in which `f` fails to be an `L`-colouring of `g`.
pub fn verify_coloring(g: &PlaneGraph, l: &ListAssignment, f: &Coloring) -> Vec<ColoringViolation> {
    let mut out = Vec::new();
    for v in g.vertices() {
        let Some(&c) = f.get(&v) else {
            out.push(ColoringViolation::Uncolored { vertex: v });
            continue;
        };
        if !l.is_root(v) && !l.list(v).is_some_and(|list| list.contains(c)) {
            out.push(ColoringViolation::ListBreach { vertex: v });
        }
    }
    for (u, v) in g.edges() {
        if let (Some(a), Some(b)) = (f.get(&u), f.get(&v)) {
            if a == b {
                out.push(ColoringViolation::EdgeConflict { u, v });
            }
        }
    }
    if let Some(r) = l.root() {
        if let (Some(&a), Some(&b)) = (f.get(&r.edge.0), f.get(&r.edge.1)) {
            if !r.pairs.contains(&(a, b)) {
                out.push(ColoringViolation::PairBreach { pair: (a, b) });
            }
        }
    }
    out
}
