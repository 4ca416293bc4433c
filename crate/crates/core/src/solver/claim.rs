use crate::graph::{PlaneGraph, RootedInstance, Vertex};
use crate::lists::{check_valid, verify_coloring, Color, Coloring, ListAssignment, Verdict};

use super::rooted::{other_boundary_neighbour, peel};
use super::{CaseLabel, SolveError, Solver};

impl Solver {
    /// A second colouring of `g1` that differs from `f` on `(x, y)`, following
    /// the cascade of reduced assignments: drop `f(y)`, switch root pair, drop
    /// `f(x)`, then the two peeled instances on either side of the chord.
    pub(super) fn claim1(
        &mut self,
        g1: &RootedInstance,
        l1: &ListAssignment,
        f: &Coloring,
        x: Vertex,
        y: Vertex,
    ) -> Result<Coloring, SolveError> {
        self.claim1_bounded(g1, l1, f, x, y, usize::MAX)
    }

    pub(super) fn claim1_bounded(
        &mut self,
        g1: &RootedInstance,
        l1: &ListAssignment,
        f: &Coloring,
        x: Vertex,
        y: Vertex,
        bound: usize,
    ) -> Result<Coloring, SolveError> {
        let g = g1.graph();
        let (fx, fy) = (f[&x], f[&y]);
        if g1.is_root(y) {
            return Err(self.violation(format!("chord endpoint {y} must not be a root vertex")));
        }
        let accept = |s: &Self, h: Coloring, step: CaseLabel| -> Result<Coloring, SolveError> {
            let bad = verify_coloring(g, l1, &h);
            if !bad.is_empty() || (h[&x], h[&y]) == (fx, fy) {
                return Err(s.violation(format!("{step} extension is not a new colouring: {bad:?}")));
            }
            Ok(h)
        };

        let mut lp = l1.clone();
        lp.delete_color(y, fy);
        if let Some(h) = self.attempt(CaseLabel::Claim1LPrime, g1.clone(), lp, bound)? {
            return accept(self, h, CaseLabel::Claim1LPrime);
        }

        if g1.is_root(x) {
            let first = x == g1.root().0;
            let pair = l1
                .root_pairs()
                .iter()
                .copied()
                .find(|&(p, q)| if first { p != fx } else { q != fx });
            if let Some(pair) = pair {
                let mut lp = l1.clone();
                lp.set_pairs(vec![pair]);
                if let Some(h) = self.attempt(CaseLabel::Claim1RootPair, g1.clone(), lp, bound)? {
                    return accept(self, h, CaseLabel::Claim1RootPair);
                }
            }
            return Err(self.violation(format!("root-pair retry at {x} found no colouring")));
        }

        let mut lpp = l1.clone();
        lpp.delete_color(x, fx);
        if let Some(h) = self.attempt(CaseLabel::Claim1LDoublePrime, g1.clone(), lpp, bound)? {
            return accept(self, h, CaseLabel::Claim1LDoublePrime);
        }

        let z = g1.inner_apex(x, y);
        let xp = other_boundary_neighbour(g1, x, y);
        let yp = other_boundary_neighbour(g1, y, x);
        // Side (a, b, a') is clear when a' and b share no neighbour besides z.
        let clear = |ap: Vertex, b: Vertex| g.neighbours(ap).iter().all(|&v| v == z || !g.has_edge(v, b));
        let mut sides = [(x, y, xp), (y, x, yp)];
        if !clear(xp, y) && clear(yp, x) {
            sides.swap(0, 1);
        }
        for (i, &(a, b, ap)) in sides.iter().enumerate() {
            if i == 1 {
                let verdict = check_valid(g1, l1).verdict();
                self.record(CaseLabel::Claim1Swap, g1.vertex_count(), verdict);
            }
            let fb = f[&b];
            let lz = l1.list(z).cloned().unwrap_or_default();
            let spare: Vec<Color> = l1.list(a).map(|la| la.without(&[f[&a]]).iter().collect()).unwrap_or_default();
            let Some(&c1) = spare.iter().find(|&&c| lz.iter().filter(|&d| d == fb || d == c).count() <= 1) else {
                continue;
            };

            let fixed = [(a, c1), (b, fb)];
            if let Some(h) = self.peeled_attempt(CaseLabel::Claim1LStar, g1, l1, &fixed, &[], bound)? {
                return accept(self, h, CaseLabel::Claim1LStar);
            }

            if g1.is_root(ap) {
                continue;
            }
            let Some(&c2) = spare.iter().find(|&&c| c != c1) else { continue };
            let fixed = [(ap, c1), (a, c2), (b, fb)];
            if let Some(h) = self.peeled_attempt(CaseLabel::Claim1LStarStar, g1, l1, &fixed, &[(z, c1)], bound)? {
                return accept(self, h, CaseLabel::Claim1LStarStar);
            }
        }
        Err(self.violation(format!(
            "no alternative colouring of {} vertices differs on ({x}, {y})",
            g1.vertex_count()
        )))
    }

    /// Records the attempt and, when the assignment is valid, colours with it.
    fn attempt(
        &mut self,
        step: CaseLabel,
        inst: RootedInstance,
        l: ListAssignment,
        bound: usize,
    ) -> Result<Option<Coloring>, SolveError> {
        let verdict = check_valid(&inst, &l).verdict();
        self.record(step, inst.vertex_count(), verdict);
        if !verdict.is_valid() {
            return Ok(None);
        }
        self.rooted(&inst, &l, bound).map(Some)
    }

    /// Colours `fixed`, removes those vertices, and tries the rest. `extra`
    /// lists further colour deletions on surviving vertices.
    fn peeled_attempt(
        &mut self,
        step: CaseLabel,
        g1: &RootedInstance,
        l1: &ListAssignment,
        fixed: &[(Vertex, Color)],
        extra: &[(Vertex, Color)],
        bound: usize,
    ) -> Result<Option<Coloring>, SolveError> {
        let g = g1.graph();
        let remaining = g.vertex_count() - fixed.len();
        if !fixed_is_proper(g, l1, fixed) {
            self.record(step, remaining, Verdict::Invalid);
            return Ok(None);
        }
        let sub: PlaneGraph = g.induced(|v| fixed.iter().all(|&(u, _)| u != v));
        let Ok(inst) = RootedInstance::new(sub, g1.root()) else {
            self.record(step, remaining, Verdict::Invalid);
            return Ok(None);
        };
        let mut l = peel(g, &l1.restricted(|v| inst.graph().contains(v)), fixed);
        for &(v, c) in extra {
            l.delete_color(v, c);
        }
        let Some(mut h) = self.attempt(step, inst, l, bound)? else {
            return Ok(None);
        };
        h.extend(fixed.iter().copied());
        Ok(Some(h))
    }
}

/// The fixed colours come from their lists and agree along fixed edges.
fn fixed_is_proper(g: &PlaneGraph, l: &ListAssignment, fixed: &[(Vertex, Color)]) -> bool {
    fixed.iter().all(|&(u, c)| l.list(u).is_some_and(|lu| lu.contains(c)))
        && fixed
            .iter()
            .all(|&(u, c)| fixed.iter().all(|&(v, d)| u == v || c != d || !g.has_edge(u, v)))
}
