use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::graph::{chords_of, find_separating_triangle, split_on_cycle, PlaneGraph, RootedInstance, Vertex};
use crate::lists::{check_valid, verify_coloring, Color, ColorSet, Coloring, ListAssignment, Validity, Verdict};

use super::{CaseLabel, SolveError, Solver};

/// Chord split: `g1` holds the root edge.
pub(super) struct ChordSplit {
    pub x: Vertex,
    pub y: Vertex,
    pub g1: Vec<Vertex>,
    pub g2: Vec<Vertex>,
    /// Boundary vertices of `g2` strictly between the chord endpoints.
    pub g2_path: Vec<Vertex>,
}

enum Dispatch {
    Base,
    SepTriangle([Vertex; 3]),
    Case1i(ChordSplit),
    Case1ii(ChordSplit),
    Case2,
}

impl Solver {
    pub(super) fn rooted_inner(
        &mut self,
        inst: &RootedInstance,
        l: &ListAssignment,
        bound: usize,
    ) -> Result<Coloring, SolveError> {
        let n = inst.vertex_count();
        let validity = check_valid(inst, l);
        let verdict = validity.verdict();
        let dispatch = dispatch(inst, &validity.normalized);
        let label = match (&dispatch, verdict) {
            (Dispatch::Base, Verdict::ValidB) => CaseLabel::BaseB,
            (Dispatch::Base, _) => CaseLabel::BaseA,
            (Dispatch::SepTriangle(_), _) => CaseLabel::SepTriangle,
            (Dispatch::Case1i(_), _) => CaseLabel::Case1i,
            (Dispatch::Case1ii(_), _) => CaseLabel::Case1ii,
            (Dispatch::Case2, Verdict::ValidB) => CaseLabel::Case2B,
            (Dispatch::Case2, _) => CaseLabel::Case2A,
        };
        self.record(label, n, verdict);
        if n >= bound {
            return Err(self.violation(format!("{label} on {n} vertices does not shrink below {bound}")));
        }
        if !verdict.is_valid() {
            return Err(self.violation(format!(
                "{label} received an invalid assignment on {n} vertices: {:?}",
                validity.report.violations
            )));
        }
        let f = match dispatch {
            Dispatch::Base => self.base_triangle(inst, &validity)?,
            Dispatch::SepTriangle(c) => self.separating_triangle(inst, &validity.normalized, c)?,
            Dispatch::Case1i(s) => self.case1_first(inst, &validity.normalized, &s)?,
            Dispatch::Case1ii(s) => self.case1_second(inst, &validity.normalized, &s)?,
            Dispatch::Case2 if verdict == Verdict::ValidB => self.case2_b(inst, &validity)?,
            Dispatch::Case2 => self.case2_a(inst, &validity.normalized)?,
        };
        let bad = verify_coloring(inst.graph(), &validity.normalized, &f);
        if !bad.is_empty() {
            return Err(self.violation(format!("{label} on {n} vertices produced an improper colouring: {bad:?}")));
        }
        Ok(f)
    }

    fn base_triangle(&mut self, inst: &RootedInstance, validity: &Validity) -> Result<Coloring, SolveError> {
        let l = &validity.normalized;
        let (v1, v2) = inst.root();
        let v3 = inst.free_boundary().next().expect("triangle has a third vertex");
        let pairs = l.root_pairs();
        let l3 = l.list(v3).expect("valid assignment lists v3");
        let pick = |avoid: &[Color]| l3.iter().find(|c| !avoid.contains(c));
        let chosen = match validity.verdict() {
            Verdict::ValidA => {
                let (c1, c2) = pairs[0];
                pick(&[c1, c2]).map(|c3| (c1, c2, c3))
            }
            _ => {
                let (p, q) = (pairs[0], pairs[1]);
                if p.0 == q.0 {
                    pick(&[p.0]).and_then(|c3| {
                        [p, q].into_iter().find(|&(_, d)| d != c3).map(|(c, d)| (c, d, c3))
                    })
                } else if p.1 == q.1 {
                    pick(&[p.1]).and_then(|c3| {
                        [p, q].into_iter().find(|&(c, _)| c != c3).map(|(c, d)| (c, d, c3))
                    })
                } else if validity.report.good_neighbour == Some(v2) {
                    [p, q]
                        .into_iter()
                        .find(|&(_, d)| !l3.contains(d))
                        .and_then(|(c, d)| pick(&[c]).map(|c3| (c, d, c3)))
                } else {
                    [p, q]
                        .into_iter()
                        .find(|&(c, _)| !l3.contains(c))
                        .and_then(|(c, d)| pick(&[d]).map(|c3| (c, d, c3)))
                }
            }
        };
        let (c1, c2, c3) = chosen.ok_or_else(|| self.violation("no branch of the triangle case applies"))?;
        Ok([(v1, c1), (v2, c2), (v3, c3)].into())
    }

    fn separating_triangle(
        &mut self,
        inst: &RootedInstance,
        l: &ListAssignment,
        c: [Vertex; 3],
    ) -> Result<Coloring, SolveError> {
        let g = inst.graph();
        let n = inst.vertex_count();
        let [u1, u2, u3] = c;
        let (int, ext) = split_on_cycle(g, &c).map_err(|e| self.violation(format!("splitting on {c:?}: {e}")))?;
        let ext_inst = self.instance(ext, inst.root())?;
        let l1 = l.restricted(|v| ext_inst.graph().contains(v));
        let f = self.rooted(&ext_inst, &l1, n)?;

        let inner = int.induced(|v| v != u3);
        let l2 = peel(g, &l.restricted(|v| inner.contains(v)), &[(u3, f[&u3])])
            .with_root((u1, u2), vec![(f[&u1], f[&u2])]);
        let int_inst = self.instance(inner, (u1, u2))?;
        let g2 = self.rooted(&int_inst, &l2, n)?;
        Ok(union(f, g2))
    }

    fn case1_first(&mut self, inst: &RootedInstance, l: &ListAssignment, s: &ChordSplit) -> Result<Coloring, SolveError> {
        let n = inst.vertex_count();
        let g = inst.graph();
        let g1 = self.instance(induced_on(g, &s.g1), inst.root())?;
        let l1 = l.restricted(|v| g1.graph().contains(v));
        let f = self.rooted(&g1, &l1, n)?;
        let g2 = self.instance(induced_on(g, &s.g2), (s.x, s.y))?;
        let l2 = l.restricted(|v| g2.graph().contains(v)).with_root((s.x, s.y), vec![(f[&s.x], f[&s.y])]);
        let h = self.rooted(&g2, &l2, n)?;
        Ok(union(f, h))
    }

    fn case1_second(&mut self, inst: &RootedInstance, l: &ListAssignment, s: &ChordSplit) -> Result<Coloring, SolveError> {
        let n = inst.vertex_count();
        let g = inst.graph();
        let g1 = self.instance(induced_on(g, &s.g1), inst.root())?;
        let mut l1 = l.restricted(|v| g1.graph().contains(v));
        l1.set_pairs(l.root_pairs().iter().take(2).copied().collect());
        let f = self.rooted(&g1, &l1, n)?;

        // the alternative colouring needs the chord endpoint that is not a root
        let (x, y) = if g1.is_root(s.y) || (!g1.is_root(s.x) && s.x < s.y) {
            (s.y, s.x)
        } else {
            (s.x, s.y)
        };
        let f2 = self.claim1_bounded(&g1, &l1, &f, x, y, n)?;

        let g2 = self.instance(induced_on(g, &s.g2), (s.x, s.y))?;
        let pairs = vec![(f[&s.x], f[&s.y]), (f2[&s.x], f2[&s.y])];
        let l2 = l.restricted(|v| g2.graph().contains(v)).with_root((s.x, s.y), pairs);
        let h = self.rooted(&g2, &l2, n)?;
        let base = if (h[&s.x], h[&s.y]) == (f[&s.x], f[&s.y]) { f } else { f2 };
        Ok(union(base, h))
    }

    fn case2_a(&mut self, inst: &RootedInstance, l: &ListAssignment) -> Result<Coloring, SolveError> {
        let n = inst.vertex_count();
        let g = inst.graph();
        let (v1, v2) = inst.root();
        let (c1, c2) = l.root_pairs()[0];
        let w = inst.inner_apex(v1, v2);
        let u = other_boundary_neighbour(inst, v2, v1);
        let z = inst.inner_apex(v2, u);
        let lw = l.list(w).cloned().unwrap_or_default();
        let lu = l.list(u).cloned().unwrap_or_default();

        let excluded = match lw.intersection(&lu).first() {
            Some(c) if !lw.contains(c2) && w == z => c,
            _ => c2,
        };
        let rest: Vec<Color> = lw.without(&[c1, excluded]).iter().take(2).collect();
        if rest.len() < 2 {
            return Err(self.violation(format!("interior vertex {w} has fewer than two spare colours")));
        }
        let pairs = vec![(c1, rest[0]), (c1, rest[1])];

        let sub = self.instance(g.induced(|v| v != v2), (v1, w))?;
        let l2 = peel(g, &l.restricted(|v| v != v2), &[(v2, c2)]).with_root((v1, w), pairs);
        let mut f = self.rooted(&sub, &l2, n)?;
        f.insert(v2, c2);
        Ok(f)
    }

    fn case2_b(&mut self, inst: &RootedInstance, validity: &Validity) -> Result<Coloring, SolveError> {
        let n = inst.vertex_count();
        let g = inst.graph();
        let l = &validity.normalized;
        let v_star = validity.report.v_star.expect("(B) names v*");
        let u = validity.report.good_neighbour.expect("(B) names a good neighbour");
        let w = other_boundary_neighbour(inst, v_star, u);
        let tu = l.tilde(u);
        let c = l
            .list(v_star)
            .and_then(|lv| lv.iter().find(|&c| !tu.contains(c)))
            .ok_or_else(|| self.violation(format!("v* = {v_star} has no colour outside its good neighbour's list")))?;

        let (v1, v2) = inst.root();
        let mut l2 = peel(g, &l.restricted(|v| v != v_star), &[(v_star, c)]);
        if inst.is_root(w) && l.tilde(w).contains(c) {
            let keep = l
                .root_pairs()
                .iter()
                .copied()
                .find(|&(p, q)| if w == v1 { p != c } else { q != c })
                .ok_or_else(|| self.violation(format!("no root pair avoids colour {c} at {w}")))?;
            l2.set_pairs(vec![keep]);
        }
        let sub = self.instance(g.induced(|v| v != v_star), (v1, v2))?;
        let mut f = self.rooted(&sub, &l2, n)?;
        f.insert(v_star, c);
        Ok(f)
    }

    pub(super) fn instance(&self, g: PlaneGraph, root: (Vertex, Vertex)) -> Result<RootedInstance, SolveError> {
        RootedInstance::new(g, root).map_err(|e| self.violation(format!("sub-instance rooted at {root:?}: {e}")))
    }
}

fn dispatch(inst: &RootedInstance, l: &ListAssignment) -> Dispatch {
    let g = inst.graph();
    if inst.vertex_count() == 3 {
        return Dispatch::Base;
    }
    if let Some(c) = find_separating_triangle(g) {
        return Dispatch::SepTriangle(c);
    }
    let chords = chords_of(g, inst.boundary());
    if chords.is_empty() {
        return Dispatch::Case2;
    }
    let splits: Vec<ChordSplit> = chords.iter().map(|&(x, y)| split_on_chord(inst, x, y)).collect();
    let short = |v: Vertex| l.list(v).map_or(0, ColorSet::len) < 3;
    if let Some(i) = splits.iter().position(|s| !s.g2_path.iter().any(|&v| short(v))) {
        return Dispatch::Case1i(splits.into_iter().nth(i).expect("index in range"));
    }
    let best = splits
        .into_iter()
        .min_by_key(|s| s.g1.len())
        .expect("at least one chord");
    Dispatch::Case1ii(best)
}

/// Sides of the chord `xy`; both include `x` and `y`.
pub(super) fn split_on_chord(inst: &RootedInstance, x: Vertex, y: Vertex) -> ChordSplit {
    let b = inst.boundary();
    let cyc = b.cycle();
    let k = cyc.len();
    let walk = |from: Vertex, to: Vertex| -> Vec<Vertex> {
        let mut out = Vec::new();
        let mut i = (b.position(from).expect("on boundary") + 1) % k;
        while cyc[i] != to {
            out.push(cyc[i]);
            i = (i + 1) % k;
        }
        out
    };
    let (pa, pb) = (walk(x, y), walk(y, x));
    let (v1, v2) = inst.root();
    let root_in_a = pa.contains(&v1) || pa.contains(&v2);
    let (p1, p2) = if root_in_a { (pa, pb) } else { (pb, pa) };
    let g = inst.graph();
    let side = |seeds: &[Vertex]| -> Vec<Vertex> {
        let mut seen: HashSet<Vertex> = [x, y].into();
        let mut queue: VecDeque<Vertex> = VecDeque::new();
        for &s in seeds {
            if seen.insert(s) {
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &u in g.neighbours(v) {
                if seen.insert(u) {
                    queue.push_back(u);
                }
            }
        }
        let set: BTreeSet<Vertex> = seen.into_iter().collect();
        set.into_iter().collect()
    };
    ChordSplit {
        x,
        y,
        g1: side(&p1),
        g2: side(&p2),
        g2_path: p2,
    }
}

pub(super) fn induced_on(g: &PlaneGraph, keep: &[Vertex]) -> PlaneGraph {
    let set: HashSet<Vertex> = keep.iter().copied().collect();
    g.induced(|v| set.contains(&v))
}

/// The boundary neighbour of `v` other than `not` (for a vertex with exactly
/// two boundary neighbours along the cycle).
pub(super) fn other_boundary_neighbour(inst: &RootedInstance, v: Vertex, not: Vertex) -> Vertex {
    let b = inst.boundary();
    let cyc = b.cycle();
    let k = cyc.len();
    let p = b.position(v).expect("boundary vertex");
    let (prev, next) = (cyc[(p + k - 1) % k], cyc[(p + 1) % k]);
    if prev == not {
        next
    } else {
        prev
    }
}

/// `l` with the vertices of `fixed` coloured: every remaining neighbour loses
/// the colours fixed next to it, and root pairs clashing with them are dropped.
/// Neighbourhoods are read from `g`; `fixed` vertices keep no list.
pub(super) fn peel(g: &PlaneGraph, l: &ListAssignment, fixed: &[(Vertex, Color)]) -> ListAssignment {
    let mut out = l.clone();
    for &(u, _) in fixed {
        out.remove_list(u);
    }
    for &(u, c) in fixed {
        for &v in g.neighbours(u) {
            out.delete_color(v, c);
        }
    }
    if let Some(r) = l.root() {
        let (v1, v2) = r.edge;
        let clash = |v: Vertex, col: Color| fixed.iter().any(|&(u, c)| c == col && g.has_edge(u, v));
        let pairs = r.pairs.iter().copied().filter(|&(p, q)| !clash(v1, p) && !clash(v2, q)).collect();
        out.set_pairs(pairs);
    }
    out
}

pub(super) fn union(mut a: Coloring, b: Coloring) -> Coloring {
    a.extend(b);
    a
}
