use crate::graph::{
    add_face_apexes, block_decomposition, boundary_cycle, compute_embedding, Block, GraphError, PlaneGraph,
    RootedInstance, Vertex, APEX_PALETTE_FLOOR,
};
use crate::lists::{check_separation, verify_coloring, Color, Coloring, ListAssignment};

use super::{SolveError, SolveTrace, Solver};

/// Embeds the simple graph on `0..n` and colours it.
pub fn solve_edges(
    n: usize,
    edges: &[(Vertex, Vertex)],
    l: &ListAssignment,
) -> Result<(Coloring, SolveTrace), SolveError> {
    let rotation = compute_embedding(n, edges).map_err(|e| match e {
        GraphError::NonPlanar => SolveError::NonPlanar,
        other => SolveError::NotSimple(other),
    })?;
    let hint = edges.first().copied();
    let g = PlaneGraph::new(rotation, hint).map_err(SolveError::Graph)?;
    solve(&g, l)
}

/// Colours a plane graph from lists of at least four colours whose adjacent
/// lists share at most two colours. Root pairs on `l` are ignored.
pub fn solve(g: &PlaneGraph, l: &ListAssignment) -> Result<(Coloring, SolveTrace), SolveError> {
    let plain = ListAssignment::from_lists(l.lists().clone());
    for v in g.vertices() {
        let size = plain.list(v).map_or(0, |x| x.len());
        if size < 4 {
            return Err(SolveError::ListTooShort { vertex: v, size });
        }
        if let Some(c) = plain.list(v).and_then(|x| x.first()).filter(|&c| c < 0) {
            return Err(SolveError::ReservedColor { vertex: v, color: c });
        }
    }
    let clashes = check_separation(g, &plain, 2);
    if !clashes.is_empty() {
        return Err(SolveError::SeparationViolated(clashes));
    }
    let lists = plain.truncated(4);

    let tree = block_decomposition(g);
    let mut solver = Solver::new();
    let mut f = Coloring::new();
    for &v in &tree.isolated {
        f.insert(v, smallest_avoiding(&lists, v, None));
    }
    for (block, &attach) in tree.blocks.iter().zip(&tree.attach) {
        if block.is_bridge() {
            let (a, b) = block.edges[0];
            let (first, second) = if f.contains_key(&b) { (b, a) } else { (a, b) };
            let fc = *f.entry(first).or_insert_with(|| smallest_avoiding(&lists, first, None));
            f.insert(second, smallest_avoiding(&lists, second, Some(fc)));
        } else {
            let part = solver.block(g, &lists, block, attach, &f)?;
            f.extend(part);
        }
    }

    let bad = verify_coloring(g, &plain, &f);
    if !bad.is_empty() {
        return Err(solver.violation(format!("assembled colouring is improper: {bad:?}")));
    }
    Ok((f, solver.into_trace()))
}

fn smallest_avoiding(l: &ListAssignment, v: Vertex, avoid: Option<Color>) -> Color {
    l.list(v)
        .and_then(|x| x.iter().find(|&c| Some(c) != avoid))
        .expect("four colours leave a choice")
}

impl Solver {
    /// Colours one 2-connected block. When `attach` is set that cut vertex is
    /// already coloured in `f` and becomes the first root vertex.
    fn block(
        &mut self,
        g: &PlaneGraph,
        lists: &ListAssignment,
        block: &Block,
        attach: Option<Vertex>,
        f: &Coloring,
    ) -> Result<Coloring, SolveError> {
        let inside = |v: Vertex| block.vertices.binary_search(&v).is_ok();
        let sub = g.induced(inside);
        let anchor = attach.unwrap_or(block.vertices[0]);
        let hint = match g.outer_hint() {
            Some((a, b)) if attach.is_none() && inside(a) && inside(b) && sub.has_edge(a, b) => (a, b),
            _ => {
                let first = *sub.neighbours(anchor).iter().min().expect("block vertex has neighbours");
                (anchor, first)
            }
        };
        let sub = sub.with_outer(hint);
        let apex = add_face_apexes(&sub, &lists.restricted(inside), APEX_PALETTE_FLOOR)
            .map_err(|e| self.violation(format!("apex insertion on block at {anchor}: {e}")))?;
        let boundary =
            boundary_cycle(&apex.graph).map_err(|e| self.violation(format!("block boundary at {anchor}: {e}")))?;
        let cyc = boundary.cycle();
        let k = cyc.len();

        let list = |v: Vertex| apex.lists.list(v).cloned().unwrap_or_default();
        let (root, pairs) = match attach {
            Some(c) => {
                let p = boundary.position(c).expect("anchor on its face");
                let v2 = cyc[(p + 1) % k].min(cyc[(p + k - 1) % k]);
                let col = f[&c];
                let pairs: Vec<(Color, Color)> = list(v2).iter().filter(|&d| d != col).map(|d| (col, d)).collect();
                ((c, v2), pairs)
            }
            None => {
                let (v1, v2) = (0..k)
                    .map(|i| {
                        let (a, b) = (cyc[i], cyc[(i + 1) % k]);
                        (a.min(b), a.max(b))
                    })
                    .min()
                    .expect("boundary has edges");
                let l2 = list(v2);
                let pairs: Vec<(Color, Color)> = list(v1)
                    .iter()
                    .flat_map(|c| l2.iter().filter(move |&d| d != c).map(move |d| (c, d)))
                    .take(2)
                    .collect();
                ((v1, v2), pairs)
            }
        };
        let l = apex.lists.with_root(root, pairs);
        let inst = RootedInstance::new(apex.graph, root)
            .map_err(|e| self.violation(format!("rooting block at {root:?}: {e}")))?;
        let col = self.rooted(&inst, &l, usize::MAX)?;
        Ok(col.into_iter().filter(|(v, _)| inside(*v)).collect())
    }
}
