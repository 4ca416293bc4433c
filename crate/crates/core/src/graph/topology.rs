use std::collections::{HashMap, HashSet, VecDeque};

use super::{Dart, GraphError, PlaneGraph, Vertex};

/// The outer boundary cycle of a 2-connected plane graph, with positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Boundary {
    cycle: Vec<Vertex>,
    pos: HashMap<Vertex, usize>,
}

impl Boundary {
    pub fn cycle(&self) -> &[Vertex] {
        &self.cycle
    }

    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.pos.contains_key(&v)
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.pos.get(&v).copied()
    }

    /// Steps forward along the cycle from `from` to `to`.
    fn offset(&self, from: usize, to: usize) -> usize {
        (to + self.cycle.len() - from) % self.cycle.len()
    }

    pub fn are_consecutive(&self, u: Vertex, v: Vertex) -> bool {
        match (self.position(u), self.position(v)) {
            (Some(a), Some(b)) => {
                let d = self.offset(a, b);
                d == 1 || d + 1 == self.cycle.len()
            }
            _ => false,
        }
    }
}

/// Vertex cycle of the outer face of a 2-connected plane graph.
pub fn boundary_cycle(g: &PlaneGraph) -> Result<Boundary, GraphError> {
    let outer = g.outer_face().ok_or(GraphError::NotTwoConnected(0))?;
    let mut pos = HashMap::with_capacity(outer.len());
    let mut cycle = Vec::with_capacity(outer.len());
    for v in outer.vertices() {
        if pos.insert(v, cycle.len()).is_some() {
            return Err(GraphError::NotTwoConnected(v));
        }
        cycle.push(v);
    }
    if cycle.len() < 3 {
        return Err(GraphError::NotTwoConnected(cycle[0]));
    }
    Ok(Boundary { cycle, pos })
}

/// Edges joining two boundary vertices that are not consecutive on the
/// boundary, as `(min, max)` pairs sorted lexicographically.
pub fn find_chords(g: &PlaneGraph) -> Result<Vec<(Vertex, Vertex)>, GraphError> {
    let b = boundary_cycle(g)?;
    Ok(chords_of(g, &b))
}

pub(crate) fn chords_of(g: &PlaneGraph, b: &Boundary) -> Vec<(Vertex, Vertex)> {
    let mut out = Vec::new();
    for &u in b.cycle() {
        for &v in g.neighbours(u) {
            if u < v && b.contains(v) && !b.are_consecutive(u, v) {
                out.push((u, v));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Whether the triangle `a b c` bounds a face (the outer face included).
fn is_facial_triangle(g: &PlaneGraph, a: Vertex, b: Vertex, c: Vertex) -> bool {
    let closes = |x: Vertex, y: Vertex, z: Vertex| {
        g.rotate_next(y, x) == z && g.rotate_next(z, y) == x
    };
    closes(a, b, c) || closes(b, a, c)
}

/// First separating triangle in lexicographic order `(a < b < c)`. In a
/// near-triangulation a triangle separates iff it does not bound a face.
pub fn find_separating_triangle(g: &PlaneGraph) -> Option<[Vertex; 3]> {
    for a in g.vertices() {
        let mut nbrs: Vec<Vertex> = g.neighbours(a).iter().copied().filter(|&x| x > a).collect();
        nbrs.sort_unstable();
        for (i, &b) in nbrs.iter().enumerate() {
            for &c in &nbrs[i + 1..] {
                if g.has_edge(b, c) && !is_facial_triangle(g, a, b, c) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// Face-side classification for a cycle: `true` marks faces in the region
/// containing the outer face.
fn outside_faces(
    g: &PlaneGraph,
    cycle_edges: &HashSet<(Vertex, Vertex)>,
) -> (HashMap<Dart, usize>, Vec<bool>) {
    let faces = g.faces();
    let mut face_of = HashMap::new();
    for (i, f) in faces.iter().enumerate() {
        for &d in &f.darts {
            face_of.insert(d, i);
        }
    }
    let mut outside = vec![false; faces.len()];
    let start = face_of[&g.outer_hint().expect("graph has edges")];
    outside[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(fi) = queue.pop_front() {
        for &(u, v) in &faces[fi].darts {
            if cycle_edges.contains(&(u.min(v), u.max(v))) {
                continue;
            }
            let nf = face_of[&(v, u)];
            if !outside[nf] {
                outside[nf] = true;
                queue.push_back(nf);
            }
        }
    }
    (face_of, outside)
}

/// Splits `g` along the cycle `c` into `(Int[C], Ext[C])`: everything on or
/// inside the cycle, and everything on or outside it. Inside is the side not
/// containing the outer face.
pub fn split_on_cycle(g: &PlaneGraph, c: &[Vertex]) -> Result<(PlaneGraph, PlaneGraph), GraphError> {
    let k = c.len();
    let distinct: HashSet<Vertex> = c.iter().copied().collect();
    if k < 3 || distinct.len() != k {
        return Err(GraphError::NotACycle);
    }
    let mut cycle_edges = HashSet::new();
    for i in 0..k {
        let (u, v) = (c[i], c[(i + 1) % k]);
        if !g.has_edge(u, v) {
            return Err(GraphError::NotACycle);
        }
        cycle_edges.insert((u.min(v), u.max(v)));
    }
    let (face_of, outside) = outside_faces(g, &cycle_edges);
    let side = |u: Vertex, v: Vertex, want_outside: bool| {
        outside[face_of[&(u, v)]] == want_outside || outside[face_of[&(v, u)]] == want_outside
    };
    let ext = g.edge_subgraph(|u, v| side(u, v, true), g.outer_hint());
    // The outer walk of Int[C] runs along C in the direction whose face in G
    // lies outside.
    let (a, b) = (c[0], c[1]);
    let int_outer = if outside[face_of[&(a, b)]] { (a, b) } else { (b, a) };
    let int = g.edge_subgraph(|u, v| side(u, v, false), None).with_outer(int_outer);
    Ok((int, ext))
}

/// A 2-connected near-triangulation with a directed root edge on its boundary.
#[derive(Debug, Clone)]
pub struct RootedInstance {
    graph: PlaneGraph,
    root: (Vertex, Vertex),
    boundary: Boundary,
}

impl RootedInstance {
    pub fn new(graph: PlaneGraph, root: (Vertex, Vertex)) -> Result<Self, GraphError> {
        if !graph.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let boundary = boundary_cycle(&graph)?;
        let outer = graph.outer_hint().expect("boundary exists");
        let outer_id = graph.face_walk(outer);
        for f in graph.faces() {
            if f.len() != 3 && !f.contains_dart(outer_id.darts[0]) {
                let (u, v) = f.darts[0];
                return Err(GraphError::NotNearTriangulation(u, v, f.len()));
            }
        }
        let (v1, v2) = root;
        if !graph.has_edge(v1, v2) || !boundary.are_consecutive(v1, v2) {
            return Err(GraphError::RootNotOnBoundary(v1, v2));
        }
        Ok(RootedInstance { graph, root, boundary })
    }

    pub fn graph(&self) -> &PlaneGraph {
        &self.graph
    }

    pub fn root(&self) -> (Vertex, Vertex) {
        self.root
    }

    pub fn boundary(&self) -> &Boundary {
        &self.boundary
    }

    pub fn is_root(&self, v: Vertex) -> bool {
        v == self.root.0 || v == self.root.1
    }

    pub fn is_interior(&self, v: Vertex) -> bool {
        self.graph.contains(v) && !self.boundary.contains(v)
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Non-root boundary vertices in boundary order.
    pub fn free_boundary(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.boundary.cycle().iter().copied().filter(|&v| !self.is_root(v))
    }

    /// Boundary neighbours of `v`, i.e. `N(v) ∩ B(G)`, in cyclic boundary order
    /// starting after `v`.
    pub fn boundary_neighbours(&self, v: Vertex) -> Vec<Vertex> {
        let p = self.boundary.position(v).expect("boundary vertex");
        let mut out: Vec<(usize, Vertex)> = self
            .graph
            .neighbours(v)
            .iter()
            .filter_map(|&u| self.boundary.position(u).map(|q| (self.boundary.offset(p, q), u)))
            .collect();
        out.sort_unstable();
        out.into_iter().map(|(_, u)| u).collect()
    }

    /// The third vertex of the inner face on the boundary edge `u v`.
    pub fn inner_apex(&self, u: Vertex, v: Vertex) -> Vertex {
        let outer = self.graph.outer_face().expect("has edges");
        let d = if outer.contains_dart((u, v)) { (v, u) } else { (u, v) };
        self.graph.face_successor(d).1
    }
}

/// The two consecutive boundary neighbours of `v` whose boundary path
/// avoiding `v` contains the root edge, in boundary order.
pub fn primary_boundary_neighbours(
    inst: &RootedInstance,
    v: Vertex,
) -> Result<(Vertex, Vertex), GraphError> {
    if inst.is_root(v) {
        return Err(GraphError::RootVertex(v));
    }
    let b = inst.boundary();
    let p = b.position(v).ok_or(GraphError::NotOnBoundary(v))?;
    let (v1, v2) = inst.root();
    let r1 = b.offset(p, b.position(v1).expect("root on boundary"));
    let r2 = b.offset(p, b.position(v2).expect("root on boundary"));
    let lo = r1.min(r2);
    let mut before = None;
    let mut after = None;
    for &u in inst.graph().neighbours(v) {
        let Some(q) = b.position(u) else { continue };
        let r = b.offset(p, q);
        if r <= lo && before.is_none_or(|(br, _)| r > br) {
            before = Some((r, u));
        }
        if r > lo && after.is_none_or(|(ar, _)| r < ar) {
            after = Some((r, u));
        }
    }
    match (before, after) {
        (Some((_, a)), Some((_, c))) => Ok((a, c)),
        _ => Err(GraphError::NotOnBoundary(v)),
    }
}
