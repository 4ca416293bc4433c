//! Plane graphs stored as rotation systems.
//!
//! A vertex is a `usize` slot; slots may be vacant so that induced subgraphs
//! keep the vertex ids of the graph they were cut from. Rotations list the
//! neighbours of a vertex in clockwise order. The face to the right of a
//! directed edge `(u, v)` continues with `(v, w)` where `w` follows `u` in the
//! rotation at `v`.

mod apex;
mod blocks;
mod embed;
mod topology;

use std::collections::VecDeque;

use thiserror::Error;

pub use apex::{add_face_apexes, ApexResult, APEX_PALETTE_FLOOR};
pub use blocks::{block_decomposition, Block, BlockTree};
pub use embed::{compute_embedding, embed_edges};
pub(crate) use topology::chords_of;
pub use topology::{
    boundary_cycle, find_chords, find_separating_triangle, primary_boundary_neighbours,
    split_on_cycle, Boundary, RootedInstance,
};

pub type Vertex = usize;

/// A directed edge `(tail, head)`.
pub type Dart = (Vertex, Vertex);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} lists {1} as a neighbour but {1} does not list {0}")]
    AsymmetricRotation(Vertex, Vertex),
    #[error("self-loop or repeated edge at vertex {0}")]
    LoopOrMultiEdge(Vertex),
    #[error("neighbour {1} of vertex {0} is out of range")]
    UnknownVertex(Vertex, Vertex),
    #[error("rotation system violates Euler's formula: V={v}, E={e}, F={f}")]
    EulerViolation { v: usize, e: usize, f: usize },
    #[error("outer face hint ({0}, {1}) is not an edge of the graph")]
    BadOuterHint(Vertex, Vertex),
    #[error("graph is not planar")]
    NonPlanar,
    #[error("graph is not 2-connected (outer walk revisits vertex {0})")]
    NotTwoConnected(Vertex),
    #[error("vertex sequence is not a cycle of the graph")]
    NotACycle,
    #[error("graph is not a near-triangulation: face through ({0}, {1}) has length {2}")]
    NotNearTriangulation(Vertex, Vertex, usize),
    #[error("root edge ({0}, {1}) is not on the boundary cycle")]
    RootNotOnBoundary(Vertex, Vertex),
    #[error("vertex {0} is a root vertex")]
    RootVertex(Vertex),
    #[error("vertex {0} is not on the boundary cycle")]
    NotOnBoundary(Vertex),
    #[error("graph is disconnected")]
    Disconnected,
}

/// The closed sequence of darts bounding one face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceWalk {
    pub darts: Vec<Dart>,
}

impl FaceWalk {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Vertices in walk order (tails of the darts).
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.darts.iter().map(|&(u, _)| u)
    }

    pub fn contains_dart(&self, d: Dart) -> bool {
        self.darts.contains(&d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    rot: Vec<Option<Vec<Vertex>>>,
    outer: Option<Dart>,
    vertex_count: usize,
    edge_count: usize,
}

impl PlaneGraph {
    /// Validates a rotation system on vertices `0..rotation.len()` and fixes the
    /// outer face as the face walk through the hint dart.
    pub fn new(rotation: Vec<Vec<Vertex>>, outer_hint: Option<Dart>) -> Result<Self, GraphError> {
        let slots = rotation.into_iter().map(Some).collect();
        let g = Self::from_slots(slots, outer_hint);
        g.validate()?;
        Ok(g)
    }

    pub(crate) fn from_slots(rot: Vec<Option<Vec<Vertex>>>, outer: Option<Dart>) -> Self {
        let vertex_count = rot.iter().filter(|r| r.is_some()).count();
        let degree_sum: usize = rot.iter().flatten().map(Vec::len).sum();
        PlaneGraph {
            rot,
            outer,
            vertex_count,
            edge_count: degree_sum / 2,
        }
    }

    fn validate(&self) -> Result<(), GraphError> {
        let slots = self.rot.len();
        for v in self.vertices() {
            let nbrs = self.neighbours(v);
            for (i, &u) in nbrs.iter().enumerate() {
                if u >= slots || self.rot[u].is_none() {
                    return Err(GraphError::UnknownVertex(v, u));
                }
                if u == v || nbrs[..i].contains(&u) {
                    return Err(GraphError::LoopOrMultiEdge(v));
                }
                if !self.neighbours(u).contains(&v) {
                    return Err(GraphError::AsymmetricRotation(v, u));
                }
            }
        }
        if let Some((u, v)) = self.outer {
            if !self.has_edge(u, v) {
                return Err(GraphError::BadOuterHint(u, v));
            }
        } else if self.edge_count > 0 {
            let (u, v) = self.first_dart().expect("graph has an edge");
            return Err(GraphError::BadOuterHint(u, v));
        }
        self.check_euler()
    }

    /// Euler's formula, applied per connected component with at least one edge.
    fn check_euler(&self) -> Result<(), GraphError> {
        let comp = self.component_labels();
        let ncomp = comp.iter().flatten().max().map_or(0, |&c| c + 1);
        let mut verts = vec![0usize; ncomp];
        let mut edges = vec![0usize; ncomp];
        let mut faces = vec![0usize; ncomp];
        for v in self.vertices() {
            let c = comp[v].expect("present vertex is labelled");
            verts[c] += 1;
            edges[c] += self.degree(v);
        }
        for f in self.faces() {
            let c = comp[f.darts[0].0].expect("present vertex is labelled");
            faces[c] += 1;
        }
        for c in 0..ncomp {
            let e = edges[c] / 2;
            if e == 0 {
                continue;
            }
            if verts[c] + faces[c] != e + 2 {
                return Err(GraphError::EulerViolation {
                    v: self.vertex_count,
                    e: self.edge_count,
                    f: faces.iter().sum(),
                });
            }
        }
        Ok(())
    }

    /// Number of vertex slots (one past the largest vertex id).
    /// Number of vertex slots (one past the largest vertex id).
    pub fn slot_count(&self) -> usize {
        self.rot.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.rot.get(v).is_some_and(Option::is_some)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.rot
            .iter()
            .enumerate()
            .filter_map(|(v, r)| r.as_ref().map(|_| v))
    }

    /// Clockwise neighbours of `v`; empty for vacant slots.
    pub fn neighbours(&self, v: Vertex) -> &[Vertex] {
        self.rot.get(v).and_then(Option::as_deref).unwrap_or(&[])
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbours(v).len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbours(u).contains(&v)
    }

    /// Undirected edges with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out: Vec<_> = self
            .vertices()
            .flat_map(|u| self.neighbours(u).iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn outer_hint(&self) -> Option<Dart> {
        self.outer
    }

    /// Rotation as dense vectors (vacant slots become empty).
    pub fn rotation(&self) -> Vec<Vec<Vertex>> {
        self.rot.iter().map(|r| r.clone().unwrap_or_default()).collect()
    }

    fn first_dart(&self) -> Option<Dart> {
        self.vertices()
            .find_map(|u| self.neighbours(u).first().map(|&v| (u, v)))
    }

    /// The neighbour following `u` clockwise around `v`.
    pub fn rotate_next(&self, v: Vertex, u: Vertex) -> Vertex {
        let nbrs = self.neighbours(v);
        let i = nbrs
            .iter()
            .position(|&x| x == u)
            .unwrap_or_else(|| panic!("{u} is not a neighbour of {v}"));
        nbrs[(i + 1) % nbrs.len()]
    }

    /// The dart after `(u, v)` on the face to its right.
    pub fn face_successor(&self, (u, v): Dart) -> Dart {
        (v, self.rotate_next(v, u))
    }

    pub fn face_walk(&self, start: Dart) -> FaceWalk {
        let mut darts = vec![start];
        let mut d = self.face_successor(start);
        while d != start {
            darts.push(d);
            d = self.face_successor(d);
        }
        FaceWalk { darts }
    }

    /// Every face walk, each starting at its smallest dart, in order of
    /// discovery from the smallest dart.
    pub fn faces(&self) -> Vec<FaceWalk> {
        let mut seen: Vec<Vec<bool>> = self
            .rot
            .iter()
            .map(|r| vec![false; r.as_ref().map_or(0, Vec::len)])
            .collect();
        let mut out = Vec::new();
        for u in self.vertices() {
            for i in 0..self.degree(u) {
                if seen[u][i] {
                    continue;
                }
                let start = (u, self.neighbours(u)[i]);
                let walk = self.face_walk(start);
                for &(a, b) in &walk.darts {
                    let j = self.neighbours(a).iter().position(|&x| x == b).unwrap();
                    seen[a][j] = true;
                }
                out.push(walk);
            }
        }
        out
    }

    /// The face walk through the outer hint, if the graph has edges.
    pub fn outer_face(&self) -> Option<FaceWalk> {
        self.outer.map(|d| self.face_walk(d))
    }

    /// Connected-component label per slot.
    pub(crate) fn component_labels(&self) -> Vec<Option<usize>> {
        let mut label = vec![None; self.rot.len()];
        let mut next = 0;
        for s in self.vertices() {
            if label[s].is_some() {
                continue;
            }
            label[s] = Some(next);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &u in self.neighbours(v) {
                    if label[u].is_none() {
                        label[u] = Some(next);
                        queue.push_back(u);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.component_labels().iter().flatten().all(|&c| c == 0)
    }

    /// Subgraph induced by the vertices for which `keep` holds. The outer hint
    /// is the first dart of this graph's outer walk that survives; callers
    /// removing vertices on or outside the outer region get the right face.
    pub fn induced(&self, keep: impl Fn(Vertex) -> bool) -> PlaneGraph {
        let rot: Vec<Option<Vec<Vertex>>> = self
            .rot
            .iter()
            .enumerate()
            .map(|(v, r)| {
                r.as_ref()
                    .filter(|_| keep(v))
                    .map(|r| r.iter().copied().filter(|&u| keep(u)).collect())
            })
            .collect();
        let outer = self
            .outer_face()
            .and_then(|f| f.darts.into_iter().find(|&(a, b)| keep(a) && keep(b)));
        PlaneGraph::from_slots(rot, outer)
    }

    /// Subgraph keeping only the listed undirected edges (and their endpoints).
    pub(crate) fn edge_subgraph(
        &self,
        keep: impl Fn(Vertex, Vertex) -> bool,
        outer: Option<Dart>,
    ) -> PlaneGraph {
        let rot: Vec<Option<Vec<Vertex>>> = self
            .rot
            .iter()
            .enumerate()
            .map(|(v, r)| {
                let kept: Vec<Vertex> = r
                    .as_deref()
                    .unwrap_or(&[])
                    .iter()
                    .copied()
                    .filter(|&u| keep(v, u))
                    .collect();
                (!kept.is_empty()).then_some(kept)
            })
            .collect();
        PlaneGraph::from_slots(rot, outer)
    }

    pub(crate) fn with_outer(mut self, outer: Dart) -> Self {
        self.outer = Some(outer);
        self
    }
}

/// Builds a rotation system from consistently oriented face cycles: a face
/// `(.., u, v, w, ..)` means `w` follows `u` clockwise around `v`.
pub(crate) fn rotation_from_faces(n: usize, faces: &[Vec<Vertex>]) -> Vec<Vec<Vertex>> {
    let mut succ: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); n];
    for f in faces {
        let k = f.len();
        for i in 0..k {
            let (u, v, w) = (f[i], f[(i + 1) % k], f[(i + 2) % k]);
            succ[v].push((u, w));
        }
    }
    succ.into_iter()
        .map(|mut s| {
            if s.is_empty() {
                return Vec::new();
            }
            s.sort_unstable();
            let start = s[0].0;
            let mut out = vec![start];
            let mut cur = start;
            loop {
                let i = s.binary_search_by_key(&cur, |&(a, _)| a).expect("dangling face corner");
                cur = s[i].1;
                if cur == start {
                    break;
                }
                out.push(cur);
            }
            debug_assert_eq!(out.len(), s.len(), "faces around a vertex form several cycles");
            out
        })
        .collect()
}
