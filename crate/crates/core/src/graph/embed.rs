//! Planar embedding by the Demoucron–Malgrange–Pertuiset face-splitting
//! method, run block by block. Quadratic, deterministic for a fixed edge order.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use super::blocks::biconnected_edge_sets;
use super::{rotation_from_faces, GraphError, PlaneGraph, Vertex};

/// A rotation system for the simple graph on `0..n` with the given edges.
pub fn compute_embedding(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Vec<Vec<Vertex>>, GraphError> {
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut seen = HashSet::new();
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(GraphError::UnknownVertex(u.min(v), u.max(v)));
        }
        if u == v || !seen.insert((u.min(v), u.max(v))) {
            return Err(GraphError::LoopOrMultiEdge(u));
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    for a in &mut adj {
        a.sort_unstable();
    }

    let mut rotation: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for block in biconnected_edge_sets(&adj) {
        let segment = if block.len() == 1 {
            let (a, b) = block[0];
            let mut r: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
            r.insert(a, vec![b]);
            r.insert(b, vec![a]);
            r
        } else {
            embed_block(&block)?
        };
        let mut keys: Vec<_> = segment.keys().copied().collect();
        keys.sort_unstable();
        for v in keys {
            rotation[v].extend_from_slice(&segment[&v]);
        }
    }
    Ok(rotation)
}

/// Embeds an edge list and returns a validated plane graph whose outer face
/// runs through the first edge.
pub fn embed_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<PlaneGraph, GraphError> {
    let rotation = compute_embedding(n, edges)?;
    let hint = edges.first().map(|&(u, v)| (u, v));
    PlaneGraph::new(rotation, hint)
}

/// Rotation segments for one 2-connected block with at least three vertices.
fn embed_block(edges: &[(Vertex, Vertex)]) -> Result<HashMap<Vertex, Vec<Vertex>>, GraphError> {
    let verts: Vec<Vertex> = edges
        .iter()
        .flat_map(|&(a, b)| [a, b])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let local: HashMap<Vertex, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let k = verts.len();
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in edges {
        let (a, b) = (local[&a], local[&b]);
        adj[a].push(b);
        adj[b].push(a);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    let faces = dmp(&adj)?;
    let rot = rotation_from_faces(k, &faces);
    Ok(rot
        .into_iter()
        .enumerate()
        .map(|(i, r)| (verts[i], r.into_iter().map(|j| verts[j]).collect()))
        .collect())
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Initial cycle: the first edge closed up by a shortest detour.
fn initial_cycle(adj: &[Vec<usize>]) -> Vec<usize> {
    let (s, t) = (0, adj[0][0]);
    let mut prev = vec![usize::MAX; adj.len()];
    prev[s] = s;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        for &u in &adj[v] {
            if (v == s && u == t) || prev[u] != usize::MAX {
                continue;
            }
            prev[u] = v;
            queue.push_back(u);
        }
    }
    let mut path = vec![t];
    let mut cur = t;
    while cur != s {
        cur = prev[cur];
        path.push(cur);
    }
    path
}

struct Fragment {
    attachments: Vec<usize>,
    /// Unembedded vertices of the fragment (empty for a single edge).
    inner: Vec<usize>,
}

fn dmp(adj: &[Vec<usize>]) -> Result<Vec<Vec<usize>>, GraphError> {
    let k = adj.len();
    let total_edges: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    let cycle = initial_cycle(adj);
    let mut embedded_v = vec![false; k];
    let mut embedded_e: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..cycle.len() {
        embedded_v[cycle[i]] = true;
        embedded_e.insert(key(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces = vec![cycle, rev];

    while embedded_e.len() < total_edges {
        let fragments = fragments(adj, &embedded_v, &embedded_e);
        let mut faces_of: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (fi, f) in faces.iter().enumerate() {
            for &v in f {
                if faces_of[v].last() != Some(&fi) {
                    faces_of[v].push(fi);
                }
            }
        }
        let admissible = |fr: &Fragment| -> Vec<usize> {
            faces_of[fr.attachments[0]]
                .iter()
                .copied()
                .filter(|fi| fr.attachments[1..].iter().all(|&a| faces_of[a].binary_search(fi).is_ok()))
                .collect()
        };
        let mut choice: Option<(usize, usize)> = None;
        for (i, fr) in fragments.iter().enumerate() {
            let adm = admissible(fr);
            match adm.len() {
                0 => return Err(GraphError::NonPlanar),
                1 => {
                    choice = Some((i, adm[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((i, adm[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("unembedded edges leave a fragment");
        let path = fragment_path(adj, &fragments[fi], &embedded_v);

        let face = faces.swap_remove(face_idx);
        let (a, b) = (path[0], *path.last().unwrap());
        let ia = face.iter().position(|&x| x == a).unwrap();
        let ib = face.iter().position(|&x| x == b).unwrap();
        let len = face.len();
        let mut f1: Vec<usize> = Vec::new();
        let mut i = ia;
        loop {
            f1.push(face[i]);
            if i == ib {
                break;
            }
            i = (i + 1) % len;
        }
        f1.extend(path[1..path.len() - 1].iter().rev());
        let mut f2: Vec<usize> = Vec::new();
        let mut i = ib;
        loop {
            f2.push(face[i]);
            if i == ia {
                break;
            }
            i = (i + 1) % len;
        }
        f2.extend(path[1..path.len() - 1].iter());
        faces.push(f1);
        faces.push(f2);

        for w in path.windows(2) {
            embedded_e.insert(key(w[0], w[1]));
        }
        for &v in &path {
            embedded_v[v] = true;
        }
    }
    Ok(faces)
}

fn fragments(adj: &[Vec<usize>], embedded_v: &[bool], embedded_e: &HashSet<(usize, usize)>) -> Vec<Fragment> {
    let k = adj.len();
    let mut out = Vec::new();
    for a in 0..k {
        if !embedded_v[a] {
            continue;
        }
        for &b in &adj[a] {
            if a < b && embedded_v[b] && !embedded_e.contains(&key(a, b)) {
                out.push(Fragment {
                    attachments: vec![a, b],
                    inner: Vec::new(),
                });
            }
        }
    }
    let mut seen = vec![false; k];
    for s in 0..k {
        if embedded_v[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut inner = vec![s];
        let mut attach = BTreeSet::new();
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if embedded_v[u] {
                    attach.insert(u);
                } else if !seen[u] {
                    seen[u] = true;
                    inner.push(u);
                    queue.push_back(u);
                }
            }
        }
        out.push(Fragment {
            attachments: attach.into_iter().collect(),
            inner,
        });
    }
    out
}

/// A path through the fragment between two distinct attachment vertices.
fn fragment_path(adj: &[Vec<usize>], fr: &Fragment, embedded_v: &[bool]) -> Vec<usize> {
    if fr.inner.is_empty() {
        return fr.attachments.clone();
    }
    let a = fr.attachments[0];
    let in_frag: HashSet<usize> = fr.inner.iter().copied().collect();
    let start = *adj[a].iter().find(|u| in_frag.contains(u)).expect("attachment touches fragment");
    let mut prev: HashMap<usize, usize> = HashMap::from([(start, start)]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        if let Some(&b) = adj[v].iter().find(|&&u| embedded_v[u] && u != a) {
            let mut path = vec![b, v];
            let mut cur = v;
            while cur != start {
                cur = prev[&cur];
                path.push(cur);
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for &u in &adj[v] {
            if in_frag.contains(&u) && !prev.contains_key(&u) {
                prev.insert(u, v);
                queue.push_back(u);
            }
        }
    }
    unreachable!("a fragment of a 2-connected graph has two attachments")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Vec<(usize, usize)> {
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
    }

    #[test]
    fn k4_embeds_with_four_faces() {
        let g = embed_edges(4, &complete(4)).unwrap();
        assert_eq!(g.faces().len(), 4);
    }

    #[test]
    fn k5_is_not_planar() {
        assert_eq!(compute_embedding(5, &complete(5)).unwrap_err(), GraphError::NonPlanar);
    }

    #[test]
    fn k33_is_not_planar() {
        let edges: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        assert_eq!(compute_embedding(6, &edges).unwrap_err(), GraphError::NonPlanar);
    }

    #[test]
    fn c4_has_two_faces() {
        let g = embed_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(g.faces().len(), 2);
    }

    #[test]
    fn forest_and_bowtie() {
        let g = embed_edges(6, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(g.faces().len(), 2);
        let g = embed_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(g.faces().len(), 3);
    }

    #[test]
    fn octahedron_embeds() {
        let mut edges = Vec::new();
        for i in 0..4 {
            let (a, b) = (1 + i, 1 + (i + 1) % 4);
            edges.extend([(0, a), (5, a), (a, b)]);
        }
        let g = embed_edges(6, &edges).unwrap();
        assert_eq!(g.faces().len(), 8);
    }

    #[test]
    fn deterministic() {
        let e = complete(4);
        assert_eq!(compute_embedding(4, &e).unwrap(), compute_embedding(4, &e).unwrap());
    }
}
