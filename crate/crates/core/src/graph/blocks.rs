use std::collections::{BTreeSet, VecDeque};

use super::{PlaneGraph, Vertex};

/// A maximal 2-connected subgraph, or a bridge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Sorted vertex ids.
    pub vertices: Vec<Vertex>,
    /// Sorted `(min, max)` edges.
    pub edges: Vec<(Vertex, Vertex)>,
}

impl Block {
    pub fn is_bridge(&self) -> bool {
        self.edges.len() == 1
    }
}

/// Blocks of a graph ordered so that, within each connected component, every
/// block after the first meets the earlier ones in exactly one cut vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockTree {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<Vertex>,
    /// `(block index, cut vertex)` incidences of the block-cut tree.
    pub links: Vec<(usize, Vertex)>,
    /// Vertices with no incident edge.
    pub isolated: Vec<Vertex>,
    /// For each block, the cut vertex it shares with earlier blocks of its
    /// component (`None` for the first block of a component).
    pub attach: Vec<Option<Vertex>>,
}

/// Edge sets of the biconnected components of an adjacency structure.
pub(crate) fn biconnected_edge_sets(adj: &[Vec<Vertex>]) -> Vec<Vec<(Vertex, Vertex)>> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut out = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX || adj[root].is_empty() {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, next neighbour index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, parent) = (top.0, top.1);
            if top.2 < adj[v].len() {
                let u = adj[v][top.2];
                top.2 += 1;
                if disc[u] == usize::MAX {
                    edge_stack.push((v, u));
                    disc[u] = time;
                    low[u] = time;
                    time += 1;
                    stack.push((u, v, 0));
                } else if u != parent && disc[u] < disc[v] {
                    edge_stack.push((v, u));
                    low[v] = low[v].min(disc[u]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut comp = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            comp.push((e.0.min(e.1), e.0.max(e.1)));
                            if e == (p, v) {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        out.push(comp);
                    }
                }
            }
        }
    }
    out
}

pub fn block_decomposition(g: &PlaneGraph) -> BlockTree {
    let adj = g.rotation();
    let raw: Vec<Block> = biconnected_edge_sets(&adj)
        .into_iter()
        .map(|edges| {
            let vs: BTreeSet<Vertex> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
            Block {
                vertices: vs.into_iter().collect(),
                edges,
            }
        })
        .collect();

    let n = g.slot_count();
    let mut blocks_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, b) in raw.iter().enumerate() {
        for &v in &b.vertices {
            blocks_of[v].push(i);
        }
    }
    let cut_vertices: Vec<Vertex> = (0..n).filter(|&v| blocks_of[v].len() > 1).collect();
    let isolated: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) == 0).collect();

    // Breadth-first over the block-cut tree, seeding each component at the
    // block containing its smallest vertex.
    let mut order = Vec::with_capacity(raw.len());
    let mut attach = Vec::with_capacity(raw.len());
    let mut placed = vec![false; raw.len()];
    for v in 0..n {
        let Some(&seed) = blocks_of[v].iter().min() else { continue };
        if placed[seed] {
            continue;
        }
        placed[seed] = true;
        let mut queue = VecDeque::from([(seed, None)]);
        while let Some((bi, via)) = queue.pop_front() {
            order.push(bi);
            attach.push(via);
            for &w in &raw[bi].vertices {
                for &nb in &blocks_of[w] {
                    if !placed[nb] {
                        placed[nb] = true;
                        queue.push_back((nb, Some(w)));
                    }
                }
            }
        }
    }

    let blocks: Vec<Block> = order.iter().map(|&i| raw[i].clone()).collect();
    let mut links = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for &v in &b.vertices {
            if blocks_of[v].len() > 1 {
                links.push((i, v));
            }
        }
    }
    BlockTree {
        blocks,
        cut_vertices,
        links,
        isolated,
        attach,
    }
}
