use crate::lists::{Color, ColorSet, ListAssignment};

use super::{boundary_cycle, rotation_from_faces, GraphError, PlaneGraph, Vertex};

/// First colour handed to an apex; later colours count down from here.
pub const APEX_PALETTE_FLOOR: Color = -1;

#[derive(Debug, Clone)]
pub struct ApexResult {
    pub graph: PlaneGraph,
    pub lists: ListAssignment,
    /// New vertex ids, one per filled face, in face discovery order.
    pub apexes: Vec<Vertex>,
    /// The next unused reserved colour.
    pub next_color: Color,
}

/// Puts one new vertex inside every non-triangular inner face, joined to the
/// whole face. Each apex gets four reserved colours at or below
/// `palette_floor`, so it never competes with an original list.
pub fn add_face_apexes(
    g: &PlaneGraph,
    lists: &ListAssignment,
    palette_floor: Color,
) -> Result<ApexResult, GraphError> {
    boundary_cycle(g)?;
    let outer = g.outer_face().expect("2-connected graph has an outer face");
    let mut next_id = g.slot_count();
    let mut next_color = palette_floor;
    let mut out_lists = lists.clone();
    let mut apexes = Vec::new();
    let mut faces: Vec<Vec<Vertex>> = Vec::new();
    let mut changed = false;

    for f in g.faces() {
        let cycle: Vec<Vertex> = f.vertices().collect();
        let is_outer = f.contains_dart(outer.darts[0]);
        if is_outer || cycle.len() == 3 {
            faces.push(cycle);
            continue;
        }
        let mut seen = cycle.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != cycle.len() {
            return Err(GraphError::NotTwoConnected(cycle[0]));
        }
        let a = next_id;
        next_id += 1;
        for i in 0..cycle.len() {
            faces.push(vec![cycle[i], cycle[(i + 1) % cycle.len()], a]);
        }
        let colors: ColorSet = (0..4).map(|i| next_color - i).collect();
        next_color -= 4;
        out_lists.set_list(a, colors);
        apexes.push(a);
        changed = true;
    }

    if !changed {
        return Ok(ApexResult {
            graph: g.clone(),
            lists: out_lists,
            apexes,
            next_color,
        });
    }
    let mut rotation = rotation_from_faces(next_id, &faces);
    let present: Vec<bool> = (0..next_id).map(|v| v >= g.slot_count() || g.contains(v)).collect();
    let slots = rotation
        .drain(..)
        .enumerate()
        .map(|(v, r)| present[v].then_some(r))
        .collect();
    let graph = PlaneGraph::from_slots(slots, g.outer_hint());
    Ok(ApexResult {
        graph,
        lists: out_lists,
        apexes,
        next_color,
    })
}
