//! Seeded generators of near-triangulations and list assignments.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64`, so a seed replays
//! the same instance on every platform.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{boundary_cycle, rotation_from_faces, PlaneGraph, RootedInstance, Vertex};
use crate::lists::{check_valid, Color, ColorSet, ListAssignment, RootPairs, Verdict};

/// Default palette for separated lists.
pub const DEFAULT_PALETTE: usize = 9;

/// Per-vertex draws before the palette grows by one colour.
const DRAWS_PER_VERTEX: usize = 400;
/// Palette growth steps before giving up.
const PALETTE_RETRIES: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GraphKind {
    Stacked { n: usize },
    Polygon { k: usize, m: usize },
    Wheel { k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum ListMode {
    /// Lists of size `k`; adjacent lists share at most `s` colours.
    Separated { k: usize, s: usize },
    /// Lists of even size `k` closed under negation.
    Symmetric { k: usize },
    /// Lists of size `k` all containing the same `t` colours.
    TCommon { k: usize, t: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub graph: GraphKind,
    pub lists: ListMode,
    pub seed: u64,
    pub palette: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid generator parameters: {0}")]
    InvalidSpec(String),
    #[error("no assignment found with palettes up to {0} colours")]
    PaletteTooSmall(usize),
}

/// Seed of the list stream derived from a spec seed, independent of the graph stream.
pub fn list_seed(seed: u64) -> u64 {
    seed ^ 0x9e37_79b9_7f4a_7c15
}

pub fn generate(spec: &GenSpec) -> Result<(PlaneGraph, ListAssignment), GenError> {
    let g = gen_graph(spec.graph, spec.seed)?;
    let l = gen_list_assignment(&g, spec.lists, spec.palette, list_seed(spec.seed))?;
    Ok((g, l))
}

pub fn gen_graph(kind: GraphKind, seed: u64) -> Result<PlaneGraph, GenError> {
    match kind {
        GraphKind::Stacked { n } if n >= 3 => Ok(gen_stacked_triangulation(n, seed)),
        GraphKind::Polygon { k, m } if k >= 3 => Ok(gen_polygon_triangulation(k, m, seed)),
        GraphKind::Wheel { k } if k >= 3 => Ok(gen_wheel(k)),
        other => Err(GenError::InvalidSpec(format!("{other:?} is too small"))),
    }
}

/// Apollonian stacking: start from the triangle `0 1 2` (outer walk `0 2 1`)
/// and put each new vertex into a uniformly chosen inner face.
pub fn gen_stacked_triangulation(n: usize, seed: u64) -> PlaneGraph {
    assert!(n >= 3, "a stacked triangulation needs three vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let choices: Vec<usize> = (0..n - 3).map(|j| rng.gen_range(0..1 + 2 * j)).collect();
    stacked_from_choices(&choices)
}

/// The stacked triangulation whose vertex `3 + j` goes into inner face
/// `choices[j]`, counting faces in creation order (step `j` has `1 + 2j`).
pub fn stacked_from_choices(choices: &[usize]) -> PlaneGraph {
    let n = 3 + choices.len();
    let mut inner = vec![[0, 1, 2]];
    for (j, &i) in choices.iter().enumerate() {
        assert!(i < inner.len(), "step {j} has only {} faces", inner.len());
        place(&mut inner, i, 3 + j);
    }
    let mut faces: Vec<Vec<Vertex>> = vec![vec![0, 2, 1]];
    faces.extend(inner.iter().map(|f| f.to_vec()));
    PlaneGraph::new(rotation_from_faces(n, &faces), Some((0, 2))).expect("stacking keeps a plane triangulation")
}

/// Every stacking sequence on `n` vertices, `1 * 3 * 5 * ... * (2n - 7)` graphs.
pub fn all_stacked_triangulations(n: usize) -> Vec<PlaneGraph> {
    assert!(n >= 3, "a stacked triangulation needs three vertices");
    let mut seqs: Vec<Vec<usize>> = vec![Vec::new()];
    for j in 0..n - 3 {
        seqs = seqs
            .into_iter()
            .flat_map(|s| {
                (0..1 + 2 * j).map(move |i| {
                    let mut t = s.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    seqs.iter().map(|s| stacked_from_choices(s)).collect()
}

/// A `k`-gon triangulated by seeded ear cutting, then `m` stacked vertices.
/// The outer walk is `0, k-1, ..., 1`.
pub fn gen_polygon_triangulation(k: usize, m: usize, seed: u64) -> PlaneGraph {
    assert!(k >= 3, "a polygon needs three vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ring: Vec<Vertex> = (0..k).collect();
    let mut inner = Vec::with_capacity(k - 2 + 2 * m);
    while ring.len() > 3 {
        let i = rng.gen_range(0..ring.len());
        let len = ring.len();
        inner.push([ring[(i + len - 1) % len], ring[i], ring[(i + 1) % len]]);
        ring.remove(i);
    }
    inner.push([ring[0], ring[1], ring[2]]);
    stack(&mut inner, k, k + m, &mut rng);
    let mut faces: Vec<Vec<Vertex>> = vec![std::iter::once(0).chain((1..k).rev()).collect()];
    faces.extend(inner.iter().map(|f| f.to_vec()));
    PlaneGraph::new(rotation_from_faces(k + m, &faces), Some((0, k - 1)))
        .expect("ear cutting keeps a plane near-triangulation")
}

/// Rim `0..k` around hub `k`.
pub fn gen_wheel(k: usize) -> PlaneGraph {
    assert!(k >= 3, "a wheel needs a rim of three vertices");
    let mut faces: Vec<Vec<Vertex>> = vec![std::iter::once(0).chain((1..k).rev()).collect()];
    faces.extend((0..k).map(|i| vec![i, (i + 1) % k, k]));
    PlaneGraph::new(rotation_from_faces(k + 1, &faces), Some((0, k - 1))).expect("wheel is plane")
}

fn stack(inner: &mut Vec<[Vertex; 3]>, from: Vertex, to: Vertex, rng: &mut ChaCha8Rng) {
    for v in from..to {
        let i = rng.gen_range(0..inner.len());
        place(inner, i, v);
    }
}

fn place(inner: &mut Vec<[Vertex; 3]>, i: usize, v: Vertex) {
    let [a, b, c] = inner[i];
    inner[i] = [a, b, v];
    inner.push([b, c, v]);
    inner.push([c, a, v]);
}

pub fn gen_list_assignment(
    g: &PlaneGraph,
    mode: ListMode,
    palette: usize,
    seed: u64,
) -> Result<ListAssignment, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match mode {
        ListMode::Separated { k, s } => {
            if k == 0 || s >= k {
                return Err(GenError::InvalidSpec(format!("separated lists need k > s, got k={k}, s={s}")));
            }
            separated(g, k, s, palette.max(k), &mut rng)
        }
        ListMode::Symmetric { k } => {
            if k == 0 || k % 2 == 1 {
                return Err(GenError::InvalidSpec(format!("symmetric lists need an even size, got {k}")));
            }
            let half = (palette / 2).max(k / 2);
            let mut l = ListAssignment::new();
            for v in g.vertices() {
                let picks = index::sample(&mut rng, half, k / 2);
                let list: ColorSet = picks.iter().flat_map(|i| [i as Color + 1, -(i as Color + 1)]).collect();
                l.set_list(v, list);
            }
            Ok(l)
        }
        ListMode::TCommon { k, t } => {
            if t > k || k == 0 {
                return Err(GenError::InvalidSpec(format!("t-common lists need t <= k, got k={k}, t={t}")));
            }
            let palette = palette.max(k);
            let mut colors: Vec<Color> = (1..=palette as Color).collect();
            colors.shuffle(&mut rng);
            let (core, rest) = colors.split_at(t);
            let mut l = ListAssignment::new();
            for v in g.vertices() {
                let fill = index::sample(&mut rng, rest.len(), k - t);
                let list: ColorSet = core.iter().copied().chain(fill.iter().map(|i| rest[i])).collect();
                l.set_list(v, list);
            }
            Ok(l)
        }
    }
}

/// Boundary profile of a generated rooted assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootedProfile {
    A,
    B,
}

/// Attempts at a valid rooted assignment before giving up.
const ROOTED_ATTEMPTS: usize = 64;

/// A valid rooted assignment on a near-triangulation: Separated(4,2) lists,
/// a random boundary edge as root, random boundary lists cut to three
/// colours, and under profile `B` one vertex cut to two.
pub fn gen_rooted_assignment(
    g: &PlaneGraph,
    profile: RootedProfile,
    palette: usize,
    seed: u64,
) -> Result<(RootedInstance, ListAssignment), GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cyc = boundary_cycle(g)
        .map_err(|e| GenError::InvalidSpec(format!("no boundary cycle: {e}")))?
        .cycle()
        .to_vec();
    let k = cyc.len();
    for _ in 0..ROOTED_ATTEMPTS {
        let base = separated(g, 4, 2, palette.max(4), &mut rng)?;
        let i = rng.gen_range(0..k);
        let root = (cyc[i], cyc[(i + 1) % k]);
        let inst = RootedInstance::new(g.clone(), root)
            .map_err(|e| GenError::InvalidSpec(format!("cannot root at {root:?}: {e}")))?;
        let (l1, l2) = (base.list(root.0).cloned().unwrap_or_default(), base.list(root.1).cloned().unwrap_or_default());
        let mut pairs: Vec<(Color, Color)> =
            l1.iter().flat_map(|c| l2.iter().filter(move |&d| d != c).map(move |d| (c, d))).collect();
        pairs.shuffle(&mut rng);
        let want = match profile {
            RootedProfile::A => rng.gen_range(1..=2),
            RootedProfile::B => 2,
        };
        pairs.truncate(want);

        let mut lists = base.lists().clone();
        let others: Vec<Vertex> = cyc.iter().copied().filter(|&v| v != root.0 && v != root.1).collect();
        for &v in &others {
            if rng.gen_bool(0.5) {
                drop_random(lists.get_mut(&v).expect("listed"), 3, &mut rng);
            }
        }
        if profile == RootedProfile::B {
            let v = others[rng.gen_range(0..others.len())];
            drop_random(lists.get_mut(&v).expect("listed"), 2, &mut rng);
        }
        let l = ListAssignment::rooted(lists, RootPairs::new(root, pairs));
        let verdict = check_valid(&inst, &l).verdict();
        let hit = match profile {
            RootedProfile::A => verdict == Verdict::ValidA,
            RootedProfile::B => verdict == Verdict::ValidB,
        };
        if hit {
            return Ok((inst, l));
        }
    }
    Err(GenError::InvalidSpec(format!("no valid {profile:?} assignment in {ROOTED_ATTEMPTS} attempts")))
}

fn drop_random(list: &mut ColorSet, keep: usize, rng: &mut ChaCha8Rng) {
    let mut cs: Vec<Color> = list.iter().collect();
    cs.shuffle(rng);
    cs.truncate(keep);
    *list = cs.into_iter().collect();
}

/// Greedy rejection sampling in vertex order, growing the palette when a
/// vertex cannot be placed.
fn separated(
    g: &PlaneGraph,
    k: usize,
    s: usize,
    palette: usize,
    rng: &mut ChaCha8Rng,
) -> Result<ListAssignment, GenError> {
    let mut size = palette;
    for _ in 0..PALETTE_RETRIES {
        if let Some(l) = separated_once(g, k, s, size, rng) {
            return Ok(l);
        }
        size += 1;
    }
    Err(GenError::PaletteTooSmall(size - 1))
}

fn separated_once(g: &PlaneGraph, k: usize, s: usize, palette: usize, rng: &mut ChaCha8Rng) -> Option<ListAssignment> {
    let mut l = ListAssignment::new();
    for v in g.vertices() {
        let placed: Vec<&ColorSet> = g.neighbours(v).iter().filter_map(|&u| l.list(u)).collect();
        let list = (0..DRAWS_PER_VERTEX).find_map(|_| {
            let cand: ColorSet = index::sample(rng, palette, k).iter().map(|i| i as Color + 1).collect();
            placed.iter().all(|p| p.intersection_len(&cand) <= s).then_some(cand)
        })?;
        l.set_list(v, list);
    }
    Some(l)
}
