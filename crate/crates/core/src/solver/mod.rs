//! The inductive list-colouring algorithm for rooted near-triangulations and
//! the reduction that feeds it arbitrary planar graphs.

mod claim;
mod rooted;
mod top;


use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphError, RootedInstance, Vertex};
use crate::lists::{check_valid, Coloring, ListAssignment, ValidityReport, Verdict};

pub use top::{solve, solve_edges};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseLabel {
    #[serde(rename = "Base-A")]
    BaseA,
    #[serde(rename = "Base-B")]
    BaseB,
    #[serde(rename = "SepTriangle")]
    SepTriangle,
    #[serde(rename = "Case1i")]
    Case1i,
    #[serde(rename = "Case1ii")]
    Case1ii,
    #[serde(rename = "Claim1-L′")]
    Claim1LPrime,
    #[serde(rename = "Claim1-root-pair")]
    Claim1RootPair,
    #[serde(rename = "Claim1-L″")]
    Claim1LDoublePrime,
    #[serde(rename = "Claim1-L*")]
    Claim1LStar,
    #[serde(rename = "Claim1-L**")]
    Claim1LStarStar,
    #[serde(rename = "Claim1-swap")]
    Claim1Swap,
    #[serde(rename = "Case2A")]
    Case2A,
    #[serde(rename = "Case2B")]
    Case2B,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 13] = [
        CaseLabel::BaseA,
        CaseLabel::BaseB,
        CaseLabel::SepTriangle,
        CaseLabel::Case1i,
        CaseLabel::Case1ii,
        CaseLabel::Claim1LPrime,
        CaseLabel::Claim1RootPair,
        CaseLabel::Claim1LDoublePrime,
        CaseLabel::Claim1LStar,
        CaseLabel::Claim1LStarStar,
        CaseLabel::Claim1Swap,
        CaseLabel::Case2A,
        CaseLabel::Case2B,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::BaseA => "Base-A",
            CaseLabel::BaseB => "Base-B",
            CaseLabel::SepTriangle => "SepTriangle",
            CaseLabel::Case1i => "Case1i",
            CaseLabel::Case1ii => "Case1ii",
            CaseLabel::Claim1LPrime => "Claim1-L′",
            CaseLabel::Claim1RootPair => "Claim1-root-pair",
            CaseLabel::Claim1LDoublePrime => "Claim1-L″",
            CaseLabel::Claim1LStar => "Claim1-L*",
            CaseLabel::Claim1LStarStar => "Claim1-L**",
            CaseLabel::Claim1Swap => "Claim1-swap",
            CaseLabel::Case2A => "Case2A",
            CaseLabel::Case2B => "Case2B",
        }
    }

    /// Alternative-colouring attempts rather than dispatched cases.
    pub fn is_claim_step(self) -> bool {
        matches!(
            self,
            CaseLabel::Claim1LPrime
                | CaseLabel::Claim1RootPair
                | CaseLabel::Claim1LDoublePrime
                | CaseLabel::Claim1LStar
                | CaseLabel::Claim1LStarStar
                | CaseLabel::Claim1Swap
        )
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One record per rooted call (its dispatched case and input verdict) and
/// one per alternative-colouring attempt (the verdict of the attempted
/// assignment; invalid attempts are expected there).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub case: CaseLabel,
    pub n: usize,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SolveTrace {
    pub steps: Vec<TraceStep>,
}

impl SolveTrace {
    pub fn histogram(&self) -> BTreeMap<CaseLabel, usize> {
        let mut h = BTreeMap::new();
        for s in &self.steps {
            *h.entry(s.case).or_insert(0) += 1;
        }
        h
    }

    /// Rooted calls whose input failed the validity check.
    pub fn validity_failures(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| !s.case.is_claim_step() && !s.verdict.is_valid())
            .count()
    }

    pub fn extend(&mut self, other: SolveTrace) {
        self.steps.extend(other.steps);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("graph is not planar")]
    NonPlanar,
    #[error("graph is not simple: {0}")]
    NotSimple(GraphError),
    #[error("invalid plane graph: {0}")]
    Graph(GraphError),
    #[error("adjacent lists share more than two colours on edges {0:?}")]
    SeparationViolated(Vec<(Vertex, Vertex)>),
    #[error("vertex {vertex} has {size} colours; at least 4 are required")]
    ListTooShort { vertex: Vertex, size: usize },
    #[error("vertex {vertex} uses reserved negative colour {color}")]
    ReservedColor { vertex: Vertex, color: i64 },
    #[error("rooted assignment is not valid: {0:?}")]
    InvalidAssignment(Box<ValidityReport>),
    #[error("internal proof violation: {reason}")]
    InternalProofViolation { reason: String, trace: SolveTrace },
}

impl SolveError {
    /// True for errors caused by the input rather than by the solver.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, SolveError::InternalProofViolation { .. })
    }
}

/// Stack headroom kept before growing, and the size of each new segment.
const RED_ZONE: usize = 128 * 1024;
const STACK_SEGMENT: usize = 8 * 1024 * 1024;

pub(crate) struct Solver {
    trace: SolveTrace,
}

impl Solver {
    pub(crate) fn new() -> Self {
        Solver {
            trace: SolveTrace::default(),
        }
    }

    pub(crate) fn into_trace(self) -> SolveTrace {
        self.trace
    }

    fn record(&mut self, case: CaseLabel, n: usize, verdict: Verdict) {
        self.trace.steps.push(TraceStep { case, n, verdict });
    }

    fn violation(&self, reason: impl Into<String>) -> SolveError {
        SolveError::InternalProofViolation {
            reason: reason.into(),
            trace: self.trace.clone(),
        }
    }

    /// A recursive call on an instance that must be strictly smaller than
    /// `bound`.
    pub(crate) fn rooted(
        &mut self,
        inst: &RootedInstance,
        l: &ListAssignment,
        bound: usize,
    ) -> Result<Coloring, SolveError> {
        stacker::maybe_grow(RED_ZONE, STACK_SEGMENT, || self.rooted_inner(inst, l, bound))
    }
}

/// Colours a rooted instance whose assignment is valid.
pub fn solve_rooted(inst: &RootedInstance, l: &ListAssignment) -> Result<(Coloring, SolveTrace), SolveError> {
    let v = check_valid(inst, l);
    if !v.verdict().is_valid() {
        return Err(SolveError::InvalidAssignment(Box::new(v.report)));
    }
    let mut s = Solver::new();
    let f = s.rooted(inst, l, usize::MAX)?;
    Ok((f, s.into_trace()))
}

/// Another colouring of `inst` that differs from `f` on the pair `(x, y)`.
/// `xy` must be a boundary edge of a chordless instance with `y` not a root
/// vertex, and `l` must be valid with exactly two root pairs or (A).
pub fn claim1_alternative(
    inst: &RootedInstance,
    l: &ListAssignment,
    f: &Coloring,
    x: Vertex,
    y: Vertex,
) -> Result<(Coloring, SolveTrace), SolveError> {
    let v = check_valid(inst, l);
    if !v.verdict().is_valid() {
        return Err(SolveError::InvalidAssignment(Box::new(v.report)));
    }
    let mut s = Solver::new();
    let g = s.claim1(inst, &v.normalized, f, x, y)?;
    Ok((g, s.into_trace()))
}
