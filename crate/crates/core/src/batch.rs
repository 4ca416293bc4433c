//! Batch runs over seeded corpora. Instances are independent, so the
//! `parallel` feature maps them over the rayon pool; results are always
//! ordered by instance id.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::gen::{generate, GenSpec, GraphKind, ListMode, DEFAULT_PALETTE};
use crate::lists::verify_coloring;
use crate::oracle::{brute_force_color, OracleStatus, DEFAULT_BUDGET};
use crate::solver::{solve, CaseLabel, SolveError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FuzzMode {
    #[serde(rename = "4-2")]
    FourTwo,
    #[serde(rename = "3-1")]
    ThreeOne,
    #[serde(rename = "symmetric-4")]
    Symmetric4,
    #[serde(rename = "t-common")]
    TCommon,
}

impl FuzzMode {
    pub const ALL: [FuzzMode; 4] = [FuzzMode::FourTwo, FuzzMode::ThreeOne, FuzzMode::Symmetric4, FuzzMode::TCommon];

    pub fn as_str(self) -> &'static str {
        match self {
            FuzzMode::FourTwo => "4-2",
            FuzzMode::ThreeOne => "3-1",
            FuzzMode::Symmetric4 => "symmetric-4",
            FuzzMode::TCommon => "t-common",
        }
    }

    pub fn list_mode(self) -> ListMode {
        match self {
            FuzzMode::FourTwo => ListMode::Separated { k: 4, s: 2 },
            FuzzMode::ThreeOne => ListMode::Separated { k: 3, s: 1 },
            FuzzMode::Symmetric4 => ListMode::Symmetric { k: 4 },
            FuzzMode::TCommon => ListMode::TCommon { k: 4, t: 2 },
        }
    }

    /// The (4,2) mode runs the solver; the others only search with the oracle.
    pub fn check(self) -> Check {
        match self {
            FuzzMode::FourTwo => Check::Solve,
            _ => Check::Oracle { budget: DEFAULT_BUDGET },
        }
    }
}

impl fmt::Display for FuzzMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FuzzMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FuzzMode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown mode `{s}` (expected 4-2, 3-1, symmetric-4 or t-common)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum Check {
    Solve,
    Oracle { budget: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub id: usize,
    pub spec: GenSpec,
}

/// Largest sizes in the (4,2) corpus.
pub const MAX_POLYGON_SIDES: usize = 12;
pub const MAX_INTERIOR: usize = 300;
pub const MAX_STACKED: usize = 300;
/// Sizes for the oracle-only modes, which search exhaustively.
const CONJECTURE_MAX_SIDES: usize = 8;
const CONJECTURE_MAX_INTERIOR: usize = 20;
const CONJECTURE_MAX_STACKED: usize = 24;

/// `count` instances alternating polygon triangulations (even ids) and
/// stacked triangulations (odd ids), with sizes and per-instance seeds drawn
/// from `ChaCha8Rng::seed_from_u64(seed)`.
pub fn standard_corpus(mode: FuzzMode, count: usize, seed: u64) -> Vec<CorpusEntry> {
    let (sides, interior, stacked) = match mode {
        FuzzMode::FourTwo => (MAX_POLYGON_SIDES, MAX_INTERIOR, MAX_STACKED),
        _ => (CONJECTURE_MAX_SIDES, CONJECTURE_MAX_INTERIOR, CONJECTURE_MAX_STACKED),
    };
    let palette = match mode {
        FuzzMode::Symmetric4 => 8,
        _ => DEFAULT_PALETTE,
    };
    corpus(count, seed, mode.list_mode(), palette, |id, rng| {
        if id % 2 == 0 {
            GraphKind::Polygon {
                k: rng.gen_range(4..=sides),
                m: rng.gen_range(0..=interior),
            }
        } else {
            GraphKind::Stacked {
                n: rng.gen_range(4..=stacked),
            }
        }
    })
}

/// A corpus whose graph kinds come from `kind`, called in id order.
pub fn corpus(
    count: usize,
    seed: u64,
    lists: ListMode,
    palette: usize,
    mut kind: impl FnMut(usize, &mut ChaCha8Rng) -> GraphKind,
) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|id| {
            let graph = kind(id, &mut rng);
            let spec = GenSpec {
                graph,
                lists,
                seed: rng.gen(),
                palette,
            };
            CorpusEntry { id, spec }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Outcome {
    /// Solved and independently verified.
    Colored,
    /// Solved, but the verifier rejected the colouring.
    Unverified { violations: usize },
    PreconditionFailed { error: String },
    ProofViolation { error: String },
    GeneratorFailed { error: String },
    /// Oracle modes: a colouring exists.
    Found,
    /// Oracle modes: no colouring exists.
    Counterexample,
    /// Oracle modes: the node budget ran out.
    Aborted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub id: usize,
    pub spec: GenSpec,
    pub n: usize,
    #[serde(flatten)]
    pub outcome: Outcome,
    pub steps: usize,
    pub validity_failures: usize,
    pub coverage: BTreeMap<CaseLabel, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_nodes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub instances: usize,
    pub colored: usize,
    pub unverified: usize,
    pub precondition_failures: usize,
    pub proof_violations: usize,
    pub validity_failures: usize,
    pub generator_failures: usize,
    pub found: usize,
    pub counterexamples: usize,
    pub aborted: usize,
}

impl Counters {
    fn add(&mut self, r: &InstanceRecord) {
        self.instances += 1;
        self.validity_failures += r.validity_failures;
        match r.outcome {
            Outcome::Colored => self.colored += 1,
            Outcome::Unverified { .. } => self.unverified += 1,
            Outcome::PreconditionFailed { .. } => self.precondition_failures += 1,
            Outcome::ProofViolation { .. } => self.proof_violations += 1,
            Outcome::GeneratorFailed { .. } => self.generator_failures += 1,
            Outcome::Found => self.found += 1,
            Outcome::Counterexample => self.counterexamples += 1,
            Outcome::Aborted => self.aborted += 1,
        }
    }

    /// Instances that did not end in a verified colouring or an oracle verdict.
    pub fn failures(&self) -> usize {
        self.unverified + self.precondition_failures + self.proof_violations + self.generator_failures + self.validity_failures
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub check: Check,
    pub counters: Counters,
    /// Every case label, including those never reached.
    pub coverage: BTreeMap<CaseLabel, usize>,
    pub records: Vec<InstanceRecord>,
}

impl RunReport {
    pub fn from_records(check: Check, records: Vec<InstanceRecord>) -> Self {
        let mut counters = Counters::default();
        let mut coverage: BTreeMap<CaseLabel, usize> = CaseLabel::ALL.iter().map(|&c| (c, 0)).collect();
        for r in &records {
            counters.add(r);
            for (&c, &k) in &r.coverage {
                *coverage.entry(c).or_insert(0) += k;
            }
        }
        RunReport {
            check,
            counters,
            coverage,
            records,
        }
    }

    pub fn missing_labels(&self) -> Vec<CaseLabel> {
        self.coverage.iter().filter(|(_, &k)| k == 0).map(|(&c, _)| c).collect()
    }

    /// Ids of instances an oracle proved uncolourable.
    pub fn counterexamples(&self) -> Vec<usize> {
        self.records
            .iter()
            .filter(|r| r.outcome == Outcome::Counterexample)
            .map(|r| r.id)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Record wall-clock time per instance (makes reports non-reproducible).
    pub timings: bool,
}

pub fn run_instance(entry: &CorpusEntry, check: Check, opts: RunOptions) -> InstanceRecord {
    let start = Instant::now();
    let mut record = InstanceRecord {
        id: entry.id,
        spec: entry.spec,
        n: 0,
        outcome: Outcome::Colored,
        steps: 0,
        validity_failures: 0,
        coverage: BTreeMap::new(),
        oracle_nodes: None,
        millis: None,
    };
    match generate(&entry.spec) {
        Err(e) => record.outcome = Outcome::GeneratorFailed { error: e.to_string() },
        Ok((g, l)) => {
            record.n = g.vertex_count();
            record.outcome = match check {
                Check::Solve => match solve(&g, &l) {
                    Ok((f, trace)) => {
                        record.steps = trace.steps.len();
                        record.validity_failures = trace.validity_failures();
                        record.coverage = trace.histogram();
                        match verify_coloring(&g, &l, &f).len() {
                            0 => Outcome::Colored,
                            violations => Outcome::Unverified { violations },
                        }
                    }
                    Err(e @ SolveError::InternalProofViolation { .. }) => Outcome::ProofViolation { error: e.to_string() },
                    Err(e) => Outcome::PreconditionFailed { error: e.to_string() },
                },
                Check::Oracle { budget } => {
                    let r = brute_force_color(&g, &l, budget);
                    record.oracle_nodes = Some(r.nodes);
                    match r.status {
                        OracleStatus::Found => Outcome::Found,
                        OracleStatus::Infeasible => Outcome::Counterexample,
                        OracleStatus::Aborted => Outcome::Aborted,
                    }
                }
            };
        }
    }
    if opts.timings {
        record.millis = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    record
}

pub fn run_sequential(entries: &[CorpusEntry], check: Check, opts: RunOptions) -> RunReport {
    let records = entries.iter().map(|e| run_instance(e, check, opts)).collect();
    RunReport::from_records(check, records)
}

#[cfg(feature = "parallel")]
pub fn run_parallel(entries: &[CorpusEntry], check: Check, opts: RunOptions) -> RunReport {
    use rayon::prelude::*;
    let records = entries.par_iter().map(|e| run_instance(e, check, opts)).collect();
    RunReport::from_records(check, records)
}

/// Runs on the rayon pool when built with `parallel`, otherwise in order.
pub fn run(entries: &[CorpusEntry], check: Check, opts: RunOptions) -> RunReport {
    #[cfg(feature = "parallel")]
    {
        run_parallel(entries, check, opts)
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_sequential(entries, check, opts)
    }
}
