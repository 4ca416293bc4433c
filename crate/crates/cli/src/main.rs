//! `sepcolor`: batch front end for the (4,2) list-colouring solver, its
//! checkers, the generators, the fuzz harness and the exact oracle.
//!
//! Exit codes: 0 success, 1 negative answer (check or verify found problems,
//! fuzz failures or counterexamples, oracle found no colouring), 2 input
//! violates the solver's preconditions, 3 internal proof violation,
//! 4 malformed input or usage.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sepcolor::batch::{self, CorpusEntry, FuzzMode, RunOptions, RunReport};
use sepcolor::gen::{generate, GenSpec, GraphKind, ListMode, DEFAULT_PALETTE};
use sepcolor::graph::{embed_edges, GraphError, PlaneGraph, RootedInstance};
use sepcolor::io::{self, GraphInput};
use sepcolor::lists::{check_separation, check_valid, verify_coloring, ListAssignment};
use sepcolor::oracle::{brute_force_color, enumerate_all, OracleStatus, DEFAULT_BUDGET};
use sepcolor::solver::{solve, solve_edges, solve_rooted, SolveError, SolveTrace};

const EXIT_NEGATIVE: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_PROOF_VIOLATION: u8 = 3;
const EXIT_MALFORMED: u8 = 4;

#[derive(Parser)]
#[command(name = "sepcolor", version, about = "List colouring of planar graphs from separated 4-lists")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Colour a graph; rooted list files colour the rooted near-triangulation.
    Color {
        #[command(flatten)]
        input: Input,
        /// Write the colouring here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the solver trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Report separation violations and, for rooted lists, validity.
    Check {
        #[command(flatten)]
        input: Input,
        /// Largest allowed overlap of adjacent lists.
        #[arg(long, default_value_t = 2)]
        s: usize,
    },
    /// Check a colouring against the graph and lists.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Generate a graph and list file pair.
    Gen(GenArgs),
    /// Generate and solve (or search) a seeded corpus.
    Fuzz(FuzzArgs),
    /// Exact backtracking search, independent of the solver.
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// List every colouring (up to --cap) instead of finding one.
        #[arg(long)]
        enumerate: bool,
        #[arg(long, default_value_t = 10_000)]
        cap: usize,
    },
}

#[derive(Args)]
struct Input {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    lists: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Stacked,
    Polygon,
    Wheel,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lists {
    Separated,
    Symmetric,
    TCommon,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Vertex count (stacked).
    #[arg(long, default_value_t = 10)]
    n: usize,
    /// Boundary length (polygon) or rim length (wheel).
    #[arg(long, default_value_t = 6)]
    k: usize,
    /// Interior vertices (polygon).
    #[arg(long, default_value_t = 0)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "separated")]
    lists: Lists,
    #[arg(long, default_value_t = 4)]
    list_size: usize,
    /// Separation bound for separated lists.
    #[arg(long, default_value_t = 2)]
    s: usize,
    /// Shared colours for t-common lists.
    #[arg(long, default_value_t = 2)]
    t: usize,
    #[arg(long, default_value_t = DEFAULT_PALETTE)]
    palette: usize,
    /// Writes PREFIX.graph.json and PREFIX.lists.json.
    #[arg(long)]
    out_prefix: PathBuf,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value = "4-2")]
    mode: FuzzMode,
    /// Write the full per-instance report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Directory for failing instances and counterexamples.
    #[arg(long, default_value = "fuzz-dump")]
    dump_dir: PathBuf,
    /// Record per-instance wall-clock time (reports stop being reproducible).
    #[arg(long)]
    timings: bool,
    /// Run instances one at a time.
    #[arg(long)]
    sequential: bool,
}

/// A failed command: its exit code and message.
struct Failure(u8, String);

type Outcome = Result<u8, Failure>;

fn malformed(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_MALFORMED, format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| malformed(path, e))
}

fn write_out(path: &Path, text: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Failure(EXIT_MALFORMED, format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| Failure(EXIT_MALFORMED, format!("{}: {e}", path.display())))
}

fn load(input: &Input) -> Result<(GraphInput, ListAssignment), Failure> {
    let g = io::parse_graph(&read(&input.graph)?).map_err(|e| malformed(&input.graph, e))?;
    let l = io::parse_lists(&read(&input.lists)?).map_err(|e| malformed(&input.lists, e))?;
    Ok((g, l))
}

fn embedded(g: GraphInput, path: &Path) -> Result<PlaneGraph, Failure> {
    match g {
        GraphInput::Embedded(g) => Ok(g),
        GraphInput::Edges { n, edges } => embed_edges(n, &edges).map_err(|e| match e {
            GraphError::NonPlanar => Failure(EXIT_PRECONDITION, "graph is not planar".into()),
            other => malformed(path, other),
        }),
    }
}

fn rooted_instance(g: PlaneGraph, l: &ListAssignment) -> Result<RootedInstance, Failure> {
    let root = l.root().expect("rooted lists").edge;
    RootedInstance::new(g, root).map_err(|e| Failure(EXIT_PRECONDITION, format!("cannot root the graph at {root:?}: {e}")))
}

fn color(input: &Input, out: Option<&Path>, trace_path: Option<&Path>) -> Outcome {
    let (g, l) = load(input)?;
    let result = match (g, l.root().is_some()) {
        (g, true) => {
            let g = embedded(g, &input.graph)?;
            let inst = rooted_instance(g, &l)?;
            solve_rooted(&inst, &l)
        }
        (GraphInput::Embedded(g), false) => solve(&g, &l),
        (GraphInput::Edges { n, edges }, false) => solve_edges(n, &edges, &l),
    };
    let write_trace = |t: &SolveTrace| match trace_path {
        Some(p) => write_out(p, &io::write_json(t)),
        None => Ok(()),
    };
    match result {
        Ok((f, trace)) => {
            write_trace(&trace)?;
            let text = io::write_coloring(&f);
            match out {
                Some(p) => write_out(p, &text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Err(SolveError::InternalProofViolation { reason, trace }) => {
            write_trace(&trace)?;
            Err(Failure(EXIT_PROOF_VIOLATION, format!("internal proof violation: {reason}")))
        }
        Err(e) => Err(Failure(EXIT_PRECONDITION, e.to_string())),
    }
}

fn check(input: &Input, s: usize) -> Outcome {
    let (g, l) = load(input)?;
    let g = embedded(g, &input.graph)?;
    let clashes = check_separation(&g, &l, s);
    let mut doc = serde_json::json!({ "separation_violations": clashes });
    let mut clean = clashes.is_empty();
    if l.root().is_some() {
        let inst = rooted_instance(g, &l)?;
        let v = check_valid(&inst, &l);
        clean &= v.verdict().is_valid();
        doc["validity"] = serde_json::to_value(&v.report).expect("report serializes");
    }
    print!("{}", io::write_json(&doc));
    Ok(if clean { 0 } else { EXIT_NEGATIVE })
}

fn verify(input: &Input, coloring: &Path) -> Outcome {
    let (g, l) = load(input)?;
    let g = embedded(g, &input.graph)?;
    let f = io::parse_coloring(&read(coloring)?).map_err(|e| malformed(coloring, e))?;
    let bad = verify_coloring(&g, &l, &f);
    print!("{}", io::write_json(&serde_json::json!({ "violations": bad })));
    Ok(if bad.is_empty() { 0 } else { EXIT_NEGATIVE })
}

fn gen(a: &GenArgs) -> Outcome {
    let graph = match a.kind {
        Kind::Stacked => GraphKind::Stacked { n: a.n },
        Kind::Polygon => GraphKind::Polygon { k: a.k, m: a.m },
        Kind::Wheel => GraphKind::Wheel { k: a.k },
    };
    let lists = match a.lists {
        Lists::Separated => ListMode::Separated { k: a.list_size, s: a.s },
        Lists::Symmetric => ListMode::Symmetric { k: a.list_size },
        Lists::TCommon => ListMode::TCommon { k: a.list_size, t: a.t },
    };
    let spec = GenSpec {
        graph,
        lists,
        seed: a.seed,
        palette: a.palette,
    };
    let (g, l) = generate(&spec).map_err(|e| Failure(EXIT_MALFORMED, e.to_string()))?;
    write_pair(&a.out_prefix, &g, &l)?;
    Ok(0)
}

fn write_pair(prefix: &Path, g: &PlaneGraph, l: &ListAssignment) -> Result<(), Failure> {
    let with = |ext: &str| {
        let mut p = prefix.as_os_str().to_owned();
        p.push(ext);
        PathBuf::from(p)
    };
    write_out(&with(".graph.json"), &io::write_graph(g))?;
    write_out(&with(".lists.json"), &io::write_lists(l))
}

fn fuzz(a: &FuzzArgs) -> Outcome {
    let entries = batch::standard_corpus(a.mode, a.count, a.seed);
    let opts = RunOptions { timings: a.timings };
    let check = a.mode.check();
    let report = if a.sequential {
        batch::run_sequential(&entries, check, opts)
    } else {
        batch::run(&entries, check, opts)
    };
    if let Some(p) = &a.report {
        write_out(p, &io::write_json(&report))?;
    }
    let dumped = dump(&report, &entries, &a.dump_dir)?;
    print_summary(a.mode, &report, dumped, &a.dump_dir);
    let c = &report.counters;
    Ok(if c.failures() == 0 && c.counterexamples == 0 { 0 } else { EXIT_NEGATIVE })
}

/// Writes every instance that failed or has no colouring, regenerated from
/// its spec.
fn dump(report: &RunReport, entries: &[CorpusEntry], dir: &Path) -> Result<usize, Failure> {
    let mut dumped = 0;
    for r in &report.records {
        let keep = !matches!(
            r.outcome,
            batch::Outcome::Colored | batch::Outcome::Found | batch::Outcome::Aborted
        );
        if !keep {
            continue;
        }
        if let Ok((g, l)) = generate(&entries[r.id].spec) {
            write_pair(&dir.join(format!("instance-{}", r.id)), &g, &l)?;
            dumped += 1;
        }
    }
    Ok(dumped)
}

fn print_summary(mode: FuzzMode, report: &RunReport, dumped: usize, dir: &Path) {
    let c = &report.counters;
    println!("mode {mode}: {} instances", c.instances);
    match mode {
        FuzzMode::FourTwo => {
            println!(
                "colored {} / {}, unverified {}, precondition failures {}, proof violations {}, validity failures {}, generator failures {}",
                c.colored,
                c.instances,
                c.unverified,
                c.precondition_failures,
                c.proof_violations,
                c.validity_failures,
                c.generator_failures
            );
            let cov: Vec<String> = report.coverage.iter().map(|(l, k)| format!("{l}={k}")).collect();
            println!("coverage {}", cov.join(" "));
        }
        _ => println!(
            "colourable {}, counterexamples {}, aborted {}, generator failures {}",
            c.found, c.counterexamples, c.aborted, c.generator_failures
        ),
    }
    if dumped > 0 {
        println!("dumped {dumped} instances to {}", dir.display());
    }
}

fn oracle(input: &Input, budget: u64, enumerate: bool, cap: usize) -> Outcome {
    let (g, l) = load(input)?;
    let g = embedded(g, &input.graph)?;
    if enumerate {
        let e = enumerate_all(&g, &l, cap);
        let doc = serde_json::json!({ "colorings": e.colorings, "capped": e.capped });
        print!("{}", io::write_json(&doc));
        return Ok(if e.colorings.is_empty() { EXIT_NEGATIVE } else { 0 });
    }
    let r = brute_force_color(&g, &l, budget);
    print!("{}", io::write_json(&r));
    Ok(if r.status == OracleStatus::Found { 0 } else { EXIT_NEGATIVE })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_MALFORMED } else { 0 });
        }
    };
    let outcome = match &cli.command {
        Command::Color { input, out, trace } => color(input, out.as_deref(), trace.as_deref()),
        Command::Check { input, s } => check(input, *s),
        Command::Verify { input, coloring } => verify(input, coloring),
        Command::Gen(a) => gen(a),
        Command::Fuzz(a) => fuzz(a),
        Command::Oracle {
            input,
            budget,
            enumerate,
            cap,
        } => oracle(input, *budget, *enumerate, *cap),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
