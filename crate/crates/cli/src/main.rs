//! Batch front-end: solve, verify against the oracle, decompose, generate hard instances, bench.
//!
//! Exit codes: 0 YES (or a clean verify), 1 UNKNOWN, 2 usage or input error, 3 verify found a
//! false positive.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use cutcount::decomposition::{
    heuristic_decompose, parse_pace_td, to_pace_td, PathDecomposition, TreeDecomposition,
};
use cutcount::engine::Verdict;
use cutcount::fpt::{cfvs_3k, cvc_2k, fvs_3k, FptAnswer};
use cutcount::graph::{parse_graph, to_pace_gr, DirectedGraph, Graph, GraphFormat, UndirectedGraph};
use cutcount::hardgen::{gen_steiner, parse_dimacs, to_unweighted, Cnf};
use cutcount::oracle::{oracle_solve, OracleLimit};
use cutcount::problem::{prepare, solve, table_stats, Params, Problem, Query};
use cutcount::sample::random_query;
use cutcount::vertex::RunParams;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// `println!` that exits quietly when stdout is a closed pipe.
macro_rules! println {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        if let Err(e) = writeln!(std::io::stdout(), $($t)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("failed printing to stdout: {e}");
        }
    }};
}

const EXIT_YES: u8 = 0;
const EXIT_UNKNOWN: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_FALSE_POSITIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "cutcount", version, about = "Cut&Count solvers over tree decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide one instance.
    Solve(SolveArgs),
    /// Compare the solver with the exhaustive oracle on one instance or a random sweep.
    Verify(VerifyArgs),
    /// Write a decomposition of a graph in PACE `.td` format.
    Decompose(DecomposeArgs),
    /// Build a weighted Steiner Tree instance from a DIMACS CNF formula.
    Genhard(GenhardArgs),
    /// Report table sizes of one counting pass on graphs of growing bag size.
    Bench(BenchArgs),
}

/// Instance flags shared by `solve` and `verify`. Vertex labels are 1-based.
#[derive(Args, Clone)]
struct InstanceArgs {
    /// Problem name, e.g. steiner, cvc, fvs, hamcycle, dpcc, kleaf.
    problem: Problem,
    /// Graph file: PACE `.gr` or JSON edge list (`.json`). For directed problems `.gr` lines are arcs.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Tree decomposition file: PACE `.td` or JSON. Defaults to the min-degree heuristic.
    #[arg(long)]
    td: Option<PathBuf>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    /// Comma-separated terminal labels.
    #[arg(long, value_delimiter = ',')]
    terminals: Vec<usize>,
    /// Comma-separated labels that must belong to the solution.
    #[arg(long, value_delimiter = ',')]
    required: Vec<usize>,
    #[arg(long)]
    root: Option<usize>,
    /// Independent repetitions of the randomized test.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    reps: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print a JSON report instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    inst: InstanceArgs,
    /// Use iterative compression (fvs, cvc, cfvs only) and report a witness.
    #[arg(long)]
    compress: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    inst: InstanceArgs,
    /// Sweep this many random instances instead of reading `--graph`.
    #[arg(long)]
    random: Option<usize>,
    /// Largest vertex count in a random sweep.
    #[arg(long, default_value_t = 8)]
    n_max: usize,
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GenhardArgs {
    /// DIMACS CNF input.
    #[arg(long)]
    cnf: PathBuf,
    /// Block size: variable triples per gadget.
    #[arg(long, default_value_t = 1)]
    beta: usize,
    /// Output prefix; writes `<prefix>.gr`, `<prefix>.td` and `<prefix>.json`.
    #[arg(long)]
    out: PathBuf,
    /// Also write the unit-weight subdivision when it has at most this many vertices.
    #[arg(long)]
    unweighted_cap: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BenchArgs {
    problem: Problem,
    /// Range of largest bag sizes, e.g. `3..6` (inclusive).
    #[arg(long, default_value = "3..6")]
    widths: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_YES });
        }
    };
    let outcome = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Genhard(a) => cmd_genhard(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "json")
}

fn load_graph(path: &Path) -> Result<Graph> {
    let format = if is_json(path) { GraphFormat::EdgeListJson } else { GraphFormat::PaceGr };
    parse_graph(&read(path)?, format).with_context(|| format!("cannot parse {}", path.display()))
}

fn load_td(path: &Path) -> Result<TreeDecomposition> {
    let text = read(path)?;
    let td = if is_json(path) {
        serde_json::from_str(&text).map_err(|e| anyhow!("{e}"))
    } else {
        parse_pace_td(&text).map_err(|e| anyhow!("{e}"))
    };
    td.with_context(|| format!("cannot parse {}", path.display()))
}

fn zero_based(labels: &[usize], what: &str) -> Result<Vec<usize>> {
    labels
        .iter()
        .map(|&x| x.checked_sub(1).ok_or_else(|| anyhow!("{what} labels start at 1")))
        .collect()
}

fn load_query(a: &InstanceArgs) -> Result<Query> {
    let path = a.graph.as_ref().ok_or_else(|| anyhow!("--graph is required"))?;
    let graph = load_graph(path)?;
    let (undirected, directed) = match (graph, a.problem.directed()) {
        (Graph::Undirected(g), false) => (Some(g), None),
        (Graph::Undirected(g), true) => (None, Some(DirectedGraph::new(g.n(), g.edges().to_vec())?)),
        (Graph::Directed(g), true) => (None, Some(g)),
        (Graph::Directed(_), false) => bail!("{} expects an undirected graph", a.problem),
    };
    let params = Params {
        k: a.k,
        l: a.l,
        terminals: zero_based(&a.terminals, "terminal")?,
        required: zero_based(&a.required, "required")?,
        root: a.root.map(|r| r.checked_sub(1).ok_or_else(|| anyhow!("root labels start at 1"))).transpose()?,
    };
    Ok(Query::build(a.problem, undirected, directed, &params)?)
}

fn run_params(a: &InstanceArgs) -> RunParams {
    RunParams { repetitions: a.reps as usize, seed: a.seed }
}

#[derive(Serialize)]
struct SolveReport {
    problem: String,
    verdict: &'static str,
    seed: u64,
    repetitions: usize,
    /// Repetitions spent before stopping; absent under compression.
    #[serde(skip_serializing_if = "Option::is_none")]
    repetitions_run: Option<usize>,
    /// Constrained queries issued by iterative compression.
    #[serde(skip_serializing_if = "Option::is_none")]
    queries: Option<usize>,
    width: usize,
    wall_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<usize>>,
}

fn verdict_name(yes: bool) -> &'static str {
    if yes {
        "YES"
    } else {
        "UNKNOWN"
    }
}

fn cmd_solve(a: SolveArgs) -> Result<u8> {
    let inst = &a.inst;
    let query = load_query(inst)?;
    let td = inst.td.as_deref().map(load_td).transpose()?;
    let params = run_params(inst);
    let start = Instant::now();
    let report = if a.compress {
        let (graph, k) = match &query {
            Query::Fvs { graph, required, k } | Query::Cvc { graph, required, k } | Query::Cfvs { graph, required, k } => {
                if !required.is_empty() {
                    bail!("--compress does not take --required");
                }
                (graph, *k)
            }
            _ => bail!("--compress supports fvs, cvc and cfvs"),
        };
        let fpt = match inst.problem {
            Problem::Fvs => fvs_3k(graph, k, params)?,
            Problem::Cvc => cvc_2k(graph, k, params)?,
            _ => cfvs_3k(graph, k, params)?,
        };
        let witness = match fpt.answer {
            FptAnswer::Yes(w) => Some(w.into_iter().map(|v| v + 1).collect()),
            FptAnswer::Unknown => None,
        };
        SolveReport {
            problem: inst.problem.to_string(),
            verdict: verdict_name(witness.is_some()),
            seed: params.seed,
            repetitions: params.repetitions,
            repetitions_run: None,
            queries: Some(fpt.stats.queries),
            width: fpt.stats.max_core + 1,
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
            witness,
        }
    } else {
        let (answer, width) = solve(&query, td.as_ref(), params)?;
        SolveReport {
            problem: inst.problem.to_string(),
            verdict: verdict_name(answer.verdict == Verdict::Yes),
            seed: answer.seed,
            repetitions: params.repetitions,
            repetitions_run: Some(answer.repetitions),
            queries: None,
            width,
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
            witness: None,
        }
    };
    if inst.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("{}", report.verdict);
        println!("problem      {}", report.problem);
        println!("seed         {}", report.seed);
        match (report.repetitions_run, report.queries) {
            (Some(run), _) => println!("repetitions  {} ({run} run)", report.repetitions),
            (None, Some(q)) => println!("repetitions  {} per query, {q} queries", report.repetitions),
            (None, None) => println!("repetitions  {}", report.repetitions),
        }
        println!("width        {}", report.width);
        println!("wall time    {:.3} ms", report.wall_ms);
        if let Some(w) = &report.witness {
            let labels: Vec<String> = w.iter().map(|v| v.to_string()).collect();
            println!("witness      {}", labels.join(","));
        }
    }
    Ok(if report.verdict == "YES" { EXIT_YES } else { EXIT_UNKNOWN })
}

#[derive(Serialize, Default)]
struct VerifyReport {
    problem: String,
    seed: u64,
    repetitions: usize,
    instances: usize,
    oracle_yes: usize,
    solver_yes: usize,
    false_positives: usize,
    false_negatives: usize,
    skipped: usize,
}

fn cmd_verify(a: VerifyArgs) -> Result<u8> {
    let inst = &a.inst;
    let params = run_params(inst);
    let limit = OracleLimit::default();
    let mut report = VerifyReport {
        problem: inst.problem.to_string(),
        seed: params.seed,
        repetitions: params.repetitions,
        ..Default::default()
    };
    let queries: Vec<(Query, Option<TreeDecomposition>)> = match a.random {
        Some(count) => {
            if a.n_max == 0 {
                bail!("--n-max must be positive");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
            (0..count).map(|_| (random_query(&mut rng, inst.problem, a.n_max), None)).collect()
        }
        None => vec![(load_query(inst)?, inst.td.as_deref().map(load_td).transpose()?)],
    };
    let single = queries.len() == 1 && a.random.is_none();
    for (i, (query, td)) in queries.iter().enumerate() {
        let truth = match oracle_solve(query, limit) {
            Ok(t) => t,
            Err(e) if single => return Err(e.into()),
            Err(_) => {
                report.skipped += 1;
                continue;
            }
        };
        let run = RunParams { repetitions: params.repetitions, seed: params.seed.wrapping_add(i as u64) };
        let (answer, _) = solve(query, td.as_ref(), run)?;
        report.instances += 1;
        report.oracle_yes += truth.yes as usize;
        report.solver_yes += answer.is_yes() as usize;
        match (answer.is_yes(), truth.yes) {
            (true, false) => report.false_positives += 1,
            (false, true) => report.false_negatives += 1,
            _ => {}
        }
    }
    if inst.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("problem          {}", report.problem);
        println!("instances        {} ({} skipped by oracle limits)", report.instances, report.skipped);
        println!("oracle yes       {}", report.oracle_yes);
        println!("solver yes       {}", report.solver_yes);
        println!("false positives  {}", report.false_positives);
        println!("false negatives  {}", report.false_negatives);
    }
    Ok(if report.false_positives > 0 { EXIT_FALSE_POSITIVE } else { EXIT_YES })
}

fn cmd_decompose(a: DecomposeArgs) -> Result<u8> {
    let g = load_graph(&a.graph)?.skeleton();
    let td = heuristic_decompose(&g);
    if let Some(v) = td.validate(&g).first() {
        bail!("heuristic produced an invalid decomposition: {v}");
    }
    let text = if a.json { serde_json::to_string_pretty(&td)? } else { to_pace_td(&td, g.n()) };
    match &a.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
            eprintln!("width {} with {} bags written to {}", td.width(), td.bags.len(), path.display());
        }
        None => print!("{text}"),
    }
    Ok(EXIT_YES)
}

/// Satisfying assignment by enumeration, for formulas small enough to enumerate.
fn brute_force_sat(cnf: &Cnf) -> Option<Vec<bool>> {
    (0..1u64 << cnf.vars)
        .map(|m| (0..cnf.vars).map(|v| m >> v & 1 == 1).collect::<Vec<_>>())
        .find(|a| cnf.satisfied_by(a))
}

#[derive(Serialize)]
struct GenhardReport {
    graph: PathBuf,
    decomposition: PathBuf,
    sidecar: PathBuf,
    vertices: usize,
    edges: usize,
    terminals: usize,
    target: String,
    width: usize,
    width_bound: usize,
    satisfiable: Option<bool>,
    unweighted: Option<String>,
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn cmd_genhard(a: GenhardArgs) -> Result<u8> {
    let cnf = parse_dimacs(&read(&a.cnf)?).with_context(|| format!("cannot parse {}", a.cnf.display()))?;
    let inst = gen_steiner(&cnf, a.beta)?;
    let pd = inst.path_decomposition();
    let width = pd.width();
    let g = &inst.steiner.graph;
    let assignment = if cnf.vars <= 24 { Some(brute_force_sat(&cnf)) } else { None };
    let witness = match &assignment {
        Some(Some(x)) => Some(inst.witness(&cnf, x)?),
        _ => None,
    };
    let paths = [with_suffix(&a.out, ".gr"), with_suffix(&a.out, ".td"), with_suffix(&a.out, ".json")];
    fs::write(&paths[0], to_pace_gr(g))?;
    fs::write(&paths[1], to_pace_td(&pd.to_tree(), g.n()))?;
    fs::write(&paths[2], serde_json::to_string_pretty(&inst.sidecar(witness, width))?)?;
    let unweighted = match a.unweighted_cap {
        None => None,
        Some(cap) => Some(match to_unweighted(&inst.steiner, &pd, cap) {
            Ok(u) => {
                let gr = with_suffix(&a.out, ".unweighted.gr");
                fs::write(&gr, to_pace_gr(&u.graph))?;
                fs::write(with_suffix(&a.out, ".unweighted.td"), to_pace_td(&u.decomposition.to_tree(), u.graph.n()))?;
                format!("{} vertices, budget {} edges", u.graph.n(), u.budget)
            }
            Err(e) => format!("skipped: {e}"),
        }),
    };
    let report = GenhardReport {
        graph: paths[0].clone(),
        decomposition: paths[1].clone(),
        sidecar: paths[2].clone(),
        vertices: g.n(),
        edges: g.m(),
        terminals: inst.steiner.terminals.len(),
        target: inst.steiner.target.to_string(),
        width,
        width_bound: inst.width_bound(),
        satisfiable: assignment.map(|x| x.is_some()),
        unweighted,
    };
    if a.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("{}", inst.params);
        println!("vertices {}  edges {}  terminals {}", report.vertices, report.edges, report.terminals);
        println!("target   {}", report.target);
        println!("width    {} (bound {})", report.width, report.width_bound);
        if let Some(s) = report.satisfiable {
            println!("formula  {}", if s { "satisfiable, witness in sidecar" } else { "unsatisfiable" });
        }
        if let Some(u) = &report.unweighted {
            println!("unit     {u}");
        }
        for p in &paths {
            println!("wrote    {}", p.display());
        }
    }
    Ok(EXIT_YES)
}

/// `t`-th power of a path on `n` vertices: `i ~ j` iff `0 < |i − j| < t`. Its natural path
/// decomposition has bags of exactly `t` vertices.
fn banded(n: usize, t: usize) -> (Vec<(usize, usize)>, PathDecomposition) {
    let edges = (0..n).flat_map(|i| (i + 1..n.min(i + t)).map(move |j| (i, j))).collect();
    let bags = (0..=n - t).map(|i| (i..i + t).collect()).collect();
    (edges, PathDecomposition { bags })
}

fn bench_query(problem: Problem, n: usize, edges: &[(usize, usize)]) -> Result<Query> {
    let undirected = UndirectedGraph::new(n, edges.to_vec(), false)?;
    let arcs: Vec<(usize, usize)> = edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
    let directed = DirectedGraph::new(n, arcs)?;
    let mut p = Params::default();
    match problem {
        Problem::Steiner => {
            p.terminals = vec![0, n - 1];
            p.k = Some(n);
        }
        Problem::Cvc | Problem::Cds | Problem::Coct | Problem::Fvs | Problem::Cfvs => p.k = Some(n / 2),
        Problem::CycleCover | Problem::DirectedCycleCover => {
            p.k = Some(1);
            p.l = Some(n);
        }
        Problem::MinCycleCover | Problem::DirectedMinCycleCover => p.k = Some(1),
        Problem::LongestPath | Problem::DirectedLongestPath => p.k = Some(n - 1),
        Problem::GraphTsp => p.k = Some(2 * n),
        Problem::KLeafSpanningTree => p.k = Some(2),
        Problem::KLeafOutbranching => {
            p.root = Some(0);
            p.k = Some(2);
        }
        Problem::FullDegreeSpanningTree => p.k = Some(1),
        Problem::HamiltonianCycle | Problem::DirectedHamiltonianCycle => {}
    }
    Ok(Query::build(problem, Some(undirected), Some(directed), &p)?)
}

#[derive(Serialize)]
struct BenchRow {
    bag: usize,
    vertices: usize,
    alphabet: usize,
    /// Coloring-axis length at the largest bag.
    axis: u64,
    peak_entries: usize,
    peak_cells: usize,
    wall_ms: f64,
}

fn parse_range(text: &str) -> Result<(usize, usize)> {
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo.parse()?, hi.trim_start_matches('=').parse()?),
        None => {
            let t = text.parse()?;
            (t, t)
        }
    };
    if lo < 2 || lo > hi {
        bail!("bag range must satisfy 2 ≤ lo ≤ hi");
    }
    Ok((lo, hi))
}

fn cmd_bench(a: BenchArgs) -> Result<u8> {
    let (lo, hi) = parse_range(&a.widths).with_context(|| format!("bad --widths '{}'", a.widths))?;
    let mut rows = Vec::new();
    for t in lo..=hi {
        let n = 2 * t + 2;
        let (edges, pd) = banded(n, t);
        let query = bench_query(a.problem, n, &edges)?;
        let (_, nice) = prepare(&query, Some(&pd.to_tree()))?;
        let start = Instant::now();
        let stats = table_stats(&query, &nice, a.seed)?;
        let (bag, axis) = stats.axes.iter().copied().max_by_key(|&(b, _)| b).unwrap_or((0, 1));
        rows.push(BenchRow {
            bag,
            vertices: n,
            alphabet: stats.alphabet,
            axis,
            peak_entries: stats.peak_entries,
            peak_cells: stats.peak_cells,
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }
    if a.json {
        println!("{}", serde_json::to_string_pretty(&rows)?);
    } else {
        println!("{:>4} {:>4} {:>3} {:>10} {:>12} {:>14} {:>10}", "bag", "n", "q", "axis", "entries", "cells", "ms");
        for r in &rows {
            println!(
                "{:>4} {:>4} {:>3} {:>10} {:>12} {:>14} {:>10.2}",
                r.bag, r.vertices, r.alphabet, r.axis, r.peak_entries, r.peak_cells, r.wall_ms
            );
        }
    }
    Ok(EXIT_YES)
}
