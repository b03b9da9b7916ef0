//! Uniform description of every supported problem and a single dispatcher to its solver.

use std::fmt;
use std::str::FromStr;

use crate::decomposition::{heuristic_decompose, make_nice_edges, NiceTreeDecomposition, TreeDecomposition};
use crate::edge::{self, DirectedPccRec, FullDegreeRec, KLeafRec, OutbranchingRec, PccRec, TspRec};
use crate::engine::dp::{self, DpStats};
use crate::engine::{sample_weights, universe, MonteCarloAnswer};
use crate::error::{Result, SolveError};
use crate::graph::{DirectedGraph, UndirectedGraph};
use crate::vertex::{self, CdsRec, CfvsRec, CoctRec, ConnectedProblem, CvcRec, ForestBounds, FvsRec, RunParams, SteinerRec};

/// Problem names accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Problem {
    Steiner,
    Cvc,
    Cds,
    Coct,
    Fvs,
    Cfvs,
    CycleCover,
    DirectedCycleCover,
    HamiltonianCycle,
    DirectedHamiltonianCycle,
    MinCycleCover,
    DirectedMinCycleCover,
    LongestPath,
    DirectedLongestPath,
    GraphTsp,
    KLeafSpanningTree,
    KLeafOutbranching,
    FullDegreeSpanningTree,
}

impl Problem {
    pub const ALL: [Problem; 18] = [
        Problem::Steiner,
        Problem::Cvc,
        Problem::Cds,
        Problem::Coct,
        Problem::Fvs,
        Problem::Cfvs,
        Problem::CycleCover,
        Problem::DirectedCycleCover,
        Problem::HamiltonianCycle,
        Problem::DirectedHamiltonianCycle,
        Problem::MinCycleCover,
        Problem::DirectedMinCycleCover,
        Problem::LongestPath,
        Problem::DirectedLongestPath,
        Problem::GraphTsp,
        Problem::KLeafSpanningTree,
        Problem::KLeafOutbranching,
        Problem::FullDegreeSpanningTree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Problem::Steiner => "steiner",
            Problem::Cvc => "cvc",
            Problem::Cds => "cds",
            Problem::Coct => "coct",
            Problem::Fvs => "fvs",
            Problem::Cfvs => "cfvs",
            Problem::CycleCover => "pcc",
            Problem::DirectedCycleCover => "dpcc",
            Problem::HamiltonianCycle => "hamcycle",
            Problem::DirectedHamiltonianCycle => "dhamcycle",
            Problem::MinCycleCover => "mincyclecover",
            Problem::DirectedMinCycleCover => "dmincyclecover",
            Problem::LongestPath => "longestpath",
            Problem::DirectedLongestPath => "dlongestpath",
            Problem::GraphTsp => "gmtsp",
            Problem::KLeafSpanningTree => "kleaf",
            Problem::KLeafOutbranching => "outbranching",
            Problem::FullDegreeSpanningTree => "fulldegree",
        }
    }

    /// Whether the input graph is read as a digraph.
    pub fn directed(self) -> bool {
        matches!(
            self,
            Problem::DirectedCycleCover
                | Problem::DirectedHamiltonianCycle
                | Problem::DirectedMinCycleCover
                | Problem::DirectedLongestPath
                | Problem::KLeafOutbranching
        )
    }

    /// Coloring alphabet size of the underlying dynamic program.
    pub fn alphabet(self) -> usize {
        match self {
            Problem::Steiner | Problem::Cvc | Problem::Fvs => 3,
            Problem::DirectedCycleCover
            | Problem::DirectedHamiltonianCycle
            | Problem::DirectedMinCycleCover
            | Problem::DirectedLongestPath
            | Problem::KLeafOutbranching => 6,
            _ => 4,
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = SolveError;

    fn from_str(s: &str) -> Result<Self> {
        Problem::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| SolveError::InvalidInstance(format!("unknown problem '{s}'")))
    }
}

/// Instance parameters gathered from the command line before a [`Query`] is formed.
#[derive(Clone, Debug, Default)]
pub struct Params {
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub terminals: Vec<usize>,
    pub required: Vec<usize>,
    pub root: Option<usize>,
}

/// A problem instance in the form every solver and the oracle accept.
#[derive(Clone, Debug)]
pub enum Query {
    Steiner { graph: UndirectedGraph, terminals: Vec<usize>, k: usize },
    Cvc { graph: UndirectedGraph, required: Vec<usize>, k: usize },
    Cds { graph: UndirectedGraph, required: Vec<usize>, k: usize },
    Coct { graph: UndirectedGraph, required: Vec<usize>, k: usize },
    Fvs { graph: UndirectedGraph, required: Vec<usize>, k: usize },
    Cfvs { graph: UndirectedGraph, required: Vec<usize>, k: usize },
    /// At most `k` vertex-disjoint cycles covering exactly `l` vertices.
    CycleCover { graph: UndirectedGraph, k: usize, l: usize },
    DirectedCycleCover { graph: DirectedGraph, k: usize, l: usize },
    /// A simple path with `k` edges.
    LongestPath { graph: UndirectedGraph, k: usize },
    DirectedLongestPath { graph: DirectedGraph, k: usize },
    /// A closed walk of length at most `k` through every vertex.
    GraphTsp { graph: UndirectedGraph, k: usize },
    /// A spanning tree with exactly `k` leaves.
    KLeafSpanningTree { graph: UndirectedGraph, k: usize },
    /// An out-branching from `root` with exactly `k` leaves.
    KLeafOutbranching { graph: DirectedGraph, root: usize, k: usize },
    /// A spanning tree with exactly `k` full-degree vertices.
    FullDegreeSpanningTree { graph: UndirectedGraph, k: usize },
}

fn need(value: Option<usize>, flag: &str, problem: Problem) -> Result<usize> {
    value.ok_or_else(|| SolveError::InvalidInstance(format!("{problem} needs --{flag}")))
}

impl Query {
    /// Builds the query for `problem`; undirected problems take `undirected`, directed ones `directed`.
    pub fn build(
        problem: Problem,
        undirected: Option<UndirectedGraph>,
        directed: Option<DirectedGraph>,
        p: &Params,
    ) -> Result<Query> {
        let ug = || undirected.clone().ok_or_else(|| SolveError::InvalidInstance(format!("{problem} needs an undirected graph")));
        let dg = || directed.clone().ok_or_else(|| SolveError::InvalidInstance(format!("{problem} needs a directed graph")));
        Ok(match problem {
            Problem::Steiner => Query::Steiner { graph: ug()?, terminals: p.terminals.clone(), k: need(p.k, "k", problem)? },
            Problem::Cvc => Query::Cvc { graph: ug()?, required: p.required.clone(), k: need(p.k, "k", problem)? },
            Problem::Cds => Query::Cds { graph: ug()?, required: p.required.clone(), k: need(p.k, "k", problem)? },
            Problem::Coct => Query::Coct { graph: ug()?, required: p.required.clone(), k: need(p.k, "k", problem)? },
            Problem::Fvs => Query::Fvs { graph: ug()?, required: p.required.clone(), k: need(p.k, "k", problem)? },
            Problem::Cfvs => Query::Cfvs { graph: ug()?, required: p.required.clone(), k: need(p.k, "k", problem)? },
            Problem::CycleCover => {
                Query::CycleCover { graph: ug()?, k: need(p.k, "k", problem)?, l: need(p.l, "l", problem)? }
            }
            Problem::DirectedCycleCover => {
                Query::DirectedCycleCover { graph: dg()?, k: need(p.k, "k", problem)?, l: need(p.l, "l", problem)? }
            }
            Problem::HamiltonianCycle => {
                let graph = ug()?;
                let l = graph.n();
                Query::CycleCover { graph, k: 1, l }
            }
            Problem::DirectedHamiltonianCycle => {
                let graph = dg()?;
                let l = graph.n();
                Query::DirectedCycleCover { graph, k: 1, l }
            }
            Problem::MinCycleCover => {
                let graph = ug()?;
                let l = graph.n();
                Query::CycleCover { graph, k: need(p.k, "k", problem)?, l }
            }
            Problem::DirectedMinCycleCover => {
                let graph = dg()?;
                let l = graph.n();
                Query::DirectedCycleCover { graph, k: need(p.k, "k", problem)?, l }
            }
            Problem::LongestPath => Query::LongestPath { graph: ug()?, k: need(p.k, "k", problem)? },
            Problem::DirectedLongestPath => Query::DirectedLongestPath { graph: dg()?, k: need(p.k, "k", problem)? },
            Problem::GraphTsp => Query::GraphTsp { graph: ug()?, k: need(p.k, "k", problem)? },
            Problem::KLeafSpanningTree => Query::KLeafSpanningTree { graph: ug()?, k: need(p.k, "k", problem)? },
            Problem::KLeafOutbranching => Query::KLeafOutbranching {
                graph: dg()?,
                root: need(p.root, "root", problem)?,
                k: need(p.k, "k", problem)?,
            },
            Problem::FullDegreeSpanningTree => {
                Query::FullDegreeSpanningTree { graph: ug()?, k: need(p.k, "k", problem)? }
            }
        })
    }

    /// Vertex count of the instance graph.
    pub fn n(&self) -> usize {
        self.skeleton().n()
    }

    /// Undirected simple graph a tree decomposition must cover.
    pub fn skeleton(&self) -> UndirectedGraph {
        match self {
            Query::DirectedCycleCover { graph, .. }
            | Query::DirectedLongestPath { graph, .. }
            | Query::KLeafOutbranching { graph, .. } => graph.underlying_simple(),
            Query::Steiner { graph, .. }
            | Query::Cvc { graph, .. }
            | Query::Cds { graph, .. }
            | Query::Coct { graph, .. }
            | Query::Fvs { graph, .. }
            | Query::Cfvs { graph, .. }
            | Query::CycleCover { graph, .. }
            | Query::LongestPath { graph, .. }
            | Query::GraphTsp { graph, .. }
            | Query::KLeafSpanningTree { graph, .. }
            | Query::FullDegreeSpanningTree { graph, .. } => graph.clone(),
        }
    }

    /// Edge list introduced by the nice decomposition (arcs for directed problems).
    fn edge_list(&self) -> Vec<(usize, usize)> {
        match self {
            Query::DirectedCycleCover { graph, .. }
            | Query::DirectedLongestPath { graph, .. }
            | Query::KLeafOutbranching { graph, .. } => graph.arcs().to_vec(),
            _ => self.skeleton().edges().to_vec(),
        }
    }

    /// Coloring alphabet size of the solver's dynamic program.
    pub fn alphabet(&self) -> usize {
        match self {
            Query::Steiner { .. } | Query::Cvc { .. } | Query::Fvs { .. } => 3,
            Query::DirectedCycleCover { .. } | Query::DirectedLongestPath { .. } | Query::KLeafOutbranching { .. } => 6,
            _ => 4,
        }
    }
}

/// Runs the Cut&Count solver for `query`. Without a decomposition the min-degree heuristic is used.
/// Returns the answer and the width of the decomposition the dynamic program ran on.
pub fn solve(query: &Query, td: Option<&TreeDecomposition>, params: RunParams) -> Result<(MonteCarloAnswer, usize)> {
    let (td, nice) = prepare(query, td)?;
    let width = nice.width();
    let answer = match query {
        Query::Steiner { graph, terminals, k } => vertex::steiner(graph, terminals, *k, &nice, params)?,
        Query::Cvc { graph, required, k } => {
            vertex::connected(ConnectedProblem::Cvc, graph, required, *k, &nice, params)?
        }
        Query::Cds { graph, required, k } => {
            vertex::connected(ConnectedProblem::Cds, graph, required, *k, &nice, params)?
        }
        Query::Coct { graph, required, k } => {
            vertex::connected(ConnectedProblem::Coct, graph, required, *k, &nice, params)?
        }
        Query::Fvs { graph, required, k } => vertex::fvs(graph, required, *k, &nice, params)?,
        Query::Cfvs { graph, required, k } => vertex::cfvs(graph, required, *k, &nice, params)?,
        Query::CycleCover { graph, k, l } => edge::cycle_cover(graph, *k, *l, &nice, params)?,
        Query::DirectedCycleCover { graph, k, l } => edge::directed_cycle_cover(graph, *k, *l, &nice, params)?,
        Query::LongestPath { graph, k } => edge::longest_path(graph, *k, &td, params)?,
        Query::DirectedLongestPath { graph, k } => edge::longest_path_directed(graph, *k, &td, params)?,
        Query::GraphTsp { graph, k } => edge::graph_tsp(graph, *k, &nice, params)?,
        Query::KLeafSpanningTree { graph, k } => edge::k_leaf_spanning_tree(graph, *k, &nice, params)?,
        Query::KLeafOutbranching { graph, root, k } => edge::k_leaf_outbranching(graph, *root, *k, &nice, params)?,
        Query::FullDegreeSpanningTree { graph, k } => edge::full_degree_spanning_tree(graph, *k, &nice, params)?,
    };
    let width = match query {
        Query::LongestPath { .. } | Query::DirectedLongestPath { .. } => width + 2,
        _ => width,
    };
    Ok((answer, width))
}

/// Validates `td` (or builds the heuristic one) and derives the nice decomposition over the
/// query's edge list.
pub fn prepare(query: &Query, td: Option<&TreeDecomposition>) -> Result<(TreeDecomposition, NiceTreeDecomposition)> {
    let skeleton = query.skeleton();
    let td = match td {
        Some(td) => td.clone(),
        None => heuristic_decompose(&skeleton),
    };
    let edges = query.edge_list();
    if let Some(v) = td.validate_edges(skeleton.n(), &edges).first() {
        return Err(SolveError::Decomposition(v.to_string()));
    }
    let nice = make_nice_edges(&td, skeleton.n(), &edges)?;
    Ok((td, nice))
}

fn membership(n: usize, set: &[usize]) -> Result<Vec<bool>> {
    let mut m = vec![false; n];
    for &v in set {
        *m.get_mut(v).ok_or_else(|| SolveError::InvalidInstance(format!("vertex {v} out of range")))? = true;
    }
    Ok(m)
}

/// Runs the query's counting table once on `nice` with weights drawn from `seed` and returns its
/// structural record. Longest path reports the cycle-cover table it reduces to.
pub fn table_stats(query: &Query, nice: &NiceTreeDecomposition, seed: u64) -> Result<DpStats> {
    let n = query.n();
    let v1 = 0;
    let stats = match query {
        Query::Steiner { terminals, k, .. } => {
            let omega = sample_weights(universe::vertices(n), seed)?;
            let terminal = membership(n, terminals)?;
            let v1 = terminals.iter().copied().min().unwrap_or(0);
            dp::run(&SteinerRec { omega: omega.values(), terminal: &terminal, v1, k: *k }, nice, None).stats
        }
        Query::Cvc { required, k, .. } => {
            let omega = sample_weights(universe::vertices(n), seed)?;
            let required = membership(n, required)?;
            dp::run(&CvcRec { omega: omega.values(), required: &required, v1, k: *k }, nice, None).stats
        }
        Query::Cds { required, k, .. } => {
            let omega = sample_weights(universe::vertices(n), seed)?;
            let required = membership(n, required)?;
            dp::run(&CdsRec { omega: omega.values(), required: &required, v1, k: *k }, nice, None).stats
        }
        Query::Coct { required, k, .. } => {
            let omega = sample_weights(universe::vertex_tags(n, 2), seed)?;
            let required = membership(n, required)?;
            dp::run(&CoctRec { omega: &omega, required: &required, v1, k: *k }, nice, None).stats
        }
        Query::Fvs { required, k, .. } => {
            let omega = sample_weights(universe::vertex_tags(n, 2), seed)?;
            let required = membership(n, required)?;
            let a = n.saturating_sub(*k);
            dp::run(&FvsRec { omega: &omega, required: &required, bounds: ForestBounds::for_size(a) }, nice, None).stats
        }
        Query::Cfvs { required, k, .. } => {
            let omega = sample_weights(universe::vertex_tags(n, 2), seed)?;
            let required = membership(n, required)?;
            let bounds = ForestBounds::for_size(n.saturating_sub(*k));
            dp::run(&CfvsRec { omega: &omega, required: &required, v1, bounds }, nice, None).stats
        }
        Query::CycleCover { graph, k, l } => {
            let omega = sample_weights(universe::edge_tags(graph.m(), 2), seed)?;
            dp::run(&PccRec { omega: &omega, markers: *k, l: *l }, nice, None).stats
        }
        Query::LongestPath { graph, .. } => {
            let omega = sample_weights(universe::edge_tags(graph.m(), 2), seed)?;
            dp::run(&PccRec { omega: &omega, markers: 1, l: n }, nice, None).stats
        }
        Query::DirectedCycleCover { graph, k, l } => {
            let omega = sample_weights(universe::edge_tags(graph.m(), 2), seed)?;
            dp::run(&DirectedPccRec { omega: &omega, markers: *k, l: *l }, nice, None).stats
        }
        Query::DirectedLongestPath { graph, .. } => {
            let omega = sample_weights(universe::edge_tags(graph.m(), 2), seed)?;
            dp::run(&DirectedPccRec { omega: &omega, markers: 1, l: n }, nice, None).stats
        }
        Query::GraphTsp { graph, k } => {
            let omega = sample_weights(universe::edge_tags(graph.m(), 2), seed)?;
            dp::run(&TspRec { omega: &omega, v1, budget: *k }, nice, None).stats
        }
        Query::KLeafSpanningTree { graph, .. } => {
            let omega = sample_weights(universe::edges(graph.m()), seed)?;
            let rec = KLeafRec { omega: omega.values(), n_max: omega.n_max(), v1, n };
            dp::run(&rec, nice, None).stats
        }
        Query::KLeafOutbranching { graph, root, .. } => {
            let omega = sample_weights(universe::arcs(graph.m()), seed)?;
            let rec = OutbranchingRec { omega: omega.values(), n_max: omega.n_max(), root: *root, n };
            dp::run(&rec, nice, None).stats
        }
        Query::FullDegreeSpanningTree { graph, k } => {
            let omega = sample_weights(universe::edges(graph.m()), seed)?;
            let rec = FullDegreeRec { omega: omega.values(), n_max: omega.n_max(), v1, n, k: *k };
            dp::run(&rec, nice, None).stats
        }
    };
    Ok(stats)
}
