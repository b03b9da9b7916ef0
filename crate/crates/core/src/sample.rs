//! Random instance generators for sweeps and tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{DirectedGraph, UndirectedGraph};
use crate::problem::{Params, Problem, Query};

/// Erdős–Rényi graph with edge probability `p`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> UndirectedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    UndirectedGraph::from_edges(n, &edges)
}

/// Random spanning tree plus `extra` random chords.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, extra: usize) -> UndirectedGraph {
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((u, v));
    }
    for _ in 0..extra {
        if n < 2 {
            break;
        }
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        let e = (u.min(v), u.max(v));
        if u != v && !edges.iter().any(|&(a, b)| (a.min(b), a.max(b)) == e) {
            edges.push(e);
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    UndirectedGraph::from_edges(n, &edges).permuted(&perm)
}

/// Random digraph: each ordered pair independently with probability `p`.
pub fn random_digraph<R: Rng>(rng: &mut R, n: usize, p: f64) -> DirectedGraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                arcs.push((u, v));
            }
        }
    }
    DirectedGraph::from_arcs(n, &arcs)
}

/// Random subset where each element is kept with probability `p`.
pub fn random_subset<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}

/// Entry points with an oracle counterpart; Hamiltonian and min-cover wrappers reduce to PCC.
pub const ENTRY_POINTS: [Problem; 14] = [
    Problem::Steiner,
    Problem::Cvc,
    Problem::Cds,
    Problem::Coct,
    Problem::Fvs,
    Problem::Cfvs,
    Problem::CycleCover,
    Problem::DirectedCycleCover,
    Problem::LongestPath,
    Problem::DirectedLongestPath,
    Problem::GraphTsp,
    Problem::KLeafSpanningTree,
    Problem::KLeafOutbranching,
    Problem::FullDegreeSpanningTree,
];

/// Random instance of `problem` on at most `n_max` vertices with parameters in the valid range.
pub fn random_query<R: Rng>(rng: &mut R, problem: Problem, n_max: usize) -> Query {
    let directed = problem.directed();
    let n_min = match problem {
        Problem::KLeafSpanningTree => 3,
        Problem::LongestPath | Problem::DirectedLongestPath => 2,
        _ => 1,
    };
    let n = rng.gen_range(n_min..=n_max);
    let connected_only = matches!(
        problem,
        Problem::Steiner | Problem::GraphTsp | Problem::KLeafSpanningTree | Problem::FullDegreeSpanningTree
    );
    let undirected = if directed {
        None
    } else if connected_only && rng.gen_bool(0.85) {
        let extra = rng.gen_range(0..=n);
        Some(random_connected_graph(rng, n, extra))
    } else {
        let p = rng.gen_range(0.2..0.6);
        Some(random_graph(rng, n, p))
    };
    let digraph = if directed {
        let p = rng.gen_range(0.2..0.5);
        Some(random_digraph(rng, n, p))
    } else {
        None
    };
    let mut params = Params::default();
    match problem {
        Problem::Steiner => {
            let mut t = random_subset(rng, n, 0.35);
            if t.is_empty() {
                t.push(rng.gen_range(0..n));
            }
            let lo = t.len();
            params.k = Some(rng.gen_range(lo..=n.min(lo + 4)));
            params.terminals = t;
        }
        Problem::Cvc | Problem::Cds | Problem::Coct | Problem::Fvs | Problem::Cfvs => {
            params.required = random_subset(rng, n, 0.15);
            params.k = Some(rng.gen_range(0..=n));
        }
        Problem::CycleCover | Problem::DirectedCycleCover => {
            params.l = Some(rng.gen_range(0..=n));
            params.k = Some(rng.gen_range(0..=3));
        }
        Problem::LongestPath | Problem::DirectedLongestPath => {
            params.k = Some(rng.gen_range(0..n));
        }
        Problem::GraphTsp => {
            params.k = Some(rng.gen_range(0..=2 * n));
        }
        Problem::KLeafSpanningTree => {
            params.k = Some(rng.gen_range(2..n));
        }
        Problem::KLeafOutbranching => {
            params.root = Some(rng.gen_range(0..n));
            params.k = Some(rng.gen_range(1..=n));
        }
        Problem::FullDegreeSpanningTree => {
            params.k = Some(rng.gen_range(0..=n));
        }
        Problem::MinCycleCover | Problem::DirectedMinCycleCover => {
            params.k = Some(rng.gen_range(0..=3));
        }
        Problem::HamiltonianCycle | Problem::DirectedHamiltonianCycle => {}
    }
    Query::build(problem, undirected, digraph, &params).expect("generated parameters are valid")
}
