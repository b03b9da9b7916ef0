//! Instance generators and small helpers shared by the integration tests.
#![allow(dead_code, unused_imports)]

use cutcount::decomposition::{heuristic_decompose, make_nice, make_nice_edges, NiceTreeDecomposition};
use cutcount::graph::{DirectedGraph, UndirectedGraph};
pub use cutcount::sample::{
    random_connected_graph, random_digraph, random_graph, random_query, random_subset, ENTRY_POINTS,
};

/// Nice decomposition from the min-degree heuristic.
pub fn nice(g: &UndirectedGraph) -> NiceTreeDecomposition {
    make_nice(&heuristic_decompose(g), g).expect("heuristic decomposition is valid")
}

/// Nice decomposition of a digraph, one edge introduction per arc.
pub fn nice_directed(g: &DirectedGraph) -> NiceTreeDecomposition {
    let skeleton = g.underlying_simple();
    make_nice_edges(&heuristic_decompose(&skeleton), g.n(), g.arcs()).expect("heuristic decomposition is valid")
}

/// All subsets of `0..n` as bitmasks.
pub fn masks(n: usize) -> std::ops::Range<u32> {
    0..(1u32 << n)
}

pub fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

