//! Iterative-compression solvers with explicit solutions: Feedback Vertex Set in `3^k`,
//! Connected Vertex Cover in `2^k` and Connected Feedback Vertex Set in `3^k`.
//!
//! Every compression step holds a hull `B` that meets every cycle (or edge), so `G − B` has a
//! width-1 decomposition and `B` can sit in every bag. The Constrained CountC tables are then
//! evaluated once per core evaluation `s̄: B → Σ` with `B` pinned, which keeps each pass to
//! polynomially many live cells, and the parities are summed over all core evaluations.

use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use crate::decomposition::{make_nice, NiceTreeDecomposition, TreeDecomposition};
use crate::engine::dp::{self, Recurrence};
use crate::engine::{amplified_solve, sample_weights, universe};
use crate::error::{Result, SolveError};
use crate::graph::UndirectedGraph;
use crate::oracle::{induces_connected, is_feedback_vertex_set, is_vertex_cover};
use crate::vertex::{CfvsRec, CvcRec, ForestBounds, FvsRec, RunParams};

/// Outcome of a compression solver; a returned set has passed the deterministic checker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FptAnswer {
    Yes(Vec<usize>),
    Unknown,
}

impl FptAnswer {
    pub fn is_yes(&self) -> bool {
        matches!(self, FptAnswer::Yes(_))
    }
}

/// Work counters collected over a whole run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FptStats {
    /// Compression steps that needed the CountC machinery.
    pub compressions: usize,
    /// Constrained queries issued (tests plus reconstruction).
    pub queries: usize,
    /// Pinned dynamic-programming passes.
    pub core_evaluations: usize,
    /// Largest hull `|B|` seen.
    pub max_core: usize,
    /// Most core evaluations in one sweep, with the hull size of that sweep.
    pub max_sweep: (usize, usize),
    /// Largest number of live table cells (entries times weight range) in one pass.
    pub peak_cells: usize,
    /// Polynomial cap `nodes · q² · accumulator range · weight range` enforced on every pass.
    pub cell_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FptReport {
    pub answer: FptAnswer,
    pub stats: FptStats,
}

/// Decomposition of `g` of width `|core| + 1`: a width-1 decomposition of the forest `g − core`
/// with `core` added to every bag.
pub fn core_decomposition(g: &UndirectedGraph, core: &[usize]) -> Result<TreeDecomposition> {
    let n = g.n();
    let mut in_core = vec![false; n];
    for &v in core {
        in_core[v] = true;
    }
    let adj = g.adjacency();
    let mut bag_of = vec![usize::MAX; n];
    let mut bags: Vec<Vec<usize>> = Vec::new();
    let mut tree = Vec::new();
    let mut last_root: Option<usize> = None;
    for s in 0..n {
        if in_core[s] || bag_of[s] != usize::MAX {
            continue;
        }
        bags.push(vec![s]);
        bag_of[s] = bags.len() - 1;
        if let Some(r) = last_root {
            tree.push((r, bag_of[s]));
        }
        last_root = Some(bag_of[s]);
        let mut queue = VecDeque::from([(s, usize::MAX)]);
        while let Some((u, from)) = queue.pop_front() {
            for &w in &adj[u] {
                if in_core[w] || w == from {
                    continue;
                }
                if bag_of[w] != usize::MAX {
                    return Err(SolveError::InvalidInstance("hull leaves a cycle behind".into()));
                }
                bags.push(vec![w.min(u), w.max(u)]);
                bag_of[w] = bags.len() - 1;
                tree.push((bag_of[u], bag_of[w]));
                queue.push_back((w, u));
            }
        }
    }
    if bags.is_empty() {
        bags.push(Vec::new());
    }
    let td = TreeDecomposition { bags, tree, root: Some(0) };
    Ok(td.with_extra(core))
}

/// Parent links of a BFS spanning forest of `g[core]`, listed parents first.
fn core_forest(g: &UndirectedGraph, core: &[usize]) -> Vec<(usize, Option<usize>)> {
    let mut in_core = vec![false; g.n()];
    for &v in core {
        in_core[v] = true;
    }
    let adj = g.adjacency();
    let mut seen = vec![false; g.n()];
    let mut order = Vec::with_capacity(core.len());
    for &s in core {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        order.push((s, None));
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if in_core[w] && !seen[w] {
                    seen[w] = true;
                    order.push((w, Some(u)));
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// Core evaluations of `rec` over `core`. With `tree_rule`, a vertex of the spanning forest of
/// `g[core]` only takes states its parent's edge admits; otherwise every introducible state.
fn core_evaluations<R: Recurrence>(
    rec: &R,
    g: &UndirectedGraph,
    core: &[usize],
    tree_rule: bool,
) -> Vec<Vec<(usize, u8)>> {
    let order: Vec<(usize, Option<usize>)> = if tree_rule {
        core_forest(g, core)
    } else {
        core.iter().map(|&v| (v, None)).collect()
    };
    let mut introducible = FxHashMap::default();
    for &(v, _) in &order {
        let mut buf = Vec::new();
        rec.introduce(v, &mut buf);
        let states: Vec<u8> = buf.into_iter().map(|(s, _)| s).collect();
        introducible.insert(v, states);
    }
    let mut done = Vec::new();
    let mut partial: Vec<(usize, u8)> = Vec::with_capacity(order.len());
    let mut states_at = FxHashMap::default();
    extend(rec, &order, &introducible, &mut states_at, &mut partial, &mut done);
    done
}

fn extend<R: Recurrence>(
    rec: &R,
    order: &[(usize, Option<usize>)],
    introducible: &FxHashMap<usize, Vec<u8>>,
    states_at: &mut FxHashMap<usize, u8>,
    partial: &mut Vec<(usize, u8)>,
    done: &mut Vec<Vec<(usize, u8)>>,
) {
    let Some(&(v, parent)) = order.get(partial.len()) else {
        done.push(partial.clone());
        return;
    };
    let mut buf = Vec::new();
    for &s in &introducible[&v] {
        if let Some(p) = parent {
            buf.clear();
            rec.edge(0, p, v, states_at[&p], s, &mut buf);
            if buf.is_empty() {
                continue;
            }
        }
        states_at.insert(v, s);
        partial.push((v, s));
        extend(rec, order, introducible, states_at, partial, done);
        partial.pop();
    }
    states_at.remove(&v);
}

/// Root table summed over every core evaluation, one pinned pass each.
fn sweep<R: Recurrence>(
    rec: &R,
    g: &UndirectedGraph,
    nice: &NiceTreeDecomposition,
    core: &[usize],
    tree_rule: bool,
    stats: &mut FptStats,
) -> FxHashMap<Vec<usize>, Vec<u64>> {
    let evaluations = core_evaluations(rec, g, core, tree_rule);
    let q = rec.alphabet();
    let acc_range: usize = rec.accumulators().iter().map(|a| a.max + 1).product();
    let bound = nice.nodes.len() * q * q * acc_range * (rec.max_weight() + 1);
    stats.cell_bound = stats.cell_bound.max(bound);
    stats.max_core = stats.max_core.max(core.len());
    if evaluations.len() > stats.max_sweep.0 {
        stats.max_sweep = (evaluations.len(), core.len());
    }
    let mut merged: FxHashMap<Vec<usize>, Vec<u64>> = FxHashMap::default();
    let mut pins = vec![None; g.n()];
    for eval in &evaluations {
        for &(v, s) in eval {
            pins[v] = Some(s);
        }
        let out = dp::run(rec, nice, Some(&pins));
        stats.core_evaluations += 1;
        stats.peak_cells = stats.peak_cells.max(out.stats.peak_cells);
        assert!(
            out.stats.peak_cells <= bound,
            "pinned pass kept {} cells, above the polynomial cap {bound}",
            out.stats.peak_cells
        );
        for (acc, poly) in out.root {
            let slot = merged.entry(acc).or_insert_with(|| vec![0; poly.len()]);
            for (a, b) in slot.iter_mut().zip(&poly) {
                *a ^= b;
            }
        }
    }
    merged
}

fn odd_where(root: &FxHashMap<Vec<usize>, Vec<u64>>, pred: impl Fn(&[usize]) -> bool) -> bool {
    root.iter().any(|(acc, p)| pred(acc) && p.iter().any(|&x| x != 0))
}

fn mask(n: usize, set: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in set {
        m[v] = true;
    }
    m
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Fvs,
    Cvc,
    Cfvs,
}

impl Kind {
    fn valid(self, g: &UndirectedGraph, set: &[usize]) -> bool {
        match self {
            Kind::Fvs => is_feedback_vertex_set(g, set),
            Kind::Cvc => is_vertex_cover(g, set) && induces_connected(g, set),
            Kind::Cfvs => is_feedback_vertex_set(g, set) && induces_connected(g, set),
        }
    }
}

/// One constrained query: is there a solution `Y ⊇ required` with `|Y| ≤ k` in `g`, given a
/// valid hull `core` of `g`.
fn query(
    kind: Kind,
    g: &UndirectedGraph,
    core: &[usize],
    required: &[usize],
    k: usize,
    seed: u64,
    params: RunParams,
    stats: &mut FptStats,
) -> Result<bool> {
    stats.queries += 1;
    let n = g.n();
    if required.len() > k {
        return Ok(false);
    }
    let nice = make_nice(&core_decomposition(g, core)?, g)?;
    let req = mask(n, required);
    let answer = amplified_solve(params.repetitions, seed, |s| match kind {
        Kind::Fvs => {
            if k >= n {
                return Ok(true);
            }
            let omega = sample_weights(universe::vertex_tags(n, 2), s)?;
            let a = n - k;
            let rec = FvsRec { omega: &omega, required: &req, bounds: ForestBounds::for_size(a) };
            let root = sweep(&rec, g, &nice, core, false, stats);
            Ok(odd_where(&root, |acc| acc[0] == a && acc[1] + acc[2] == a))
        }
        Kind::Cvc => {
            if k == 0 {
                return Ok(g.m() == 0 && required.is_empty());
            }
            let omega = sample_weights(universe::vertices(n), s)?;
            let choices: Vec<usize> = match required.iter().min() {
                Some(&v) => vec![v],
                None => match g.edges().first() {
                    Some(&(u, v)) => vec![u, v],
                    None => return Ok(true),
                },
            };
            for v1 in choices {
                let rec = CvcRec { omega: omega.values(), required: &req, v1, k };
                let root = sweep(&rec, g, &nice, core, true, stats);
                if odd_where(&root, |acc| acc[0] >= 1) {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Kind::Cfvs => {
            if required.is_empty() && is_feedback_vertex_set(g, &[]) {
                return Ok(true);
            }
            if k == 0 {
                return Ok(false);
            }
            let omega = sample_weights(universe::vertex_tags(n, 2), s)?;
            let choices: Vec<usize> = match required.iter().min() {
                Some(&v) => vec![v],
                None => (0..n).collect(),
            };
            for v1 in choices {
                let rec = CfvsRec { omega: &omega, required: &req, v1, bounds: ForestBounds::for_size(n - 1) };
                let root = sweep(&rec, g, &nice, core, true, stats);
                if odd_where(&root, |acc| acc[0] + k >= n && acc[1] + acc[2] == acc[0]) {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    })?;
    Ok(answer.is_yes())
}

/// Compression step: given a valid hull `core` of `g`, find a solution of size at most `k`.
fn compress(
    kind: Kind,
    g: &UndirectedGraph,
    core: &[usize],
    k: usize,
    seed: &mut u64,
    params: RunParams,
    stats: &mut FptStats,
) -> Result<Option<Vec<usize>>> {
    stats.compressions += 1;
    *seed = seed.wrapping_add(1);
    if !query(kind, g, core, &[], k, *seed, params, stats)? {
        return Ok(None);
    }
    // grow K one vertex at a time while a solution containing K is still certified
    let mut chosen: Vec<usize> = Vec::new();
    for v in 0..g.n() {
        if kind.valid(g, &chosen) {
            break;
        }
        if chosen.len() == k {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(v);
        *seed = seed.wrapping_add(1);
        if query(kind, g, core, &trial, k, *seed, params, stats)? {
            chosen = trial;
        }
    }
    Ok(kind.valid(g, &chosen).then_some(chosen))
}

fn finish(kind: Kind, g: &UndirectedGraph, k: usize, solution: Option<Vec<usize>>, stats: FptStats) -> FptReport {
    let answer = match solution {
        Some(mut s) => {
            s.sort_unstable();
            assert!(s.len() <= k && kind.valid(g, &s), "compression produced an invalid solution");
            FptAnswer::Yes(s)
        }
        None => FptAnswer::Unknown,
    };
    FptReport { answer, stats }
}

/// Feedback Vertex Set of size at most `k`, compressing along the prefixes `G[{0, …, i}]`.
pub fn fvs_3k(g: &UndirectedGraph, k: usize, params: RunParams) -> Result<FptReport> {
    let mut stats = FptStats::default();
    let mut seed = params.seed;
    if is_feedback_vertex_set(g, &[]) {
        return Ok(finish(Kind::Fvs, g, k, Some(Vec::new()), stats));
    }
    let mut solution: Vec<usize> = Vec::new();
    for i in 1..=g.n() {
        let edges: Vec<(usize, usize)> = g.edges().iter().copied().filter(|&(u, v)| u < i && v < i).collect();
        let gi = UndirectedGraph::from_edges(i, &edges);
        let mut hull = solution.clone();
        hull.push(i - 1);
        if hull.len() <= k {
            solution = hull;
            continue;
        }
        match compress(Kind::Fvs, &gi, &hull, k, &mut seed, params, &mut stats)? {
            Some(s) => solution = s,
            None => return Ok(finish(Kind::Fvs, g, k, None, stats)),
        }
    }
    Ok(finish(Kind::Fvs, g, k, Some(solution), stats))
}

/// Contraction sequence along a BFS spanning tree: `order[j]` is the vertex at position `j`,
/// `parent[j] < j` its tree parent's position.
struct Contraction {
    order: Vec<usize>,
    parent: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

impl Contraction {
    fn new(g: &UndirectedGraph) -> Result<Self> {
        let n = g.n();
        if !g.is_connected() {
            return Err(SolveError::InvalidInstance("input graph must be connected".into()));
        }
        let adj = g.adjacency();
        let mut pos = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut parent = Vec::with_capacity(n);
        if n > 0 {
            pos[0] = 0;
            order.push(0);
            parent.push(0);
            let mut head = 0;
            while head < order.len() {
                let u = order[head];
                for &w in &adj[u] {
                    if pos[w] == usize::MAX {
                        pos[w] = order.len();
                        order.push(w);
                        parent.push(head);
                    }
                }
                head += 1;
            }
        }
        let edges = g.edges().iter().map(|&(u, v)| (pos[u], pos[v])).collect();
        Ok(Contraction { order, parent, edges })
    }

    /// `G_i`: positions `≥ i` contracted into their nearest ancestor below `i`.
    fn graph(&self, i: usize) -> UndirectedGraph {
        let rep = |mut x: usize| {
            while x >= i {
                x = self.parent[x];
            }
            x
        };
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (rep(u), rep(v));
                (a.min(b), a.max(b))
            })
            .filter(|&(a, b)| a != b)
            .collect();
        edges.sort_unstable();
        edges.dedup();
        UndirectedGraph::from_edges(i, &edges)
    }
}

fn contraction_solve(kind: Kind, g: &UndirectedGraph, k: usize, params: RunParams) -> Result<FptReport> {
    let mut stats = FptStats::default();
    let mut seed = params.seed;
    let seq = Contraction::new(g)?;
    if kind == Kind::Cfvs && is_feedback_vertex_set(g, &[]) {
        return Ok(finish(kind, g, k, Some(Vec::new()), stats));
    }
    let n = g.n();
    let mut solution: Vec<usize> = Vec::new();
    for i in 1..n {
        let next = seq.graph(i + 1);
        // the contracted vertex splits back into the tree edge (parent, i)
        let mut hull = solution.clone();
        hull.push(seq.parent[i]);
        hull.push(i);
        hull.sort_unstable();
        hull.dedup();
        if hull.len() <= k && kind.valid(&next, &hull) {
            solution = hull;
            continue;
        }
        match compress(kind, &next, &hull, k, &mut seed, params, &mut stats)? {
            Some(s) => solution = s,
            None => return Ok(finish(kind, g, k, None, stats)),
        }
    }
    let original = solution.into_iter().map(|p| seq.order[p]).collect();
    Ok(finish(kind, g, k, Some(original), stats))
}

/// Connected Vertex Cover of size at most `k` on a connected graph, compressing along edge
/// contractions of a spanning tree.
pub fn cvc_2k(g: &UndirectedGraph, k: usize, params: RunParams) -> Result<FptReport> {
    contraction_solve(Kind::Cvc, g, k, params)
}

/// Connected Feedback Vertex Set of size at most `k` on a connected graph.
pub fn cfvs_3k(g: &UndirectedGraph, k: usize, params: RunParams) -> Result<FptReport> {
    contraction_solve(Kind::Cfvs, g, k, params)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> UndirectedGraph {
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        UndirectedGraph::from_edges(n, &edges)
    }

    const P: RunParams = RunParams { repetitions: 12, seed: 3 };

    #[test]
    fn triangle_needs_one_vertex() {
        let r = fvs_3k(&cycle(3), 1, P).unwrap();
        assert!(matches!(&r.answer, FptAnswer::Yes(s) if s.len() == 1));
        assert_eq!(fvs_3k(&cycle(3), 0, P).unwrap().answer, FptAnswer::Unknown);
    }

    #[test]
    fn disjoint_triangles_need_two() {
        let g = UndirectedGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert_eq!(fvs_3k(&g, 1, P).unwrap().answer, FptAnswer::Unknown);
        assert!(fvs_3k(&g, 2, P).unwrap().answer.is_yes());
    }

    #[test]
    fn connected_vertex_cover_examples() {
        let edge = UndirectedGraph::from_edges(2, &[(0, 1)]);
        assert!(cvc_2k(&edge, 1, P).unwrap().answer.is_yes());
        // the two size-2 covers of C4 are opposite pairs, so three vertices are needed
        assert_eq!(crate::oracle::cvc_min(&cycle(4), &[], Default::default()).unwrap(), Some(3));
        assert_eq!(cvc_2k(&cycle(4), 2, P).unwrap().answer, FptAnswer::Unknown);
        let r = cvc_2k(&cycle(4), 3, P).unwrap();
        assert!(matches!(&r.answer, FptAnswer::Yes(s) if s.len() == 3));
        assert_eq!(cvc_2k(&cycle(6), 3, P).unwrap().answer, FptAnswer::Unknown);
        assert!(cvc_2k(&cycle(6), 5, P).unwrap().answer.is_yes());
    }

    #[test]
    fn connected_feedback_examples() {
        let pendant = UndirectedGraph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]);
        assert!(cfvs_3k(&pendant, 1, P).unwrap().answer.is_yes());
        let path = UndirectedGraph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(cfvs_3k(&path, 0, P).unwrap().answer, FptAnswer::Yes(vec![]));
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let g = UndirectedGraph::from_edges(3, &[(0, 1)]);
        assert!(cvc_2k(&g, 1, P).is_err());
        assert!(cfvs_3k(&g, 1, P).is_err());
    }

    #[test]
    fn core_decomposition_validates() {
        let g = UndirectedGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]);
        let td = core_decomposition(&g, &[0, 3]).unwrap();
        assert!(td.validate(&g).is_empty());
        assert!(td.width() <= 3);
        assert!(core_decomposition(&g, &[0]).is_err());
    }
}
