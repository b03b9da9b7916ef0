//! Brute-force reference answers by direct enumeration of the problem definitions.
//!
//! Nothing here shares code with the Cut&Count solvers: vertex problems enumerate vertex
//! subsets, edge problems enumerate edge subsets (pruned only by degree caps), and the walk
//! problem enumerates multiplicity vectors.

use crate::error::{Result, SolveError};
use crate::graph::{DirectedGraph, UndirectedGraph};
use crate::problem::Query;

/// Instance size limits enforced before any enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimit {
    pub max_n: usize,
    pub max_edges: usize,
}

impl Default for OracleLimit {
    fn default() -> Self {
        OracleLimit { max_n: 14, max_edges: 22 }
    }
}

impl OracleLimit {
    fn check(&self, n: usize, m: Option<usize>) -> Result<()> {
        if n > self.max_n || n > 30 {
            return Err(SolveError::OracleLimit(format!("{n} vertices exceed the limit of {}", self.max_n)));
        }
        if let Some(m) = m {
            if m > self.max_edges {
                return Err(SolveError::OracleLimit(format!("{m} edges exceed the limit of {}", self.max_edges)));
            }
        }
        Ok(())
    }
}

fn adjacency_masks(n: usize, edges: &[(usize, usize)]) -> Vec<u32> {
    let mut adj = vec![0u32; n];
    for &(u, v) in edges {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

fn set_mask(n: usize, set: &[usize]) -> Result<u32> {
    let mut m = 0u32;
    for &v in set {
        if v >= n {
            return Err(SolveError::InvalidInstance(format!("vertex {v} out of range")));
        }
        m |= 1 << v;
    }
    Ok(m)
}

/// Whether `G[set]` is connected; the empty set counts as connected.
fn connected_mask(adj: &[u32], set: u32) -> bool {
    if set == 0 {
        return true;
    }
    let start = set & set.wrapping_neg();
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & set & !seen;
        seen |= new;
        frontier |= new;
    }
    seen == set
}

fn components_mask(adj: &[u32], set: u32) -> usize {
    let mut left = set;
    let mut count = 0;
    while left != 0 {
        let start = left & left.wrapping_neg();
        let mut seen = start;
        let mut frontier = start;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = adj[v] & set & !seen;
            seen |= new;
            frontier |= new;
        }
        left &= !seen;
        count += 1;
    }
    count
}

fn edges_inside(adj: &[u32], set: u32) -> usize {
    let mut total = 0;
    let mut s = set;
    while s != 0 {
        let v = s.trailing_zeros() as usize;
        s &= s - 1;
        total += (adj[v] & set).count_ones() as usize;
    }
    total / 2
}

fn is_forest_mask(adj: &[u32], set: u32) -> bool {
    edges_inside(adj, set) + components_mask(adj, set) == set.count_ones() as usize
}

fn is_bipartite_mask(adj: &[u32], set: u32) -> bool {
    let mut side = [u8::MAX; 32];
    let mut left = set;
    while left != 0 {
        let s = left.trailing_zeros() as usize;
        side[s] = 0;
        let mut stack = vec![s];
        left &= !(1 << s);
        while let Some(u) = stack.pop() {
            let mut nb = adj[u] & set;
            while nb != 0 {
                let w = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    left &= !(1 << w);
                    stack.push(w);
                } else if side[w] == side[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Smallest `|X|` over vertex sets `X ⊇ required` satisfying `ok`, or `None`.
fn min_subset(n: usize, required: u32, ok: impl Fn(u32) -> bool) -> Option<usize> {
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut best: Option<usize> = None;
    let mut x = 0u32;
    loop {
        if x & required == required {
            let size = x.count_ones() as usize;
            if best.map_or(true, |b| size < b) && ok(x) {
                best = Some(size);
            }
        }
        if x == full {
            break;
        }
        x += 1;
    }
    best
}

/// Minimum number of vertices of a connected subgraph containing every terminal.
pub fn steiner_min(g: &UndirectedGraph, terminals: &[usize], limit: OracleLimit) -> Result<Option<usize>> {
    limit.check(g.n(), None)?;
    let t = set_mask(g.n(), terminals)?;
    let adj = adjacency_masks(g.n(), g.edges());
    Ok(min_subset(g.n(), t, |x| connected_mask(&adj, x)))
}

/// Minimum connected vertex cover containing `required`.
pub fn cvc_min(g: &UndirectedGraph, required: &[usize], limit: OracleLimit) -> Result<Option<usize>> {
    limit.check(g.n(), None)?;
    let s = set_mask(g.n(), required)?;
    let adj = adjacency_masks(g.n(), g.edges());
    let edges = g.edges().to_vec();
    Ok(min_subset(g.n(), s, |x| {
        edges.iter().all(|&(u, v)| x & (1 << u) != 0 || x & (1 << v) != 0) && connected_mask(&adj, x)
    }))
}

/// Minimum connected dominating set containing `required`.
pub fn cds_min(g: &UndirectedGraph, required: &[usize], limit: OracleLimit) -> Result<Option<usize>> {
    limit.check(g.n(), None)?;
    let n = g.n();
    let s = set_mask(n, required)?;
    let adj = adjacency_masks(n, g.edges());
    let full: u32 = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    Ok(min_subset(n, s, |x| {
        let mut dom = x;
        let mut r = x;
        while r != 0 {
            let v = r.trailing_zeros() as usize;
            r &= r - 1;
            dom |= adj[v];
        }
        dom == full && connected_mask(&adj, x)
    }))
}

/// Minimum connected odd cycle transversal containing `required`.
pub fn coct_min(g: &UndirectedGraph, required: &[usize], limit: OracleLimit) -> Result<Option<usize>> {
    limit.check(g.n(), None)?;
    let n = g.n();
    let s = set_mask(n, required)?;
    let adj = adjacency_masks(n, g.edges());
    let full: u32 = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    Ok(min_subset(n, s, |x| is_bipartite_mask(&adj, full & !x) && connected_mask(&adj, x)))
}

/// Minimum feedback vertex set containing `required`.
pub fn fvs_min(g: &UndirectedGraph, required: &[usize], limit: OracleLimit) -> Result<Option<usize>> {
    limit.check(g.n(), None)?;
    let n = g.n();
    let s = set_mask(n, required)?;
    let adj = adjacency_masks(n, g.edges());
    let full: u32 = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    Ok(min_subset(n, s, |x| is_forest_mask(&adj, full & !x)))
}

/// Minimum connected feedback vertex set containing `required`.
pub fn cfvs_min(g: &UndirectedGraph, required: &[usize], limit: OracleLimit) -> Result<Option<usize>> {
    limit.check(g.n(), None)?;
    let n = g.n();
    let s = set_mask(n, required)?;
    let adj = adjacency_masks(n, g.edges());
    let full: u32 = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    Ok(min_subset(n, s, |x| is_forest_mask(&adj, full & !x) && connected_mask(&adj, x)))
}

/// Whether a vertex set is a feedback vertex set.
pub fn is_feedback_vertex_set(g: &UndirectedGraph, set: &[usize]) -> bool {
    let mut removed = vec![false; g.n()];
    for &v in set {
        removed[v] = true;
    }
    let kept: Vec<(usize, usize)> = g.edges().iter().copied().filter(|&(u, v)| !removed[u] && !removed[v]).collect();
    let alive = removed.iter().filter(|&&r| !r).count();
    // removed vertices are isolated, one component each
    let (_, count) = crate::graph::components_of(g.n(), kept.iter().copied());
    kept.len() + count - (g.n() - alive) == alive
}

/// Whether `G[set]` is connected (the empty set counts as connected).
pub fn induces_connected(g: &UndirectedGraph, set: &[usize]) -> bool {
    let mut keep = vec![false; g.n()];
    for &v in set {
        keep[v] = true;
    }
    let (h, _) = g.induced(&keep);
    h.n() == 0 || h.is_connected()
}

/// Whether a vertex set covers every edge.
pub fn is_vertex_cover(g: &UndirectedGraph, set: &[usize]) -> bool {
    let mut inside = vec![false; g.n()];
    for &v in set {
        inside[v] = true;
    }
    g.edges().iter().all(|&(u, v)| inside[u] || inside[v])
}

// ---------------------------------------------------------------------------------------------
// Edge-subset enumeration.

/// Visits every edge subset in which each vertex has degree at most `cap`.
fn for_each_capped(n: usize, edges: &[(usize, usize)], cap: usize, mut visit: impl FnMut(&[bool], &[usize])) {
    fn rec(
        i: usize,
        edges: &[(usize, usize)],
        cap: usize,
        chosen: &mut Vec<bool>,
        deg: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[bool], &[usize]),
    ) {
        if i == edges.len() {
            visit(chosen, deg);
            return;
        }
        rec(i + 1, edges, cap, chosen, deg, visit);
        let (u, v) = edges[i];
        if deg[u] < cap && deg[v] < cap {
            deg[u] += 1;
            deg[v] += 1;
            chosen[i] = true;
            rec(i + 1, edges, cap, chosen, deg, visit);
            chosen[i] = false;
            deg[u] -= 1;
            deg[v] -= 1;
        }
    }
    let mut chosen = vec![false; edges.len()];
    let mut deg = vec![0; n];
    rec(0, edges, cap, &mut chosen, &mut deg, &mut visit);
}

fn chosen_edges(edges: &[(usize, usize)], chosen: &[bool]) -> Vec<(usize, usize)> {
    edges.iter().zip(chosen).filter(|(_, &c)| c).map(|(&e, _)| e).collect()
}

fn nontrivial_components(n: usize, edges: &[(usize, usize)]) -> usize {
    let (_, count) = crate::graph::components_of(n, edges.iter().copied());
    let mut touched = vec![false; n];
    for &(u, v) in edges {
        touched[u] = true;
        touched[v] = true;
    }
    count - touched.iter().filter(|&&t| !t).count()
}

/// `table[ℓ]` = fewest vertex-disjoint cycles covering exactly `ℓ` vertices (`Some(0)` at `ℓ = 0`).
pub fn cycle_cover_table(g: &UndirectedGraph, limit: OracleLimit) -> Result<Vec<Option<usize>>> {
    limit.check(g.n(), Some(g.m()))?;
    let n = g.n();
    let mut table = vec![None; n + 1];
    for_each_capped(n, g.edges(), 2, |chosen, deg| {
        if deg.iter().any(|&d| d == 1) {
            return;
        }
        let x = chosen_edges(g.edges(), chosen);
        let covered = deg.iter().filter(|&&d| d == 2).count();
        let cycles = nontrivial_components(n, &x);
        let slot: &mut Option<usize> = &mut table[covered];
        if slot.map_or(true, |c| cycles < c) {
            *slot = Some(cycles);
        }
    });
    Ok(table)
}

/// Directed analogue of [`cycle_cover_table`]: every covered vertex has in- and out-degree one.
pub fn directed_cycle_cover_table(g: &DirectedGraph, limit: OracleLimit) -> Result<Vec<Option<usize>>> {
    limit.check(g.n(), Some(g.m()))?;
    let n = g.n();
    let arcs = g.arcs();
    let mut table = vec![None; n + 1];
    fn rec(
        i: usize,
        arcs: &[(usize, usize)],
        chosen: &mut Vec<bool>,
        outd: &mut Vec<bool>,
        ind: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[bool], &[bool], &[bool]),
    ) {
        if i == arcs.len() {
            visit(chosen, outd, ind);
            return;
        }
        rec(i + 1, arcs, chosen, outd, ind, visit);
        let (u, v) = arcs[i];
        if !outd[u] && !ind[v] {
            outd[u] = true;
            ind[v] = true;
            chosen[i] = true;
            rec(i + 1, arcs, chosen, outd, ind, visit);
            chosen[i] = false;
            outd[u] = false;
            ind[v] = false;
        }
    }
    let mut visit = |chosen: &[bool], outd: &[bool], ind: &[bool]| {
        if outd != ind {
            return;
        }
        let x = chosen_edges(arcs, chosen);
        let covered = outd.iter().filter(|&&b| b).count();
        let cycles = nontrivial_components(n, &x);
        let slot: &mut Option<usize> = &mut table[covered];
        if slot.map_or(true, |c| cycles < c) {
            *slot = Some(cycles);
        }
    };
    rec(0, arcs, &mut vec![false; arcs.len()], &mut vec![false; n], &mut vec![false; n], &mut visit);
    Ok(table)
}

/// Number of edges on a longest simple path (0 for a single vertex, `None` for an empty graph).
pub fn longest_path_undirected(g: &UndirectedGraph, limit: OracleLimit) -> Result<Option<usize>> {
    limit.check(g.n(), None)?;
    let adj = g.adjacency();
    Ok(longest_path(g.n(), &adj))
}

/// Number of arcs on a longest simple directed path.
pub fn longest_path_directed(g: &DirectedGraph, limit: OracleLimit) -> Result<Option<usize>> {
    limit.check(g.n(), None)?;
    let mut adj = vec![Vec::new(); g.n()];
    for &(u, v) in g.arcs() {
        adj[u].push(v);
    }
    Ok(longest_path(g.n(), &adj))
}

fn longest_path(n: usize, adj: &[Vec<usize>]) -> Option<usize> {
    fn dfs(v: usize, adj: &[Vec<usize>], seen: &mut Vec<bool>, len: usize, best: &mut usize) {
        *best = (*best).max(len);
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                dfs(w, adj, seen, len + 1, best);
                seen[w] = false;
            }
        }
    }
    if n == 0 {
        return None;
    }
    let mut best = 0;
    let mut seen = vec![false; n];
    for s in 0..n {
        seen[s] = true;
        dfs(s, adj, &mut seen, 0, &mut best);
        seen[s] = false;
        if best + 1 == n {
            break;
        }
    }
    Some(best)
}

/// Length of a shortest closed walk visiting every vertex, via multiplicity vectors
/// `φ ∈ {0,1,2}^E` whose support is connected and spanning with all degrees even.
/// `None` if the graph is disconnected.
pub fn graph_tsp_min(g: &UndirectedGraph, limit: OracleLimit) -> Result<Option<usize>> {
    limit.check(g.n(), Some(g.m()))?;
    let n = g.n();
    if n == 0 || !g.is_connected() {
        return Ok(None);
    }
    if n == 1 {
        return Ok(Some(0));
    }
    let edges = g.edges();
    let mut best = 2 * (n - 1);
    let mut phi = vec![0u8; edges.len()];
    let mut parity = vec![false; n];
    fn rec(
        i: usize,
        sum: usize,
        n: usize,
        edges: &[(usize, usize)],
        phi: &mut Vec<u8>,
        parity: &mut Vec<bool>,
        best: &mut usize,
    ) {
        if sum >= *best {
            return;
        }
        if i == edges.len() {
            if parity.iter().any(|&p| p) {
                return;
            }
            let support: Vec<(usize, usize)> =
                edges.iter().zip(phi.iter()).filter(|(_, &c)| c > 0).map(|(&e, _)| e).collect();
            let (_, count) = crate::graph::components_of(n, support.iter().copied());
            if count == 1 {
                *best = sum;
            }
            return;
        }
        let (u, v) = edges[i];
        for c in 0..=2u8 {
            phi[i] = c;
            if c == 1 {
                parity[u] ^= true;
                parity[v] ^= true;
            }
            rec(i + 1, sum + c as usize, n, edges, phi, parity, best);
            if c == 1 {
                parity[u] ^= true;
                parity[v] ^= true;
            }
        }
        phi[i] = 0;
    }
    rec(0, 0, n, edges, &mut phi, &mut parity, &mut best);
    Ok(Some(best))
}

/// Visits every spanning tree of a connected graph (as an edge-choice vector).
fn for_each_spanning_tree(n: usize, edges: &[(usize, usize)], mut visit: impl FnMut(&[bool])) {
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        r
    }
    fn rec(
        i: usize,
        left: usize,
        edges: &[(usize, usize)],
        parent: &mut Vec<usize>,
        chosen: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[bool]),
    ) {
        if left == 0 {
            visit(chosen);
            return;
        }
        if edges.len() - i < left {
            return;
        }
        let (u, v) = edges[i];
        let (ru, rv) = (find(parent, u), find(parent, v));
        if ru != rv {
            parent[ru] = rv;
            chosen[i] = true;
            rec(i + 1, left - 1, edges, parent, chosen, visit);
            chosen[i] = false;
            parent[ru] = ru;
        }
        rec(i + 1, left, edges, parent, chosen, visit);
    }
    if n == 0 {
        return;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    let mut chosen = vec![false; edges.len()];
    rec(0, n - 1, edges, &mut parent, &mut chosen, &mut visit);
}

/// `out[k]` iff some spanning tree has exactly `k` leaves (degree-one vertices).
pub fn spanning_tree_leaf_counts(g: &UndirectedGraph, limit: OracleLimit) -> Result<Vec<bool>> {
    limit.check(g.n(), Some(g.m()))?;
    let n = g.n();
    let mut out = vec![false; n + 1];
    for_each_spanning_tree(n, g.edges(), |chosen| {
        let mut deg = vec![0usize; n];
        for (&(u, v), &c) in g.edges().iter().zip(chosen) {
            if c {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        out[deg.iter().filter(|&&d| d == 1).count()] = true;
    });
    Ok(out)
}

/// `out[k]` iff some spanning tree keeps the full degree of exactly `k` vertices.
pub fn full_degree_counts(g: &UndirectedGraph, limit: OracleLimit) -> Result<Vec<bool>> {
    limit.check(g.n(), Some(g.m()))?;
    let n = g.n();
    let mut out = vec![false; n + 1];
    for_each_spanning_tree(n, g.edges(), |chosen| {
        let mut deg = vec![0usize; n];
        for (&(u, v), &c) in g.edges().iter().zip(chosen) {
            if c {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        out[(0..n).filter(|&v| deg[v] == g.degree(v)).count()] = true;
    });
    Ok(out)
}

/// `out[k]` iff some spanning out-tree rooted at `root` has exactly `k` vertices of
/// out-degree zero.
pub fn outbranching_leaf_counts(g: &DirectedGraph, root: usize, limit: OracleLimit) -> Result<Vec<bool>> {
    limit.check(g.n(), Some(g.m()))?;
    let n = g.n();
    if root >= n {
        return Err(SolveError::InvalidInstance(format!("root {root} out of range")));
    }
    let mut incoming = vec![Vec::new(); n];
    for &(u, v) in g.arcs() {
        incoming[v].push(u);
    }
    let mut out = vec![false; n + 1];
    let mut parent = vec![usize::MAX; n];
    fn rec(v: usize, root: usize, incoming: &[Vec<usize>], parent: &mut Vec<usize>, out: &mut Vec<bool>) {
        let n = incoming.len();
        if v == n {
            // every vertex must reach the root through parents
            for s in 0..n {
                let mut x = s;
                let mut steps = 0;
                while x != root {
                    x = parent[x];
                    steps += 1;
                    if steps > n {
                        return;
                    }
                }
            }
            let mut has_child = vec![false; n];
            for (x, &p) in parent.iter().enumerate() {
                if x != root {
                    has_child[p] = true;
                }
            }
            out[has_child.iter().filter(|&&c| !c).count()] = true;
            return;
        }
        if v == root {
            rec(v + 1, root, incoming, parent, out);
            return;
        }
        for &u in &incoming[v] {
            parent[v] = u;
            rec(v + 1, root, incoming, parent, out);
        }
        parent[v] = usize::MAX;
    }
    rec(0, root, &incoming, &mut parent, &mut out);
    Ok(out)
}

// ---------------------------------------------------------------------------------------------
// Uniform entry point.

/// Exact answer plus the optimum where the problem has one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleAnswer {
    pub yes: bool,
    pub optimum: Option<usize>,
}

fn at_most(opt: Option<usize>, k: usize) -> OracleAnswer {
    OracleAnswer { yes: opt.is_some_and(|o| o <= k), optimum: opt }
}

fn exact(flags: Vec<bool>, k: usize) -> OracleAnswer {
    OracleAnswer { yes: flags.get(k).copied().unwrap_or(false), optimum: None }
}

/// Decides a query by enumeration.
pub fn oracle_solve(query: &Query, limit: OracleLimit) -> Result<OracleAnswer> {
    Ok(match query {
        Query::Steiner { graph, terminals, k } => at_most(steiner_min(graph, terminals, limit)?, *k),
        Query::Cvc { graph, required, k } => at_most(cvc_min(graph, required, limit)?, *k),
        Query::Cds { graph, required, k } => at_most(cds_min(graph, required, limit)?, *k),
        Query::Coct { graph, required, k } => at_most(coct_min(graph, required, limit)?, *k),
        Query::Fvs { graph, required, k } => at_most(fvs_min(graph, required, limit)?, *k),
        Query::Cfvs { graph, required, k } => at_most(cfvs_min(graph, required, limit)?, *k),
        Query::CycleCover { graph, k, l } => {
            let t = cycle_cover_table(graph, limit)?;
            at_most(t.get(*l).copied().flatten(), *k)
        }
        Query::DirectedCycleCover { graph, k, l } => {
            let t = directed_cycle_cover_table(graph, limit)?;
            at_most(t.get(*l).copied().flatten(), *k)
        }
        Query::LongestPath { graph, k } => {
            let best = longest_path_undirected(graph, limit)?;
            OracleAnswer { yes: best.is_some_and(|b| b >= *k), optimum: best }
        }
        Query::DirectedLongestPath { graph, k } => {
            let best = longest_path_directed(graph, limit)?;
            OracleAnswer { yes: best.is_some_and(|b| b >= *k), optimum: best }
        }
        Query::GraphTsp { graph, k } => at_most(graph_tsp_min(graph, limit)?, *k),
        Query::KLeafSpanningTree { graph, k } => exact(spanning_tree_leaf_counts(graph, limit)?, *k),
        Query::KLeafOutbranching { graph, root, k } => exact(outbranching_leaf_counts(graph, *root, limit)?, *k),
        Query::FullDegreeSpanningTree { graph, k } => exact(full_degree_counts(graph, limit)?, *k),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> UndirectedGraph {
        UndirectedGraph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>())
    }

    fn cycle(n: usize) -> UndirectedGraph {
        UndirectedGraph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    #[test]
    fn steiner_on_path() {
        assert_eq!(steiner_min(&path(3), &[0, 2], OracleLimit::default()).unwrap(), Some(3));
    }

    #[test]
    fn hamiltonian_cycle_on_c5() {
        let t = cycle_cover_table(&cycle(5), OracleLimit::default()).unwrap();
        assert_eq!(t[5], Some(1));
        assert_eq!(t[3], None);
    }

    #[test]
    fn tsp_on_tree_and_cycle() {
        let l = OracleLimit::default();
        assert_eq!(graph_tsp_min(&path(4), l).unwrap(), Some(6));
        assert_eq!(graph_tsp_min(&cycle(5), l).unwrap(), Some(5));
    }

    #[test]
    fn leaf_counts_of_star_and_path() {
        let star = UndirectedGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let l = OracleLimit::default();
        assert_eq!(spanning_tree_leaf_counts(&star, l).unwrap(), vec![false, false, false, false, true, false]);
        assert!(spanning_tree_leaf_counts(&path(4), l).unwrap()[2]);
    }

    #[test]
    fn full_degree_on_cycle() {
        let c = full_degree_counts(&cycle(6), OracleLimit::default()).unwrap();
        assert!(c[4] && !c[6] && !c[5]);
    }

    #[test]
    fn outbranching_of_directed_path() {
        let g = DirectedGraph::from_arcs(4, &[(0, 1), (1, 2), (2, 3)]);
        let c = outbranching_leaf_counts(&g, 0, OracleLimit::default()).unwrap();
        assert_eq!(c, vec![false, true, false, false, false]);
    }

    #[test]
    fn limits_are_enforced() {
        let limit = OracleLimit { max_n: 3, max_edges: 2 };
        assert!(matches!(steiner_min(&path(4), &[0], limit), Err(SolveError::OracleLimit(_))));
        assert!(matches!(cycle_cover_table(&cycle(3), limit), Err(SolveError::OracleLimit(_))));
    }
}
