//! Graph stores, text formats and the edge-subdivision transform.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while building, parsing or transforming graphs.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("malformed line {line}: {text}")]
    MalformedLine { line: usize, text: String },
    #[error("vertex id {id} out of range for n = {n}")]
    VertexOutOfRange { id: i64, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge count mismatch: header says {expected}, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("invalid json: {0}")]
    Json(String),
    #[error("weight of edge {edge} must be at least 1, got {weight}")]
    NonPositiveWeight { edge: usize, weight: i64 },
    #[error("weight map has {found} entries for {expected} edges")]
    WeightCountMismatch { expected: usize, found: usize },
    #[error("expected an {0} graph")]
    WrongKind(&'static str),
}

/// Simple (or, optionally, multi-) undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UndirectedGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    multigraph: bool,
}

impl UndirectedGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>, multigraph: bool) -> Result<Self, GraphError> {
        let mut seen = HashSet::new();
        let mut norm = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            check_id(u, n)?;
            check_id(v, n)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if !multigraph && !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            norm.push((u, v));
        }
        Ok(Self { n, edges: norm, multigraph })
    }

    /// Simple graph; panics on invalid input. Intended for literals in tests and generators.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        Self::new(n, edges.to_vec(), false).expect("invalid edge list")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_multigraph(&self) -> bool {
        self.multigraph
    }

    /// Neighbour lists (with repetition for parallel edges).
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Incident edge ids per vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            inc[u].push(i);
            inc[v].push(i);
        }
        inc
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.iter().any(|&(a, b)| (a == u && b == v) || (a == v && b == u))
    }

    /// Component id per vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        components_of(self.n, self.edges.iter().copied())
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().1 == 1
    }

    /// Subgraph induced by `keep`, with vertices renumbered in increasing order.
    /// Returns the subgraph and the old id of every new vertex.
    pub fn induced(&self, keep: &[bool]) -> (UndirectedGraph, Vec<usize>) {
        let mut new_id = vec![usize::MAX; self.n];
        let mut old = Vec::new();
        for v in 0..self.n {
            if keep[v] {
                new_id[v] = old.len();
                old.push(v);
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep[u] && keep[v])
            .map(|&(u, v)| (new_id[u], new_id[v]))
            .collect();
        let g = UndirectedGraph { n: old.len(), edges, multigraph: self.multigraph };
        (g, old)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> UndirectedGraph {
        let edges = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        UndirectedGraph { n: self.n, edges, multigraph: self.multigraph }
    }
}

/// Directed graph on vertices `0..n`; antiparallel arcs allowed, duplicates rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectedGraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl DirectedGraph {
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        let mut seen = HashSet::new();
        for &(u, v) in &arcs {
            check_id(u, n)?;
            check_id(v, n)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !seen.insert((u, v)) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
        }
        Ok(Self { n, arcs })
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Self {
        Self::new(n, arcs.to_vec()).expect("invalid arc list")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Underlying undirected multigraph (antiparallel arcs become parallel edges).
    pub fn underlying(&self) -> UndirectedGraph {
        UndirectedGraph { n: self.n, edges: self.arcs.clone(), multigraph: true }
    }

    /// Underlying simple undirected graph (antiparallel arcs merged).
    pub fn underlying_simple(&self) -> UndirectedGraph {
        let mut seen = HashSet::new();
        let edges = self
            .arcs
            .iter()
            .filter(|&&(u, v)| seen.insert((u.min(v), u.max(v))))
            .copied()
            .collect();
        UndirectedGraph { n: self.n, edges, multigraph: false }
    }

    pub fn permuted(&self, perm: &[usize]) -> DirectedGraph {
        let arcs = self.arcs.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        DirectedGraph { n: self.n, arcs }
    }
}

/// Either kind of graph, as produced by [`parse_graph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Graph {
    Undirected(UndirectedGraph),
    Directed(DirectedGraph),
}

impl Graph {
    pub fn n(&self) -> usize {
        match self {
            Graph::Undirected(g) => g.n(),
            Graph::Directed(g) => g.n(),
        }
    }

    pub fn into_undirected(self) -> Result<UndirectedGraph, GraphError> {
        match self {
            Graph::Undirected(g) => Ok(g),
            Graph::Directed(_) => Err(GraphError::WrongKind("undirected")),
        }
    }

    pub fn into_directed(self) -> Result<DirectedGraph, GraphError> {
        match self {
            Graph::Directed(g) => Ok(g),
            Graph::Undirected(_) => Err(GraphError::WrongKind("directed")),
        }
    }

    /// Edge list seen as undirected pairs; used by decomposition routines.
    pub fn skeleton(&self) -> UndirectedGraph {
        match self {
            Graph::Undirected(g) => g.clone(),
            Graph::Directed(g) => g.underlying_simple(),
        }
    }
}

/// Positive integer weight per edge, indexed like the edge list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeWeightMap(pub Vec<i64>);

impl EdgeWeightMap {
    pub fn uniform(m: usize, w: i64) -> Self {
        Self(vec![w; m])
    }

    pub fn get(&self, e: usize) -> i64 {
        self.0[e]
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

/// Input formats understood by [`parse_graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    PaceGr,
    EdgeListJson,
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    n: usize,
    edges: Vec<(i64, i64)>,
    #[serde(default)]
    directed: bool,
}

/// Parses a graph; vertex ids in the result are 0-based.
pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph, GraphError> {
    match format {
        GraphFormat::PaceGr => parse_pace_gr(text).map(Graph::Undirected),
        GraphFormat::EdgeListJson => parse_json(text),
    }
}

fn parse_pace_gr(text: &str) -> Result<UndirectedGraph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks[0] == "p" {
            if header.is_some() || toks.len() != 4 || toks[1] != "tw" {
                return Err(GraphError::MalformedHeader(line.to_string()));
            }
            let n = toks[2].parse().map_err(|_| GraphError::MalformedHeader(line.to_string()))?;
            let m = toks[3].parse().map_err(|_| GraphError::MalformedHeader(line.to_string()))?;
            header = Some((n, m));
            continue;
        }
        let (n, _) = header.ok_or_else(|| GraphError::MalformedHeader("missing 'p tw n m' line".into()))?;
        if toks.len() != 2 {
            return Err(GraphError::MalformedLine { line: lineno + 1, text: line.to_string() });
        }
        let mut ids = [0usize; 2];
        for (slot, tok) in ids.iter_mut().zip(&toks) {
            let id: i64 = tok
                .parse()
                .map_err(|_| GraphError::MalformedLine { line: lineno + 1, text: line.to_string() })?;
            if id < 1 || id as usize > n {
                return Err(GraphError::VertexOutOfRange { id, n });
            }
            *slot = id as usize - 1;
        }
        edges.push((ids[0], ids[1]));
    }
    let (n, m) = header.ok_or_else(|| GraphError::MalformedHeader("missing 'p tw n m' line".into()))?;
    if edges.len() != m {
        return Err(GraphError::EdgeCountMismatch { expected: m, found: edges.len() });
    }
    UndirectedGraph::new(n, edges, false)
}

fn parse_json(text: &str) -> Result<Graph, GraphError> {
    let raw: JsonGraph = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
    let mut pairs = Vec::with_capacity(raw.edges.len());
    for (u, v) in raw.edges {
        for id in [u, v] {
            if id < 0 || id as usize >= raw.n {
                return Err(GraphError::VertexOutOfRange { id, n: raw.n });
            }
        }
        pairs.push((u as usize, v as usize));
    }
    if raw.directed {
        DirectedGraph::new(raw.n, pairs).map(Graph::Directed)
    } else {
        UndirectedGraph::new(raw.n, pairs, false).map(Graph::Undirected)
    }
}

/// PACE `.gr` text (1-based ids).
pub fn to_pace_gr(g: &UndirectedGraph) -> String {
    let mut out = format!("p tw {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    out
}

/// JSON edge-list text (0-based ids).
pub fn to_json(g: &Graph) -> String {
    let (n, edges, directed) = match g {
        Graph::Undirected(g) => (g.n(), g.edges(), false),
        Graph::Directed(g) => (g.n(), g.arcs(), true),
    };
    let raw = JsonGraph {
        n,
        edges: edges.iter().map(|&(u, v)| (u as i64, v as i64)).collect(),
        directed,
    };
    serde_json::to_string(&raw).expect("serializable")
}

/// Result of replacing every edge by a path.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub graph: UndirectedGraph,
    /// `origin[i]` is the original edge of new vertex `n + i`.
    pub origin: Vec<usize>,
    /// Internal path vertices of each original edge, ordered from its first to its second endpoint.
    pub paths: Vec<Vec<usize>>,
}

/// Replaces every edge `e` of weight `c(e)` by a path with `c(e) - 1` new internal vertices.
pub fn subdivide_weighted(g: &UndirectedGraph, w: &EdgeWeightMap) -> Result<Subdivision, GraphError> {
    if w.0.len() != g.m() {
        return Err(GraphError::WeightCountMismatch { expected: g.m(), found: w.0.len() });
    }
    for (e, &c) in w.0.iter().enumerate() {
        if c < 1 {
            return Err(GraphError::NonPositiveWeight { edge: e, weight: c });
        }
    }
    let mut next = g.n();
    let mut edges = Vec::new();
    let mut origin = Vec::new();
    let mut paths = Vec::with_capacity(g.m());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let inner: Vec<usize> = (0..(w.0[e] - 1) as usize).map(|i| next + i).collect();
        next += inner.len();
        origin.extend(std::iter::repeat(e).take(inner.len()));
        let mut prev = u;
        for &x in &inner {
            edges.push((prev, x));
            prev = x;
        }
        edges.push((prev, v));
        paths.push(inner);
    }
    let graph = UndirectedGraph { n: next, edges, multigraph: g.is_multigraph() };
    Ok(Subdivision { graph, origin, paths })
}

/// Component labels for an edge list over `0..n`.
pub fn components_of(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> (Vec<usize>, usize) {
    let mut adj = vec![Vec::new(); n];
    for (u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if comp[y] == usize::MAX {
                    comp[y] = count;
                    queue.push_back(y);
                }
            }
        }
        count += 1;
    }
    (comp, count)
}

fn check_id(id: usize, n: usize) -> Result<(), GraphError> {
    if id >= n {
        Err(GraphError::VertexOutOfRange { id: id as i64, n })
    } else {
        Ok(())
    }
}
