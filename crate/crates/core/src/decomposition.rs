//! Tree and path decompositions: validation, nicification, a min-degree heuristic,
//! PACE `.td` I/O and the path decomposition of a subdivided graph.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeWeightMap, GraphError, UndirectedGraph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("invalid decomposition: {0}")]
    Invalid(String),
    #[error("malformed .td input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A single failed decomposition axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    VertexOutOfRange { bag: usize, vertex: usize },
    VertexUncovered(usize),
    EdgeUncovered(usize, usize),
    DisconnectedOccurrence(usize),
    NotATree,
    BadRoot(usize),
    Node { node: usize, reason: String },
    EdgeIntroduced { edge: usize, times: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexOutOfRange { bag, vertex } => write!(f, "bag {bag} holds unknown vertex {vertex}"),
            Violation::VertexUncovered(v) => write!(f, "vertex {v} is in no bag"),
            Violation::EdgeUncovered(u, v) => write!(f, "edge {u}-{v} is covered by no bag"),
            Violation::DisconnectedOccurrence(v) => write!(f, "bags containing vertex {v} are not connected"),
            Violation::NotATree => write!(f, "bag graph is not a tree"),
            Violation::BadRoot(r) => write!(f, "root {r} is not a bag"),
            Violation::Node { node, reason } => write!(f, "node {node}: {reason}"),
            Violation::EdgeIntroduced { edge, times } => write!(f, "edge {edge} introduced {times} times"),
        }
    }
}

/// Bags connected by a tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub tree: Vec<(usize, usize)>,
    pub root: Option<usize>,
}

/// Bags in path order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDecomposition {
    pub bags: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeKind {
    Leaf,
    IntroduceVertex(usize),
    /// Edge id into the edge list the decomposition was built for, with its endpoints.
    IntroduceEdge { edge: usize, u: usize, v: usize },
    Forget(usize),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiceNode {
    pub kind: NodeKind,
    pub children: Vec<usize>,
    /// Sorted bag contents.
    pub bag: Vec<usize>,
}

/// Nice tree decomposition; `nodes` is in bottom-up order (children precede parents).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
    pub root: usize,
}

fn width_of(bags: &[Vec<usize>]) -> usize {
    bags.iter().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        width_of(&self.bags)
    }

    pub fn validate(&self, g: &UndirectedGraph) -> Vec<Violation> {
        check_axioms(&self.bags, &self.tree, self.root, g.n(), g.edges())
    }

    /// Validation against an explicit edge list (arcs of a directed graph, or a multigraph).
    pub fn validate_edges(&self, n: usize, edges: &[(usize, usize)]) -> Vec<Violation> {
        check_axioms(&self.bags, &self.tree, self.root, n, edges)
    }

    /// Same bags with `extra` added to each one.
    pub fn with_extra(&self, extra: &[usize]) -> TreeDecomposition {
        let bags = self
            .bags
            .iter()
            .map(|b| {
                let mut s: BTreeSet<usize> = b.iter().copied().collect();
                s.extend(extra.iter().copied());
                s.into_iter().collect()
            })
            .collect();
        TreeDecomposition { bags, tree: self.tree.clone(), root: self.root }
    }
}

impl PathDecomposition {
    pub fn width(&self) -> usize {
        width_of(&self.bags)
    }

    pub fn to_tree(&self) -> TreeDecomposition {
        let tree = (1..self.bags.len()).map(|i| (i - 1, i)).collect();
        TreeDecomposition { bags: self.bags.clone(), tree, root: if self.bags.is_empty() { None } else { Some(0) } }
    }

    pub fn validate(&self, g: &UndirectedGraph) -> Vec<Violation> {
        self.to_tree().validate(g)
    }
}

impl NiceTreeDecomposition {
    pub fn width(&self) -> usize {
        self.nodes.iter().map(|x| x.bag.len()).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn validate(&self, g: &UndirectedGraph) -> Vec<Violation> {
        self.validate_edges(g.n(), g.edges())
    }

    /// Validation against an explicit edge list (arcs of a directed graph, or a multigraph).
    pub fn validate_edges(&self, n: usize, edges: &[(usize, usize)]) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.root >= self.nodes.len() {
            out.push(Violation::BadRoot(self.root));
            return out;
        }
        if !self.nodes[self.root].bag.is_empty() {
            out.push(Violation::Node { node: self.root, reason: "root bag not empty".into() });
        }
        let mut introduced = vec![0usize; edges.len()];
        for (i, x) in self.nodes.iter().enumerate() {
            let bad = |reason: &str| Violation::Node { node: i, reason: reason.to_string() };
            if x.children.iter().any(|&c| c >= i) {
                out.push(bad("child does not precede parent"));
                continue;
            }
            if x.bag.windows(2).any(|w| w[0] >= w[1]) {
                out.push(bad("bag not strictly sorted"));
            }
            let child_bag = |k: usize| -> &Vec<usize> { &self.nodes[x.children[k]].bag };
            match x.kind {
                NodeKind::Leaf => {
                    if !x.children.is_empty() || !x.bag.is_empty() {
                        out.push(bad("leaf must be childless with an empty bag"));
                    }
                }
                NodeKind::IntroduceVertex(v) => {
                    if x.children.len() != 1 {
                        out.push(bad("introduce needs one child"));
                        continue;
                    }
                    let c = child_bag(0);
                    let mut expect = c.clone();
                    expect.push(v);
                    expect.sort_unstable();
                    if c.contains(&v) || expect != x.bag {
                        out.push(bad("introduce must add exactly one new vertex"));
                    }
                }
                NodeKind::Forget(v) => {
                    if x.children.len() != 1 {
                        out.push(bad("forget needs one child"));
                        continue;
                    }
                    let c = child_bag(0);
                    let expect: Vec<usize> = c.iter().copied().filter(|&y| y != v).collect();
                    if !c.contains(&v) || expect != x.bag {
                        out.push(bad("forget must remove exactly one vertex"));
                    }
                }
                NodeKind::IntroduceEdge { edge, u, v } => {
                    if x.children.len() != 1 || child_bag(0) != &x.bag {
                        out.push(bad("edge introduction must keep the bag"));
                    }
                    if edge >= edges.len() {
                        out.push(bad("unknown edge id"));
                        continue;
                    }
                    let (a, b) = edges[edge];
                    if (a, b) != (u, v) {
                        out.push(bad("edge endpoints do not match edge list"));
                    }
                    if !x.bag.contains(&u) || !x.bag.contains(&v) {
                        out.push(bad("edge endpoints not in bag"));
                    }
                    introduced[edge] += 1;
                }
                NodeKind::Join => {
                    if x.children.len() != 2 || child_bag(0) != &x.bag || child_bag(1) != &x.bag {
                        out.push(bad("join needs two children with identical bags"));
                    }
                }
            }
        }
        for (e, &t) in introduced.iter().enumerate() {
            if t != 1 {
                out.push(Violation::EdgeIntroduced { edge: e, times: t });
            }
        }
        let bags: Vec<Vec<usize>> = self.nodes.iter().map(|x| x.bag.clone()).collect();
        let mut tree = Vec::new();
        for (i, x) in self.nodes.iter().enumerate() {
            for &c in &x.children {
                tree.push((c, i));
            }
        }
        let reachable = {
            let mut seen = vec![false; self.nodes.len()];
            let mut stack = vec![self.root];
            while let Some(x) = stack.pop() {
                if !seen[x] {
                    seen[x] = true;
                    stack.extend(self.nodes[x].children.iter().copied());
                }
            }
            seen.iter().all(|&s| s)
        };
        if !reachable {
            out.push(Violation::NotATree);
        }
        out.extend(check_axioms(&bags, &tree, Some(self.root), n, edges));
        out
    }

    /// Largest coloring-axis length `radix^|bag|` over all nodes.
    pub fn max_bag(&self) -> usize {
        self.nodes.iter().map(|x| x.bag.len()).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, DecompositionError> {
        serde_json::from_str(text).map_err(|e| DecompositionError::Malformed(e.to_string()))
    }
}

/// Validation entry point shared by all decomposition kinds.
pub trait Validate {
    fn violations(&self, g: &UndirectedGraph) -> Vec<Violation>;
}

impl Validate for TreeDecomposition {
    fn violations(&self, g: &UndirectedGraph) -> Vec<Violation> {
        self.validate(g)
    }
}

impl Validate for NiceTreeDecomposition {
    fn violations(&self, g: &UndirectedGraph) -> Vec<Violation> {
        NiceTreeDecomposition::validate(self, g)
    }
}

impl Validate for PathDecomposition {
    fn violations(&self, g: &UndirectedGraph) -> Vec<Violation> {
        PathDecomposition::validate(self, g)
    }
}

/// Lists every violated axiom; empty iff the decomposition is valid for `g`.
pub fn validate<D: Validate>(dec: &D, g: &UndirectedGraph) -> Vec<Violation> {
    dec.violations(g)
}

fn check_axioms(
    bags: &[Vec<usize>],
    tree: &[(usize, usize)],
    root: Option<usize>,
    n: usize,
    edges: &[(usize, usize)],
) -> Vec<Violation> {
    let mut out = Vec::new();
    let b = bags.len();
    if let Some(r) = root {
        if r >= b {
            out.push(Violation::BadRoot(r));
        }
    }
    // tree shape: b - 1 edges and connected
    let mut adj = vec![Vec::new(); b];
    let mut tree_ok = tree.len() + 1 == b || (b == 0 && tree.is_empty());
    for &(x, y) in tree {
        if x >= b || y >= b || x == y {
            tree_ok = false;
            continue;
        }
        adj[x].push(y);
        adj[y].push(x);
    }
    if b > 0 {
        let mut seen = vec![false; b];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            tree_ok = false;
        }
    }
    if !tree_ok {
        out.push(Violation::NotATree);
    }
    let mut holders = vec![Vec::new(); n];
    for (i, bag) in bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                out.push(Violation::VertexOutOfRange { bag: i, vertex: v });
            } else {
                holders[v].push(i);
            }
        }
    }
    for (v, hs) in holders.iter().enumerate() {
        if hs.is_empty() {
            out.push(Violation::VertexUncovered(v));
        }
    }
    let sets: Vec<BTreeSet<usize>> = bags.iter().map(|bg| bg.iter().copied().collect()).collect();
    for &(u, v) in edges {
        if u >= n || v >= n {
            continue;
        }
        if !holders[u].iter().any(|&i| sets[i].contains(&v)) {
            out.push(Violation::EdgeUncovered(u, v));
        }
    }
    if tree_ok {
        for (v, hs) in holders.iter().enumerate() {
            if hs.len() <= 1 {
                continue;
            }
            let mut inside = vec![false; b];
            for &i in hs {
                inside[i] = true;
            }
            let mut seen = vec![false; b];
            let mut stack = vec![hs[0]];
            seen[hs[0]] = true;
            let mut count = 1;
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if inside[y] && !seen[y] {
                        seen[y] = true;
                        count += 1;
                        stack.push(y);
                    }
                }
            }
            if count != hs.len() {
                out.push(Violation::DisconnectedOccurrence(v));
            }
        }
    }
    out
}

struct Builder {
    nodes: Vec<NiceNode>,
}

impl Builder {
    fn push(&mut self, kind: NodeKind, children: Vec<usize>, bag: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, children, bag });
        self.nodes.len() - 1
    }

    /// Walks from the node with bag `from` to a node with bag `to`: forgets first, then introduces.
    fn morph(&mut self, mut node: usize, to: &[usize]) -> usize {
        let from = self.nodes[node].bag.clone();
        for &v in from.iter().filter(|v| !to.contains(v)) {
            let bag: Vec<usize> = self.nodes[node].bag.iter().copied().filter(|&y| y != v).collect();
            node = self.push(NodeKind::Forget(v), vec![node], bag);
        }
        for &v in to.iter().filter(|v| !from.contains(v)) {
            let mut bag = self.nodes[node].bag.clone();
            bag.push(v);
            bag.sort_unstable();
            node = self.push(NodeKind::IntroduceVertex(v), vec![node], bag);
        }
        node
    }
}

/// Converts a valid decomposition of the graph `(n, edges)` into a nice one of equal width.
pub fn make_nice(td: &TreeDecomposition, g: &UndirectedGraph) -> Result<NiceTreeDecomposition, DecompositionError> {
    make_nice_edges(td, g.n(), g.edges())
}

/// [`make_nice`] over an explicit edge list (arcs, or parallel edges), one IntroduceEdge per entry.
pub fn make_nice_edges(
    td: &TreeDecomposition,
    n: usize,
    edges: &[(usize, usize)],
) -> Result<NiceTreeDecomposition, DecompositionError> {
    let td = if td.bags.is_empty() {
        TreeDecomposition { bags: vec![Vec::new()], tree: Vec::new(), root: None }
    } else {
        td.clone()
    };
    let violations = check_axioms(&td.bags, &td.tree, td.root, n, edges);
    if let Some(v) = violations.first() {
        return Err(DecompositionError::Invalid(v.to_string()));
    }
    let b = td.bags.len();
    let root = td.root.unwrap_or(0);
    let mut adj = vec![Vec::new(); b];
    for &(x, y) in &td.tree {
        adj[x].push(y);
        adj[y].push(x);
    }
    // rooted order: parents before children
    let mut order = Vec::with_capacity(b);
    let mut parent = vec![usize::MAX; b];
    let mut seen = vec![false; b];
    let mut stack = vec![root];
    seen[root] = true;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let bags: Vec<Vec<usize>> = td
        .bags
        .iter()
        .map(|bg| {
            let s: BTreeSet<usize> = bg.iter().copied().collect();
            s.into_iter().collect()
        })
        .collect();
    let mut builder = Builder { nodes: Vec::new() };
    let mut top = vec![usize::MAX; b];
    for &x in order.iter().rev() {
        let kids: Vec<usize> = adj[x].iter().copied().filter(|&y| parent[y] == x && y != parent[x]).collect();
        let mut branches = Vec::new();
        for &c in &kids {
            branches.push(builder.morph(top[c], &bags[x]));
        }
        if branches.is_empty() {
            let leaf = builder.push(NodeKind::Leaf, Vec::new(), Vec::new());
            branches.push(builder.morph(leaf, &bags[x]));
        }
        let mut acc = branches[0];
        for &other in &branches[1..] {
            acc = builder.push(NodeKind::Join, vec![acc, other], bags[x].clone());
        }
        top[x] = acc;
    }
    let top_node = builder.morph(top[root], &[]);
    let base = reorder(builder.nodes, top_node);
    let mut root_node = base.root;
    let mut nodes = base.nodes;

    // Splice edge introductions above the first node (bottom-up) whose bag holds both endpoints.
    let mut parent_of = vec![usize::MAX; nodes.len()];
    for (i, x) in nodes.iter().enumerate() {
        for &c in &x.children {
            parent_of[c] = i;
        }
    }
    let original = nodes.len();
    for (e, &(u, v)) in edges.iter().enumerate() {
        let host = (0..original)
            .find(|&i| nodes[i].bag.binary_search(&u).is_ok() && nodes[i].bag.binary_search(&v).is_ok())
            .ok_or_else(|| DecompositionError::Invalid(format!("edge {u}-{v} not covered")))?;
        // climb over edge nodes already spliced above this host
        let mut below = host;
        while parent_of[below] != usize::MAX && parent_of[below] >= original {
            below = parent_of[below];
        }
        let id = nodes.len();
        nodes.push(NiceNode {
            kind: NodeKind::IntroduceEdge { edge: e, u, v },
            children: vec![below],
            bag: nodes[below].bag.clone(),
        });
        let p = parent_of[below];
        parent_of.push(p);
        parent_of[below] = id;
        if p == usize::MAX {
            root_node = id;
        } else {
            for c in nodes[p].children.iter_mut() {
                if *c == below {
                    *c = id;
                }
            }
        }
    }
    Ok(reorder(nodes, root_node))
}

/// Renumbers nodes in post-order from the root.
fn reorder(nodes: Vec<NiceNode>, root: usize) -> NiceTreeDecomposition {
    let mut post = Vec::with_capacity(nodes.len());
    let mut stack = vec![(root, false)];
    while let Some((x, done)) = stack.pop() {
        if done {
            post.push(x);
        } else {
            stack.push((x, true));
            for &c in nodes[x].children.iter().rev() {
                stack.push((c, false));
            }
        }
    }
    let mut new_id = vec![usize::MAX; nodes.len()];
    for (i, &x) in post.iter().enumerate() {
        new_id[x] = i;
    }
    let out = post
        .iter()
        .map(|&x| NiceNode {
            kind: nodes[x].kind,
            children: nodes[x].children.iter().map(|&c| new_id[c]).collect(),
            bag: nodes[x].bag.clone(),
        })
        .collect::<Vec<_>>();
    let root = out.len() - 1;
    NiceTreeDecomposition { nodes: out, root }
}

/// Min-degree elimination ordering; ties broken by lowest id.
pub fn heuristic_decompose(g: &UndirectedGraph) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition { bags: vec![Vec::new()], tree: Vec::new(), root: Some(0) };
    }
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(u, v) in g.edges() {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    let mut alive = vec![true; n];
    let mut position = vec![0; n];
    let mut order = Vec::with_capacity(n);
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for step in 0..n {
        let v = (0..n).filter(|&v| alive[v]).min_by_key(|&v| (adj[v].len(), v)).expect("vertex left");
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            adj[a].remove(&v);
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        alive[v] = false;
        position[v] = step;
        order.push(v);
        nbrs[v] = nb;
    }
    // bag i belongs to the i-th eliminated vertex
    let mut bags = Vec::with_capacity(n);
    let mut tree = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let mut bag = nbrs[v].clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        let next = nbrs[v].iter().map(|&u| position[u]).min();
        match next {
            Some(j) => tree.push((i, j)),
            None if i + 1 < n => tree.push((i, i + 1)),
            None => {}
        }
    }
    compress(TreeDecomposition { bags, tree, root: Some(n - 1) })
}

/// Merges every bag that is a subset of a neighbouring bag into that neighbour.
pub fn compress(td: TreeDecomposition) -> TreeDecomposition {
    let b = td.bags.len();
    let mut bags: Vec<BTreeSet<usize>> = td.bags.iter().map(|x| x.iter().copied().collect()).collect();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); b];
    for &(x, y) in &td.tree {
        adj[x].insert(y);
        adj[y].insert(x);
    }
    let mut alive = vec![true; b];
    let mut root = td.root.unwrap_or(0);
    loop {
        let mut merged = false;
        for x in 0..b {
            if !alive[x] {
                continue;
            }
            let target = adj[x].iter().copied().find(|&y| bags[x].is_subset(&bags[y]));
            if let Some(y) = target {
                let xs: Vec<usize> = adj[x].iter().copied().collect();
                for z in xs {
                    adj[z].remove(&x);
                    if z != y {
                        adj[z].insert(y);
                        adj[y].insert(z);
                    }
                }
                adj[x].clear();
                bags[x].clear();
                alive[x] = false;
                if root == x {
                    root = y;
                }
                merged = true;
            }
        }
        if !merged {
            break;
        }
    }
    let mut id = vec![usize::MAX; b];
    let mut out_bags = Vec::new();
    for x in 0..b {
        if alive[x] {
            id[x] = out_bags.len();
            out_bags.push(bags[x].iter().copied().collect::<Vec<_>>());
        }
    }
    let mut tree = Vec::new();
    for x in 0..b {
        for &y in &adj[x] {
            if alive[x] && alive[y] && x < y {
                tree.push((id[x], id[y]));
            }
        }
    }
    TreeDecomposition { bags: out_bags, tree, root: Some(id[root]) }
}

/// Path decomposition of the subdivided graph: after the first bag `B(e)` holding both ends of
/// each edge, inserts `B(e) ∪ {x₁}` followed by `B(e) ∪ {xᵢ, xᵢ₊₁}`.
pub fn pd_after_subdivision(
    pd: &PathDecomposition,
    g: &UndirectedGraph,
    w: &EdgeWeightMap,
) -> Result<PathDecomposition, DecompositionError> {
    if let Some(v) = pd.validate(g).first() {
        return Err(DecompositionError::Invalid(v.to_string()));
    }
    let sub = crate::graph::subdivide_weighted(g, w)?;
    let mut inserts: Vec<Vec<Vec<usize>>> = vec![Vec::new(); pd.bags.len()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let inner = &sub.paths[e];
        if inner.is_empty() {
            continue;
        }
        let host = pd
            .bags
            .iter()
            .position(|b| b.contains(&u) && b.contains(&v))
            .expect("validated decomposition covers every edge");
        let base = &pd.bags[host];
        let with = |extra: &[usize]| {
            let mut bag = base.clone();
            bag.extend_from_slice(extra);
            bag
        };
        inserts[host].push(with(&inner[..1]));
        for pair in inner.windows(2) {
            inserts[host].push(with(pair));
        }
    }
    let mut bags = Vec::new();
    for (i, bag) in pd.bags.iter().enumerate() {
        bags.push(bag.clone());
        bags.extend(inserts[i].drain(..));
    }
    Ok(PathDecomposition { bags })
}

/// PACE `.td` text (1-based bag and vertex ids).
pub fn to_pace_td(td: &TreeDecomposition, n: usize) -> String {
    let mut out = format!("s td {} {} {}\n", td.bags.len(), td.width() + 1, n);
    for (i, bag) in td.bags.iter().enumerate() {
        out.push_str(&format!("b {}", i + 1));
        for v in bag {
            out.push_str(&format!(" {}", v + 1));
        }
        out.push('\n');
    }
    for &(x, y) in &td.tree {
        out.push_str(&format!("{} {}\n", x + 1, y + 1));
    }
    out
}

/// Parses PACE `.td` text into 0-based ids.
pub fn parse_pace_td(text: &str) -> Result<TreeDecomposition, DecompositionError> {
    let bad = |s: &str| DecompositionError::Malformed(s.to_string());
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut tree = Vec::new();
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad(line));
        match toks[0] {
            "s" => {
                if toks.len() != 5 || toks[1] != "td" || header.is_some() {
                    return Err(bad(line));
                }
                let h = (num(toks[2])?, num(toks[3])?, num(toks[4])?);
                bags = vec![None; h.0];
                header = Some(h);
            }
            "b" => {
                let (nb, _, n) = header.ok_or_else(|| bad("bag before header"))?;
                if toks.len() < 2 {
                    return Err(bad(line));
                }
                let id = num(toks[1])?;
                if id == 0 || id > nb {
                    return Err(bad(line));
                }
                let mut bag = Vec::new();
                for t in &toks[2..] {
                    let v = num(t)?;
                    if v == 0 || v > n {
                        return Err(bad(line));
                    }
                    bag.push(v - 1);
                }
                bag.sort_unstable();
                bag.dedup();
                bags[id - 1] = Some(bag);
            }
            _ => {
                let (nb, _, _) = header.ok_or_else(|| bad("edge before header"))?;
                if toks.len() != 2 {
                    return Err(bad(line));
                }
                let (x, y) = (num(toks[0])?, num(toks[1])?);
                if x == 0 || y == 0 || x > nb || y > nb {
                    return Err(bad(line));
                }
                tree.push((x - 1, y - 1));
            }
        }
    }
    let (_, declared, _) = header.ok_or_else(|| bad("missing header"))?;
    let bags: Vec<Vec<usize>> =
        bags.into_iter().enumerate().map(|(i, b)| b.ok_or_else(|| bad(&format!("bag {} missing", i + 1)))).collect::<Result<_, _>>()?;
    let td = TreeDecomposition { root: if bags.is_empty() { None } else { Some(0) }, bags, tree };
    if td.bags.iter().any(|b| b.len() > declared) {
        return Err(bad("bag larger than declared width"));
    }
    Ok(td)
}
