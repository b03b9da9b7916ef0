//! Hard Steiner Tree instances from CNF formulas.
//!
//! Variables are split into groups of `⌊log₂ 3^β⌋`; every group is encoded by a row of group
//! gadgets whose `3^β` sequence vertices each stand for one partial assignment. Edge weights are
//! drawn from `{1, N, N², N³, N⁴}` with `N` the vertex count, and a tree of weight at most `K`
//! spanning all terminals exists exactly when the formula is satisfiable. The matching path
//! decomposition sweeps the gadget matrix column by column, so its width grows by `β` per group.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decomposition::{pd_after_subdivision, DecompositionError, PathDecomposition};
use crate::graph::{subdivide_weighted, EdgeWeightMap, GraphError, UndirectedGraph};

/// Width constant: every generated path decomposition satisfies `width ≤ β·groups + c·3^β`.
/// Measured maximum of `(width − β·groups) / 3^β` is `17/3` at `β = 1` and `39/9` at `β = 2`.
pub const WIDTH_CONSTANT: usize = 6;

/// Largest supported block size; `3^β` sequence vertices are created per gadget.
pub const MAX_BETA: usize = 6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HardgenError {
    #[error("line {line}: {msg}")]
    Dimacs { line: usize, msg: String },
    #[error("formula has no clauses")]
    EmptyFormula,
    #[error("clause {0} is empty")]
    EmptyClause(usize),
    #[error("block size {0} outside 1..={MAX_BETA}")]
    BlockSize(usize),
    #[error("instance with {0} vertices overflows the N⁴ weight range")]
    WeightOverflow(usize),
    #[error("unweighted instance would have {vertices} vertices, above the cap of {cap}")]
    TooLarge { vertices: u128, cap: usize },
    #[error("assignment has {found} values for {expected} variables")]
    AssignmentLength { expected: usize, found: usize },
    #[error("assignment does not satisfy clause {0}")]
    Unsatisfied(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
}

pub type Result<T> = std::result::Result<T, HardgenError>;

/// CNF formula with DIMACS literals: `v` for variable `v − 1`, `−v` for its negation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cnf {
    pub vars: usize,
    pub clauses: Vec<Vec<i64>>,
}

impl Cnf {
    pub fn new(vars: usize, clauses: Vec<Vec<i64>>) -> Result<Self> {
        if clauses.is_empty() {
            return Err(HardgenError::EmptyFormula);
        }
        for (i, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(HardgenError::EmptyClause(i));
            }
            if let Some(&lit) = c.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > vars) {
                return Err(HardgenError::Dimacs { line: 0, msg: format!("literal {lit} out of range") });
            }
        }
        Ok(Cnf { vars, clauses })
    }

    /// Whether `assignment[v]` (value of variable `v`) satisfies literal `lit`.
    pub fn literal_holds(lit: i64, assignment: &[bool]) -> bool {
        let v = lit.unsigned_abs() as usize - 1;
        assignment[v] == (lit > 0)
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| Self::literal_holds(l, assignment)))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                out.push_str(&format!("{l} "));
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Parses DIMACS CNF; clauses may span lines and end at `0`.
pub fn parse_dimacs(text: &str) -> Result<Cnf> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let bad = |msg: &str| HardgenError::Dimacs { line: i + 1, msg: msg.to_string() };
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if header.is_some() || toks.len() != 4 || toks[1] != "cnf" {
                return Err(bad("malformed problem line"));
            }
            let vars = toks[2].parse().map_err(|_| bad("bad variable count"))?;
            let count = toks[3].parse().map_err(|_| bad("bad clause count"))?;
            header = Some((vars, count));
            continue;
        }
        let (vars, _) = header.ok_or_else(|| bad("clause before problem line"))?;
        for tok in line.split_whitespace() {
            let lit: i64 = tok.parse().map_err(|_| bad("bad literal"))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > vars {
                return Err(bad("literal exceeds variable count"));
            } else {
                current.push(lit);
            }
        }
    }
    let (vars, count) = header.ok_or(HardgenError::Dimacs { line: 0, msg: "missing problem line".into() })?;
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != count {
        return Err(HardgenError::Dimacs {
            line: 0,
            msg: format!("header announces {count} clauses, found {}", clauses.len()),
        });
    }
    Cnf::new(vars, clauses)
}

/// Sizes derived from the formula and the block size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetParams {
    /// Block size `β`: vertex triples per gadget.
    pub beta: usize,
    /// Variables per group, `⌊log₂ 3^β⌋`.
    pub group_vars: usize,
    /// Number of variable groups (gadget rows).
    pub groups: usize,
    /// Number of clauses.
    pub clauses: usize,
    /// Gadget columns, `clauses · (5β·groups + 1)`.
    pub columns: usize,
    /// Copies of every clause vertex, `5β·groups + 1`.
    pub clause_copies: usize,
}

impl GadgetParams {
    pub fn new(cnf: &Cnf, beta: usize) -> Result<Self> {
        if !(1..=MAX_BETA).contains(&beta) {
            return Err(HardgenError::BlockSize(beta));
        }
        let seqs = 3u64.pow(beta as u32);
        let group_vars = (0..64).take_while(|&b| 1u64 << b <= seqs).last().unwrap_or(0);
        let groups = cnf.vars.div_ceil(group_vars).max(1);
        let clause_copies = 5 * beta * groups + 1;
        Ok(GadgetParams {
            beta,
            group_vars,
            groups,
            clauses: cnf.clauses.len(),
            columns: cnf.clauses.len() * clause_copies,
            clause_copies,
        })
    }

    pub fn sequences(&self) -> usize {
        3usize.pow(self.beta as u32)
    }

    /// Vertices of one group gadget: triples, guards, two connectors per triple, sequence pairs.
    pub fn gadget_size(&self) -> usize {
        8 * self.beta + 2 * self.sequences()
    }

    /// Closed-form vertex count of the generated graph.
    pub fn vertex_count(&self) -> usize {
        let (b, g, a) = (self.beta, self.groups, self.columns);
        1 + g * a * self.gadget_size() + 2 * b * g * (a - 1) + b * g + a
    }

    /// Multipliers of `N⁴, N³, N², N, 1, 1` in the target weight.
    pub fn target_coefficients(&self) -> [u128; 6] {
        let (b, g, a) = (self.beta as u128, self.groups as u128, self.columns as u128);
        let s = self.sequences() as u128;
        [a, s * g * a, b * g * (4 * a - 1), 2 * b * g * a, b * g * a, g * a]
    }
}

/// Role of a generated vertex; indices are 0-based (`triple < β`, `slot < 3`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VertexRole {
    Root,
    Triple { group: usize, column: usize, triple: usize, slot: usize },
    Guard { group: usize, column: usize, triple: usize, slot: usize },
    Connector { group: usize, column: usize, triple: usize, slot: usize },
    Sequence { group: usize, column: usize, sequence: usize },
    SequenceExit { group: usize, column: usize, sequence: usize },
    Link { group: usize, column: usize, triple: usize },
    Shortcut { group: usize, column: usize, triple: usize },
    Tail { group: usize, triple: usize },
    Clause { clause: usize, copy: usize },
}

/// Edge-weighted Steiner Tree instance with a target weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedSteiner {
    pub graph: UndirectedGraph,
    pub weights: EdgeWeightMap,
    pub terminals: Vec<usize>,
    pub target: u128,
}

/// Generated instance plus the vertex bookkeeping needed for witnesses and decompositions.
#[derive(Clone, Debug)]
pub struct HardInstance {
    pub steiner: WeightedSteiner,
    pub params: GadgetParams,
    /// `N`, the vertex count used as the weight base.
    pub base: u64,
    pub roles: Vec<VertexRole>,
    gadgets: Vec<Gadget>,
    links: Vec<Vec<LinkPair>>,
    tails: Vec<Vec<usize>>,
    clause_vertices: Vec<Vec<usize>>,
    sequence_of_assignment: Vec<Vec<usize>>,
    group_members: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
struct Gadget {
    /// `triples[i][l]`.
    triples: Vec<[usize; 3]>,
    guards: Vec<[usize; 3]>,
    connectors: Vec<[usize; 2]>,
    sequences: Vec<usize>,
    exits: Vec<usize>,
}

#[derive(Clone, Copy, Debug)]
struct LinkPair {
    heavy: usize,
    light: usize,
}

/// Weight classes `N^e` before `N` is known.
struct Draft {
    roles: Vec<VertexRole>,
    edges: Vec<(usize, usize, u32)>,
}

impl Draft {
    fn vertex(&mut self, role: VertexRole) -> usize {
        self.roles.push(role);
        self.roles.len() - 1
    }
    fn edge(&mut self, u: usize, v: usize, power: u32) {
        self.edges.push((u, v, power));
    }
}

/// Digits of sequence `index` in `{0,1,2}^β`, most significant first.
fn sequence_digits(index: usize, beta: usize) -> Vec<usize> {
    let mut digits = vec![0; beta];
    let mut x = index;
    for d in digits.iter_mut().rev() {
        *d = x % 3;
        x /= 3;
    }
    digits
}

/// Builds the weighted instance for `cnf` with block size `beta`.
pub fn gen_steiner(cnf: &Cnf, beta: usize) -> Result<HardInstance> {
    let p = GadgetParams::new(cnf, beta)?;
    let seqs = p.sequences();
    let mut d = Draft { roles: Vec::new(), edges: Vec::new() };
    let root = d.vertex(VertexRole::Root);
    let mut terminals = vec![root];

    let group_members: Vec<Vec<usize>> = (0..p.groups)
        .map(|g| (g * p.group_vars..((g + 1) * p.group_vars).min(cnf.vars)).collect())
        .collect();
    // assignment a of a group (bit j = value of its j-th variable) ↦ the a-th sequence
    let sequence_of_assignment: Vec<Vec<usize>> =
        group_members.iter().map(|m| (0..1usize << m.len()).collect()).collect();

    let mut gadgets = Vec::with_capacity(p.groups * p.columns);
    for group in 0..p.groups {
        for column in 0..p.columns {
            let mut triples = Vec::with_capacity(beta);
            let mut guards = Vec::with_capacity(beta);
            let mut connectors = Vec::with_capacity(beta);
            for triple in 0..beta {
                let t = [0, 1, 2].map(|slot| d.vertex(VertexRole::Triple { group, column, triple, slot }));
                let g = [0, 1, 2].map(|slot| d.vertex(VertexRole::Guard { group, column, triple, slot }));
                terminals.extend_from_slice(&g);
                for (guard, a, b) in [(0, 0, 1), (1, 0, 2), (2, 1, 2)] {
                    d.edge(g[guard], t[a], 2);
                    d.edge(g[guard], t[b], 2);
                }
                let h = [0, 1].map(|slot| d.vertex(VertexRole::Connector { group, column, triple, slot }));
                for (slot, &c) in h.iter().enumerate() {
                    d.edge(c, t[slot], 1);
                    d.edge(c, t[slot + 1], 1);
                    d.edge(c, root, 0);
                }
                triples.push(t);
                guards.push(g);
                connectors.push(h);
            }
            let mut sequences = Vec::with_capacity(seqs);
            let mut exits = Vec::with_capacity(seqs);
            for sequence in 0..seqs {
                let x = d.vertex(VertexRole::Sequence { group, column, sequence });
                let y = d.vertex(VertexRole::SequenceExit { group, column, sequence });
                terminals.push(x);
                d.edge(x, y, 0);
                d.edge(y, root, 3);
                for (triple, &slot) in sequence_digits(sequence, beta).iter().enumerate() {
                    d.edge(x, triples[triple][slot], 3);
                }
                sequences.push(x);
                exits.push(y);
            }
            gadgets.push(Gadget { triples, guards, connectors, sequences, exits });
        }
    }
    let gadget = |group: usize, column: usize| group * p.columns + column;

    let mut links = vec![Vec::new(); p.groups * p.columns];
    let mut tails = Vec::with_capacity(p.groups);
    for group in 0..p.groups {
        for column in 0..p.columns - 1 {
            for triple in 0..beta {
                let exit = gadgets[gadget(group, column)].triples[triple][2];
                let entry = gadgets[gadget(group, column + 1)].triples[triple][0];
                let heavy = d.vertex(VertexRole::Link { group, column, triple });
                let light = d.vertex(VertexRole::Shortcut { group, column, triple });
                terminals.push(heavy);
                d.edge(heavy, exit, 2);
                d.edge(heavy, entry, 2);
                d.edge(light, exit, 1);
                d.edge(light, entry, 1);
                d.edge(light, root, 0);
                links[gadget(group, column)].push(LinkPair { heavy, light });
            }
        }
        for triple in 0..beta {
            d.edge(gadgets[gadget(group, 0)].triples[triple][0], root, 1);
        }
        let row_tails: Vec<usize> = (0..beta)
            .map(|triple| {
                let w = d.vertex(VertexRole::Tail { group, triple });
                d.edge(w, root, 0);
                d.edge(w, gadgets[gadget(group, p.columns - 1)].triples[triple][2], 1);
                w
            })
            .collect();
        tails.push(row_tails);
    }

    let mut clause_vertices = Vec::with_capacity(p.clauses);
    for (clause, lits) in cnf.clauses.iter().enumerate() {
        let mut copies = Vec::with_capacity(p.clause_copies);
        for copy in 0..p.clause_copies {
            let c = d.vertex(VertexRole::Clause { clause, copy });
            terminals.push(c);
            let column = p.clauses * copy + clause;
            for (group, members) in group_members.iter().enumerate() {
                for (a, &seq) in sequence_of_assignment[group].iter().enumerate() {
                    let values: Vec<(usize, bool)> =
                        members.iter().enumerate().map(|(j, &v)| (v, a >> j & 1 == 1)).collect();
                    let satisfied = lits.iter().any(|&l| {
                        let v = l.unsigned_abs() as usize - 1;
                        values.iter().any(|&(u, val)| u == v && val == (l > 0))
                    });
                    if satisfied {
                        d.edge(gadgets[gadget(group, column)].exits[seq], c, 4);
                    }
                }
            }
            copies.push(c);
        }
        clause_vertices.push(copies);
    }

    let n = d.roles.len();
    debug_assert_eq!(n, p.vertex_count());
    let base = n as u64;
    let top = (base as i128).pow(4);
    if top > i64::MAX as i128 {
        return Err(HardgenError::WeightOverflow(n));
    }
    let pairs: Vec<(usize, usize)> = d.edges.iter().map(|&(u, v, _)| (u, v)).collect();
    let weights = EdgeWeightMap(d.edges.iter().map(|&(_, _, e)| (base as i64).pow(e)).collect());
    let graph = UndirectedGraph::new(n, pairs, false)?;
    let c = p.target_coefficients();
    let nb = base as u128;
    let target = c[0] * nb.pow(4) + c[1] * nb.pow(3) + c[2] * nb.pow(2) + c[3] * nb + c[4] + c[5];
    terminals.sort_unstable();
    Ok(HardInstance {
        steiner: WeightedSteiner { graph, weights, terminals, target },
        params: p,
        base,
        roles: d.roles,
        gadgets,
        links,
        tails,
        clause_vertices,
        sequence_of_assignment,
        group_members,
    })
}

impl HardInstance {
    fn gadget(&self, group: usize, column: usize) -> &Gadget {
        &self.gadgets[group * self.params.columns + column]
    }

    fn edge_index(&self) -> rustc_hash::FxHashMap<(usize, usize), usize> {
        self.steiner.graph.edges().iter().enumerate().map(|(e, &(u, v))| ((u.min(v), u.max(v)), e)).collect()
    }

    /// Sequence chosen for each group under `assignment`.
    fn chosen_sequences(&self, assignment: &[bool]) -> Vec<Vec<usize>> {
        self.group_members
            .iter()
            .enumerate()
            .map(|(g, members)| {
                let a = members.iter().enumerate().fold(0, |acc, (j, &v)| acc | (assignment[v] as usize) << j);
                sequence_digits(self.sequence_of_assignment[g][a], self.params.beta)
            })
            .collect()
    }

    /// Edge set of weight exactly `K` spanning all terminals, built from a satisfying assignment.
    pub fn witness(&self, cnf: &Cnf, assignment: &[bool]) -> Result<Vec<usize>> {
        if assignment.len() != cnf.vars {
            return Err(HardgenError::AssignmentLength { expected: cnf.vars, found: assignment.len() });
        }
        if let Some(i) = cnf.clauses.iter().position(|c| !c.iter().any(|&l| Cnf::literal_holds(l, assignment))) {
            return Err(HardgenError::Unsatisfied(i));
        }
        let index = self.edge_index();
        let p = &self.params;
        let root = 0;
        let mut chosen = Vec::new();
        let mut take = |u: usize, v: usize| chosen.push(index[&(u.min(v), u.max(v))]);
        let picks = self.chosen_sequences(assignment);
        for (group, digits) in picks.iter().enumerate() {
            for (triple, &skip) in digits.iter().enumerate() {
                // hook the two kept vertices of every triple of this row to the root
                match skip {
                    2 | 0 => {
                        let slot = if skip == 2 { 0 } else { 1 };
                        for column in 0..p.columns {
                            let g = self.gadget(group, column);
                            let h = g.connectors[triple][slot];
                            take(h, g.triples[triple][slot]);
                            take(h, g.triples[triple][slot + 1]);
                            take(h, root);
                        }
                    }
                    _ => {
                        for column in 0..p.columns - 1 {
                            let link = self.links[group * p.columns + column][triple];
                            take(link.light, self.gadget(group, column).triples[triple][2]);
                            take(link.light, self.gadget(group, column + 1).triples[triple][0]);
                            take(link.light, root);
                        }
                        take(self.gadget(group, 0).triples[triple][0], root);
                        let tail = self.tails[group][triple];
                        take(tail, self.gadget(group, p.columns - 1).triples[triple][2]);
                        take(tail, root);
                    }
                }
                for column in 0..p.columns {
                    let g = self.gadget(group, column);
                    for (guard, a, b) in [(0, 0, 1), (1, 0, 2), (2, 1, 2)] {
                        let slot = if a != skip { a } else { b };
                        take(g.guards[triple][guard], g.triples[triple][slot]);
                    }
                    if column + 1 < p.columns {
                        let heavy = self.links[group * p.columns + column][triple].heavy;
                        if skip != 2 {
                            take(heavy, g.triples[triple][2]);
                        } else {
                            take(heavy, self.gadget(group, column + 1).triples[triple][0]);
                        }
                    }
                }
            }
            let own = digits.iter().fold(0, |acc, &dgt| acc * 3 + dgt);
            for column in 0..p.columns {
                let g = self.gadget(group, column);
                for (seq, &x) in g.sequences.iter().enumerate() {
                    if seq == own {
                        take(x, g.exits[seq]);
                        take(g.exits[seq], root);
                    } else {
                        let other = sequence_digits(seq, p.beta);
                        let triple = (0..p.beta).find(|&i| other[i] != digits[i]).expect("sequences differ");
                        take(x, g.triples[triple][other[triple]]);
                    }
                }
            }
        }
        for (clause, lits) in cnf.clauses.iter().enumerate() {
            let group = self
                .group_members
                .iter()
                .position(|m| lits.iter().any(|&l| m.contains(&(l.unsigned_abs() as usize - 1)) && Cnf::literal_holds(l, assignment)))
                .expect("clause is satisfied");
            let own = picks[group].iter().fold(0, |acc, &dgt| acc * 3 + dgt);
            for (copy, &c) in self.clause_vertices[clause].iter().enumerate() {
                let column = p.clauses * copy + clause;
                take(self.gadget(group, column).exits[own], c);
            }
        }
        chosen.sort_unstable();
        Ok(chosen)
    }

    /// Total weight of an edge set.
    pub fn weight_of(&self, edges: &[usize]) -> u128 {
        edges.iter().map(|&e| self.steiner.weights.get(e) as u128).sum()
    }

    /// Path decomposition sweeping the gadget matrix column by column; within a column the rows
    /// are flooded one at a time while the root, the column's clause vertex and one entry triple
    /// per row stay in the bag.
    pub fn path_decomposition(&self) -> PathDecomposition {
        let p = &self.params;
        let root = 0;
        let entries = |group: usize, column: usize| -> Vec<usize> {
            if column < p.columns {
                (0..p.beta).map(|t| self.gadget(group, column).triples[t][0]).collect()
            } else {
                self.tails[group].clone()
            }
        };
        let mut bags = Vec::with_capacity(p.groups * p.columns);
        for column in 0..p.columns {
            let clause = self.clause_vertices[column % p.clauses][column / p.clauses];
            for group in 0..p.groups {
                let mut bag = vec![root, clause];
                for other in 0..p.groups {
                    let at = if other < group { column + 1 } else { column };
                    if other != group {
                        bag.extend(entries(other, at));
                    }
                }
                let g = self.gadget(group, column);
                for t in 0..p.beta {
                    bag.extend_from_slice(&g.triples[t]);
                    bag.extend_from_slice(&g.guards[t]);
                    bag.extend_from_slice(&g.connectors[t]);
                }
                bag.extend_from_slice(&g.sequences);
                bag.extend_from_slice(&g.exits);
                if column + 1 < p.columns {
                    for link in &self.links[group * p.columns + column] {
                        bag.push(link.heavy);
                        bag.push(link.light);
                    }
                }
                bag.extend(entries(group, column + 1));
                bag.sort_unstable();
                bag.dedup();
                bags.push(bag);
            }
        }
        PathDecomposition { bags }
    }

    /// Width bound `β·groups + c·3^β` with the recorded constant.
    pub fn width_bound(&self) -> usize {
        self.params.beta * self.params.groups + WIDTH_CONSTANT * self.params.sequences()
    }
}

/// Unweighted Steiner instance: the subdivided graph, its terminals and an edge budget.
#[derive(Clone, Debug)]
pub struct UnweightedSteiner {
    pub graph: UndirectedGraph,
    pub terminals: Vec<usize>,
    /// Edge budget; a tree with this many edges has `budget + 1` vertices.
    pub budget: u128,
    pub decomposition: PathDecomposition,
}

/// Vertex count after subdividing every edge of `w` into a path of `w(e)` edges.
pub fn subdivided_size(s: &WeightedSteiner) -> u128 {
    s.graph.n() as u128 + s.weights.0.iter().map(|&c| (c - 1) as u128).sum::<u128>()
}

/// Subdivides every edge `e` into `c(e)` unit edges; the path decomposition grows by two.
/// Refuses instances whose subdivision would exceed `cap` vertices.
pub fn to_unweighted(s: &WeightedSteiner, pd: &PathDecomposition, cap: usize) -> Result<UnweightedSteiner> {
    let vertices = subdivided_size(s);
    if vertices > cap as u128 {
        return Err(HardgenError::TooLarge { vertices, cap });
    }
    let sub = subdivide_weighted(&s.graph, &s.weights)?;
    let decomposition = pd_after_subdivision(pd, &s.graph, &s.weights)?;
    Ok(UnweightedSteiner { graph: sub.graph, terminals: s.terminals.clone(), budget: s.target, decomposition })
}

impl fmt::Display for GadgetParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "beta={} group_vars={} groups={} clauses={} columns={}",
            self.beta, self.group_vars, self.groups, self.clauses, self.columns
        )
    }
}

/// JSON sidecar written next to a generated instance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Sidecar {
    pub params: GadgetParams,
    pub base: u64,
    pub target: String,
    pub terminals: Vec<usize>,
    pub weights: Vec<i64>,
    pub roles: Vec<VertexRole>,
    pub witness: Option<Vec<usize>>,
    pub width: usize,
    pub width_bound: usize,
}

impl HardInstance {
    pub fn sidecar(&self, witness: Option<Vec<usize>>, width: usize) -> Sidecar {
        Sidecar {
            params: self.params,
            base: self.base,
            target: self.steiner.target.to_string(),
            terminals: self.steiner.terminals.clone(),
            weights: self.steiner.weights.0.clone(),
            roles: self.roles.clone(),
            witness,
            width,
            width_bound: self.width_bound(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_clause() -> Cnf {
        Cnf::new(1, vec![vec![1]]).unwrap()
    }

    #[test]
    fn column_count_for_two_clauses() {
        let cnf = Cnf::new(1, vec![vec![1], vec![-1]]).unwrap();
        let p = GadgetParams::new(&cnf, 1).unwrap();
        assert_eq!((p.groups, p.group_vars), (1, 1));
        assert_eq!(p.columns, 12);
    }

    #[test]
    fn group_sizes_follow_log_three() {
        let cnf = Cnf::new(7, vec![vec![1]]).unwrap();
        assert_eq!(GadgetParams::new(&cnf, 1).unwrap().group_vars, 1);
        assert_eq!(GadgetParams::new(&cnf, 2).unwrap().group_vars, 3);
        assert_eq!(GadgetParams::new(&cnf, 3).unwrap().group_vars, 4);
        assert_eq!(GadgetParams::new(&cnf, 2).unwrap().groups, 3);
        assert!(GadgetParams::new(&cnf, 0).is_err());
    }

    #[test]
    fn census_matches_closed_form() {
        let inst = gen_steiner(&single_clause(), 1).unwrap();
        assert_eq!(inst.steiner.graph.n(), inst.params.vertex_count());
        assert_eq!(inst.base as usize, inst.steiner.graph.n());
        let allowed: Vec<i64> = (0..5).map(|e| (inst.base as i64).pow(e)).collect();
        assert!(inst.steiner.weights.0.iter().all(|w| allowed.contains(w)));
    }

    #[test]
    fn dimacs_round_trip() {
        let text = "c sample\np cnf 3 2\n1 -2 0\n2 3\n-1 0\n";
        let cnf = parse_dimacs(text).unwrap();
        assert_eq!(cnf.clauses, vec![vec![1, -2], vec![2, 3, -1]]);
        assert_eq!(parse_dimacs(&cnf.to_dimacs()).unwrap(), cnf);
        assert!(parse_dimacs("p cnf 1 1\n2 0\n").is_err());
        assert!(parse_dimacs("p cnf 1 2\n1 0\n").is_err());
        assert_eq!(parse_dimacs("p cnf 1 0\n"), Err(HardgenError::EmptyFormula));
    }

    #[test]
    fn unsatisfying_assignment_has_no_witness() {
        let inst = gen_steiner(&single_clause(), 1).unwrap();
        assert_eq!(inst.witness(&single_clause(), &[false]), Err(HardgenError::Unsatisfied(0)));
    }
}
