//! CountC recurrences for vertex-subset problems: Steiner Tree, and the constrained variants of
//! Connected Vertex Cover, Connected Dominating Set, Connected Odd Cycle Transversal,
//! Feedback Vertex Set and Connected Feedback Vertex Set.
//!
//! Vertex size and weight contributions are booked when a vertex is forgotten, so joins never
//! double count and children simply multiply.

use crate::decomposition::NiceTreeDecomposition;
use crate::engine::dp::{self, AccSpec, Delta, DpOutput, JoinRule, Recurrence};
use crate::engine::{
    amplified_solve, sample_weights, universe, CountCProcedure, Element, MonteCarloAnswer, Parities,
    WeightFunction,
};
use crate::error::{Result, SolveError};
use crate::graph::UndirectedGraph;

/// State `0`: outside the solution.
pub const OUT: u8 = 0;
/// State `1₁`: in the solution, first side of the cut.
pub const ONE1: u8 = 1;
/// State `1₂`: in the solution, second side of the cut.
pub const ONE2: u8 = 2;

/// Tag of the forest copy `(v, F)` / transversal copy `(v, X)` in two-tag universes.
pub const TAG_MAIN: u8 = 0;
/// Tag of the marker copy `(v, M)` / left-side copy `(v, L)` in two-tag universes.
pub const TAG_AUX: u8 = 1;

fn mask(n: usize, set: &[usize]) -> Result<Vec<bool>> {
    let mut m = vec![false; n];
    for &v in set {
        if v >= n {
            return Err(SolveError::InvalidInstance(format!("vertex {v} out of range")));
        }
        m[v] = true;
    }
    Ok(m)
}

fn check_td(td: &NiceTreeDecomposition, g: &UndirectedGraph) -> Result<()> {
    let v = td.validate(g);
    if v.is_empty() {
        Ok(())
    } else {
        Err(SolveError::Decomposition(v[0].to_string()))
    }
}

fn tagged(omega: &WeightFunction, v: usize, tag: u8) -> usize {
    omega.get(v * 2 + tag as usize)
}

/// Parities of the root entry at `acc`.
pub fn root_parities(out: &DpOutput, acc: &[usize], max_weight: usize) -> Parities {
    let mut p = Parities::zeros(max_weight);
    if let Some(poly) = out.at(acc) {
        p.xor_with(poly);
    }
    p
}

fn any_odd(out: &DpOutput, pred: impl Fn(&[usize]) -> bool) -> bool {
    out.root.iter().any(|(acc, p)| pred(acc) && p.iter().any(|&x| x != 0))
}

// ---------------------------------------------------------------------------------------------
// Steiner Tree and Connected Vertex Cover: alphabet {0, 1₁, 1₂}, accumulators (i).

/// Steiner Tree: `X ⊇ T`, consistent cut, `v₁ ∈ X₁`.
pub struct SteinerRec<'a> {
    pub omega: &'a [usize],
    pub terminal: &'a [bool],
    pub v1: usize,
    pub k: usize,
}

impl Recurrence for SteinerRec<'_> {
    fn alphabet(&self) -> usize {
        3
    }
    fn accumulators(&self) -> Vec<AccSpec> {
        vec![AccSpec::upto(self.k)]
    }
    fn max_weight(&self) -> usize {
        2 * self.omega.len() * self.k
    }
    fn introduce(&self, v: usize, out: &mut Vec<(u8, Delta)>) {
        if !self.terminal[v] {
            out.push((OUT, Delta::zero()));
        }
        out.push((ONE1, Delta::zero()));
        if v != self.v1 {
            out.push((ONE2, Delta::zero()));
        }
    }
    fn edge(&self, _e: usize, _u: usize, _v: usize, su: u8, sv: u8, out: &mut Vec<(u8, u8, Delta)>) {
        if !matches!((su, sv), (ONE1, ONE2) | (ONE2, ONE1)) {
            out.push((su, sv, Delta::zero()));
        }
    }
    fn forget(&self, v: usize, s: u8, out: &mut Vec<Delta>) {
        out.push(if s == OUT { Delta::zero() } else { Delta::weight(self.omega[v]).plus(0, 1) });
    }
    fn join_rule(&self) -> JoinRule {
        JoinRule::Identical
    }
}

/// Connected Vertex Cover: as Steiner with `S` in place of `T` and uncovered edges filtered.
pub struct CvcRec<'a> {
    pub omega: &'a [usize],
    pub required: &'a [bool],
    pub v1: usize,
    pub k: usize,
}

impl Recurrence for CvcRec<'_> {
    fn alphabet(&self) -> usize {
        3
    }
    fn accumulators(&self) -> Vec<AccSpec> {
        vec![AccSpec::upto(self.k)]
    }
    fn max_weight(&self) -> usize {
        2 * self.omega.len() * self.k
    }
    fn introduce(&self, v: usize, out: &mut Vec<(u8, Delta)>) {
        if !self.required[v] && v != self.v1 {
            out.push((OUT, Delta::zero()));
        }
        out.push((ONE1, Delta::zero()));
        if v != self.v1 {
            out.push((ONE2, Delta::zero()));
        }
    }
    fn edge(&self, _e: usize, _u: usize, _v: usize, su: u8, sv: u8, out: &mut Vec<(u8, u8, Delta)>) {
        let covered = su != OUT || sv != OUT;
        let consistent = !matches!((su, sv), (ONE1, ONE2) | (ONE2, ONE1));
        if covered && consistent {
            out.push((su, sv, Delta::zero()));
        }
    }
    fn forget(&self, v: usize, s: u8, out: &mut Vec<Delta>) {
        out.push(if s == OUT { Delta::zero() } else { Delta::weight(self.omega[v]).plus(0, 1) });
    }
    fn join_rule(&self) -> JoinRule {
        JoinRule::Identical
    }
}

// ---------------------------------------------------------------------------------------------
// Connected Dominating Set: alphabet {0_N, 0_Y, 1₁, 1₂}, covering join on the 0_Y bit.

pub const CDS_0N: u8 = 0;
pub const CDS_0Y: u8 = 1;
pub const CDS_1: u8 = 2;
pub const CDS_2: u8 = 3;

pub struct CdsRec<'a> {
    pub omega: &'a [usize],
    pub required: &'a [bool],
    pub v1: usize,
    pub k: usize,
}

impl Recurrence for CdsRec<'_> {
    fn alphabet(&self) -> usize {
        4
    }
    fn accumulators(&self) -> Vec<AccSpec> {
        vec![AccSpec::upto(self.k)]
    }
    fn max_weight(&self) -> usize {
        2 * self.omega.len() * self.k
    }
    fn introduce(&self, v: usize, out: &mut Vec<(u8, Delta)>) {
        if !self.required[v] && v != self.v1 {
            out.push((CDS_0N, Delta::zero()));
        }
        out.push((CDS_1, Delta::zero()));
        if v != self.v1 {
            out.push((CDS_2, Delta::zero()));
        }
    }
    fn edge(&self, _e: usize, _u: usize, _v: usize, su: u8, sv: u8, out: &mut Vec<(u8, u8, Delta)>) {
        let zero = |s: u8| s == CDS_0N || s == CDS_0Y;
        let z = Delta::zero();
        match (zero(su), zero(sv)) {
            (true, true) => out.push((su, sv, z)),
            (false, false) => {
                if su == sv {
                    out.push((su, sv, z));
                }
            }
            (false, true) => {
                if sv == CDS_0Y {
                    out.push((su, CDS_0Y, z));
                    out.push((su, CDS_0N, z));
                }
            }
            (true, false) => {
                if su == CDS_0Y {
                    out.push((CDS_0Y, sv, z));
                    out.push((CDS_0N, sv, z));
                }
            }
        }
    }
    fn forget(&self, v: usize, s: u8, out: &mut Vec<Delta>) {
        match s {
            CDS_0N => {}
            CDS_0Y => out.push(Delta::zero()),
            _ => out.push(Delta::weight(self.omega[v]).plus(0, 1)),
        }
    }
    fn join_rule(&self) -> JoinRule {
        JoinRule::Covering
    }
    fn split(&self, s: u8) -> (u8, bool) {
        match s {
            CDS_0Y => (CDS_0N, true),
            _ => (s, false),
        }
    }
    fn compose(&self, key: u8, bit: bool) -> Option<u8> {
        match (key, bit) {
            (CDS_0N, true) => Some(CDS_0Y),
            (_, true) => None,
            (k, false) => Some(k),
        }
    }
}

// ---------------------------------------------------------------------------------------------
// Connected Odd Cycle Transversal: alphabet {0_L, 0_R, 1₁, 1₂}, universe V × {X, L}.

pub const OCT_0L: u8 = 0;
pub const OCT_0R: u8 = 1;
pub const OCT_1: u8 = 2;
pub const OCT_2: u8 = 3;

pub struct CoctRec<'a> {
    pub omega: &'a WeightFunction,
    pub required: &'a [bool],
    pub v1: usize,
    pub k: usize,
}

impl Recurrence for CoctRec<'_> {
    fn alphabet(&self) -> usize {
        4
    }
    fn accumulators(&self) -> Vec<AccSpec> {
        vec![AccSpec::upto(self.k)]
    }
    fn max_weight(&self) -> usize {
        self.omega.n_max() * self.omega.len() / 2
    }
    fn introduce(&self, v: usize, out: &mut Vec<(u8, Delta)>) {
        if !self.required[v] && v != self.v1 {
            out.push((OCT_0L, Delta::zero()));
            out.push((OCT_0R, Delta::zero()));
        }
        out.push((OCT_1, Delta::zero()));
        if v != self.v1 {
            out.push((OCT_2, Delta::zero()));
        }
    }
    fn edge(&self, _e: usize, _u: usize, _v: usize, su: u8, sv: u8, out: &mut Vec<(u8, u8, Delta)>) {
        let cut = matches!((su, sv), (OCT_1, OCT_2) | (OCT_2, OCT_1));
        let mono = su == sv && (su == OCT_0L || su == OCT_0R);
        if !cut && !mono {
            out.push((su, sv, Delta::zero()));
        }
    }
    fn forget(&self, v: usize, s: u8, out: &mut Vec<Delta>) {
        out.push(match s {
            OCT_0L => Delta::weight(tagged(self.omega, v, TAG_AUX)),
            OCT_0R => Delta::zero(),
            _ => Delta::weight(tagged(self.omega, v, TAG_MAIN)).plus(0, 1),
        });
    }
    fn join_rule(&self) -> JoinRule {
        JoinRule::Identical
    }
}

// ---------------------------------------------------------------------------------------------
// Constrained FVS: marked forests X ⊆ V∖S, alphabet {0, 1₁, 1₂}, accumulators (a, b, c).

/// Ranges of the forest accumulators: `a ≤ max_a`, `b ≤ max_b`, `c ≤ max_a`.
#[derive(Clone, Copy, Debug)]
pub struct ForestBounds {
    pub max_a: usize,
    pub max_b: usize,
}

impl ForestBounds {
    /// Bounds for forests of at most `max_a` vertices.
    pub fn for_size(max_a: usize) -> Self {
        ForestBounds { max_a, max_b: max_a.saturating_sub(1) }
    }
}

pub struct FvsRec<'a> {
    pub omega: &'a WeightFunction,
    pub required: &'a [bool],
    pub bounds: ForestBounds,
}

impl Recurrence for FvsRec<'_> {
    fn alphabet(&self) -> usize {
        3
    }
    fn accumulators(&self) -> Vec<AccSpec> {
        vec![AccSpec::upto(self.bounds.max_a), AccSpec::upto(self.bounds.max_b), AccSpec::upto(self.bounds.max_a)]
    }
    fn max_weight(&self) -> usize {
        2 * self.omega.n_max() * self.bounds.max_a
    }
    fn introduce(&self, v: usize, out: &mut Vec<(u8, Delta)>) {
        out.push((OUT, Delta::zero()));
        if !self.required[v] {
            out.push((ONE1, Delta::zero()));
            out.push((ONE2, Delta::zero()));
        }
    }
    fn edge(&self, _e: usize, _u: usize, _v: usize, su: u8, sv: u8, out: &mut Vec<(u8, u8, Delta)>) {
        if matches!((su, sv), (ONE1, ONE2) | (ONE2, ONE1)) {
            return;
        }
        let inside = su == sv && su != OUT;
        out.push((su, sv, if inside { Delta::zero().plus(1, 1) } else { Delta::zero() }));
    }
    fn forget(&self, v: usize, s: u8, out: &mut Vec<Delta>) {
        forest_forget(self.omega, v, s == OUT, s == ONE1, out);
    }
    fn join_rule(&self) -> JoinRule {
        JoinRule::Identical
    }
}

/// Forget rule shared by the forest recurrences: a forest vertex adds `a`, its `F` weight, and
/// may be marked when it lies on the first side.
fn forest_forget(omega: &WeightFunction, v: usize, outside: bool, first_side: bool, out: &mut Vec<Delta>) {
    if outside {
        out.push(Delta::zero());
        return;
    }
    let base = Delta::weight(tagged(omega, v, TAG_MAIN)).plus(0, 1);
    out.push(base);
    if first_side {
        out.push(base.add(Delta::weight(tagged(omega, v, TAG_AUX)).plus(2, 1)));
    }
}

// ---------------------------------------------------------------------------------------------
// Constrained CFVS: alphabet {0₁, 0₂, 1₁, 1₂}; 0_j = complement side Y_j, 1_j = forest side X_j.

pub const CF_01: u8 = 0;
pub const CF_02: u8 = 1;
pub const CF_11: u8 = 2;
pub const CF_12: u8 = 3;

pub struct CfvsRec<'a> {
    pub omega: &'a WeightFunction,
    pub required: &'a [bool],
    pub v1: usize,
    pub bounds: ForestBounds,
}

impl Recurrence for CfvsRec<'_> {
    fn alphabet(&self) -> usize {
        4
    }
    fn accumulators(&self) -> Vec<AccSpec> {
        vec![AccSpec::upto(self.bounds.max_a), AccSpec::upto(self.bounds.max_b), AccSpec::upto(self.bounds.max_a)]
    }
    fn max_weight(&self) -> usize {
        2 * self.omega.n_max() * self.bounds.max_a
    }
    fn introduce(&self, v: usize, out: &mut Vec<(u8, Delta)>) {
        out.push((CF_01, Delta::zero()));
        if v != self.v1 {
            out.push((CF_02, Delta::zero()));
        }
        if !self.required[v] && v != self.v1 {
            out.push((CF_11, Delta::zero()));
            out.push((CF_12, Delta::zero()));
        }
    }
    fn edge(&self, _e: usize, _u: usize, _v: usize, su: u8, sv: u8, out: &mut Vec<(u8, u8, Delta)>) {
        let pair = (su.min(sv), su.max(sv));
        if pair == (CF_01, CF_02) || pair == (CF_11, CF_12) {
            return;
        }
        let inside = su == sv && (su == CF_11 || su == CF_12);
        out.push((su, sv, if inside { Delta::zero().plus(1, 1) } else { Delta::zero() }));
    }
    fn forget(&self, v: usize, s: u8, out: &mut Vec<Delta>) {
        forest_forget(self.omega, v, s == CF_01 || s == CF_02, s == CF_11, out);
    }
    fn join_rule(&self) -> JoinRule {
        JoinRule::Identical
    }
}

// ---------------------------------------------------------------------------------------------
// CountC procedures (single v₁, exact size) and solvers.

/// Steiner CountC at exact size `k` with `v₁` the smallest terminal.
pub struct SteinerCountC<'a> {
    pub graph: &'a UndirectedGraph,
    pub terminals: &'a [usize],
    pub k: usize,
}

impl CountCProcedure for SteinerCountC<'_> {
    fn universe(&self) -> Vec<Element> {
        universe::vertices(self.graph.n())
    }
    fn count(&self, omega: &WeightFunction, td: &NiceTreeDecomposition) -> Result<Parities> {
        check_td(td, self.graph)?;
        let terminal = mask(self.graph.n(), self.terminals)?;
        let v1 = *self.terminals.iter().min().ok_or_else(|| SolveError::InvalidInstance("no terminals".into()))?;
        let rec = SteinerRec { omega: omega.values(), terminal: &terminal, v1, k: self.k };
        let out = dp::run(&rec, td, None);
        Ok(root_parities(&out, &[self.k], rec.max_weight()))
    }
}

/// Which constrained connected problem a [`ConnectedCountC`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnectedProblem {
    Cvc,
    Cds,
    Coct,
}

/// CountC for CVC / CDS / COCT at exact size `k` with a fixed `v₁` (forced into `X₁`).
pub struct ConnectedCountC<'a> {
    pub problem: ConnectedProblem,
    pub graph: &'a UndirectedGraph,
    pub required: &'a [usize],
    pub v1: usize,
    pub k: usize,
}

impl ConnectedCountC<'_> {
    /// Root table over the size accumulator `i ≤ k`.
    pub fn table(&self, omega: &WeightFunction, td: &NiceTreeDecomposition) -> Result<DpOutput> {
        let required = mask(self.graph.n(), self.required)?;
        Ok(match self.problem {
            ConnectedProblem::Cvc => {
                dp::run(&CvcRec { omega: omega.values(), required: &required, v1: self.v1, k: self.k }, td, None)
            }
            ConnectedProblem::Cds => {
                dp::run(&CdsRec { omega: omega.values(), required: &required, v1: self.v1, k: self.k }, td, None)
            }
            ConnectedProblem::Coct => {
                dp::run(&CoctRec { omega, required: &required, v1: self.v1, k: self.k }, td, None)
            }
        })
    }
}

impl CountCProcedure for ConnectedCountC<'_> {
    fn universe(&self) -> Vec<Element> {
        match self.problem {
            ConnectedProblem::Coct => universe::vertex_tags(self.graph.n(), 2),
            _ => universe::vertices(self.graph.n()),
        }
    }
    fn count(&self, omega: &WeightFunction, td: &NiceTreeDecomposition) -> Result<Parities> {
        check_td(td, self.graph)?;
        let out = self.table(omega, td)?;
        Ok(root_parities(&out, &[self.k], omega.w_limit()))
    }
}

/// Constrained FVS CountC: root parities at `(A, B, C)`.
pub struct FvsCountC<'a> {
    pub graph: &'a UndirectedGraph,
    pub required: &'a [usize],
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl CountCProcedure for FvsCountC<'_> {
    fn universe(&self) -> Vec<Element> {
        universe::vertex_tags(self.graph.n(), 2)
    }
    fn count(&self, omega: &WeightFunction, td: &NiceTreeDecomposition) -> Result<Parities> {
        check_td(td, self.graph)?;
        let required = mask(self.graph.n(), self.required)?;
        let rec = FvsRec { omega, required: &required, bounds: ForestBounds::for_size(self.a) };
        let out = dp::run(&rec, td, None);
        Ok(root_parities(&out, &[self.a, self.b, self.c], rec.max_weight()))
    }
}

/// Constrained CFVS CountC with `v₁` fixed: root parities at `(A, B, C)`.
pub struct CfvsCountC<'a> {
    pub graph: &'a UndirectedGraph,
    pub required: &'a [usize],
    pub v1: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl CountCProcedure for CfvsCountC<'_> {
    fn universe(&self) -> Vec<Element> {
        universe::vertex_tags(self.graph.n(), 2)
    }
    fn count(&self, omega: &WeightFunction, td: &NiceTreeDecomposition) -> Result<Parities> {
        check_td(td, self.graph)?;
        let required = mask(self.graph.n(), self.required)?;
        let rec = CfvsRec { omega, required: &required, v1: self.v1, bounds: ForestBounds::for_size(self.a) };
        let out = dp::run(&rec, td, None);
        Ok(root_parities(&out, &[self.a, self.b, self.c], rec.max_weight()))
    }
}

/// True iff the root of a forest table holds an odd entry at some `(A, B, A − B)` with `A ∈ sizes`.
pub fn forest_yes(out: &DpOutput, sizes: impl Fn(usize) -> bool) -> bool {
    any_odd(out, |acc| sizes(acc[0]) && acc[1] + acc[2] == acc[0])
}

/// Amplification settings shared by the solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunParams {
    pub repetitions: usize,
    pub seed: u64,
}

impl Default for RunParams {
    fn default() -> Self {
        RunParams { repetitions: 20, seed: 0 }
    }
}

/// Steiner Tree with at most `k` vertices.
pub fn steiner(
    g: &UndirectedGraph,
    terminals: &[usize],
    k: usize,
    td: &NiceTreeDecomposition,
    params: RunParams,
) -> Result<MonteCarloAnswer> {
    check_td(td, g)?;
    let terminal = mask(g.n(), terminals)?;
    let Some(&v1) = terminals.iter().min() else {
        return Err(SolveError::InvalidInstance("terminal set is empty".into()));
    };
    let t = terminal.iter().filter(|&&b| b).count();
    if k < t {
        return Err(SolveError::InvalidInstance(format!("budget {k} below terminal count {t}")));
    }
    let k = k.min(g.n());
    amplified_solve(params.repetitions, params.seed, |seed| {
        let omega = sample_weights(universe::vertices(g.n()), seed)?;
        let rec = SteinerRec { omega: omega.values(), terminal: &terminal, v1, k };
        Ok(any_odd(&dp::run(&rec, td, None), |acc| acc[0] >= 1))
    })
}

/// Candidates for `v₁`: the smallest required vertex, or a set every solution must meet.
fn v1_choices(problem: ConnectedProblem, g: &UndirectedGraph, required: &[usize]) -> Vec<usize> {
    if let Some(&v) = required.iter().min() {
        return vec![v];
    }
    match problem {
        ConnectedProblem::Cvc => match g.edges().first() {
            Some(&(u, v)) => vec![u, v],
            None => (0..g.n()).collect(),
        },
        ConnectedProblem::Cds => {
            let adj = g.adjacency();
            match (0..g.n()).min_by_key(|&v| (adj[v].len(), v)) {
                Some(u) => {
                    let mut c = adj[u].clone();
                    c.push(u);
                    c.sort_unstable();
                    c
                }
                None => Vec::new(),
            }
        }
        ConnectedProblem::Coct => (0..g.n()).collect(),
    }
}

fn is_bipartite(g: &UndirectedGraph) -> bool {
    let adj = g.adjacency();
    let mut side = vec![u8::MAX; g.n()];
    for s in 0..g.n() {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    stack.push(w);
                } else if side[w] == side[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Constrained CVC / CDS / COCT with at most `k` solution vertices.
///
/// Size zero is decided directly: the empty set is accepted when it is a valid cover /
/// transversal and nothing is required.
pub fn connected(
    problem: ConnectedProblem,
    g: &UndirectedGraph,
    required: &[usize],
    k: usize,
    td: &NiceTreeDecomposition,
    params: RunParams,
) -> Result<MonteCarloAnswer> {
    check_td(td, g)?;
    if k > g.n() {
        return Err(SolveError::InvalidInstance(format!("budget {k} exceeds vertex count")));
    }
    let req = mask(g.n(), required)?;
    let empty_ok = required.is_empty()
        && match problem {
            ConnectedProblem::Cvc => g.m() == 0,
            ConnectedProblem::Cds => g.n() == 0,
            ConnectedProblem::Coct => is_bipartite(g),
        };
    if empty_ok {
        return Ok(MonteCarloAnswer::settled(true, params.seed));
    }
    if k == 0 {
        return Ok(MonteCarloAnswer::settled(false, params.seed));
    }
    let choices = v1_choices(problem, g, required);
    let universe = match problem {
        ConnectedProblem::Coct => universe::vertex_tags(g.n(), 2),
        _ => universe::vertices(g.n()),
    };
    amplified_solve(params.repetitions, params.seed, |seed| {
        let omega = sample_weights(universe.clone(), seed)?;
        for &v1 in &choices {
            let out = match problem {
                ConnectedProblem::Cvc => {
                    dp::run(&CvcRec { omega: omega.values(), required: &req, v1, k }, td, None)
                }
                ConnectedProblem::Cds => {
                    dp::run(&CdsRec { omega: omega.values(), required: &req, v1, k }, td, None)
                }
                ConnectedProblem::Coct => dp::run(&CoctRec { omega: &omega, required: &req, v1, k }, td, None),
            };
            if any_odd(&out, |acc| acc[0] >= 1) {
                return Ok(true);
            }
        }
        Ok(false)
    })
}

/// Constrained FVS: a set `Y ⊇ S` of at most `k` vertices whose removal leaves a forest.
pub fn fvs(
    g: &UndirectedGraph,
    required: &[usize],
    k: usize,
    td: &NiceTreeDecomposition,
    params: RunParams,
) -> Result<MonteCarloAnswer> {
    check_td(td, g)?;
    let req = mask(g.n(), required)?;
    let s = req.iter().filter(|&&b| b).count();
    if s > k {
        return Ok(MonteCarloAnswer::settled(false, params.seed));
    }
    if k >= g.n() {
        return Ok(MonteCarloAnswer::settled(true, params.seed));
    }
    // supersets of a feedback vertex set are feedback vertex sets, so size exactly k suffices
    let a = g.n() - k;
    amplified_solve(params.repetitions, params.seed, |seed| {
        let omega = sample_weights(universe::vertex_tags(g.n(), 2), seed)?;
        let rec = FvsRec { omega: &omega, required: &req, bounds: ForestBounds::for_size(a) };
        Ok(forest_yes(&dp::run(&rec, td, None), |x| x == a))
    })
}

/// Constrained CFVS: a connected `Y ⊇ S` of at most `k` vertices whose removal leaves a forest.
pub fn cfvs(
    g: &UndirectedGraph,
    required: &[usize],
    k: usize,
    td: &NiceTreeDecomposition,
    params: RunParams,
) -> Result<MonteCarloAnswer> {
    check_td(td, g)?;
    let req = mask(g.n(), required)?;
    let n = g.n();
    let forest = g.m() + g.components().1 == n;
    if required.is_empty() && forest {
        return Ok(MonteCarloAnswer::settled(true, params.seed));
    }
    if k == 0 {
        return Ok(MonteCarloAnswer::settled(false, params.seed));
    }
    let k = k.min(n);
    let choices: Vec<usize> = match required.iter().min() {
        Some(&v) => vec![v],
        None => (0..n).collect(),
    };
    let max_a = n - 1;
    amplified_solve(params.repetitions, params.seed, |seed| {
        let omega = sample_weights(universe::vertex_tags(n, 2), seed)?;
        for &v1 in &choices {
            let rec = CfvsRec { omega: &omega, required: &req, v1, bounds: ForestBounds::for_size(max_a) };
            if forest_yes(&dp::run(&rec, td, None), |a| a + k >= n) {
                return Ok(true);
            }
        }
        Ok(false)
    })
}
