//! CountC recurrences for edge- and arc-subset problems: undirected and directed Partial Cycle
//! Cover (with Hamiltonicity, Min Cycle Cover and Longest Path on top), Graph Metric TSP,
//! Exact k-Leaf Spanning Tree, Exact k-Leaf Outbranching and Exact Full Degree Spanning Tree.
//!
//! Edge counters and weights are booked at IntroduceEdge; per-vertex counters at Forget.

use crate::decomposition::{make_nice_edges, NiceTreeDecomposition, TreeDecomposition};
use crate::engine::dp::{self, AccSpec, Delta, DpOutput, JoinRule, Recurrence};
use crate::engine::{
    amplified_solve, sample_weights, universe, CountCProcedure, Element, MonteCarloAnswer, Parities,
    WeightFunction,
};
use crate::error::{Result, SolveError};
use crate::graph::{DirectedGraph, UndirectedGraph};
use crate::vertex::{root_parities, RunParams};

fn check_td_edges(td: &NiceTreeDecomposition, n: usize, edges: &[(usize, usize)]) -> Result<()> {
    match td.validate_edges(n, edges).first() {
        None => Ok(()),
        Some(v) => Err(SolveError::Decomposition(v.to_string())),
    }
}

fn tag(omega: &WeightFunction, e: usize, t: usize) -> usize {
    omega.get(e * 2 + t)
}

fn odd_at(out: &DpOutput, pred: impl Fn(&[usize]) -> bool) -> bool {
    out.root.iter().any(|(acc, p)| pred(acc) && p.iter().any(|&x| x != 0))
}

// ---------------------------------------------------------------------------------------------
// Undirected Partial Cycle Cover: alphabet {0, 1₁, 1₂, 2}, universe E × {X, M},
// accumulators (markers, edges).

pub const PCC_0: u8 = 0;
pub const PCC_11: u8 = 1;
pub const PCC_12: u8 = 2;
pub const PCC_2: u8 = 3;

/// Join combination of the undirected cycle-cover alphabet.
pub fn pcc_combine(a: u8, b: u8) -> Option<u8> {
    match (a, b) {
        (PCC_0, x) | (x, PCC_0) => Some(x),
        (PCC_11, PCC_11) | (PCC_12, PCC_12) => Some(PCC_2),
        _ => None,
    }
}

fn pcc_one(j: usize) -> u8 {
    if j == 1 {
        PCC_11
    } else {
        PCC_12
    }
}

pub struct PccRec<'a> {
    pub omega: &'a WeightFunction,
    pub markers: usize,
    pub l: usize,
}

impl Recurrence for PccRec<'_> {
    fn alphabet(&self) -> usize {
        4
    }
    fn accumulators(&self) -> Vec<AccSpec> {
        vec![AccSpec::upto(self.markers), AccSpec::upto(self.l)]
    }
    fn max_weight(&self) -> usize {
        self.omega.n_max() * (self.l + self.markers)
    }
    fn introduce(&self, _v: usize, out: &mut Vec<(u8, Delta)>) {
        out.push((PCC_0, Delta::zero()));
    }
    fn edge(&self, e: usize, _u: usize, _v: usize, su: u8, sv: u8, out: &mut Vec<(u8, u8, Delta)>) {
        out.push((su, sv, Delta::zero()));
        // the edge joins its endpoints on side j: a degree-1 endpoint had degree 0 before,
        // a degree-2 endpoint had degree 1 on side j
        let before = |s: u8, j: usize| -> Option<u8> {
            if s == pcc_one(j) {
                Some(PCC_0)
            } else if s == PCC_2 {
                Some(pcc_one(j))
            } else {
                None
            }
        };
        for j in 1..=2 {
            if let (Some(au), Some(av)) = (before(su, j), before(sv, j)) {
                let d = Delta::weight(tag(self.omega, e, 0)).plus(1, 1);
                out.push((au, av, d));
                if j == 1 {
                    out.push((au, av, d.add(Delta::weight(tag(self.omega, e, 1)).plus(0, 1))));
                }
            }
        }
    }
    fn forget(&self, _v: usize, s: u8, out: &mut Vec<Delta>) {
        if s == PCC_0 || s == PCC_2 {
            out.push(Delta::zero());
        }
    }
    fn join_rule(&self) -> JoinRule {
        JoinRule::Pairwise
    }
    fn combine(&self, a: u8, b: u8) -> Option<u8> {
        pcc_combine(a, b)
    }
}

// ---------------------------------------------------------------------------------------------
// Directed Partial Cycle Cover: alphabet {00, 01₁, 01₂, 10₂, 10₁, 11} (indegree, outdegree),
// numbered so that the code is the additive image used by the fast join.

pub const DPC_00: u8 = 0;
pub const DPC_01_1: u8 = 1;
pub const DPC_01_2: u8 = 2;
pub const DPC_10_2: u8 = 3;
pub const DPC_10_1: u8 = 4;
pub const DPC_11: u8 = 5;

/// Join combination of the directed cycle-cover alphabet.
pub fn dpc_combine(a: u8, b: u8) -> Option<u8> {
    match (a, b) {
        (DPC_00, x) | (x, DPC_00) => Some(x),
        (DPC_01_1, DPC_10_1) | (DPC_10_1, DPC_01_1) | (DPC_01_2, DPC_10_2) | (DPC_10_2, DPC_01_2) => Some(DPC_11),
        _ => None,
    }
}

fn dpc_out(j: usize) -> u8 {
    if j == 1 {
        DPC_01_1
    } else {
        DPC_01_2
    }
}

fn dpc_in(j: usize) -> u8 {
    if j == 1 {
        DPC_10_1
    } else {
        DPC_10_2
    }
}

pub struct DirectedPccRec<'a> {
    pub omega: &'a WeightFunction,
    pub markers: usize,
    pub l: usize,
}

impl Recurrence for DirectedPccRec<'_> {
    fn alphabet(&self) -> usize {
        6
    }
    fn accumulators(&self) -> Vec<AccSpec> {
        vec![AccSpec::upto(self.markers), AccSpec::upto(self.l)]
    }
    fn max_weight(&self) -> usize {
        self.omega.n_max() * (self.l + self.markers)
    }
    fn introduce(&self, _v: usize, out: &mut Vec<(u8, Delta)>) {
        out.push((DPC_00, Delta::zero()));
    }
    fn edge(&self, e: usize, _u: usize, _v: usize, su: u8, sv: u8, out: &mut Vec<(u8, u8, Delta)>) {
        out.push((su, sv, Delta::zero()));
        for j in 1..=2 {
            // the arc supplies the tail's out-degree and the head's in-degree
            let au = if su == dpc_out(j) {
                Some(DPC_00)
            } else if su == DPC_11 {
                Some(dpc_in(j))
            } else {
                None
            };
            let av = if sv == dpc_in(j) {
                Some(DPC_00)
            } else if sv == DPC_11 {
                Some(dpc_out(j))
            } else {
                None
            };
            if let (Some(au), Some(av)) = (au, av) {
                let d = Delta::weight(tag(self.omega, e, 0)).plus(1, 1);
                out.push((au, av, d));
                if j == 1 {
                    out.push((au, av, d.add(Delta::weight(tag(self.omega, e, 1)).plus(0, 1))));
                }
            }
        }
    }
    fn forget(&self, _v: usize, s: u8, out: &mut Vec<Delta>) {
        if s == DPC_00 || s == DPC_11 {
            out.push(Delta::zero());
        }
    }
    fn join_rule(&self) -> JoinRule {
        JoinRule::Pairwise
    }
    fn combine(&self, a: u8, b: u8) -> Option<u8> {
        dpc_combine(a, b)
    }
}

// ---------------------------------------------------------------------------------------------
// Graph Metric TSP: state = 2·side + degree parity, universe E × {1, 2}, accumulator (size).

/// State with cut side `side ∈ {0, 1}` and degree parity `parity`.
pub fn tsp_state(side: u8, parity: u8) -> u8 {
    side * 2 + parity
}

/// Join combination for the TSP alphabet: equal sides, parities add mod 2.
pub fn tsp_combine(a: u8, b: u8) -> Option<u8> {
    (a / 2 == b / 2).then_some(tsp_state(a / 2, (a ^ b) & 1))
}

pub struct TspRec<'a> {
    pub omega: &'a WeightFunction,
    pub v1: usize,
    pub budget: usize,
}

impl Recurrence for TspRec<'_> {
    fn alphabet(&self) -> usize {
        4
    }
    fn accumulators(&self) -> Vec<AccSpec> {
        vec![AccSpec::upto(self.budget)]
    }
    fn max_weight(&self) -> usize {
        self.omega.n_max() * self.budget
    }
    fn introduce(&self, v: usize, out: &mut Vec<(u8, Delta)>) {
        out.push((tsp_state(0, 0), Delta::zero()));
        if v != self.v1 {
            out.push((tsp_state(1, 0), Delta::zero()));
        }
    }
    fn edge(&self, e: usize, _u: usize, _v: usize, su: u8, sv: u8, out: &mut Vec<(u8, u8, Delta)>) {
        out.push((su, sv, Delta::zero()));
        if su / 2 == sv / 2 {
            out.push((su ^ 1, sv ^ 1, Delta::weight(tag(self.omega, e, 0)).plus(0, 1)));
            out.push((su, sv, Delta::weight(tag(self.omega, e, 1)).plus(0, 2)));
        }
    }
    fn forget(&self, _v: usize, s: u8, out: &mut Vec<Delta>) {
        if s & 1 == 0 {
            out.push(Delta::zero());
        }
    }
    fn join_rule(&self) -> JoinRule {
        JoinRule::Pairwise
    }
    fn combine(&self, a: u8, b: u8) -> Option<u8> {
        tsp_combine(a, b)
    }
}

// ---------------------------------------------------------------------------------------------
// Exact k-Leaf Spanning Tree: alphabet {1₁, 1₂, 0₀, 0₁}; 0 marks a distinguished degree-one
// vertex of R, its subscript records whether its edge is already chosen.
// Accumulators (|R|, edges, degree of v₁ capped at 2).

pub const KL_11: u8 = 0;
pub const KL_12: u8 = 1;
pub const KL_00: u8 = 2;
pub const KL_01: u8 = 3;

pub struct KLeafRec<'a> {
    pub omega: &'a [usize],
    pub n_max: usize,
    pub v1: usize,
    pub n: usize,
}

impl Recurrence for KLeafRec<'_> {
    fn alphabet(&self) -> usize {
        4
    }
    fn accumulators(&self) -> Vec<AccSpec> {
        let top = self.n.saturating_sub(1);
        vec![AccSpec::upto(top), AccSpec::upto(top), AccSpec::capped(2)]
    }
    fn max_weight(&self) -> usize {
        self.n_max * self.n.saturating_sub(1)
    }
    fn introduce(&self, v: usize, out: &mut Vec<(u8, Delta)>) {
        if v != self.v1 {
            out.push((KL_00, Delta::zero()));
        }
        out.push((KL_11, Delta::zero()));
        if v != self.v1 {
            out.push((KL_12, Delta::zero()));
        }
    }
    fn edge(&self, e: usize, u: usize, v: usize, su: u8, sv: u8, out: &mut Vec<(u8, u8, Delta)>) {
        out.push((su, sv, Delta::zero()));
        let inner = |s: u8| s == KL_11 || s == KL_12;
        let take = |at_v1: bool| {
            let d = Delta::weight(self.omega[e]).plus(1, 1);
            if at_v1 {
                d.plus(2, 1)
            } else {
                d
            }
        };
        if inner(su) && su == sv {
            out.push((su, sv, take(u == self.v1 || v == self.v1)));
        } else if inner(su) && sv == KL_01 {
            out.push((su, KL_00, take(u == self.v1)));
        } else if su == KL_01 && inner(sv) {
            out.push((KL_00, sv, take(v == self.v1)));
        }
    }
    fn forget(&self, v: usize, s: u8, out: &mut Vec<Delta>) {
        match s {
            KL_11 => out.push(Delta::zero()),
            KL_12 if v != self.v1 => out.push(Delta::zero()),
            KL_01 if v != self.v1 => out.push(Delta::zero().plus(0, 1)),
            _ => {}
        }
    }
    fn join_rule(&self) -> JoinRule {
        JoinRule::Disjoint
    }
    fn split(&self, s: u8) -> (u8, bool) {
        if s == KL_01 {
            (KL_00, true)
        } else {
            (s, false)
        }
    }
    fn compose(&self, key: u8, bit: bool) -> Option<u8> {
        match (key, bit) {
            (KL_00, true) => Some(KL_01),
            (_, true) => None,
            (k, false) => Some(k),
        }
    }
}

// ---------------------------------------------------------------------------------------------
// Exact k-Leaf Outbranching: state = 2·s + s_in with s ∈ {1₁, 1₂, 0} (0 = distinguished
// out-degree-zero vertex), s_in = whether the in-arc is chosen. Accumulator (|R|).

pub const OB_1: u8 = 0;
pub const OB_2: u8 = 1;
pub const OB_R: u8 = 2;

/// Outbranching state from its side class `s ∈ {OB_1, OB_2, OB_R}` and in-arc flag.
pub fn ob_state(s: u8, has_in: bool) -> u8 {
    s * 2 + has_in as u8
}

pub struct OutbranchingRec<'a> {
    pub omega: &'a [usize],
    pub n_max: usize,
    pub root: usize,
    pub n: usize,
}

impl Recurrence for OutbranchingRec<'_> {
    fn alphabet(&self) -> usize {
        6
    }
    fn accumulators(&self) -> Vec<AccSpec> {
        vec![AccSpec::upto(self.n)]
    }
    fn max_weight(&self) -> usize {
        self.n_max * self.n.saturating_sub(1)
    }
    fn introduce(&self, v: usize, out: &mut Vec<(u8, Delta)>) {
        out.push((ob_state(OB_1, false), Delta::zero()));
        if v != self.root {
            out.push((ob_state(OB_2, false), Delta::zero()));
        }
        out.push((ob_state(OB_R, false), Delta::zero()));
    }
    fn edge(&self, e: usize, _u: usize, v: usize, su: u8, sv: u8, out: &mut Vec<(u8, u8, Delta)>) {
        out.push((su, sv, Delta::zero()));
        let (cu, cv) = (su / 2, sv / 2);
        let has_in = sv & 1 == 1;
        if v != self.root && has_in && cu != OB_R && (cv == cu || cv == OB_R) {
            out.push((su, sv - 1, Delta::weight(self.omega[e])));
        }
    }
    fn forget(&self, v: usize, s: u8, out: &mut Vec<Delta>) {
        let (class, has_in) = (s / 2, s & 1 == 1);
        let wanted_in = v != self.root;
        if has_in != wanted_in || (v == self.root && class == OB_2) {
            return;
        }
        out.push(if class == OB_R { Delta::zero().plus(0, 1) } else { Delta::zero() });
    }
    fn join_rule(&self) -> JoinRule {
        JoinRule::Disjoint
    }
    fn split(&self, s: u8) -> (u8, bool) {
        (s & !1, s & 1 == 1)
    }
    fn compose(&self, key: u8, bit: bool) -> Option<u8> {
        Some(key | bit as u8)
    }
}

// ---------------------------------------------------------------------------------------------
// Exact Full Degree Spanning Tree: state = 2·side + s_deg (s_deg = some incident edge skipped).
// Accumulators (full-degree vertices, edges).

pub const FD_1: u8 = 0;
pub const FD_2: u8 = 1;

/// Full-degree state from cut side and the skipped-edge flag.
pub fn fd_state(side: u8, skipped: bool) -> u8 {
    side * 2 + skipped as u8
}

pub struct FullDegreeRec<'a> {
    pub omega: &'a [usize],
    pub n_max: usize,
    pub v1: usize,
    pub n: usize,
    pub k: usize,
}

impl Recurrence for FullDegreeRec<'_> {
    fn alphabet(&self) -> usize {
        4
    }
    fn accumulators(&self) -> Vec<AccSpec> {
        vec![AccSpec::upto(self.k), AccSpec::upto(self.n.saturating_sub(1))]
    }
    fn max_weight(&self) -> usize {
        self.n_max * self.n.saturating_sub(1)
    }
    fn introduce(&self, v: usize, out: &mut Vec<(u8, Delta)>) {
        out.push((fd_state(FD_1, false), Delta::zero()));
        if v != self.v1 {
            out.push((fd_state(FD_2, false), Delta::zero()));
        }
    }
    fn edge(&self, e: usize, _u: usize, _v: usize, su: u8, sv: u8, out: &mut Vec<(u8, u8, Delta)>) {
        if su / 2 == sv / 2 {
            out.push((su, sv, Delta::weight(self.omega[e]).plus(1, 1)));
        }
        if su & 1 == 1 && sv & 1 == 1 {
            for au in 0..2u8 {
                for av in 0..2u8 {
                    out.push((su & !1 | au, sv & !1 | av, Delta::zero()));
                }
            }
        }
    }
    fn forget(&self, _v: usize, s: u8, out: &mut Vec<Delta>) {
        out.push(if s & 1 == 0 { Delta::zero().plus(0, 1) } else { Delta::zero() });
    }
    fn join_rule(&self) -> JoinRule {
        JoinRule::Covering
    }
    fn split(&self, s: u8) -> (u8, bool) {
        (s & !1, s & 1 == 1)
    }
    fn compose(&self, key: u8, bit: bool) -> Option<u8> {
        Some(key | bit as u8)
    }
}

// ---------------------------------------------------------------------------------------------
// CountC procedures.

/// Undirected Partial Cycle Cover CountC at exactly `markers` markers and `l` covered vertices.
pub struct PccCountC<'a> {
    pub graph: &'a UndirectedGraph,
    pub markers: usize,
    pub l: usize,
}

impl CountCProcedure for PccCountC<'_> {
    fn universe(&self) -> Vec<Element> {
        universe::edge_tags(self.graph.m(), 2)
    }
    fn count(&self, omega: &WeightFunction, td: &NiceTreeDecomposition) -> Result<Parities> {
        check_td_edges(td, self.graph.n(), self.graph.edges())?;
        let rec = PccRec { omega, markers: self.markers, l: self.l };
        Ok(root_parities(&dp::run(&rec, td, None), &[self.markers, self.l], rec.max_weight()))
    }
}

/// Directed Partial Cycle Cover CountC at exactly `markers` markers and `l` covered vertices.
pub struct DirectedPccCountC<'a> {
    pub graph: &'a DirectedGraph,
    pub markers: usize,
    pub l: usize,
}

impl CountCProcedure for DirectedPccCountC<'_> {
    fn universe(&self) -> Vec<Element> {
        universe::edge_tags(self.graph.m(), 2)
    }
    fn count(&self, omega: &WeightFunction, td: &NiceTreeDecomposition) -> Result<Parities> {
        check_td_edges(td, self.graph.n(), self.graph.arcs())?;
        let rec = DirectedPccRec { omega, markers: self.markers, l: self.l };
        Ok(root_parities(&dp::run(&rec, td, None), &[self.markers, self.l], rec.max_weight()))
    }
}

/// Graph TSP CountC at multiset size exactly `size`, with `v₁ = 0`.
pub struct TspCountC<'a> {
    pub graph: &'a UndirectedGraph,
    pub size: usize,
}

impl CountCProcedure for TspCountC<'_> {
    fn universe(&self) -> Vec<Element> {
        universe::edge_tags(self.graph.m(), 2)
    }
    fn count(&self, omega: &WeightFunction, td: &NiceTreeDecomposition) -> Result<Parities> {
        check_td_edges(td, self.graph.n(), self.graph.edges())?;
        let rec = TspRec { omega, v1: 0, budget: self.size };
        Ok(root_parities(&dp::run(&rec, td, None), &[self.size], rec.max_weight()))
    }
}

/// Relaxed k-leaf CountC: parities of `|C̄_ℓ^W|` for `ℓ = marks`, internal vertex `v1`.
pub struct KLeafCountC<'a> {
    pub graph: &'a UndirectedGraph,
    pub v1: usize,
    pub marks: usize,
}

impl CountCProcedure for KLeafCountC<'_> {
    fn universe(&self) -> Vec<Element> {
        universe::edges(self.graph.m())
    }
    fn count(&self, omega: &WeightFunction, td: &NiceTreeDecomposition) -> Result<Parities> {
        let bars = k_leaf_relaxed(self.graph, self.v1, omega, td)?;
        Ok(bars.get(self.marks).cloned().unwrap_or_else(|| Parities::zeros(omega.w_limit())))
    }
}

/// Relaxed outbranching CountC: parities of `|C̄_ℓ^W|` for `ℓ = marks`.
pub struct OutbranchingCountC<'a> {
    pub graph: &'a DirectedGraph,
    pub root: usize,
    pub marks: usize,
}

impl CountCProcedure for OutbranchingCountC<'_> {
    fn universe(&self) -> Vec<Element> {
        universe::arcs(self.graph.m())
    }
    fn count(&self, omega: &WeightFunction, td: &NiceTreeDecomposition) -> Result<Parities> {
        let bars = outbranching_relaxed(self.graph, self.root, omega, td)?;
        Ok(bars.get(self.marks).cloned().unwrap_or_else(|| Parities::zeros(omega.w_limit())))
    }
}

/// Full-degree spanning tree CountC at exactly `k` full-degree vertices, `v₁ = 0`.
pub struct FullDegreeCountC<'a> {
    pub graph: &'a UndirectedGraph,
    pub k: usize,
}

impl CountCProcedure for FullDegreeCountC<'_> {
    fn universe(&self) -> Vec<Element> {
        universe::edges(self.graph.m())
    }
    fn count(&self, omega: &WeightFunction, td: &NiceTreeDecomposition) -> Result<Parities> {
        let g = self.graph;
        check_td_edges(td, g.n(), g.edges())?;
        let rec = FullDegreeRec { omega: omega.values(), n_max: omega.n_max(), v1: 0, n: g.n(), k: self.k };
        let top = g.n().saturating_sub(1);
        Ok(root_parities(&dp::run(&rec, td, None), &[self.k, top], rec.max_weight()))
    }
}

/// `|C̄_ℓ^W| mod 2` for every `ℓ` (index) with `v₁` internal.
pub fn k_leaf_relaxed(
    g: &UndirectedGraph,
    v1: usize,
    omega: &WeightFunction,
    td: &NiceTreeDecomposition,
) -> Result<Vec<Parities>> {
    check_td_edges(td, g.n(), g.edges())?;
    if v1 >= g.n() {
        return Err(SolveError::InvalidInstance(format!("vertex {v1} out of range")));
    }
    let rec = KLeafRec { omega: omega.values(), n_max: omega.n_max(), v1, n: g.n() };
    let out = dp::run(&rec, td, None);
    let top = g.n().saturating_sub(1);
    Ok((0..=top).map(|l| root_parities(&out, &[l, top, 2], rec.max_weight())).collect())
}

/// `|C̄_ℓ^W| mod 2` for every `ℓ` (index) for out-branchings rooted at `root`.
pub fn outbranching_relaxed(
    g: &DirectedGraph,
    root: usize,
    omega: &WeightFunction,
    td: &NiceTreeDecomposition,
) -> Result<Vec<Parities>> {
    check_td_edges(td, g.n(), g.arcs())?;
    if root >= g.n() {
        return Err(SolveError::InvalidInstance(format!("root {root} out of range")));
    }
    let rec = OutbranchingRec { omega: omega.values(), n_max: omega.n_max(), root, n: g.n() };
    let out = dp::run(&rec, td, None);
    Ok((0..=g.n()).map(|l| root_parities(&out, &[l], rec.max_weight())).collect())
}

/// Solves `c̄_ℓ = Σ_k C(k, ℓ) c_k` over GF(2) for the exact-count parities `c_k`.
///
/// The system is upper triangular with a unit diagonal; `C(k, ℓ)` is odd iff the binary digits
/// of `ℓ` are a subset of those of `k`.
pub fn k_leaf_invert(relaxed: &[Parities]) -> Vec<Parities> {
    let top = relaxed.len();
    let mut exact: Vec<Parities> = vec![Parities::default(); top];
    for l in (0..top).rev() {
        let mut c = relaxed[l].clone();
        for k in l + 1..top {
            if k & l == l {
                c.xor_with(&exact[k].0);
            }
        }
        exact[l] = c;
    }
    exact
}

// ---------------------------------------------------------------------------------------------
// Solvers.

/// At most `k` vertex-disjoint cycles covering exactly `l` vertices.
pub fn cycle_cover(
    g: &UndirectedGraph,
    k: usize,
    l: usize,
    td: &NiceTreeDecomposition,
    params: RunParams,
) -> Result<MonteCarloAnswer> {
    check_td_edges(td, g.n(), g.edges())?;
    if l > g.n() {
        return Err(SolveError::InvalidInstance(format!("cover size {l} exceeds vertex count")));
    }
    if l == 0 || k == 0 {
        return Ok(MonteCarloAnswer::settled(l == 0, params.seed));
    }
    if g.m() == 0 {
        return Ok(MonteCarloAnswer::settled(false, params.seed));
    }
    // a cover of l vertices has l edges, so more than l markers never fit
    let markers = k.min(l);
    amplified_solve(params.repetitions, params.seed, |seed| {
        let omega = sample_weights(universe::edge_tags(g.m(), 2), seed)?;
        let out = dp::run(&PccRec { omega: &omega, markers, l }, td, None);
        Ok(odd_at(&out, |acc| acc[0] >= 1 && acc[1] == l))
    })
}

/// Directed analogue of [`cycle_cover`]; 2-cycles `u→v→u` count as cycles.
pub fn directed_cycle_cover(
    g: &DirectedGraph,
    k: usize,
    l: usize,
    td: &NiceTreeDecomposition,
    params: RunParams,
) -> Result<MonteCarloAnswer> {
    check_td_edges(td, g.n(), g.arcs())?;
    if l > g.n() {
        return Err(SolveError::InvalidInstance(format!("cover size {l} exceeds vertex count")));
    }
    if l == 0 || k == 0 {
        return Ok(MonteCarloAnswer::settled(l == 0, params.seed));
    }
    if g.m() == 0 {
        return Ok(MonteCarloAnswer::settled(false, params.seed));
    }
    let markers = k.min(l);
    amplified_solve(params.repetitions, params.seed, |seed| {
        let omega = sample_weights(universe::edge_tags(g.m(), 2), seed)?;
        let out = dp::run(&DirectedPccRec { omega: &omega, markers, l }, td, None);
        Ok(odd_at(&out, |acc| acc[0] >= 1 && acc[1] == l))
    })
}

/// Hamiltonian cycle: one cycle covering every vertex.
pub fn hamiltonian_cycle(g: &UndirectedGraph, td: &NiceTreeDecomposition, params: RunParams) -> Result<MonteCarloAnswer> {
    if g.n() == 0 {
        return Ok(MonteCarloAnswer::settled(false, params.seed));
    }
    cycle_cover(g, 1, g.n(), td, params)
}

/// Directed Hamiltonian cycle.
pub fn directed_hamiltonian_cycle(
    g: &DirectedGraph,
    td: &NiceTreeDecomposition,
    params: RunParams,
) -> Result<MonteCarloAnswer> {
    if g.n() == 0 {
        return Ok(MonteCarloAnswer::settled(false, params.seed));
    }
    directed_cycle_cover(g, 1, g.n(), td, params)
}

/// Cycle cover of all vertices with at most `k` cycles.
pub fn min_cycle_cover(
    g: &UndirectedGraph,
    k: usize,
    td: &NiceTreeDecomposition,
    params: RunParams,
) -> Result<MonteCarloAnswer> {
    cycle_cover(g, k, g.n(), td, params)
}

/// Directed cycle cover of all vertices with at most `k` cycles.
pub fn directed_min_cycle_cover(
    g: &DirectedGraph,
    k: usize,
    td: &NiceTreeDecomposition,
    params: RunParams,
) -> Result<MonteCarloAnswer> {
    directed_cycle_cover(g, k, g.n(), td, params)
}

/// Graph with a path of `n + 1` edges from `t` back to `s` attached through `n` new vertices,
/// and the matching decomposition: `s, t` added to every bag plus a chain of 3-vertex bags.
fn attach_path(
    n: usize,
    edges: &[(usize, usize)],
    td: &TreeDecomposition,
    s: usize,
    t: usize,
) -> Result<(Vec<(usize, usize)>, NiceTreeDecomposition)> {
    let mut all = edges.to_vec();
    let p = |i: usize| n + i;
    all.push((t, p(0)));
    for i in 1..n {
        all.push((p(i - 1), p(i)));
    }
    all.push((p(n - 1), s));
    let mut wide = td.with_extra(&[s, t]);
    let anchor = wide.root.unwrap_or(0);
    if wide.bags.is_empty() {
        wide.bags.push(vec![s, t]);
    }
    let mut prev = anchor;
    for i in 0..n {
        let bag = if i == 0 { vec![s, t, p(0)] } else { vec![s, p(i - 1), p(i)] };
        wide.bags.push(bag);
        let id = wide.bags.len() - 1;
        wide.tree.push((prev, id));
        prev = id;
    }
    let nice = make_nice_edges(&wide, 2 * n, &all)?;
    Ok((all, nice))
}

fn bfs_dist(n: usize, adj: &[Vec<usize>], s: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; n];
    dist[s] = 0;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// A simple path with `k` edges, by endpoint guessing and a longest-cycle query of length
/// `n + 1 + k` on the graph with an attached path.
pub fn longest_path(g: &UndirectedGraph, k: usize, td: &TreeDecomposition, params: RunParams) -> Result<MonteCarloAnswer> {
    longest_path_impl(g.n(), g.edges(), false, k, td, params)
}

/// Directed analogue of [`longest_path`].
pub fn longest_path_directed(
    g: &DirectedGraph,
    k: usize,
    td: &TreeDecomposition,
    params: RunParams,
) -> Result<MonteCarloAnswer> {
    longest_path_impl(g.n(), g.arcs(), true, k, td, params)
}

fn longest_path_impl(
    n: usize,
    edges: &[(usize, usize)],
    directed: bool,
    k: usize,
    td: &TreeDecomposition,
    params: RunParams,
) -> Result<MonteCarloAnswer> {
    if let Some(v) = td.validate_edges(n, edges).first() {
        return Err(SolveError::Decomposition(v.to_string()));
    }
    // a simple path with k edges needs k + 1 vertices
    if k >= n {
        return Ok(MonteCarloAnswer::settled(false, params.seed));
    }
    if k == 0 {
        return Ok(MonteCarloAnswer::settled(true, params.seed));
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        if !directed {
            adj[v].push(u);
        }
    }
    // endpoint pairs that a k-edge path could join
    let mut pairs = Vec::new();
    for s in 0..n {
        let dist = bfs_dist(n, &adj, s);
        for t in 0..n {
            let wanted = if directed { s != t } else { s < t };
            if wanted && dist[t] <= k {
                pairs.push((s, t));
            }
        }
    }
    let mut built = Vec::with_capacity(pairs.len());
    for &(s, t) in &pairs {
        built.push(attach_path(n, edges, td, s, t)?);
    }
    let l = n + 1 + k;
    amplified_solve(params.repetitions, params.seed, |seed| {
        for (all, nice) in &built {
            let omega = sample_weights(universe::edge_tags(all.len(), 2), seed)?;
            let out = if directed {
                dp::run(&DirectedPccRec { omega: &omega, markers: 1, l }, nice, None)
            } else {
                dp::run(&PccRec { omega: &omega, markers: 1, l }, nice, None)
            };
            if odd_at(&out, |acc| acc[0] == 1 && acc[1] == l) {
                return Ok(true);
            }
        }
        Ok(false)
    })
}

/// Closed walk of length at most `budget` visiting every vertex.
pub fn graph_tsp(
    g: &UndirectedGraph,
    budget: usize,
    td: &NiceTreeDecomposition,
    params: RunParams,
) -> Result<MonteCarloAnswer> {
    check_td_edges(td, g.n(), g.edges())?;
    let n = g.n();
    if n == 0 || !g.is_connected() {
        return Ok(MonteCarloAnswer::settled(false, params.seed));
    }
    if n == 1 {
        return Ok(MonteCarloAnswer::settled(true, params.seed));
    }
    // doubling a spanning tree always works
    let budget = budget.min(2 * (n - 1));
    amplified_solve(params.repetitions, params.seed, |seed| {
        let omega = sample_weights(universe::edge_tags(g.m(), 2), seed)?;
        let out = dp::run(&TspRec { omega: &omega, v1: 0, budget }, td, None);
        Ok(odd_at(&out, |_| true))
    })
}

/// Spanning tree with exactly `k` leaves.
pub fn k_leaf_spanning_tree(
    g: &UndirectedGraph,
    k: usize,
    td: &NiceTreeDecomposition,
    params: RunParams,
) -> Result<MonteCarloAnswer> {
    check_td_edges(td, g.n(), g.edges())?;
    let n = g.n();
    if n < 3 {
        return Err(SolveError::InvalidInstance("k-leaf spanning tree needs at least 3 vertices".into()));
    }
    if !g.is_connected() || k < 2 || k >= n {
        return Ok(MonteCarloAnswer::settled(false, params.seed));
    }
    amplified_solve(params.repetitions, params.seed, |seed| {
        let omega = sample_weights(universe::edges(g.m()), seed)?;
        for v1 in 0..n {
            let exact = k_leaf_invert(&k_leaf_relaxed(g, v1, &omega, td)?);
            if exact[k].0.iter().any(|&x| x != 0) {
                return Ok(true);
            }
        }
        Ok(false)
    })
}

/// Out-branching rooted at `root` with exactly `k` leaves (out-degree-zero vertices).
pub fn k_leaf_outbranching(
    g: &DirectedGraph,
    root: usize,
    k: usize,
    td: &NiceTreeDecomposition,
    params: RunParams,
) -> Result<MonteCarloAnswer> {
    check_td_edges(td, g.n(), g.arcs())?;
    let n = g.n();
    if root >= n {
        return Err(SolveError::InvalidInstance(format!("root {root} out of range")));
    }
    if n == 1 {
        return Ok(MonteCarloAnswer::settled(k == 1, params.seed));
    }
    // an out-branching on n > 1 vertices has n - 1 arcs
    if k == 0 || k >= n || g.m() < n - 1 {
        return Ok(MonteCarloAnswer::settled(false, params.seed));
    }
    amplified_solve(params.repetitions, params.seed, |seed| {
        let omega = sample_weights(universe::arcs(g.m()), seed)?;
        let exact = k_leaf_invert(&outbranching_relaxed(g, root, &omega, td)?);
        Ok(exact[k].0.iter().any(|&x| x != 0))
    })
}

/// Spanning tree in which exactly `k` vertices keep their full degree.
pub fn full_degree_spanning_tree(
    g: &UndirectedGraph,
    k: usize,
    td: &NiceTreeDecomposition,
    params: RunParams,
) -> Result<MonteCarloAnswer> {
    check_td_edges(td, g.n(), g.edges())?;
    let n = g.n();
    if n == 0 || !g.is_connected() || k > n {
        return Ok(MonteCarloAnswer::settled(false, params.seed));
    }
    if n == 1 {
        return Ok(MonteCarloAnswer::settled(k == 1, params.seed));
    }
    amplified_solve(params.repetitions, params.seed, |seed| {
        let omega = sample_weights(universe::edges(g.m()), seed)?;
        let rec = FullDegreeRec { omega: omega.values(), n_max: omega.n_max(), v1: 0, n, k };
        let out = dp::run(&rec, td, None);
        Ok(odd_at(&out, |acc| acc[0] == k && acc[1] == n - 1))
    })
}

// ---------------------------------------------------------------------------------------------
// Transform-based joins, checked against the digit-wise combination tables.

/// Join bags evaluated with the algebraic products on integer tables over `Σ^b`
/// (digit `i` of an index is the state of bag position `i`).
pub mod join {
    use super::*;
    use crate::algebra::{generalized_convolution, zp_product, AlgebraError, TupleTable};

    fn digits(mut x: usize, q: usize, b: usize) -> Vec<u8> {
        (0..b)
            .map(|_| {
                let d = (x % q) as u8;
                x /= q;
                d
            })
            .collect()
    }

    /// `h(s) = Σ f(s₁) g(s₂)` over pairs combining digit-wise into `s`; `q^{2b}` work.
    pub fn naive(f: &[i64], g: &[i64], q: usize, b: usize, combine: impl Fn(u8, u8) -> Option<u8>) -> Vec<i64> {
        let size = q.pow(b as u32);
        let mut h = vec![0i64; size];
        for (x, &fx) in f.iter().enumerate() {
            if fx == 0 {
                continue;
            }
            let dx = digits(x, q, b);
            'pair: for (y, &gy) in g.iter().enumerate() {
                if gy == 0 {
                    continue;
                }
                let dy = digits(y, q, b);
                let mut idx = 0;
                let mut pw = 1;
                for i in 0..b {
                    match combine(dx[i], dy[i]) {
                        Some(s) => idx += s as usize * pw,
                        None => continue 'pair,
                    }
                    pw *= q;
                }
                h[idx] += fx * gy;
            }
        }
        h
    }

    /// Splits `f` by total rank, re-indexes digits through `phi`, multiplies every rank pair
    /// with `product` and keeps the slice whose rank matches the target.
    fn ranked(
        f: &[i64],
        g: &[i64],
        q: usize,
        b: usize,
        phi: &[usize],
        rho: &[usize],
        p: usize,
        product: impl Fn(&TupleTable, &TupleTable) -> std::result::Result<TupleTable, AlgebraError>,
    ) -> std::result::Result<Vec<i64>, AlgebraError> {
        let size = q.pow(b as u32);
        let top = rho.iter().max().copied().unwrap_or(0) * b;
        let image = |x: usize| -> (usize, usize) {
            let d = digits(x, q, b);
            let mut idx = 0;
            let mut pw = 1;
            let mut r = 0;
            for &s in &d {
                idx += phi[s as usize] * pw;
                r += rho[s as usize];
                pw *= p;
            }
            (idx, r)
        };
        let split = |t: &[i64]| -> Vec<TupleTable> {
            let mut parts = vec![TupleTable::zeros(b, p); top + 1];
            for (x, &v) in t.iter().enumerate() {
                let (idx, r) = image(x);
                parts[r].values[idx] += v;
            }
            parts
        };
        let (fs, gs) = (split(f), split(g));
        let mut products = vec![vec![None; top + 1]; top + 1];
        let mut h = vec![0i64; size];
        for x in 0..size {
            let (idx, r) = image(x);
            for r1 in 0..=r {
                let r2 = r - r1;
                if products[r1][r2].is_none() {
                    products[r1][r2] = Some(product(&fs[r1], &gs[r2])?);
                }
                h[x] += products[r1][r2].as_ref().expect("computed").values[idx];
            }
        }
        Ok(h)
    }

    /// Undirected cycle-cover join through the `Z₄` product with the degree-sum guard.
    pub fn pcc_fast(f: &[i64], g: &[i64], b: usize) -> std::result::Result<Vec<i64>, AlgebraError> {
        // φ: 0→0, 1₁→1, 1₂→3, 2→2; ρ = degree
        let mut phi = [0; 4];
        let mut rho = [0; 4];
        for (s, (p, r)) in [(PCC_0, (0, 0)), (PCC_11, (1, 1)), (PCC_12, (3, 1)), (PCC_2, (2, 2))] {
            phi[s as usize] = p;
            rho[s as usize] = r;
        }
        ranked(f, g, 4, b, &phi, &rho, 4, |x, y| zp_product(x, y, 4))
    }

    /// Directed cycle-cover join through the generalized convolution with `ρ` = number of ones.
    pub fn dpc_fast(f: &[i64], g: &[i64], b: usize) -> std::result::Result<Vec<i64>, AlgebraError> {
        let phi = [0, 1, 2, 3, 4, 5];
        let rho = [0, 1, 1, 1, 1, 2];
        ranked(f, g, 6, b, &phi, &rho, 6, generalized_convolution)
    }

    /// TSP join: equal cut sides and a `Z₂` product on the parity digits.
    pub fn tsp_fast(f: &[i64], g: &[i64], b: usize) -> std::result::Result<Vec<i64>, AlgebraError> {
        let size = 4usize.pow(b as u32);
        let mut h = vec![0i64; size];
        for sides in 0..1usize << b {
            let index = |parity: usize| -> usize {
                let mut idx = 0;
                let mut pw = 1;
                for i in 0..b {
                    idx += (2 * (sides >> i & 1) + (parity >> i & 1)) * pw;
                    pw *= 4;
                }
                idx
            };
            let part = |t: &[i64]| -> TupleTable {
                TupleTable { b, p: 2, values: (0..1usize << b).map(|par| t[index(par)]).collect() }
            };
            let prod = zp_product(&part(f), &part(g), 2)?;
            for (par, &v) in prod.values.iter().enumerate() {
                h[index(par)] += v;
            }
        }
        Ok(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inversion_recovers_exact_counts() {
        // c = (c_0..c_4) at one weight; relaxed c̄_ℓ = Σ_k C(k,ℓ) c_k mod 2
        let c = [true, false, true, true, false];
        let binom = |k: usize, l: usize| -> bool { k >= l && (k & l) == l };
        let relaxed: Vec<Parities> = (0..5)
            .map(|l| {
                let bit = (0..5).filter(|&k| binom(k, l) && c[k]).count() % 2 == 1;
                Parities(vec![bit as u64])
            })
            .collect();
        let exact = k_leaf_invert(&relaxed);
        for k in 0..5 {
            assert_eq!(exact[k].get(0), c[k]);
        }
    }

    #[test]
    fn combination_tables() {
        assert_eq!(pcc_combine(PCC_11, PCC_11), Some(PCC_2));
        assert_eq!(pcc_combine(PCC_11, PCC_12), None);
        assert_eq!(dpc_combine(DPC_01_2, DPC_10_2), Some(DPC_11));
        assert_eq!(dpc_combine(DPC_01_1, DPC_10_2), None);
        assert_eq!(tsp_combine(tsp_state(1, 1), tsp_state(1, 1)), Some(tsp_state(1, 0)));
        assert_eq!(tsp_combine(tsp_state(0, 1), tsp_state(1, 1)), None);
    }

    #[test]
    fn fast_joins_match_naive_on_small_tables() {
        let f: Vec<i64> = (0..36).map(|i| (i * 7 % 5) as i64 - 2).collect();
        let g: Vec<i64> = (0..36).map(|i| (i * 3 % 7) as i64 - 3).collect();
        assert_eq!(join::dpc_fast(&f, &g, 2).unwrap(), join::naive(&f, &g, 6, 2, dpc_combine));
        assert_eq!(join::pcc_fast(&f[..16], &g[..16], 2).unwrap(), join::naive(&f[..16], &g[..16], 4, 2, pcc_combine));
        assert_eq!(join::tsp_fast(&f[..16], &g[..16], 2).unwrap(), join::naive(&f[..16], &g[..16], 4, 2, tsp_combine));
    }
}
