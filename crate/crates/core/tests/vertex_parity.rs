//! Exact GF(2) agreement between vertex-subset CountC tables and directly enumerated
//! solution families, for a shared weight function.

mod common;

use common::*;
use cutcount::engine::{sample_weights, CountCProcedure, WeightFunction};
use cutcount::graph::{components_of, UndirectedGraph};
use cutcount::vertex::{CfvsCountC, ConnectedCountC, ConnectedProblem, FvsCountC, SteinerCountC};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn inside(mask: u32, v: usize) -> bool {
    mask >> v & 1 == 1
}

fn induced_edges(g: &UndirectedGraph, x: u32) -> Vec<(usize, usize)> {
    g.edges().iter().copied().filter(|&(u, v)| inside(x, u) && inside(x, v)).collect()
}

/// Component label per vertex of `G[x]` (vertices outside `x` get their own labels).
fn comps(g: &UndirectedGraph, x: u32) -> (Vec<usize>, usize) {
    let (label, count) = components_of(g.n(), induced_edges(g, x).into_iter());
    let outside = (0..g.n()).filter(|&v| !inside(x, v)).count();
    (label, count - outside)
}

fn connected(g: &UndirectedGraph, x: u32) -> bool {
    x == 0 || comps(g, x).1 == 1
}

fn flip(par: &mut Vec<bool>, w: usize) {
    if par.len() <= w {
        par.resize(w + 1, false);
    }
    par[w] ^= true;
}

fn assert_same(expected: &[bool], omega: &WeightFunction, got: &cutcount::engine::Parities, what: &str) {
    let top = expected.len().max(got.0.len() * 64);
    for w in 0..top {
        let e = expected.get(w).copied().unwrap_or(false);
        assert_eq!(e, got.get(w), "{what}: parity mismatch at W={w} (seed {})", omega.seed());
    }
}

fn weight(omega: &WeightFunction, x: u32, stride: usize, tag: usize) -> usize {
    (0..32).filter(|&v| inside(x, v)).map(|v| omega.get(v * stride + tag)).sum()
}

#[test]
fn steiner_parities_match_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for round in 0..60 {
        let n = rng.gen_range(2..=8);
        let g = random_graph(&mut rng, n, 0.4);
        let td = nice(&g);
        let mut terminals = random_subset(&mut rng, n, 0.3);
        if terminals.is_empty() {
            terminals.push(rng.gen_range(0..n));
        }
        let t: u32 = terminals.iter().map(|&v| 1u32 << v).sum();
        let omega = sample_weights(cutcount::engine::universe::vertices(n), round).unwrap();
        for k in terminals.len()..=n {
            let mut expected = Vec::new();
            for x in masks(n) {
                if x & t == t && x.count_ones() as usize == k && connected(&g, x) {
                    flip(&mut expected, weight(&omega, x, 1, 0));
                }
            }
            let got = SteinerCountC { graph: &g, terminals: &terminals, k }.count(&omega, &td).unwrap();
            assert_same(&expected, &omega, &got, "steiner");
        }
    }
}

fn connected_family(problem: ConnectedProblem, g: &UndirectedGraph, x: u32) -> bool {
    let n = g.n();
    match problem {
        ConnectedProblem::Cvc => g.edges().iter().all(|&(u, v)| inside(x, u) || inside(x, v)),
        ConnectedProblem::Cds => (0..n).all(|v| inside(x, v) || g.adjacency()[v].iter().any(|&u| inside(x, u))),
        ConnectedProblem::Coct => unreachable!(),
    }
}

#[test]
fn cvc_and_cds_parities_match_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for round in 0..60 {
        let n = rng.gen_range(2..=8);
        let g = random_graph(&mut rng, n, 0.45);
        let td = nice(&g);
        let required = random_subset(&mut rng, n, 0.15);
        let v1 = rng.gen_range(0..n);
        let s: u32 = required.iter().map(|&v| 1u32 << v).sum::<u32>() | 1 << v1;
        let omega = sample_weights(cutcount::engine::universe::vertices(n), 100 + round).unwrap();
        for problem in [ConnectedProblem::Cvc, ConnectedProblem::Cds] {
            for k in 1..=n {
                let mut expected = Vec::new();
                for x in masks(n) {
                    if x & s == s && x.count_ones() as usize == k && connected(&g, x) && connected_family(problem, &g, x) {
                        flip(&mut expected, weight(&omega, x, 1, 0));
                    }
                }
                let cc = ConnectedCountC { problem, graph: &g, required: &required, v1, k };
                let got = cc.count(&omega, &td).unwrap();
                assert_same(&expected, &omega, &got, &format!("{problem:?}"));
            }
        }
    }
}

#[test]
fn coct_parities_match_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for round in 0..50 {
        let n = rng.gen_range(2..=7);
        let g = random_graph(&mut rng, n, 0.5);
        let td = nice(&g);
        let v1 = rng.gen_range(0..n);
        let s: u32 = 1 << v1;
        let omega = sample_weights(cutcount::engine::universe::vertex_tags(n, 2), 200 + round).unwrap();
        for k in 1..=n {
            let mut expected = Vec::new();
            for x in masks(n) {
                if x & s != s || x.count_ones() as usize != k || !connected(&g, x) {
                    continue;
                }
                let rest = !x & ((1u32 << n) - 1);
                for l in masks(n) {
                    if l & !rest != 0 {
                        continue;
                    }
                    let r = rest & !l;
                    let proper = g
                        .edges()
                        .iter()
                        .all(|&(u, v)| !((inside(l, u) && inside(l, v)) || (inside(r, u) && inside(r, v))));
                    if proper {
                        flip(&mut expected, weight(&omega, x, 2, 0) + weight(&omega, l, 2, 1));
                    }
                }
            }
            let cc = ConnectedCountC { problem: ConnectedProblem::Coct, graph: &g, required: &[], v1, k };
            let got = cc.count(&omega, &td).unwrap();
            assert_same(&expected, &omega, &got, "coct");
        }
    }
}

/// Parities of marked forests `(X, M)` with one marker per component, `X ∩ forbidden = ∅`,
/// `|X| = a`, `b` edges, plus an extra predicate on `X`.
fn marked_forests(
    g: &UndirectedGraph,
    omega: &WeightFunction,
    forbidden: u32,
    a: usize,
    b: usize,
    extra: impl Fn(u32) -> bool,
) -> Vec<bool> {
    let n = g.n();
    let mut expected = Vec::new();
    for x in masks(n) {
        if x & forbidden != 0 || x.count_ones() as usize != a || induced_edges(g, x).len() != b || !extra(x) {
            continue;
        }
        let (label, cc) = comps(g, x);
        if cc + b != a {
            continue;
        }
        for m in masks(n) {
            if m & !x != 0 || m.count_ones() as usize != cc {
                continue;
            }
            let mut hit: Vec<usize> = members(m).iter().map(|&v| label[v]).collect();
            hit.sort_unstable();
            hit.dedup();
            if hit.len() == cc {
                flip(&mut expected, weight(omega, x, 2, 0) + weight(omega, m, 2, 1));
            }
        }
    }
    expected
}

#[test]
fn fvs_parities_match_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for round in 0..40 {
        let n = rng.gen_range(2..=7);
        let g = random_graph(&mut rng, n, 0.45);
        let td = nice(&g);
        let required = random_subset(&mut rng, n, 0.15);
        let s: u32 = required.iter().map(|&v| 1u32 << v).sum();
        let omega = sample_weights(cutcount::engine::universe::vertex_tags(n, 2), 300 + round).unwrap();
        for a in 0..=n {
            for b in 0..a.max(1) {
                let expected = marked_forests(&g, &omega, s, a, b, |_| true);
                let got = FvsCountC { graph: &g, required: &required, a, b, c: a - b }.count(&omega, &td).unwrap();
                assert_same(&expected, &omega, &got, &format!("fvs a={a} b={b}"));
            }
        }
    }
}

#[test]
fn cfvs_parities_match_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for round in 0..40 {
        let n = rng.gen_range(2..=7);
        let g = random_graph(&mut rng, n, 0.5);
        let td = nice(&g);
        let v1 = rng.gen_range(0..n);
        let required = vec![v1];
        let full = (1u32 << n) - 1;
        let omega = sample_weights(cutcount::engine::universe::vertex_tags(n, 2), 400 + round).unwrap();
        for a in 0..n {
            for b in 0..a.max(1) {
                let expected = marked_forests(&g, &omega, 1 << v1, a, b, |x| connected(&g, full & !x));
                let got = CfvsCountC { graph: &g, required: &required, v1, a, b, c: a - b }.count(&omega, &td).unwrap();
                assert_same(&expected, &omega, &got, &format!("cfvs a={a} b={b}"));
            }
        }
    }
}
