//! Compression solvers against exhaustive search, with witnesses and work bounds.

mod common;

use std::time::Instant;

use common::{random_connected_graph, random_graph};
use cutcount::fpt::{cfvs_3k, cvc_2k, fvs_3k, FptAnswer, FptReport, FptStats};
use cutcount::graph::UndirectedGraph;
use cutcount::oracle::{cfvs_min, cvc_min, fvs_min, induces_connected, is_feedback_vertex_set, is_vertex_cover, OracleLimit};
use cutcount::vertex::RunParams;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PARAMS: RunParams = RunParams { repetitions: 16, seed: 21 };

/// Largest sweep allowed for hull size `b`: `roots` free states for up to three tree roots and
/// `rest` for every other hull vertex.
fn sweep_cap(b: usize, roots: usize, rest: usize) -> usize {
    let free = b.min(3);
    roots.pow(free as u32) * rest.pow((b - free) as u32)
}

fn check(
    name: &str,
    report: &FptReport,
    optimum: Option<usize>,
    k: usize,
    valid: impl Fn(&[usize]) -> bool,
    cap: impl Fn(&FptStats) -> bool,
) {
    let expected = optimum.is_some_and(|o| o <= k);
    match &report.answer {
        FptAnswer::Yes(set) => {
            assert!(expected, "{name}: false positive");
            assert!(set.len() <= k && valid(set), "{name}: witness {set:?} fails the checker");
        }
        FptAnswer::Unknown => assert!(!expected, "{name}: missed a solution of size {optimum:?} ≤ {k}"),
    }
    assert!(report.stats.peak_cells <= report.stats.cell_bound);
    assert!(cap(&report.stats), "{name}: sweep of {:?} exceeds its cap", report.stats.max_sweep);
}

fn run(name: &str, instances: usize, mut one: impl FnMut(&mut ChaCha8Rng) -> bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(name.len() as u64 * 1009);
    let start = Instant::now();
    let yes = (0..instances).filter(|_| one(&mut rng)).count();
    eprintln!("{name}: {yes}/{instances} yes in {:?}", start.elapsed());
}

#[test]
fn fvs_matches_oracle() {
    run("fvs", 30, |rng| {
        let n = rng.gen_range(1..=12);
        let p = rng.gen_range(0.15..0.45);
        let g = random_graph(rng, n, p);
        let k = rng.gen_range(0..=4);
        let report = fvs_3k(&g, k, PARAMS).unwrap();
        let opt = fvs_min(&g, &[], OracleLimit::default()).unwrap();
        check("fvs", &report, opt, k, |s| is_feedback_vertex_set(&g, s), |st| st.max_sweep.0 <= 3usize.pow(st.max_sweep.1 as u32));
        report.answer.is_yes()
    });
}

fn connected_instance(rng: &mut ChaCha8Rng, n_max: usize) -> UndirectedGraph {
    let n = rng.gen_range(1..=n_max);
    let extra = rng.gen_range(0..=n);
    random_connected_graph(rng, n, extra)
}

#[test]
fn cvc_matches_oracle() {
    run("cvc", 30, |rng| {
        let g = connected_instance(rng, 12);
        let k = rng.gen_range(0..=5);
        let report = cvc_2k(&g, k, PARAMS).unwrap();
        let opt = cvc_min(&g, &[], OracleLimit::default()).unwrap();
        let valid = |s: &[usize]| is_vertex_cover(&g, s) && induces_connected(&g, s);
        check("cvc", &report, opt, k, valid, |st| st.max_sweep.0 <= sweep_cap(st.max_sweep.1, 3, 2));
        report.answer.is_yes()
    });
}

#[test]
fn cfvs_matches_oracle() {
    run("cfvs", 30, |rng| {
        let g = connected_instance(rng, 10);
        let k = rng.gen_range(0..=3);
        let report = cfvs_3k(&g, k, PARAMS).unwrap();
        let opt = cfvs_min(&g, &[], OracleLimit::default()).unwrap();
        let valid = |s: &[usize]| is_feedback_vertex_set(&g, s) && induces_connected(&g, s);
        check("cfvs", &report, opt, k, valid, |st| st.max_sweep.0 <= sweep_cap(st.max_sweep.1, 4, 3));
        report.answer.is_yes()
    });
}
