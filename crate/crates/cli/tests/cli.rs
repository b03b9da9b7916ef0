//! End-to-end runs of the `cutcount` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cutcount::decomposition::parse_pace_td;
use cutcount::graph::{parse_graph, GraphFormat};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cutcount")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("valid JSON report")
}

struct Fixtures {
    _dir: tempfile::TempDir,
    p3: PathBuf,
    tree: PathBuf,
    c6: PathBuf,
    dir: PathBuf,
}

fn fixtures() -> Fixtures {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_path_buf();
    Fixtures {
        p3: write(&path, "p3.gr", "p tw 3 2\n1 2\n2 3\n"),
        tree: write(&path, "tree.gr", "p tw 4 3\n1 2\n1 3\n1 4\n"),
        c6: write(&path, "c6.gr", "p tw 6 6\n1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n"),
        dir: path,
        _dir: dir,
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn steiner_on_path_is_yes() {
    let f = fixtures();
    let o = run(&["solve", "steiner", "--graph", s(&f.p3), "--terminals", "1,3", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("YES"));
}

#[test]
fn hamiltonian_cycle_on_tree_is_unknown() {
    let f = fixtures();
    let o = run(&["solve", "hamcycle", "--graph", s(&f.tree)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("UNKNOWN"));
}

#[test]
fn seeded_runs_are_reproducible() {
    let f = fixtures();
    let args = ["solve", "fvs", "--graph", s(&f.c6), "--k", "2", "--seed", "7", "--json"];
    let mut a = json(&run(&args));
    let mut b = json(&run(&args));
    a.as_object_mut().unwrap().remove("wall_ms");
    b.as_object_mut().unwrap().remove("wall_ms");
    assert_eq!(a, b);
    assert_eq!(a["seed"], 7);
}

#[test]
fn solve_report_schema() {
    let f = fixtures();
    let v = json(&run(&["solve", "cvc", "--graph", s(&f.c6), "--k", "5", "--reps", "4", "--json"]));
    assert_eq!(v["problem"], "cvc");
    assert_eq!(v["verdict"], "YES");
    assert_eq!(v["repetitions"], 4);
    assert!(v["repetitions_run"].as_u64().unwrap() <= 4);
    assert!(v["width"].is_u64());
    assert!(v["wall_ms"].is_f64());
    assert!(v["seed"].is_u64());
}

#[test]
fn compression_reports_a_witness() {
    let f = fixtures();
    let o = run(&["solve", "fvs", "--graph", s(&f.c6), "--k", "1", "--compress", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["witness"].as_array().unwrap().len(), 1);
    let o = run(&["solve", "cvc", "--graph", s(&f.c6), "--k", "3", "--compress"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["solve", "steiner", "--graph", s(&f.p3), "--terminals", "1", "--k", "1", "--compress"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_two() {
    let f = fixtures();
    assert_eq!(run(&["solve", "steiner", "--graph", "/nonexistent.gr", "--k", "1"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "nosuch", "--graph", s(&f.p3)]).status.code(), Some(2));
    assert_eq!(run(&["solve", "steiner", "--graph", s(&f.p3), "--terminals", "1"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "fvs", "--graph", s(&f.p3), "--k", "1", "--reps", "0"]).status.code(), Some(2));
    assert_eq!(run(&["solve", "fvs", "--graph", s(&f.p3), "--k", "1", "--terminals", "0"]).status.code(), Some(2));
    let bad_td = write(&f.dir, "bad.td", "s td 1 2 3\nb 1 1 2\n");
    assert_eq!(run(&["solve", "fvs", "--graph", s(&f.p3), "--k", "1", "--td", s(&bad_td)]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn user_decomposition_is_accepted() {
    let f = fixtures();
    let td = write(&f.dir, "p3.td", "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n");
    let o = run(&["solve", "steiner", "--graph", s(&f.p3), "--terminals", "1,3", "--k", "3", "--td", s(&td)]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn directed_problem_reads_gr_lines_as_arcs() {
    let f = fixtures();
    let cyc = write(&f.dir, "dc3.gr", "p tw 3 3\n1 2\n2 3\n3 1\n");
    assert_eq!(run(&["solve", "dhamcycle", "--graph", s(&cyc)]).status.code(), Some(0));
    let acyclic = write(&f.dir, "dp3.gr", "p tw 3 3\n1 2\n2 3\n1 3\n");
    assert_eq!(run(&["solve", "dhamcycle", "--graph", s(&acyclic)]).status.code(), Some(1));
}

#[test]
fn decompose_cycle_has_width_two() {
    let f = fixtures();
    let o = run(&["decompose", "--graph", s(&f.c6)]);
    assert_eq!(o.status.code(), Some(0));
    let td = parse_pace_td(&stdout(&o)).unwrap();
    let g = parse_graph(&fs::read_to_string(&f.c6).unwrap(), GraphFormat::PaceGr).unwrap().skeleton();
    assert!(td.validate(&g).is_empty());
    assert_eq!(td.width(), 2);
}

#[test]
fn verify_sweep_has_no_false_positives() {
    for problem in ["steiner", "cds", "pcc", "dlongestpath", "outbranching"] {
        let o = run(&["verify", problem, "--random", "20", "--n-max", "6", "--reps", "16", "--json"]);
        assert_eq!(o.status.code(), Some(0), "{problem}");
        let v = json(&o);
        assert_eq!(v["false_positives"], 0);
        assert_eq!(v["instances"].as_u64().unwrap() + v["skipped"].as_u64().unwrap(), 20);
    }
}

#[test]
fn verify_single_no_instance() {
    let f = fixtures();
    let o = run(&["verify", "hamcycle", "--graph", s(&f.tree), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!((v["oracle_yes"].as_u64(), v["solver_yes"].as_u64()), (Some(0), Some(0)));
}

#[test]
fn bench_steiner_axis_sizes() {
    let o = run(&["bench", "steiner", "--widths", "3..6", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json(&o);
    let axes: Vec<u64> = rows.as_array().unwrap().iter().map(|r| r["axis"].as_u64().unwrap()).collect();
    assert_eq!(axes, vec![27, 81, 243, 729]);
}

#[test]
fn bench_axis_base_per_problem() {
    for (problem, q) in [("cds", 4u64), ("gmtsp", 4), ("dpcc", 6), ("outbranching", 6), ("fvs", 3)] {
        let rows = json(&run(&["bench", problem, "--widths", "2..4", "--json"]));
        for r in rows.as_array().unwrap() {
            let bag = r["bag"].as_u64().unwrap() as u32;
            assert_eq!(r["axis"].as_u64().unwrap(), q.pow(bag), "{problem}");
        }
    }
}

#[test]
fn genhard_emits_three_files() {
    let f = fixtures();
    let cnf = write(&f.dir, "sample.cnf", "c tiny\np cnf 2 2\n1 -2 0\n2 0\n");
    let prefix = f.dir.join("hard");
    let o = run(&["genhard", "--cnf", s(&cnf), "--beta", "1", "--out", s(&prefix), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let report = json(&o);
    let gr = fs::read_to_string(f.dir.join("hard.gr")).unwrap();
    let g = parse_graph(&gr, GraphFormat::PaceGr).unwrap().skeleton();
    let td = parse_pace_td(&fs::read_to_string(f.dir.join("hard.td")).unwrap()).unwrap();
    assert!(td.validate(&g).is_empty());
    assert_eq!(td.width() as u64, report["width"].as_u64().unwrap());
    let side: Value = serde_json::from_str(&fs::read_to_string(f.dir.join("hard.json")).unwrap()).unwrap();
    assert_eq!(side["weights"].as_array().unwrap().len(), g.m());
    assert_eq!(report["satisfiable"], true);
    let witness = side["witness"].as_array().unwrap();
    let total: u128 = witness.iter().map(|e| side["weights"][e.as_u64().unwrap() as usize].as_u64().unwrap() as u128).sum();
    assert_eq!(total.to_string(), side["target"].as_str().unwrap());
}

#[test]
fn genhard_rejects_empty_clause() {
    let f = fixtures();
    let cnf = write(&f.dir, "empty.cnf", "p cnf 1 2\n1 0\n0\n");
    let o = run(&["genhard", "--cnf", s(&cnf), "--out", s(&f.dir.join("x"))]);
    assert_eq!(o.status.code(), Some(2));
}
