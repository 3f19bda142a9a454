use gridguard::geometry::scalar::rat;
use gridguard::io::parse_polygon_str;
use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(format!("{name}.poly"))
}

fn gridguard(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gridguard"))
        .args(args)
        .env_remove("GRIDGUARD_THREADS")
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = gridguard(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn square_needs_one_guard() {
    let sq = corpus("square");
    let r = report(&["--input", sq.to_str().unwrap(), "--verify-samples", "2000"]);
    assert_eq!(r["guard_count"], 1);
    assert_eq!(r["coverage"], 1.0);
    assert_eq!(r["n"], 4);
}

#[test]
fn keys_come_in_a_fixed_order() {
    let out = gridguard(&["--input", corpus("lshape").to_str().unwrap(), "--verify-samples", "100"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let keys = ["\"n\"", "\"scr_count\"", "\"tsr_count\"", "\"gr_count\"", "\"solver\"", "\"guard_count\"", "\"guards\"", "\"coverage\"", "\"stage_ms\""];
    let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap_or_else(|| panic!("{k} missing"))).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{text}");
}

#[test]
fn runs_are_reproducible() {
    let input = corpus("comb3");
    let args = ["--input", input.to_str().unwrap(), "--solver", "both", "--seed", "11", "--verify-samples", "500"];
    let mut a = report(&args);
    let mut b = report(&args);
    a.as_object_mut().unwrap().remove("stage_ms");
    b.as_object_mut().unwrap().remove("stage_ms");
    assert_eq!(a, b);
    assert_eq!(a["guard_count"], 3);
    assert_eq!(a["greedy_count"], a["exact_count"]);
}

#[test]
fn l_shape_greedy_is_optimal() {
    let input = corpus("lshape");
    for strategy in ["trapezoid", "paper1", "paper2", "grid"] {
        let r = report(&["--input", input.to_str().unwrap(), "--strategy", strategy, "--solver", "both"]);
        assert_eq!(r["greedy_count"], r["exact_count"], "{strategy}");
        assert_eq!(r["guard_count"], 1, "{strategy}");
    }
}

#[test]
fn writes_json_and_svg_files() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let svg = dir.path().join("r.svg");
    let out = gridguard(&[
        "--input",
        corpus("comb3").to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(r["guards"].as_array().unwrap().len(), 3);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bowtie = dir.path().join("bowtie.poly");
    std::fs::write(&bowtie, "0 0\n2 2\n2 0\n0 2\n").unwrap();
    assert_eq!(gridguard(&["--input", bowtie.to_str().unwrap()]).status.code(), Some(2));
    let missing = dir.path().join("nope.poly");
    assert_eq!(gridguard(&["--input", missing.to_str().unwrap()]).status.code(), Some(2));
    let l = corpus("lshape");
    let l = l.to_str().unwrap();
    assert_eq!(gridguard(&["--input", l, "--strategy", "hexagons"]).status.code(), Some(2));
    assert_eq!(gridguard(&["--input", l, "--k", "7", "--strategy", "paper1"]).status.code(), Some(2));
    let budget = gridguard(&["--input", l, "--strategy", "paper1", "--max-cells", "3"]);
    assert_eq!(budget.status.code(), Some(3));
    let threads = Command::new(env!("CARGO_BIN_EXE_gridguard"))
        .args(["--input", l])
        .env("GRIDGUARD_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(threads.status.code(), Some(2));
    let two = Command::new(env!("CARGO_BIN_EXE_gridguard"))
        .args(["--input", l, "--verify-samples", "100"])
        .env("GRIDGUARD_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(two.status.code(), Some(0));
}

#[test]
fn decimals_parse_exactly() {
    let p = parse_polygon_str("# unit-ish\n0.1 0.2\n3 0.2\n3 4\n").unwrap();
    assert_eq!(p.vertex(0).x(), &rat(1, 10));
    assert_eq!(p.vertex(0).y(), &rat(1, 5));
}
