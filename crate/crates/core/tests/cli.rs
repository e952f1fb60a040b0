//! The command-line binary: output formats, exit codes, determinism.

use std::path::Path;
use std::process::{Command, Output};

use canalizing::TruthTable;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_canalizing"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn classify_worked_example() {
    // (x1 OR NOT x2) OR (x3 XOR x4)
    let bit = |i: usize, v: usize| (i >> v) & 1 == 1;
    let f = TruthTable::from_fn(4, |i| bit(i, 0) || !bit(i, 1) || (bit(i, 2) ^ bit(i, 3))).unwrap();
    let table = f.to_binary_string();
    let out = run(&["classify", "--n", "4", "--table", &table, "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "n,m,k,r,layer_sizes\n4,4,2,1,2\n");
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["classify", "--n", "2", "--table", "012"][..],
        &["classify", "--n", "2", "--table", "01x1"],
        &["count", "--max-n", "40"],
        &["census", "--n", "5"],
        &["prevalence", "--max-n", "0"],
        &["no-such-command"],
        &[],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn count_rows() {
    let out = stdout(&run(&["count", "--max-n", "3"]));
    assert!(out.starts_with("n,m,k,r,count\n"));
    assert!(out.lines().any(|l| l == "3,3,1,1,24"));
    assert_eq!(stdout(&run(&["count", "--max-n", "0"])), "n,m,k,r,count\n0,0,0,0,2\n");

    let four = stdout(&run(&["count", "--max-n", "4", "--n", "4", "--m", "4", "--k", "4"]));
    let sum: u64 = four
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(sum, 736);
}

#[test]
fn census_agrees_with_formulas() {
    let out = run(&["census", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("all cells match"));

    let csv = stdout(&run(&["census", "--n", "3", "--format", "csv"]));
    assert!(csv.starts_with("n,m,k,r,formula,census,diff\n"));
    assert!(csv.lines().any(|l| l == "3,3,3,2,48,48,0"));
}

#[test]
fn corrupted_census_state_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("state");
    std::fs::write(&state, "n=2\nnext=16\nn,m,k,r,count\n2,2,0,0,16\n").unwrap();
    let out = run(&["census", "--n", "2", "--state", state.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("mismatching cells"));
}

#[test]
fn prevalence_delta_signs() {
    let out = stdout(&run(&["prevalence", "--max-n", "5"]));
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("n,P_can,P_can_naive,P_ncf,P_ncf_naive,delta_can,delta_ncf")
    );
    let signs: Vec<bool> = lines
        .map(|l| l.split(',').nth(5).unwrap().parse::<f64>().unwrap() < 0.0)
        .collect();
    assert_eq!(signs, [true, true, false, false, false]);
}

#[test]
fn figures_written() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["figures", "--max-n", "5", "--outdir", dir.path().to_str().unwrap(), "--svg"]);
    assert_eq!(out.status.code(), Some(0));
    let read = |name: &str| std::fs::read_to_string(dir.path().join(name)).unwrap();
    for name in [
        "fig1_depth_all.csv",
        "fig2_depth_nondegenerate.csv",
        "fig3_delta.csv",
        "prevalence.csv",
    ] {
        assert!(Path::new(&dir.path().join(name)).exists(), "{name}");
    }
    assert!(read("fig1_depth_all.csv")
        .lines()
        .any(|l| l == "3,0,138,256,0.539062500000"));
    assert!(read("fig3_delta.csv").starts_with("n,delta_can,delta_ncf\n"));
    assert!(read("fig1_depth_all.svg").starts_with("<svg"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["count", "--max-n", "6"][..],
        &["prevalence", "--max-n", "8", "--format", "pretty"],
        &["census", "--n", "6", "--samples", "2000", "--seed", "3", "--format", "csv"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let one = stdout(&run(&["census", "--n", "6", "--samples", "2000", "--seed", "3", "--workers", "1", "--format", "csv"]));
    let many = stdout(&run(&["census", "--n", "6", "--samples", "2000", "--seed", "3", "--workers", "7", "--format", "csv"]));
    assert_eq!(one, many);
}
