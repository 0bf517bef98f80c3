use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use supertrace_cli::{DimOutput, RootDataOutput, ScanOutput, VerifyOutput};

fn run(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_supertrace"));
    cmd.args(args).env_remove("SUPERTRACE_CACHE");
    if let Some(dir) = cache {
        cmd.env("SUPERTRACE_CACHE", dir);
    }
    cmd.output().expect("binary runs")
}

/// Parses stdout into `T` and checks that re-serializing gives back the same JSON.
fn round_trip<T: DeserializeOwned + Serialize>(out: &Output) -> T {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let raw: Value = serde_json::from_str(&text).expect("stdout is JSON");
    let typed: T = serde_json::from_value(raw.clone()).expect("JSON matches the documented schema");
    assert_eq!(serde_json::to_value(&typed).unwrap(), raw);
    typed
}

#[test]
fn root_data_sl21_lists_one_even_and_two_odd_roots() {
    let out = run(&["--format", "json", "root-data", "sl", "2", "1"], None);
    assert_eq!(out.status.code(), Some(0));
    let rd: RootDataOutput = round_trip(&out);
    assert_eq!(rd.even_positive_roots.len(), 1);
    assert_eq!(rd.odd_positive_roots.len(), 2);
    assert_eq!(rd.cartan, vec![vec![2, -1], vec![-1, 0]]);
}

#[test]
fn root_data_rejects_equal_ranks() {
    let out = run(&["root-data", "sl", "2", "2"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("m != n"));
}

#[test]
fn root_data_osp_2_6() {
    let out = run(&["--format", "json", "root-data", "osp2", "3"], None);
    assert_eq!(out.status.code(), Some(0));
    let rd: RootDataOutput = round_trip(&out);
    assert_eq!(rd.algebra, "osp(2|6)");
    // so(2)⊕sp(6) has 9 positive roots; g₁ has 6 positive odd roots.
    assert_eq!(rd.even_positive_roots.len(), 9);
    assert_eq!(rd.odd_positive_roots.len(), 6);
}

#[test]
fn mdim_and_qdim_values() {
    let out = run(&["--format", "json", "mdim", "sl", "2", "1", "--weight", "0,1"], None);
    let d: DimOutput = round_trip(&out);
    assert_eq!(d.rows[0].mod_sdim.as_deref(), Some("1/2"));

    // h²/(4 sinh(h/2) sinh(h)) expanded through h⁴.
    let out = run(&["--format", "json", "qdim", "sl", "2", "1", "--weight", "0,1", "--order", "4"], None);
    let q: DimOutput = round_trip(&out);
    assert_eq!(q.rows[0].series.as_deref().unwrap(), ["1/2", "0", "-5/48", "0", "53/3840"]);

    let out = run(&["--format", "json", "mdim", "sl", "3", "1", "--weight", "0,0,0"], None);
    assert_eq!(out.status.code(), Some(0));
    let d: DimOutput = round_trip(&out);
    assert!(!d.rows[0].typical);
    assert_eq!(d.rows[0].mod_sdim, None);
    let table = run(&["mdim", "sl", "3", "1", "--weight", "0,0,0"], None);
    assert!(String::from_utf8_lossy(&table.stdout).contains("atypical"));
}

#[test]
fn weight_of_wrong_length_is_a_usage_error() {
    assert_eq!(run(&["mdim", "sl", "2", "1", "--weight", "0,1,2"], None).status.code(), Some(2));
    assert_eq!(run(&["mdim", "sl", "2", "1"], None).status.code(), Some(2));
    assert_eq!(run(&["verify", "--algebra", "gl21"], None).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nonsense"], None).status.code(), Some(2));
}

#[test]
fn scan_typical_locus() {
    for (fixed, atypical) in [("0", vec!["-1", "0"]), ("1", vec!["-2", "0"])] {
        let out = run(&["--format", "json", "scan-typical", "sl", "2", "1", "--fixed", fixed, "--from", "-3", "--to", "3", "--step", "1/2"], None);
        assert_eq!(out.status.code(), Some(0));
        let s: ScanOutput = round_trip(&out);
        assert_eq!(s.atypical, atypical);
        assert!(s.atypical_all_integers);
        assert_eq!(s.rows.len(), 13);
    }
}

#[test]
fn verify_trace_is_deterministic_and_passes() {
    let a = run(&["--format", "json", "verify", "--suite", "trace", "--algebra", "sl21"], None);
    let b = run(&["--format", "json", "verify", "--suite", "trace", "--algebra", "sl21"], None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: VerifyOutput = round_trip(&a);
    assert!(v.passed);
    assert!(v.checks.iter().any(|c| c.name == "witness independence" && c.inputs.contains("K(1|1)")));
}

#[test]
fn verify_tensors_passes_to_degree_three() {
    let out = run(&["--format", "json", "verify", "--suite", "tensors", "--algebra", "sl21", "--max-degree", "3"], None);
    assert_eq!(out.status.code(), Some(0));
    let v: VerifyOutput = round_trip(&out);
    assert!(v.checks.iter().any(|c| c.name == "invariant tensor is even" && c.inputs.starts_with("degree 3")));
    assert!(v.checks.iter().any(|c| c.name == "classical form vanishes on IT"));
    assert_eq!(v.tensor_dimensions.len(), 3);
}

#[test]
fn corrupted_cache_is_a_named_failure() {
    let dir = tempfile::tempdir().unwrap();
    let warm = run(&["verify", "--suite", "trace"], Some(dir.path()));
    assert_eq!(warm.status.code(), Some(0));
    let file = dir.path().join("modules.jsonl");
    let text = fs::read_to_string(&file).unwrap();
    assert!(text.lines().count() >= 2);
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    lines[1] = lines[1].replacen("\"e\":[", "\"e\":[[[999,0,\"1\"]],", 1);
    fs::write(&file, lines.join("\n")).unwrap();

    let out = run(&["--format", "json", "verify", "--suite", "all"], Some(dir.path()));
    assert_eq!(out.status.code(), Some(1));
    let v: VerifyOutput = round_trip(&out);
    let failed: Vec<_> = v.checks.iter().filter(|c| !c.passed).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0].name, "module cache is intact");
    assert!(v.cache.unwrap().error.unwrap().contains("corrupted cache entry"));
}

#[test]
fn warm_cache_reproduces_the_cold_report() {
    let dir = tempfile::tempdir().unwrap();
    let cold = run(&["--format", "json", "verify", "--suite", "trace"], Some(dir.path()));
    let warm = run(&["--format", "json", "verify", "--suite", "trace"], Some(dir.path()));
    let (cold, warm): (VerifyOutput, VerifyOutput) = (round_trip(&cold), round_trip(&warm));
    assert!(cold.passed && warm.passed);
    assert_eq!(cold.checks, warm.checks);
}
