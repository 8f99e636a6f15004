//! End-to-end runs of the binary: exit codes, JSON shape and
//! determinism of the emitted reports.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hopf3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopf3"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("hopf3-cli-{}-{name}", std::process::id()))
}

#[test]
fn verify_passes_for_a_catalog_member() {
    let out = hopf3(&["verify", "--type", "A1", "--p", "2"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["dim"], 8);
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["axioms"]["coassociative"], true);
    assert_eq!(v["associativity"]["passed"], true);
}

#[test]
fn verify_notes_the_non_cocommutative_member() {
    let out = hopf3(&["verify", "--type", "B3", "--p", "3"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["axioms"]["cocommutative"], false);
    assert_eq!(v["all_pass"], true);
}

#[test]
fn verify_rejects_odd_only_members_in_characteristic_two() {
    let out = hopf3(&["verify", "--type", "C15", "--p", "2"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
}

#[test]
fn unsupported_primes_are_config_errors() {
    let out = hopf3(&["report", "--p", "13"]);
    assert_eq!(code(&out), 2);
    let out = hopf3(&["verify", "--type", "A3", "--p", "7"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn p5_runs_only_behind_sampled_mode() {
    let out = hopf3(&["verify", "--type", "T210-1", "--p", "5"]);
    assert_eq!(code(&out), 2);
    let out = hopf3(&[
        "verify", "--type", "T210-1", "--p", "5", "--mode", "sampled", "--seed", "9",
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["seed"], 9);
    assert_eq!(v["mode"], "sampled");
}

#[test]
fn same_config_gives_byte_identical_output() {
    let a = hopf3(&["report", "--p", "2"]);
    let b = hopf3(&["report", "--p", "2"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["inapplicable"], serde_json::json!(["B3", "C6", "C15"]));
    assert_eq!(v["lambda_classes"]["enumerated"], 1);

    let a = hopf3(&[
        "verify", "--type", "T210-2", "--p", "5", "--mode", "sampled", "--seed", "3",
    ]);
    let b = hopf3(&[
        "verify", "--type", "T210-2", "--p", "5", "--mode", "sampled", "--seed", "3",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn report_covers_the_odd_catalog() {
    let out = hopf3(&["report", "--p", "3"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["inapplicable"], serde_json::json!([]));
    assert_eq!(v["lambda_classes"]["claimed"], 4);
    assert_eq!(v["h2"]["T210-6"], 1);
    assert_eq!(v["h2"]["abelian-3"], 6);
    assert_eq!(v["lie"]["simple-pmap-tables-gf2"], 0);
    assert_eq!(v["catalog"]["separation_certified"], true);
}

#[test]
fn iso_a_validates_and_rejects() {
    let out = hopf3(&[
        "iso",
        "--family",
        "A",
        "--p",
        "2",
        "--beta",
        "0",
        "--beta-prime",
        "1",
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["valid"], true);
    assert_eq!(v["witness"]["gamma"], serde_json::json!([1]));
    assert_eq!(v["witness"]["a"], serde_json::json!([1]));

    let out = hopf3(&[
        "iso",
        "--family",
        "A",
        "--p",
        "3",
        "--beta",
        "2",
        "--beta-prime",
        "1",
        "--max-ext-degree",
        "5",
    ]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["valid"], false);
    assert_eq!(v["witness"], Value::Null);
}

#[test]
fn iso_h_reports_the_validating_condition() {
    let out = hopf3(&[
        "iso",
        "--family",
        "H",
        "--p",
        "3",
        "--alpha",
        "0",
        "--alpha-prime",
        "1",
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["valid"], true);
    assert_eq!(v["witness"]["field_degree"], 3);
    assert_eq!(v["conditions"]["double_frobenius"], true);
    assert_eq!(v["conditions"]["quadratic"], false);
    assert_eq!(v["conditions"]["frobenius"], false);
}

#[test]
fn iso_rejects_unknown_families() {
    let out = hopf3(&[
        "iso",
        "--family",
        "Q",
        "--p",
        "2",
        "--beta",
        "0",
        "--beta-prime",
        "1",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn out_flag_writes_the_file_and_keeps_stdout_clean() {
    let path = temp_path("verify.json");
    let out = hopf3(&[
        "verify",
        "--type",
        "B2",
        "--p",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).expect("file written");
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["member"], "B2");
    std::fs::remove_file(&path).ok();
}

#[test]
fn build_certifies_a_presentation_file() {
    let path = temp_path("heis.txt");
    std::fs::write(
        &path,
        "# central extension\n\
         p 3\n\
         gens x y z\n\
         comm x y = z\n\
         comm x z = 0\n\
         comm y z = 0\n\
         pow x = 0\n\
         pow y = 0\n\
         pow z = 0\n",
    )
    .unwrap();
    let out = hopf3(&["build", "--from-file", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["dim"], 27);
    assert_eq!(v["associativity"]["passed"], true);
    std::fs::remove_file(&path).ok();

    let out = hopf3(&[
        "build",
        "--from-file",
        temp_path("missing.txt").to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
}
