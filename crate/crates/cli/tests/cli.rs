//! End-to-end tests of the binary: flag parsing, output schemas, exit
//! codes, determinism, and the cache.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cordial"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).to_string()
}

#[test]
fn qbg_dot_export_for_a2() {
    let out = run(&["qbg", "--type", "A2", "--format", "dot"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("rankdir=\"BT\""));
    assert_eq!(text.matches("label=\"e\"").count(), 1);
    assert_eq!(text.matches("[label=\"121\"]").count(), 1);
    // 6 nodes and 15 edges
    assert_eq!(text.matches(" -> ").count(), 15);
}

#[test]
fn nu_json_schema_and_values() {
    let out = run(&[
        "nu",
        "--type",
        "A2",
        "--lattice",
        "sc",
        "--lambda",
        "3,3",
        "--v",
        "e",
        "--w",
        "121",
        "--method",
        "both",
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["nu_x"], serde_json::json!(["2", "2"]));
    assert_eq!(v["method"], "both");
    assert_eq!(v["defect"], 0);
    assert_eq!(v["dim_Xx_bx"], 1);
}

#[test]
fn nu_accepts_type_a_tuples() {
    // (4,1,-5) has coroot coordinates (4,5)
    let out = run(&[
        "nu",
        "--type",
        "A2",
        "--lattice",
        "sc",
        "--lambda",
        "4,1,-5",
        "--w",
        "e",
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["nu_x"], serde_json::json!(["4", "5"]));
}

#[test]
fn cordial_c2_dominant_sha_example() {
    let out = run(&[
        "cordial", "--type", "C2", "--lambda", "9,9", "--v", "e", "--w", "212", "--format", "json",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["cordial"], "true");
    assert!(v["families"]
        .as_array()
        .unwrap()
        .contains(&serde_json::json!("dominant-sha")));
    assert_eq!(v["method"], "qbg");
}

#[test]
fn survey_csv_shape_and_summary() {
    let out = run(&[
        "survey",
        "--type",
        "A1",
        "--lattice",
        "sc",
        "--lambda",
        "3",
        "--format",
        "csv",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5); // header + |W|² rows
    assert!(lines[0].starts_with("type,lattice,v,w,lambda"));
    for row in &lines[1..] {
        assert!(row.contains(",true,"), "row: {row}");
    }
    assert!(stderr(&out).contains("4 rows"));
}

#[test]
fn survey_is_deterministic_across_jobs() {
    let args = [
        "survey",
        "--type",
        "A2",
        "--lattice",
        "sc",
        "--lambda",
        "4,4",
        "--format",
        "csv",
    ];
    let one = run(&args);
    let again = run(&args);
    let parallel = run(&[
        "survey",
        "--type",
        "A2",
        "--lattice",
        "sc",
        "--lambda",
        "4,4",
        "--format",
        "csv",
        "--jobs",
        "3",
    ]);
    assert!(one.status.success());
    assert_eq!(stdout(&one), stdout(&again));
    assert_eq!(stdout(&one), stdout(&parallel));
    assert_eq!(stdout(&one).lines().count(), 37);
}

#[test]
fn verify_a2_passes() {
    let out = run(&["verify", "--type", "A2", "--lattice", "sc"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("PASS newton-oracle-agreement"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_json_is_machine_readable() {
    let out = run(&[
        "verify",
        "--type",
        "A1",
        "--lattice",
        "sc",
        "--format",
        "json",
        "--seed",
        "7",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["failed"], 0);
    assert!(v["properties"].as_array().unwrap().len() >= 10);
}

#[test]
fn user_errors_exit_one() {
    let cases: &[&[&str]] = &[
        &["rootsys", "--type", "E9"],
        &["nu", "--type", "A2", "--lambda", "1,2,3,4", "--w", "e"],
        &["nu", "--type", "A2", "--lambda", "3,3", "--w", "9"],
        &["qbg", "--type", "A2", "--format", "pdf"],
        &[
            "nu",
            "--type",
            "A2",
            "--lattice",
            "sc",
            "--lambda",
            "30,30",
            "--w",
            "121",
            "--method",
            "oracle",
        ],
        &["survey", "--type", "A2", "--lambda", "3,3", "--jobs", "0"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(
            out.status.code(),
            Some(1),
            "args {args:?}: {}",
            stderr(&out)
        );
    }
}

#[test]
fn rootsys_json_schema() {
    let out = run(&[
        "rootsys",
        "--type",
        "C2",
        "--lattice",
        "sc",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["type"], "C2");
    assert_eq!(v["lattice"], "sc");
    assert_eq!(v["positive_roots"].as_array().unwrap().len(), 4);
    assert_eq!(v["symmetrizer"], serde_json::json!([1, 2]));
}

#[test]
fn rootsys_accepts_explicit_cartan_and_rejects_affine() {
    let ok = run(&["rootsys", "--cartan", "2,-2;-1,2", "--format", "json"]);
    assert!(ok.status.success());
    let bad = run(&["rootsys", "--cartan", "2,-2;-2,2"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr(&bad).contains("not of finite type"));
}

#[test]
fn qbg_cache_roundtrip_and_corruption_recovery() {
    let dir = std::env::temp_dir().join(format!("cordial-cli-cache-{}", std::process::id()));
    let run_cached = || {
        let mut cmd = bin();
        cmd.args(["qbg", "--type", "C2", "--format", "json"])
            .env("CORDIAL_CACHE_DIR", &dir);
        cmd.output().expect("binary runs")
    };
    let first = run_cached();
    assert!(first.status.success());
    let cache_file: PathBuf = std::fs::read_dir(&dir)
        .unwrap()
        .next()
        .unwrap()
        .unwrap()
        .path();
    let second = run_cached();
    assert_eq!(stdout(&first), stdout(&second));
    // corrupt the cache; the command must rebuild and still answer correctly
    std::fs::write(
        &cache_file,
        "cordial-cache v0.0.0 fnv64=0000000000000000\ngarbage",
    )
    .unwrap();
    let third = run_cached();
    assert_eq!(stdout(&first), stdout(&third));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn output_flag_writes_file_atomically() {
    let dir = std::env::temp_dir().join(format!("cordial-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("graph.dot");
    let out = bin()
        .args(["qbg", "--type", "A1", "--format", "dot", "--output"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("digraph"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn nu_accepts_direct_translation_part() {
    // t^μ·s1 with μ = s1(λ), λ = (3,3): same element as --v 1 --lambda 3,3
    let direct = run(&[
        "nu",
        "--type",
        "A2",
        "--lattice",
        "sc",
        "--mu",
        "0,3",
        "--w",
        "1",
        "--format",
        "json",
    ]);
    assert!(direct.status.success(), "{}", stderr(&direct));
    let via_lambda = run(&[
        "nu",
        "--type",
        "A2",
        "--lattice",
        "sc",
        "--lambda",
        "3,3",
        "--v",
        "1",
        "--w",
        "1",
        "--format",
        "json",
    ]);
    assert!(via_lambda.status.success());
    assert_eq!(stdout(&direct), stdout(&via_lambda));
}

#[test]
fn survey_dominant_slice_flags_only_w0() {
    let out = run(&[
        "survey",
        "--type",
        "A2",
        "--lattice",
        "sc",
        "--lambda",
        "4,4",
        "--v",
        "e",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let non_cordial: Vec<&str> = text
        .lines()
        .skip(1)
        .filter(|l| l.contains(",false,"))
        .collect();
    assert_eq!(non_cordial.len(), 1);
    assert!(non_cordial[0].contains(",121,"));
}

#[test]
fn qbg_method_refuses_then_force_overrides() {
    let refused = run(&[
        "nu",
        "--type",
        "A2",
        "--lattice",
        "sc",
        "--lambda",
        "1,1",
        "--w",
        "121",
        "--method",
        "qbg",
    ]);
    assert_eq!(refused.status.code(), Some(1));
    assert!(stderr(&refused).contains("superregularity"));
    let forced = run(&[
        "nu",
        "--type",
        "A2",
        "--lattice",
        "sc",
        "--lambda",
        "1,1",
        "--w",
        "121",
        "--method",
        "qbg",
        "--force",
        "--format",
        "json",
    ]);
    assert!(forced.status.success(), "{}", stderr(&forced));
    let v: serde_json::Value = serde_json::from_str(&stdout(&forced)).unwrap();
    assert_eq!(v["nu_x"], serde_json::json!(["0", "0"]));
}

#[test]
fn verify_f4_sampled_is_deterministic_under_fixed_seed() {
    let args = [
        "verify",
        "--type",
        "F4",
        "--lattice",
        "sc",
        "--seed",
        "0",
        "--budget",
        "20000",
    ];
    let first = run(&args);
    assert!(first.status.success(), "{}", stdout(&first));
    let second = run(&args);
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("Usage"));
}
