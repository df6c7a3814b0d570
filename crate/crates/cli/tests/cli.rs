use std::process::{Command, Output};

use serde_json::Value;

fn fovec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fovec")).args(args).env_remove("FOVEC_CACHE").output().unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = fovec(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (v, out.status.code().unwrap())
}

#[test]
fn wn_cohomology_json() {
    let (v, code) = json(&["wn-cohomology", "--n", "1", "--sym", "1", "--max-degree", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["cohomology"], serde_json::json!({"2": 1, "3": 1}));
    for key in ["command", "params", "result", "wall_time_ms", "artifact_version"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["command"], "wn-cohomology");
}

#[test]
fn weyl_gl1_table() {
    let out = fovec(&["weyl-gl1", "--N", "3", "--format", "table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<(u32, u32)> = text
        .lines()
        .filter_map(|l| {
            let mut it = l.split_whitespace();
            Some((it.next()?.parse().ok()?, it.next()?.parse().ok()?))
        })
        .collect();
    assert_eq!(rows, vec![(0, 1), (3, 1), (5, 2), (6, 2), (7, 5), (8, 10), (9, 5)]);
}

#[test]
fn csv_has_degree_rows() {
    let out = fovec(&["wl-cohomology", "--m", "1", "--n", "1", "--max-degree", "6", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "degree,dimension\n0,1\n2,1\n4,1\n");
}

#[test]
fn relative_and_flag_commands() {
    let (v, _) = json(&["relative", "--family", "w", "--n", "2", "--sym", "1", "--max-degree", "6"]);
    assert_eq!(v["result"]["cohomology"], serde_json::json!({"4": 2}));
    let (v, _) = json(&["flag-cohomology", "--shape", "1,1", "--max-degree", "7"]);
    assert_eq!(v["result"]["cohomology"], serde_json::json!({"0": 1, "3": 1, "5": 2, "6": 2}));
    let (v, _) = json(&["transgression", "--shape", "1,1"]);
    assert_eq!(v["result"]["cohomology"], serde_json::json!({"0": 1, "3": 1, "5": 2, "6": 2}));
}

#[test]
fn series_and_obstruction() {
    let (v, _) = json(&["series", "--kind", "grassmannian", "--m", "2", "--n", "2"]);
    assert_eq!(v["result"]["poincare"], serde_json::json!([1, 0, 1, 0, 2, 0, 1, 0, 1]));
    let (v, _) = json(&["obstruction", "--n", "3"]);
    assert_eq!((v["result"]["top_degree"].as_u64(), v["result"]["subflag_bound"].as_u64()), (Some(15), Some(11)));
}

#[test]
fn parabolic_and_cocycles() {
    let (v, code) = json(&["parabolic-verify", "--m", "1", "--n", "2", "--module", "adjoint"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["degeneration"]["diagonal"], serde_json::json!([1, 1, 1]));
    let (v, code) = json(&["cocycle-verify", "--kind", "xi", "--n", "2", "--m", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["span_rank"], 2);
    let (v, _) = json(&["cocycle-verify", "--kind", "wheel", "--r", "2", "--n", "1"]);
    assert_eq!(v["result"]["zero"], true);
}

#[test]
fn verify_all_quick() {
    let (v, code) = json(&["verify-all", "--level", "quick"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["criteria"].as_array().unwrap().len(), 12);
}

#[test]
fn invalid_parameters_exit_2() {
    let out = fovec(&["wn-cohomology", "--n", "9", "--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "invalid_parameters");
    assert_eq!(fovec(&["no-such-command"]).status.code(), Some(2));
    let (v, code) = json(&["parabolic-verify", "--m", "2", "--n", "1", "--lambda", "1,1"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "invalid_parameters");
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_fovec"))
            .args(["weyl-gl1", "--N", "4", "--format", "json"])
            .env("FOVEC_CACHE", dir.path())
            .output()
            .unwrap();
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        serde_json::to_string(&v["result"]).unwrap()
    };
    let fresh = run();
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let cached = run();
    assert_eq!(fresh, cached);
    let plain = fovec(&["weyl-gl1", "--N", "4", "--format", "json"]);
    let v: Value = serde_json::from_slice(&plain.stdout).unwrap();
    assert_eq!(serde_json::to_string(&v["result"]).unwrap(), fresh);
}

#[test]
fn output_is_deterministic() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("wall_time_ms");
        v
    };
    let a = strip(json(&["transgression", "--shape", "2,1"]).0);
    let b = strip(json(&["transgression", "--shape", "2,1"]).0);
    assert_eq!(a, b);
}
