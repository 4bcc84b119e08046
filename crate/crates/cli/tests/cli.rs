use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncsym")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn square_map(dir: &TempDir) -> PathBuf {
    write(dir, "square.json", r#"{"n":1,"components":[[{"coeff":"1","exps":[2]}]]}"#)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// `(tpow, exps, coeff)` triples of every term of a map.
fn terms(map: &Value) -> BTreeSet<(usize, u64, String, String)> {
    let mut out = BTreeSet::new();
    for (i, comp) in map["components"].as_array().unwrap().iter().enumerate() {
        for t in comp.as_array().unwrap() {
            out.insert((
                i,
                t["tpow"].as_u64().unwrap_or(0),
                t["exps"].to_string(),
                t["coeff"].as_str().unwrap().to_string(),
            ));
        }
    }
    out
}

#[test]
fn identities_small_and_full() {
    let out = run(&["identities", "--max-weight", "2", "--only", "Lambda-S"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["identities"][0]["identity"], "Lambda-S");
    assert_eq!(v["identities"][0]["status"], "pass");

    let out = run(&["identities", "--max-weight", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["identities"].as_array().unwrap().len(), 21);
    assert_eq!(v["all_pass"], true);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["identities", "--max-weight", "0"]).status.code(), Some(2));
    assert_eq!(run(&["identities", "--max-weight", "3", "--only", "Lambda-Q"]).status.code(), Some(2));
    assert_eq!(run(&["jc", "--generate", "3,3", "--order", "4"]).status.code(), Some(2));
    assert_eq!(run(&["jc", "--generate", "1,3,0", "--order", "4"]).status.code(), Some(2));
}

#[test]
fn malformed_map_reports_position() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{\"n\": 1,\n \"components\": [[{\"coeff\": }]]}");
    let out = run(&["invert", "--map", s(&bad), "--order", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn invert_square_gives_catalan() {
    let dir = TempDir::new().unwrap();
    let map = square_map(&dir);
    let out = run(&["invert", "--map", s(&map), "--order", "5", "--method", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 5);
    for r in reports {
        assert_eq!(r["agrees_with_oracle"], true);
        let coeffs: Vec<&str> = r["slices"]
            .as_array()
            .unwrap()
            .iter()
            .map(|sl| sl["components"][0][0]["coeff"].as_str().unwrap())
            .collect();
        assert_eq!(coeffs, ["1", "2", "5", "14", "42"]);
    }
}

#[test]
fn invert_zero_field_is_identity() {
    let dir = TempDir::new().unwrap();
    let map = write(&dir, "zero.json", r#"{"n":2,"components":[[],[]]}"#);
    let out = run(&["invert", "--map", s(&map), "--order", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    for r in v["reports"].as_array().unwrap() {
        for sl in r["slices"].as_array().unwrap() {
            assert!(sl["components"].as_array().unwrap().iter().all(|c| c.as_array().unwrap().is_empty()));
        }
    }
}

#[test]
fn dlog_with_bch() {
    let dir = TempDir::new().unwrap();
    let map = square_map(&dir);
    let out = run(&["dlog", "--map", s(&map), "--order", "6", "--bch-depth", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["bases_agree"], true);
    assert_eq!(v["exp_matches_inverse"], true);
    assert_eq!(v["bch"]["agrees"], true);
    assert_eq!(v["bch"]["valid_to"], 3);
    assert_eq!(v["results"].as_array().unwrap().len(), 4);
    assert_eq!(run(&["dlog", "--map", s(&map), "--order", "4", "--bch-depth", "7"]).status.code(), Some(2));
}

#[test]
fn flow_at_minus_one_is_the_oracle_inverse() {
    let dir = TempDir::new().unwrap();
    let map = write(
        &dir,
        "cubic.json",
        r#"{"n":2,"components":[[{"coeff":"1","exps":[0,2]},{"coeff":"-1/2","exps":[1,2]}],[{"coeff":"2","exps":[2,0]}]]}"#,
    );
    let flow = run(&["flow", "--map", s(&map), "--order", "5", "--u", "-1", "--basis", "all"]);
    assert_eq!(flow.status.code(), Some(0));
    let fv = json_of(&flow);
    assert_eq!(fv["bases_agree"], true);
    assert_eq!(fv["u"], "-1");

    let inv = run(&["invert", "--map", s(&map), "--order", "5", "--method", "oracle"]);
    assert_eq!(inv.status.code(), Some(0));
    let iv = json_of(&inv);
    let mut expected = BTreeSet::new();
    expected.insert((0, 0, "[1,0]".to_string(), "1".to_string()));
    expected.insert((1, 0, "[0,1]".to_string(), "1".to_string()));
    for (m, slice) in iv["reports"][0]["slices"].as_array().unwrap().iter().enumerate() {
        for (i, _, e, c) in terms(slice) {
            expected.insert((i, m as u64 + 1, e, c));
        }
    }
    assert_eq!(terms(&fv["map"]), expected);
}

#[test]
fn jc_generated_triangular() {
    let out = run(&["jc", "--generate", "3,3,42", "--order", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert!(v["xi_vanish_from"].is_u64());
    assert!(v["psi_vanish_from"].as_u64().unwrap() <= 3);
    assert_eq!(v["inverse_is_polynomial_up_to_t"], true);
    assert_eq!(v["polynomial_inverse_verified"], true);
}

#[test]
fn jc_batch_mixes_maps_and_descriptors() {
    let dir = TempDir::new().unwrap();
    let batch = write(
        &dir,
        "batch.json",
        r#"[{"n":2,"d":2,"seed":1},{"n":2,"components":[[{"coeff":"1","exps":[0,2]}],[]]}]"#,
    );
    let out = run(&["jc", "--batch", s(&batch), "--order", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let exps = v["experiments"].as_array().unwrap();
    assert_eq!(exps.len(), 2);
    assert_eq!(exps[1]["nilpotency_index"], 2);
    assert_eq!(exps[1]["xi_vanish_from"], 2);
}

#[test]
fn output_is_deterministic_and_out_matches_stdout() {
    let dir = TempDir::new().unwrap();
    let map = square_map(&dir);
    let args = ["dlog", "--map", s(&map), "--order", "5", "--bch-depth", "2"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let target = dir.path().join("report.json");
    let mut with_out = args.to_vec();
    with_out.extend(["--out", s(&target)]);
    let c = run(&with_out);
    assert_eq!(c.status.code(), Some(0));
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&target).unwrap(), a.stdout);
}

#[test]
fn text_format_renders_the_same_report() {
    let out = run(&["families", "--max-weight", "2", "--only", "psi", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("family: Psi"));
    assert!(text.contains("relation: sigma'=xi sigma"));
}
