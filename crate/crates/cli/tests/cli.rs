use std::process::{Command, Output};

use serde_json::{json, Value};

fn roofcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_roofcalc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = roofcalc(&full);
    assert!(
        out.status.success(),
        "{:?}: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn bwb_outputs() {
    assert_eq!(
        json_of(&["bwb", "--n", "3", "--q", "2,1,1", "--u", "0", "--twist", "-4"]),
        json!({ "bundle": "S(2,1,1)Q(-4)", "result": "zero", "schema": 1 })
    );
    let v = json_of(&["bwb", "--n", "2", "--twist", "-5"]);
    assert_eq!(
        (v["degree"].clone(), v["dim"].clone()),
        (json!(6), json!("1"))
    );
    // adjoint
    let v = json_of(&["bwb", "--n", "2", "--u", "1", "--q", "1"]);
    assert_eq!(v["dim"], json!("24"));
}

#[test]
fn decompose_and_restrict() {
    let v = json_of(&["decompose", "--n", "3", "--expr", "Udual * Q"]);
    assert_eq!(v["cohomology"], json!([{ "degree": 0, "dim": "48" }]));
    let v = json_of(&["koszul", "restrict", "--n", "3", "--expr", "Qdual(2)"]);
    assert_eq!(
        v["restriction"]["cohomology"],
        json!([{ "degree": 0, "dim": "783" }])
    );
    let v = json_of(&["koszul", "family-dim", "--n", "2"]);
    assert_eq!(v["value"], json!("51"));
}

#[test]
fn certificates() {
    let v = json_of(&["motivic", "certificate", "--n", "3"]);
    assert_eq!(v["verified"], json!(true));
    assert_eq!(v["conclusion_text"], json!("([Y-] - [Y+])L^3 = 0"));
    assert_eq!(
        json_of(&["hodge", "middle", "--n", "3"])["conclusion"],
        Value::Null
    );
    assert!(json_of(&["hodge", "middle", "--n", "4"])["conclusion"].is_string());
}

#[test]
fn plethysm_commands() {
    let v = json_of(&["plethysm", "expand", "--n", "2", "--lambda", "1,1"]);
    assert_eq!(v["terms"], json!([{ "coeff": "1", "mu": [2, 1, 1] }]));
    let v = json_of(&["plethysm", "witness", "--n", "3", "--bound", "7"]);
    assert_eq!(
        (v["lambda"].clone(), v["k"].clone()),
        (json!([4, 1, 1, 1]), json!(3))
    );
    let out = roofcalc(&[
        "--budget-degree",
        "4",
        "plethysm",
        "expand",
        "--n",
        "2",
        "--lambda",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compound_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    std::fs::write(&path, r#"[["2","0","0"],["0","1/3","0"],["0","0","5"]]"#).unwrap();
    let v = json_of(&[
        "pluecker",
        "compound",
        "--k",
        "2",
        "--in",
        path.to_str().unwrap(),
    ]);
    assert_eq!(
        v["matrix"],
        json!([["2/3", "0", "0"], ["0", "10", "0"], ["0", "0", "5/3"]])
    );
}

#[test]
fn probe_is_seeded() {
    let a = json_of(&[
        "--seed", "9", "pluecker", "probe", "--n", "2", "--trials", "30",
    ]);
    let b = json_of(&[
        "--seed", "9", "pluecker", "probe", "--n", "2", "--trials", "30",
    ]);
    assert_eq!(a, b);
    assert_eq!(a["incidences"], json!([]));
}

#[test]
fn suite_is_deterministic_and_complete() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = [
        "--json",
        "--n",
        "2,3",
        "verify",
        "--paper-suite",
        "--out",
        path.to_str().unwrap(),
    ];
    let a = roofcalc(&args);
    let b = roofcalc(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let from_file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v, from_file);
    let cases = v["cases"].as_array().unwrap();
    let ids = roofcalc::suite::lemma_ids();
    assert_eq!(cases.len(), 2 * ids.len());
    for n in [2, 3] {
        for id in &ids {
            let hits = cases
                .iter()
                .filter(|c| c["n"] == json!(n) && c["lemma"] == json!(id))
                .count();
            assert_eq!(hits, 1, "{} at n = {}", id, n);
        }
    }
    assert!(cases.iter().all(|c| c["status"] != json!("fail")));
    let fam = cases
        .iter()
        .find(|c| c["n"] == json!(2) && c["lemma"] == json!("family_dimension"))
        .unwrap();
    assert!(fam["detail"].as_str().unwrap().contains("= 51"));
    assert!(v.get("wall_time_ms").is_none());
}

#[test]
fn empty_suite() {
    let out = roofcalc(&["--json", "--n", "2-1", "verify", "--paper-suite"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&["--n", "", "verify", "--paper-suite"]);
    assert_eq!(v["cases"], json!([]));
}

#[test]
fn usage_errors() {
    assert_eq!(roofcalc(&["bwb", "--q", "1"]).status.code(), Some(2));
    assert_eq!(
        roofcalc(&["decompose", "--n", "2", "--expr", "Q *"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        roofcalc(&["--n", "2,3", "hodge", "middle"]).status.code(),
        Some(2)
    );
    assert_eq!(roofcalc(&["verify"]).status.code(), Some(2));
}

#[test]
fn text_output() {
    let out = roofcalc(&["hodge", "middle", "--n", "2"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("schema: 1\n") && s.contains("all_vanish: true\n"));
}
