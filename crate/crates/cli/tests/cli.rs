use std::process::Command;

use serde_json::Value;

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cubic-bm"))
}

fn analyze(spec: &str) -> (i32, Value) {
    let out = cli().args(["analyze", spec]).output().unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json)
}

fn verdicts(v: &Value) -> Vec<&str> {
    v["verdicts"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect()
}

#[test]
fn analyze_counterexample() {
    let (code, r) = analyze("125,85,68,2");
    assert_eq!(code, 0);
    assert_eq!(r["els"], true);
    assert_eq!(verdicts(&r), ["ihp_obstructed"]);
    assert_eq!(r["sumset"], serde_json::json!(["2/3"]));
}

#[test]
fn analyze_mod18_member_with_negative_coefficient() {
    let (code, r) = analyze("17,17,-22,11");
    assert_eq!(code, 0);
    assert!(verdicts(&r).contains(&"ihp_obstructed"));
}

#[test]
fn analyze_surface_with_points() {
    let (code, r) = analyze("1,1,1,3");
    assert_eq!(code, 0);
    assert!(!verdicts(&r).contains(&"ihp_obstructed"));
}

#[test]
fn analyze_exit_codes() {
    assert_eq!(analyze("1,1,1,4").0, 2);
    let out = cli().args(["analyze", "1,x,1,3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 2"));
    assert_eq!(analyze("1,0,1,3").0, 3);
    assert_eq!(analyze("1,1,1").0, 3);
    assert_eq!(cli().args(["analyze", "1,1,1,3", "--prime-bound", "0"]).output().unwrap().status.code(), Some(3));
}

#[test]
fn analyze_output_is_reproducible() {
    let a = cli().args(["analyze", "17,17,-22,11"]).output().unwrap().stdout;
    let b = cli().args(["analyze", "17,17,-22,11"]).output().unwrap().stdout;
    assert_eq!(a, b);
}

#[test]
fn census_records() {
    let out = cli().args(["census", "S", "1000"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("name,B,params,value"));
    assert_eq!(lines.next(), Some("S,1000,a<=B b<=B,984"));
    assert!(lines.next().unwrap().starts_with("wall_ms,,,"));

    let row = |args: &[&str]| {
        let out = cli().arg("census").args(args).output().unwrap();
        assert!(out.status.success(), "{args:?}");
        String::from_utf8(out.stdout).unwrap().lines().nth(1).unwrap().to_string()
    };
    assert_eq!(row(&["Mtr", "60", "--shards", "3"]), row(&["Mtr", "60"]));
    assert_eq!(row(&["ELS-fixed", "1,1,1", "900"]), "ELS_fixed_form,900,\"form=1,1,1 a0 in [-B,B]\",1400");
}

#[test]
fn census_rejects_unknown_counter_and_writes_checkpoint() {
    assert_eq!(cli().args(["census", "T", "10"]).output().unwrap().status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("mtr.csv");
    let status = cli().args(["census", "Mtr", "40", "--shards", "4", "--out"]).arg(&out).status().unwrap();
    assert!(status.success());
    assert!(std::fs::read_to_string(&out).unwrap().starts_with("name,B,params,value\nMtr,40,"));
    assert!(dir.path().join("mtr.checkpoint.json").exists());
}

#[test]
fn search_small_box() {
    let out = cli().args(["search", "--box", "3"]).output().unwrap();
    assert!(out.status.success());
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(r["scanned"].as_u64().unwrap() > 0);
    assert_eq!(r["contradictions"], serde_json::json!([]));
}

#[test]
fn verify_subset() {
    let out = cli().args(["verify-paper", "--only", "1,2,4"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains("[PASS]")).count(), 3);
    assert_eq!(cli().args(["verify-paper", "--only", "11"]).output().unwrap().status.code(), Some(3));
}
