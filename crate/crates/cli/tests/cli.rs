use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcalc")).args(args).output().expect("binary runs")
}

fn qcalc_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcalc"))
        .args(args)
        .env("RAYON_NUM_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn dims_r3_rows() {
    let o = qcalc(&["dims", "--r", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["all"], serde_json::json!([27, 108, 162, 108, 27]));
    assert_eq!(v["closed"], serde_json::json!([1, 30, 84, 82, 27]));
    assert_eq!(v["exact"], serde_json::json!([0, 26, 78, 78, 26]));
}

#[test]
fn invalid_configurations_exit_2() {
    for args in [
        &["dims", "--r", "4"][..],
        &["dims", "--r", "1"],
        &["dims", "--r", "7"],
        &["frobnicate", "--r", "3"],
        &["verify", "--r", "3", "--suite", "no-such-suite"],
        &["verify", "--r", "3", "--suite", "dims-r5"],
        &["export-operator", "--r", "3", "--degree", "2", "--op", "max"],
        &["maxwell-solve", "--r", "3", "--source", "nonsense"],
    ] {
        assert_eq!(qcalc(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn slow_tier_accepts_r7() {
    let o = qcalc(&["dims", "--r", "7", "--tier", "slow"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["all"][0], 343);
}

#[test]
fn verify_all_r3_reports_only_the_theta_curvature() {
    let o = qcalc(&["verify", "--r", "3", "--suite", "all"]);
    let v = json(&o);
    let mut failing = Vec::new();
    for s in v["suites"].as_array().unwrap() {
        for c in s["checks"].as_array().unwrap() {
            if c["ok"] != true {
                failing.push(format!("{}/{}", s["suite"].as_str().unwrap(), c["check"].as_str().unwrap()));
            }
        }
    }
    assert_eq!(failing, ["sources/theta: reference F is closed", "sources/theta: F = dA"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_all_r5_exits_0() {
    let o = qcalc(&["verify", "--r", "5", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(json(&o)["passes"], true);
}

#[test]
fn every_suite_is_reachable_by_name() {
    for s in qcalc_core::verify::ALL_SUITES {
        let r = if s.applies_to(3) { "3" } else if s.applies_to(5) { "5" } else { "7" };
        let o = qcalc(&["verify", "--r", r, "--tier", "slow", "--suite", s.name()]);
        assert!(matches!(o.status.code(), Some(0 | 1)), "{}", s.name());
        assert_eq!(json(&o)["suites"][0]["suite"], s.name());
    }
}

#[test]
fn maxwell_report_r3() {
    let v = json(&qcalc(&["maxwell-report", "--r", "3"]));
    assert_eq!(v["modes"]["all_zero_modes"], 28);
    assert_eq!(v["raw"]["all_zero_modes"], 54);
    assert_eq!(v["sources"]["all"], 54);
}

#[test]
fn solve_named_sources() {
    for name in ["theta", "ez", "eb", "ec", "ecb2"] {
        let o = qcalc(&["maxwell-solve", "--r", "3", "--source", name]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let v = json(&o);
        assert_eq!(v["residual-check"], true);
        assert_eq!(v["F"]["degree"], 2);
    }
    let o = qcalc(&["maxwell-solve", "--r", "3", "--source", "theta", "--gauge", "lorentz"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn solve_from_file_and_no_solution() {
    let dir = tempfile::tempdir().unwrap();
    let ok = dir.path().join("j.json");
    std::fs::write(&ok, r#"{"degree":1,"terms":[["e_b","1",["1","0"]]]}"#).unwrap();
    let o = qcalc(&["maxwell-solve", "--r", "3", "--source", ok.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    let bad = dir.path().join("ebb.json");
    std::fs::write(&bad, r#"{"degree":1,"terms":[["e_b","b",["1","0"]]]}"#).unwrap();
    let o = qcalc(&["maxwell-solve", "--r", "3", "--source", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(json(&o)["error"].as_str().unwrap().contains("no solution"));
}

#[test]
fn output_is_byte_identical_across_runs_and_threads() {
    for args in [
        &["maxwell-report", "--r", "3"][..],
        &["cohomology", "--r", "3"],
        &["export-operator", "--r", "3", "--degree", "1", "--op", "max"],
    ] {
        let a = qcalc_threads(args, "1").stdout;
        let b = qcalc_threads(args, "4").stdout;
        let c = qcalc_threads(args, "4").stdout;
        assert!(!a.is_empty());
        assert_eq!(a, b, "{args:?}");
        assert_eq!(b, c, "{args:?}");
    }
}

#[test]
fn export_operator_shapes() {
    let v = json(&qcalc(&["export-operator", "--r", "3", "--degree", "1"]));
    assert_eq!(v["matrix"]["rows"], 162);
    assert_eq!(v["matrix"]["cols"], 108);
    let v = json(&qcalc(&["export-operator", "--r", "3", "--degree", "2", "--op", "star"]));
    assert_eq!(v["matrix"]["rows"], 162);
    assert_eq!(v["op"], "star");
}

fn cache_file(dir: &Path) -> std::path::PathBuf {
    std::fs::read_dir(dir).unwrap().next().unwrap().unwrap().path()
}

#[test]
fn cache_round_trip_and_checksum_validation() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let fresh = qcalc(&["maxwell-report", "--r", "3"]).stdout;
    let first = qcalc(&["maxwell-report", "--r", "3", "--cache-dir", d]);
    assert_eq!(first.stdout, fresh);
    let path = cache_file(dir.path());
    let second = qcalc(&["maxwell-report", "--r", "3", "--cache-dir", d]);
    assert_eq!(second.stdout, fresh);
    assert!(second.stderr.is_empty());

    // tamper with one matrix entry but keep the stored checksum
    let text = std::fs::read_to_string(&path).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["ops"][1]["entries"][0][2] = serde_json::json!(["7/1", "0/1"]);
    std::fs::write(&path, serde_json::to_vec(&v).unwrap()).unwrap();
    let third = qcalc(&["maxwell-report", "--r", "3", "--cache-dir", d]);
    assert_eq!(third.stdout, fresh);
    assert!(String::from_utf8_lossy(&third.stderr).contains("checksum"));
    // the rebuilt cache is valid again
    let fourth = qcalc(&["maxwell-report", "--r", "3", "--cache-dir", d]);
    assert!(fourth.stderr.is_empty());
}

#[test]
fn out_flag_and_table_renderer() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("dims.json");
    let o = qcalc(&["dims", "--r", "3", "--out", p.to_str().unwrap()]);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(&p).unwrap()).unwrap();
    assert_eq!(v["r"], 3);
    let t = String::from_utf8(qcalc(&["dims", "--r", "3", "--table"]).stdout).unwrap();
    assert!(t.contains("closed") && t.contains("   84"));
}

#[test]
fn hodge_check_r3() {
    let o = qcalc(&["hodge-check", "--r", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["dims"]["harmonic"], serde_json::json!([1, 16, 30, 16, 1]));
    assert_eq!(v["spectrum"]["kernel_dim"], 13);
}
