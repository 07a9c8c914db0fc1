use std::process::{Command, Output};

use hbknot::invariants::SlopeData;
use hbknot::verify::VerificationReport;
use hbknot::{HandlebodyKnot, ProjRat};
use serde_json::Value;

fn hbk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hbk"))
        .args(args)
        .env_remove("HBK_BOUND")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = hbk(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn invariants_json_matches_library() {
    let v = json(&["invariants", "R:3,1,1,0"]);
    assert_eq!(v["jsj_type"], "K");
    assert_eq!(v["delta"], 2);
    let knot: HandlebodyKnot = v["knot"].as_str().unwrap().parse().unwrap();
    assert_eq!(knot, HandlebodyKnot::right(3, 1, 1, 0).unwrap());
    let canon: HandlebodyKnot = v["canonical"].as_str().unwrap().parse().unwrap();
    assert!(canon.is_left());
    let slopes: SlopeData = serde_json::from_value(v["slopes"].clone()).unwrap();
    assert_eq!(
        slopes,
        hbknot::invariants::characteristic_slopes(&knot).unwrap()
    );
}

#[test]
fn left_slopes_in_json() {
    let v = json(&["invariants", "L:-1,0,2"]);
    let r_c: ProjRat = serde_json::from_value(v["slopes"]["r_c"].clone()).unwrap();
    assert_eq!(r_c, ProjRat::new(20, 3).unwrap());
    assert_eq!(v["l_irrelevant"], true);
}

#[test]
fn classify_and_census() {
    let v = json(&["classify", "L:1,1,0"]);
    assert_eq!(v["mcg"], "Z2xZ2");
    let v = json(&["census", "L:1,1,0"]);
    assert_eq!(v["noncharacteristic_non41_count"], 5);
    let v = json(&["census", "R:5,3,2,0"]);
    assert_eq!(v["jsj_type"], "M");
    assert_eq!(v["characteristic_count"], 2);
}

#[test]
fn equiv_reports_witness() {
    let v = json(&["equiv", "L:1,1,0", "L:2,0,1"]);
    assert_eq!(v["equivalent"], true);
    let chain = v["witness"].as_array().unwrap();
    assert_eq!(chain.first().unwrap()["from"], "L:1,1,0");
    assert_eq!(chain.last().unwrap()["to"], "L:2,0,1");
    let v = json(&["equiv", "L:2,0,1", "L:2,0,2"]);
    assert_eq!(v["equivalent"], false);
}

#[test]
fn exterior_and_family() {
    let v = json(&["exterior", "L:2,0,0", "L:-1,0,1"]);
    assert_eq!(v["exteriors_homeomorphic"], true);
    let v = json(&["family", "2", "-3", "3"]);
    assert_eq!(v["members"].as_array().unwrap().len(), 7);
    assert_eq!(v["pairwise_inequivalent"], true);
}

#[test]
fn table_output_is_default() {
    let out = hbk(&["invariants", "L:1,1,0"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("r_c"));
    assert!(text.contains("4/3"));
}

#[test]
fn verify_exit_codes() {
    let out = hbk(&["--format", "json", "verify", "--suite", "oracles", "--bound", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], true);
    let reports: Vec<VerificationReport> = serde_json::from_value(v["reports"].clone()).unwrap();
    assert!(reports.iter().all(VerificationReport::passed));

    let out = hbk(&["verify", "--suite", "lemmas"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn errors_exit_two() {
    for args in [
        &["invariants", "R:1,2,0,0"][..],
        &["invariants", "nonsense"],
        &["exterior", "R:5,3,2,0", "R:5,3,2,0"],
        &["family", "1", "0", "3"],
        &["frobnicate"],
    ] {
        let out = hbk(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(hbk(&["--help"]).status.code(), Some(0));
}
