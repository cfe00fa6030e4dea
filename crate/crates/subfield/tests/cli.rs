use std::collections::BTreeSet;
use std::process::Command;

use serde_json::Value;
use subfield::cli::run;

fn ok(args: &str) -> String {
    let out = run(std::iter::once("subfield").chain(args.split_whitespace()));
    assert_eq!(out.code, 0, "{args}: {}", out.stderr);
    out.stdout
}

fn json(args: &str) -> Value {
    serde_json::from_str(&ok(&format!("--json {args}"))).unwrap()
}

fn pretty_set(listing: &str) -> BTreeSet<String> {
    listing.lines().map(|l| l.split('\t').nth(1).unwrap().to_string()).collect()
}

#[test]
fn field_reports() {
    let f = json("field 2:2");
    assert_eq!((f["p"].as_u64(), f["e"].as_u64(), f["m"].as_u64()), (Some(2), Some(1), Some(2)));
    assert_eq!(f["modulus"], "1,1,1");
    assert_eq!(f["order"], 4);
    assert_eq!(json("field 2:1")["order"], 2);
    let f = json("field 4:2");
    assert_eq!((f["p"].as_u64(), f["e"].as_u64(), f["degree"].as_u64()), (Some(2), Some(2), Some(4)));
    assert_eq!(f["spec"], "2^2:2:1,1,0,0,1");
}

#[test]
fn orbit_listings() {
    let o = json("orbits 2:2");
    assert_eq!(o["1"].as_array().unwrap().len(), 2);
    assert_eq!(o["2"][0]["elements"], serde_json::json!(["0,1", "1,1"]));
    let o = json("orbits 2:1");
    assert_eq!(o.as_object().unwrap().len(), 1);
    assert_eq!(o["1"].as_array().unwrap().len(), 2);
    let o = json("orbits 2:3");
    assert_eq!(o["1"].as_array().unwrap().len(), 2);
    assert_eq!(o["3"].as_array().unwrap().len(), 2);
    assert!(o["3"].as_array().unwrap().iter().all(|orb| orb["elements"].as_array().unwrap().len() == 3));
}

#[test]
fn counts() {
    let c = json("count 2:2");
    assert_eq!(
        (c["count_t"].as_str(), c["count_units"].as_str(), c["count_l"].as_str()),
        (Some("8"), Some("4"), Some("16"))
    );
    let c = json("count 3:2");
    assert_eq!((c["count_t"].as_str(), c["count_units"].as_str()), (Some("5832"), Some("288")));
    assert!(ok("count 2:2").contains("|T| = 8\n"));
}

#[test]
fn diagonal_sweep_is_csv_trending_to_minus_one() {
    let csv = ok("density --diagonal 2..13");
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("q,p,log_density"));
    let last: Vec<&str> = lines.last().unwrap().split(',').collect();
    assert_eq!(&last[..2], ["13", "13"]);
    assert!((last[2].parse::<f64>().unwrap() + 1.0).abs() < 1e-2);
}

#[test]
fn density_for_one_field() {
    let d = json("density 2:2");
    assert_eq!(d["density_t"]["exact"], "1/2");
    assert_eq!(d["density_units"]["exact"], "1/4");
}

#[test]
fn enumeration_matches_golden_set() {
    let golden: BTreeSet<String> =
        ["x", "x+1", "x^2", "x^2+1", "x^3+x^2+1", "x^3+x", "x^3+x^2", "x^3+x+1"].map(String::from).into();
    assert_eq!(pretty_set(&ok("enumerate 2:2")), golden);
    let units: BTreeSet<String> = ["x", "x+1", "x^2", "x^2+1"].map(String::from).into();
    assert_eq!(pretty_set(&ok("enumerate 2:2 --units")), units);
    let all: BTreeSet<String> = ["0", "1", "x", "x+1"].map(String::from).into();
    assert_eq!(pretty_set(&ok("enumerate 2:1")), all);
    // deterministic
    assert_eq!(ok("enumerate 2:3"), ok("enumerate 2:3"));
}

#[test]
fn verify_runs_exhaustive_or_sampled() {
    let v = json("verify 2:2");
    assert_eq!(v["passed"], true);
    assert_eq!(v["sampled"], false);
    assert!(ok("verify 2:3").contains("|T| 144 = 144, units 36 = 36"));
    let v = json("verify 5:2 --samples 300");
    assert_eq!(v["passed"], true);
    assert_eq!(v["sampled"], true);
    assert!(v["checks"][0]["detail"].as_str().unwrap().contains("TooLarge"));
}

#[test]
fn decompose_compose_invert() {
    let d = json("decompose 2:2 0,0,1");
    assert_eq!(d["element"]["1"]["sigma"], serde_json::json!([1, 2]));
    assert_eq!(d["element"]["1"]["shifts"], serde_json::json!([0, 0]));
    assert_eq!(d["element"]["2"]["shifts"], serde_json::json!([1]));
    assert_eq!(json("compose 2:2 0,0,1 0,0,1")["poly"], "0,1");
    assert_eq!(json("invert 2:2 1,0,1")["pretty"], "x^2+1");
    let out = run(["subfield", "invert", "2:2", "0,0,0,1"]);
    assert_ne!(out.code, 0);
    assert!(out.stderr.contains("not invertible"), "{}", out.stderr);
}

#[test]
fn bad_input_fails() {
    for args in [["field", "6:2"], ["field", "2:0"], ["compose", "2:2"], ["decompose", "2:2"]] {
        assert_ne!(run(std::iter::once("subfield").chain(args)).code, 0, "{args:?}");
    }
    assert_ne!(run(["subfield", "decompose", "2:2", "2"]).code, 0);
    assert_ne!(run(["subfield", "field", "2:2:1,0,1"]).code, 0);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_subfield");
    let good = Command::new(bin).args(["count", "2:2"]).output().unwrap();
    assert!(good.status.success());
    assert!(String::from_utf8(good.stdout).unwrap().contains("|units| = 4"));
    let bad = Command::new(bin).args(["invert", "2:2", "0,0,0,1"]).output().unwrap();
    assert!(!bad.status.success());
}
