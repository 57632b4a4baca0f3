use std::fs;
use std::path::{Path, PathBuf};

use birdyn::cli::run;
use birdyn::io::fixture::fixtures_dir;
use birdyn::io::{parse_fibration_spec, parse_map_spec, to_json_string};
use serde_json::Value;

fn cli(args: &[&str]) -> (i32, String, String) {
    run(std::iter::once("birdyn").chain(args.iter().copied()))
}

fn json_of(out: &str) -> Value {
    serde_json::from_str(out).expect("json report")
}

fn fixture(rel: &str) -> String {
    fixtures_dir().join(rel).display().to_string()
}

fn write_tmp(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn degrees_csv_row_for_the_collision_map() {
    let (code, out, err) = cli(&["--format", "csv", "degrees", "--map", &fixture("maps/k1p4_collision.json"), "--n", "10"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out, "2,3,5,7,11,15,20,25,32,39\n");
}

#[test]
fn classify_family_b_one_one_one_is_linear() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_tmp(dir.path(), "m.json", r#"{"family":"B","params":{"alpha0":"1","alpha1":"1","beta2":"1"}}"#);
    let (code, out, _) = cli(&["classify", "--map", &m]);
    assert_eq!(code, 0);
    assert_eq!(json_of(&out)["class"], "Linear");
}

#[test]
fn check_fibration_on_a_fixture() {
    let (code, out, _) = cli(&["check-fibration", "--map", &fixture("maps/p0.json"), "--fibration", &fixture("fibrations/p0_v1.json")]);
    assert_eq!(code, 0);
    assert_eq!(json_of(&out)["verdict"], true);
}

#[test]
fn check_fibration_against_the_wrong_map_fails_with_exit_one() {
    let (code, out, _) = cli(&["check-fibration", "--map", &fixture("maps/p2.json"), "--fibration", &fixture("fibrations/p0_v1.json")]);
    assert_eq!(code, 1);
    assert_eq!(json_of(&out)["verdict"], false);
}

#[test]
fn transverse_sibling_is_resolved_next_to_the_file() {
    let (code, out, _) = cli(&["check-fibration", "--fibration", &fixture("fibrations/k1p3_h3.json")]);
    assert_eq!(code, 0);
    assert_eq!(json_of(&out)["transverse"], true);
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(cli(&["degrees"]).0, 2);
    assert_eq!(cli(&["no-such-command"]).0, 2);
    assert_eq!(cli(&["--format", "xml", "catalog"]).0, 2);
    assert_eq!(cli(&["degrees", "--case", "no_such_case"]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let zero = write_tmp(dir.path(), "z.json", r#"{"family":"A","params":{"alpha0":"1","alpha1":"0","gamma0":"3"}}"#);
    let (code, _, err) = cli(&["degrees", "--map", &zero]);
    assert_eq!(code, 2);
    assert!(err.contains("alpha1"), "{err}");
    let extra = write_tmp(dir.path(), "x.json", r#"{"family":"A","params":{"alpha0":"1","alpha1":"2","gamma0":"3"},"colour":1}"#);
    assert_eq!(cli(&["degrees", "--map", &extra]).0, 2);
    let broken = write_tmp(dir.path(), "b.json", "{\n  \"family\": \"A\",\n  \"params\": {\n}");
    let (code, _, err) = cli(&["degrees", "--map", &broken]);
    assert_eq!(code, 2);
    assert!(err.contains("line"), "{err}");
    assert_eq!(cli(&["degrees", "--map", "/nonexistent/map.json"]).0, 2);
}

#[test]
fn help_goes_to_stdout_with_exit_zero() {
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("degrees") && out.contains("verify-all"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["dyndeg", "--case", "k1p4_real"],
        vec!["orbit", "--case", "p1"],
        vec!["--seed", "11", "degrees", "--case", "k2p3_rational", "--n", "11"],
        vec!["check-fibration", "--fibration", "FIB"],
    ] {
        let fib = fixture("fibrations/p1_v1.json");
        let args: Vec<&str> = args.iter().map(|a| if *a == "FIB" { fib.as_str() } else { a }).collect();
        let a = cli(&args);
        let b = cli(&args);
        assert_eq!(a.0, 0);
        assert_eq!(a.1, b.1);
    }
}

#[test]
fn json_keys_are_sorted() {
    let (_, out, _) = cli(&["dyndeg", "--case", "p2"]);
    let keys: Vec<String> = json_of(&out).as_object().unwrap().keys().cloned().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(out.find("\"charpoly\"").unwrap() < out.find("\"command\"").unwrap());
}

#[test]
fn dyndeg_reports_the_golden_interval_as_rationals() {
    let dir = tempfile::tempdir().unwrap();
    let m = write_tmp(dir.path(), "m.json", r#"{"family":"A","params":{"alpha0":"1","alpha1":"2","gamma0":"3"}}"#);
    let v = json_of(&cli(&["dyndeg", "--map", &m]).1);
    assert_eq!(v["class"], "Exponential");
    let lo: f64 = {
        let s = v["delta"]["lo"].as_str().unwrap();
        let (n, d) = s.split_once('/').unwrap();
        n.parse::<f64>().unwrap() / d.parse::<f64>().unwrap()
    };
    assert!((lo - 1.618033988749895).abs() < 1e-9);
}

#[test]
fn other_subcommands_run() {
    let v = json_of(&cli(&["period", "--case", "p0_period4", "--n-max", "6"]).1);
    assert_eq!(v["period"], 4);
    let v = json_of(&cli(&["period", "--case", "p2", "--n-max", "6"]).1);
    assert!(v["period"].is_null());
    let v = json_of(&cli(&["charpoly", "--case", "p2"]).1);
    assert_eq!(v["polynomial"].as_str().unwrap().chars().next(), Some('x'));
    let v = json_of(&cli(&["orbit", "--case", "p2", "--start", "2"]).1);
    assert_eq!(v["orbits"][0]["end"], 0);
    assert_eq!(v["orbits"][0]["length"], 3);
    let v = json_of(&cli(&["search-curves", "--case", "p0", "--degree", "2"]).1);
    assert!(v["families"].as_array().unwrap().len() >= 2);
    let (code, out, _) = cli(&["--format", "text", "orbit", "--case", "p2", "--start", "2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("A2: length 3, O0"));
    assert_eq!(cli(&["orbit", "--case", "p2", "--start", "3"]).0, 2);
    assert_eq!(cli(&["search-curves", "--case", "p0", "--degree", "0"]).0, 1);
}

#[test]
fn catalog_verify_passes() {
    let (code, out, err) = cli(&["catalog", "--verify"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(json_of(&out)["verdict"], true);
}

fn files(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    v.sort();
    v
}

#[test]
fn shipped_catalog_and_maps_equal_a_fresh_export() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = cli(&["catalog", "--export", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    let shipped = fixtures_dir();
    assert_eq!(fs::read_to_string(dir.path().join("catalog.json")).unwrap(), fs::read_to_string(shipped.join("catalog.json")).unwrap());
    let fresh = files(&dir.path().join("maps"));
    let old = files(&shipped.join("maps"));
    assert_eq!(fresh.len(), old.len());
    for (a, b) in fresh.iter().zip(&old) {
        assert_eq!(a.file_name(), b.file_name());
        assert_eq!(fs::read_to_string(a).unwrap(), fs::read_to_string(b).unwrap(), "{}", b.display());
    }
}

#[test]
fn map_and_fibration_fixtures_round_trip() {
    for p in files(&fixtures_dir().join("maps")) {
        let text = fs::read_to_string(&p).unwrap();
        assert_eq!(to_json_string(&parse_map_spec(&text).unwrap().to_value()), text, "{}", p.display());
    }
    for p in files(&fixtures_dir().join("fibrations")) {
        let text = fs::read_to_string(&p).unwrap();
        let spec = parse_fibration_spec(&text).unwrap();
        let again = parse_fibration_spec(&to_json_string(&spec.to_value())).unwrap();
        assert_eq!(again.to_value(), spec.to_value(), "{}", p.display());
    }
}

#[test]
fn the_binary_forwards_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_birdyn");
    let out = std::process::Command::new(bin).args(["--format", "csv", "degrees", "--case", "p2", "--n", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "2,3,5,7\n");
    assert!(String::from_utf8(out.stderr).unwrap().contains("finished in"));
    let out = std::process::Command::new(bin).arg("degrees").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
