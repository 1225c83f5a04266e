//! The `homcalc` binary: exit codes, output routing and reproducibility.

use std::path::PathBuf;
use std::process::{Command, Output};

fn homcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homcalc")).args(args).output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("homcalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn validate_exit_codes() {
    let ok = homcalc(&["validate", "dual_numbers"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["passed"], true);
    assert!(String::from_utf8_lossy(&ok.stderr).contains("hom-associativity"));

    let broken = homcalc(&["validate", "broken_hom_assoc"]);
    assert_eq!(broken.status.code(), Some(1));
    let report = json(&broken);
    assert_eq!(report["checks"][0]["name"], "hom-associativity");
    assert_eq!(report["checks"][0]["witness"], "(1, 1, x)");

    let path = scratch("malformed.json");
    std::fs::write(&path, "{\"name\": \"x\",\n \"dim\": ").unwrap();
    let bad = homcalc(&["validate", path.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 2"));

    assert_eq!(homcalc(&["validate", "no_such_fixture"]).status.code(), Some(2));
    assert_eq!(homcalc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(homcalc(&["verify", "--max-degree", "0", "ground_field"]).status.code(), Some(2));
}

#[test]
fn cohomology_reports_dimensions() {
    let out = homcalc(&["cohomology", "dual_numbers"]);
    assert_eq!(out.status.code(), Some(0));
    let dims: Vec<u64> = json(&out)["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, [2, 1, 1, 1]);

    let nil = json(&homcalc(&["cohomology", "nilpotent_twist"]));
    assert_eq!(nil["degrees"][0]["skipped"], "RegularityError");

    let twist = json(&homcalc(&["cohomology", "dual_numbers_twist_2", "--coefficients", "dual"]));
    assert_eq!(twist["degrees"][0]["dim"], 1);
    assert_eq!(twist["degrees"][1]["dim"], 0);
}

#[test]
fn homology_reports_normalized_dimensions() {
    let out = json(&homcalc(&["homology", "k_times_k", "--max-degree", "2"]));
    assert_eq!(out["normalized"], true);
    let dims: Vec<u64> = out["degrees"].as_array().unwrap().iter().map(|d| d["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [2, 0, 0]);
}

#[test]
fn verify_and_json_file_output() {
    let path = scratch("verify.json");
    let out = homcalc(&["verify", "k_times_k_swap", "--trials", "5", "--suite", "operad", "chain", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("operad"));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["suites"].as_array().unwrap().len(), 2);
    assert_eq!(report["config"]["trials"], 5);

    let nonregular = homcalc(&["verify", "nilpotent_twist", "--trials", "5", "--suite", "calculus"]);
    assert_eq!(nonregular.status.code(), Some(0));
    assert_eq!(json(&nonregular)["suites"][0]["status"], "skipped");

    let mutant = homcalc(&["verify", "broken_multiplicativity", "--trials", "5", "--suite", "comp_module"]);
    assert_eq!(mutant.status.code(), Some(1));
}

#[test]
fn verify_output_is_byte_identical_across_runs() {
    let args = ["verify", "dual_numbers_twist_half", "--trials", "10", "--seed", "42"];
    let a = homcalc(&args);
    let b = homcalc(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, homcalc(&["verify", "dual_numbers_twist_half", "--trials", "10", "--seed", "43"]).stdout);
}

#[test]
fn bv_findings_and_errors() {
    let dual = homcalc(&["bv", "dual_numbers"]);
    assert_eq!(dual.status.code(), Some(0));
    let r = json(&dual);
    assert_eq!(r["status"], "bv");
    assert_eq!(r["theta"]["source"], "found");
    assert_eq!(r["via_theta"]["pairs"].as_array().unwrap().len(), 15);

    let swap = json(&homcalc(&["bv", "k_times_k_swap"]));
    assert_eq!(swap["status"], "bv");

    let corrupted = homcalc(&["bv", "corrupted_theta"]);
    assert_eq!(corrupted.status.code(), Some(0));
    let r = json(&corrupted);
    assert_eq!(r["theta"]["valid"], false);
    assert_eq!(r["via_theta"]["status"], "hypothesis_failed");

    assert_eq!(homcalc(&["bv", "nilpotent_twist"]).status.code(), Some(1));
}

#[test]
fn specs_are_found_in_the_fixtures_dir() {
    let dir = scratch("specs");
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        dir.join("two_points.json"),
        r#"{"name": "two_points", "dim": 2, "mu": [[0, 0, 1, "1"], [1, 1, 0, "1"]],
            "alpha": [["0", "1"], ["1", "0"]], "unit": ["1", "1"]}"#,
    )
    .unwrap();
    let out = homcalc(&["validate", "two_points", "--fixtures-dir", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let list = json(&homcalc(&["fixtures", "--fixtures-dir", dir.to_str().unwrap()]));
    assert!(list.as_array().unwrap().iter().any(|f| f["name"] == "two_points"));
}
