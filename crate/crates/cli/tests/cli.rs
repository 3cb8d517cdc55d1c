use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn dmv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dmv"))
        .args(args)
        .env_remove("DMV_CONFIG")
        .output()
        .expect("binary runs")
}

fn dmv_with_config(args: &[&str], config: &str, name: &str) -> Output {
    let path = scratch(name, config);
    Command::new(env!("CARGO_BIN_EXE_dmv"))
        .args(args)
        .env("DMV_CONFIG", &path)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("dmv-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn json_out(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn json_err(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

#[test]
fn hecke_degree_of_standard_matrix() {
    let out = dmv(&["hecke-degree", "--q", "2", "--r", "2", "--prime", "t"]);
    assert!(out.status.success());
    let v = json_out(&out);
    assert_eq!(v["degree"], 2);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["config"]["precision"], 12);
    assert_eq!(v["config"]["seed"], 0);
}

#[test]
fn hecke_degree_over_quadratic_prime() {
    let out = dmv(&["hecke-degree", "--q", "2", "--r", "2", "--prime", "t^2+t+1"]);
    assert_eq!(json_out(&out)["degree"], 4);
}

#[test]
fn newton_polygon_tsv() {
    let out = dmv(&["newton-polygon", "--poly", "x^2-(1/t)", "--prime", "t", "--q", "2", "--output", "tsv"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "slope\tlength\n1/2\t2\nsegments=1\n");

    let out = dmv(&["newton-polygon", "--poly", "x^2+(1/t)*x+1", "--prime", "t", "--q", "2", "--output", "tsv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "slope\tlength\n-1\t1\n1\t1\nsegments=2\n");
}

#[test]
fn components_of_maximal_and_congruence_levels() {
    let out = dmv(&["components", "--base", "2", "--level", "[]"]);
    assert_eq!(json_out(&out)["components"], 1);
    let level = r#"[{"prime": "t^2+t+1", "kind": "congruence", "depth": 1}]"#;
    let out = dmv(&["components", "--base", "2", "--level", level]);
    assert_eq!(json_out(&out)["components"], 3);
}

#[test]
fn thresholds_report() {
    let out = dmv(&["thresholds", "--r", "3", "--s", "2", "--kp", "2", "--degZ", "3"]);
    let v = json_out(&out);
    assert_eq!(v["induction_threshold"], "5184");
    assert_eq!(v["separable_n"], "84");
    assert_eq!(v["ledger_holds"], true);
}

#[test]
fn cebotarev_reference_case() {
    let ext = scratch("ext.json", r#"{"kind": "constant", "n": 2, "base": "5"}"#);
    let out = dmv(&["cebotarev", "--ext", ext.to_str().unwrap(), "--i", "2"]);
    let v = json_out(&out);
    assert_eq!(v["count"], 10);
    assert_eq!(v["main_term_exact"], "25/2");
    assert_eq!(v["holds"], true);
    assert!((v["bound"].as_f64().unwrap() - 8.236).abs() < 1e-3);
}

#[test]
fn cebotarev_inapplicable_degree_is_a_refusal() {
    let ext = r#"{"kind": "constant", "n": 2, "base": "5"}"#;
    let out = dmv(&["cebotarev", "--ext", ext, "--i", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_err(&out)["error"], "InapplicableDegree");
}

#[test]
fn splitting_tsv_rows() {
    let ext = r#"{"kind": "kummer", "n": 2, "a": "t^3+2*t", "base": "3^1"}"#;
    let out = dmv(&["splitting", "--ext", ext, "--prime", "t^2+1", "--output", "tsv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "e\tf\n1\t1\n1\t1\n");
}

#[test]
fn class_number_of_elliptic_curve() {
    let ext = r#"{"kind": "kummer", "n": 2, "a": "t^3-t", "base": "3"}"#;
    let v = json_out(&dmv(&["class-number", "--ext", ext]));
    assert_eq!(v["class_number"], "4");
    assert_eq!(v["genus"], 1);
    assert_eq!(v["genus_within_bound"], true);
}

#[test]
fn factor_and_primes() {
    let v = json_out(&dmv(&["factor", "--q", "3", "--poly", "t^4-1"]));
    let factors: Vec<&str> = v["factors"].as_array().unwrap().iter().map(|f| f["factor"].as_str().unwrap()).collect();
    assert_eq!(factors, ["t+1", "t+2", "t^2+1"]);
    let v = json_out(&dmv(&["primes", "--q", "2", "--max-degree", "4"]));
    assert_eq!(v["count"], 2 + 1 + 2 + 3);
}

#[test]
fn bounded_companion() {
    let v = json_out(&dmv(&["bounded", "--q", "2", "--prime", "t", "--matrix", r#"[["0","t"],["1","0"]]"#]));
    assert_eq!(v["bounded"], true);
    let v = json_out(&dmv(&["bounded", "--q", "2", "--prime", "t", "--matrix", r#"[["1/t","0"],["0","1"]]"#]));
    assert_eq!(v["bounded"], false);
}

#[test]
fn malformed_input_exits_four() {
    let out = dmv(&["factor", "--q", "2", "--poly", "t^^2"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json_err(&out)["error"], "Parse");
    let out = dmv(&["splitting", "--ext", "{not json", "--prime", "t"]);
    assert_eq!(out.status.code(), Some(4));
    let out = dmv(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json_err(&out)["error"], "Usage");
}

#[test]
fn budget_exhaustion_exits_three() {
    let out = dmv_with_config(&["hecke-degree", "--q", "2", "--r", "3", "--prime", "t"], r#"{"orbit_budget": 8}"#, "budget.json");
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json_err(&out)["error"], "BudgetExceeded");
}

#[test]
fn good_prime_search_not_found_exits_two() {
    let datum = r#"{"extension": {"kind": "kummer", "n": 2, "a": "t^3-t", "base": "3"}, "r": 2}"#;
    let out = dmv(&["good-prime", "--datum", datum, "--N", "3", "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_out(&out);
    assert_eq!(v["found"], false);
    assert_eq!(v["counters"]["scanned"], 6);
    assert_eq!(json_err(&out)["error"], "NotFound");
}

#[test]
fn good_prime_search_finds_a_prime_after_inflating_the_index() {
    let datum = r#"{"extension": {"kind": "kummer", "n": 2, "a": "t^3-t", "base": "3"}, "r": 2,
        "twists": [{"prime": "t^2+t+2", "matrix": [["1", "0"], ["0", "(t^2+t+2)^2"]]}]}"#;
    let out = dmv(&["good-prime", "--datum", datum, "--N", "1", "--max-degree", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_out(&out);
    assert_eq!(v["found"], true);
    let kp = v["certificate"]["residue_size"].as_u64().unwrap();
    let predegree: u64 = v["predegree"].as_str().unwrap().parse().unwrap();
    assert!(kp < predegree);
    let gl2 = (kp * kp - 1) * (kp * kp - kp);
    assert_eq!(v["shrink_index"], gl2.to_string());
}

#[test]
fn inseparable_datum_refused_with_condition_b() {
    let datum = r#"{"extension": {"kind": "generic", "f": "x^2+t", "genus": 0,
        "infinity": {"places": 1, "e": 2, "f": 1}, "base": "2"}, "r": 2,
        "level": [{"prime": "t+1", "kind": "congruence", "depth": 1}]}"#;
    let out = dmv(&["good-prime", "--datum", datum, "--prime", "t+1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_out(&out)["condition"], "b");
}

#[test]
fn shrink_level_index_is_gl_order() {
    let v = json_out(&dmv(&["shrink-level", "--base", "3", "--r", "2", "--level", "[]", "--prime", "t"]));
    assert_eq!(v["index"], "48");
    assert_eq!(v["level"][0]["depth"], 1);
    let level = serde_json::to_string(&v["level"]).unwrap();
    let out = dmv(&["shrink-level", "--base", "3", "--r", "2", "--level", &level, "--prime", "t"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_err(&out)["error"], "NotMaximalAtPrime");
}

#[test]
fn datum_echo_is_a_fixpoint() {
    let datum = r#"{"extension": {"kind": "kummer", "n": 2, "a": "t^3-t", "base": "3"}, "r": 2,
        "level": [{"prime": "t^2+1", "kind": "congruence", "depth": 2}]}"#;
    let first = json_out(&dmv(&["predegree", "--datum", datum]));
    let echoed = serde_json::to_string(&first["datum"]).unwrap();
    let second = json_out(&dmv(&["predegree", "--datum", &echoed]));
    assert_eq!(first["datum"], second["datum"]);
    assert_eq!(first["predegree"], second["predegree"]);
}

#[test]
fn extension_echo_is_a_fixpoint() {
    let ext = r#"{"kind": "artin-schreier", "a": "t^3", "base": "2"}"#;
    let first = json_out(&dmv(&["class-number", "--ext", ext]));
    let echoed = serde_json::to_string(&first["extension"]).unwrap();
    let second = json_out(&dmv(&["class-number", "--ext", &echoed]));
    assert_eq!(first, second);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["verify-suite", "--only", "4,5", "--output", "tsv"];
    let a = dmv(&args);
    let b = dmv(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_suite_subset_passes() {
    let out = dmv(&["verify-suite", "--only", "1,9,10"]);
    assert!(out.status.success());
    let v = json_out(&out);
    assert_eq!(v["all_passed"], true);
    assert_eq!(v["results"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_suite_verdicts_do_not_depend_on_the_seed() {
    let verdicts = |out: &Output| -> Vec<bool> {
        json_out(out)["results"].as_array().unwrap().iter().map(|r| r["passed"].as_bool().unwrap()).collect()
    };
    let a = dmv_with_config(&["verify-suite", "--only", "4,5,10"], r#"{"seed": 0}"#, "seed0.json");
    let b = dmv_with_config(&["verify-suite", "--only", "4,5,10"], r#"{"seed": 7}"#, "seed7.json");
    assert_eq!(verdicts(&a), verdicts(&b));
    assert_eq!(verdicts(&a), [true, true, true]);
}

#[test]
fn verify_suite_with_unit_budget_exits_three() {
    let out = dmv_with_config(&["verify-suite", "--only", "1,10"], r#"{"orbit_budget": 1}"#, "unit.json");
    assert_eq!(out.status.code(), Some(3));
    let v = json_out(&out);
    assert_eq!(v["results"][0]["budget_exceeded"], true);
}

#[test]
fn unknown_config_key_is_malformed() {
    let out = dmv_with_config(&["components", "--base", "2", "--level", "[]"], r#"{"bogus": 1}"#, "bogus.json");
    assert_eq!(out.status.code(), Some(4));
}
