use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const MP: &str = "poly:-1,-1,0,1;interval:1,2";
const TWO: &str = "poly:-2,1;interval:1,3";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_negabeta")).args(args).output().expect("binary runs")
}

fn run_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_negabeta")).args(args).env("NEGABETA_THREADS", threads).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

/// Parses stdout and validates it against the shipped schema.
fn checked_json(o: &Output, schema: &str) -> Value {
    let v: Value = serde_json::from_str(&stdout(o)).expect("stdout is JSON");
    let path = schema_dir().join(format!("{schema}.schema.json"));
    let s: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&s).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{schema}: {errors:?}");
    // round trip through the sorted printer
    assert_eq!(serde_json::from_str::<Value>(&serde_json::to_string(&v).unwrap()).unwrap(), v);
    v
}

#[test]
fn yrrap_minimal_pisot() {
    let o = run(&["yrrap", "--beta", MP]);
    assert_eq!(code(&o), 0);
    let v = checked_json(&o, "yrrap");
    assert_eq!(v, serde_json::json!({"preperiod": "100", "period": "1", "case": "Case2"}));
    assert_eq!(stdout(&o), "{\n  \"case\": \"Case2\",\n  \"period\": \"1\",\n  \"preperiod\": \"100\"\n}\n");
}

#[test]
fn decimal_beta_is_refused_by_exact_commands() {
    let o = run(&["yrrap", "--beta", "decimal:1.8;precision:200"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("exact"));
}

#[test]
fn usage_errors_exit_2() {
    let o = run(&["mc", "--beta", "decimal:1.8;precision:200", "--obs", "digit1", "--window", "0.7:0.75", "--n", "30", "--N", "1000000"]);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&run(&["yrrap", "--beta", "poly:1,2"])), 2);
    assert_eq!(code(&run(&["graph", "--beta", MP, "--format", "csv"])), 2);
    assert_eq!(code(&run(&["rate", "--beta", MP, "--a", "1.5"])), 2);
    assert_eq!(code(&run(&["compare-rates", "--beta", TWO])), 2);
    assert_eq!(code(&run(&["spec", "--beta", MP, "--gluing", "10"])), 2);
    assert_eq!(code(&run(&["nonsense"])), 2);
}

#[test]
fn io_errors_exit_4() {
    let o = run(&["yrrap", "--beta", MP, "--out", "/nonexistent-dir/x.json"]);
    assert_eq!(code(&o), 4);
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let path = std::env::temp_dir().join(format!("negabeta-cli-{}.json", std::process::id()));
    let o = run(&["gbeta", "--beta", MP, "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, stdout(&run(&["gbeta", "--beta", MP])));
}

#[test]
fn components_dot_has_three_clusters() {
    let o = run(&["components", "--beta", MP, "--format", "dot"]);
    assert_eq!(code(&o), 0);
    let dot = stdout(&o);
    assert_eq!(dot.matches("subgraph cluster_").count(), 3);
    for v in 0..5 {
        assert!(dot.contains(&format!("V{v};")));
    }
    assert_eq!(dot.matches(" -> ").count(), 8);
}

#[test]
fn graph_and_components_json() {
    let v = checked_json(&run(&["graph", "--beta", MP]), "graph");
    assert_eq!(v["vertices"], 5);
    assert_eq!(v["edges"].as_array().unwrap().len(), 8);
    let v = checked_json(&run(&["graph", "--beta", TWO]), "graph");
    assert_eq!(v["vertices"], 2);
    assert_eq!(v["edges"].as_array().unwrap().len(), 4);
    checked_json(&run(&["graph", "--beta", MP, "--horizon", "8"]), "graph");
    let v = checked_json(&run(&["components", "--beta", MP]), "components");
    assert_eq!(v["q"], 3);
    assert_eq!(v["N"], 2);
}

#[test]
fn rate_sweep_csv() {
    let o = run(&["rate", "--beta", MP, "--sweep", "0:1:5"]);
    assert_eq!(code(&o), 0);
    let csv = stdout(&o);
    let lines: Vec<&str> = csv.split("\r\n").collect();
    assert_eq!(lines[0], "a,rate,H,t_star,component");
    assert_eq!(lines.len(), 7);
    let v = checked_json(&run(&["rate", "--beta", TWO, "--a", "0.7", "--format", "json"]), "rate");
    let h = -(0.7f64 * 0.7f64.ln() + 0.3 * 0.3f64.ln());
    assert!((v["rows"][0]["rate"].as_f64().unwrap() - (2f64.ln() - h)).abs() < 1e-6);
}

#[test]
fn spec_entropy_gbeta_compare() {
    let o = run(&["spec", "--beta", MP, "--maxlen", "5", "--gluing", "50", "--seed", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = checked_json(&o, "spec");
    assert_eq!(v["w_certificate"]["kind"], "w_one_way");
    assert_eq!(v["gluing"]["w_certificate"]["passed"], 50);

    let v = checked_json(&run(&["entropy", "--beta", MP]), "entropy");
    assert!(v["difference"].as_f64().unwrap().abs() < 1e-9);

    let v = checked_json(&run(&["gbeta", "--beta", MP]), "gbeta");
    assert_eq!(v["max"], 2);

    let o = run(&["compare-rates", "--beta", MP]);
    assert_eq!(code(&o), 0);
    let v = checked_json(&o, "compare-rates");
    assert_eq!(v["witness"]["q_m"], "-inf");
}

#[test]
fn cylinder_table_reports_the_lower_bound_counterexample() {
    let o = run(&["cyl", "--beta", MP, "--maxlen", "5", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v = checked_json(&o, "cyl");
    assert_eq!(v["upper_failures"], 0);
    assert_eq!(v["first_lower_failure"], "1001");
    assert!(v["sums"].as_array().unwrap().iter().all(|s| s["sum_is_one"] == true));
    let o = run(&["cyl", "--beta", TWO, "--maxlen", "5"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("word,lo_exact,hi_exact,lo,hi,length,upper_bound_ok,lower_bound_applicable,lower_bound_ok\r\n"));
}

#[test]
fn mc_is_reproducible_across_worker_counts() {
    let args = ["mc", "--beta", MP, "--obs", "digit1", "--window", "0.5:1", "--n", "12", "--N", "5000", "--seed", "9"];
    let one = run_threads(&args, "1");
    let four = run_threads(&args, "4");
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
    let v = checked_json(&one, "mc");
    assert!(v["predicted_rate"].is_number());

    let dec = run(&["mc", "--beta", "decimal:1.8;precision:200", "--obs", "digit1", "--window", "0.6:0.8", "--n", "30", "--N", "2000", "--seed", "7"]);
    assert_eq!(code(&dec), 0);
    let v = checked_json(&dec, "mc");
    assert!(v["predicted_rate"].is_null());
}

#[test]
fn examples_validate_against_schemas() {
    let o = run(&["example31", "--maxlen", "4", "--points", "500", "--seed", "1"]);
    assert_eq!(code(&o), 0);
    let v = checked_json(&o, "example31");
    assert_eq!(v["certificate"]["exact_min_M"], 1);

    let o = run(&["example32", "--seed", "1", "--n", "20", "--N", "20000", "--a", "0.3", "--grid", "100", "--iters", "400"]);
    assert!(matches!(code(&o), 0 | 1));
    let v = checked_json(&o, "example32");
    assert_eq!(v["omega_ok"], true);
}

#[test]
fn validate_beta_two_is_green() {
    let o = run(&["validate", "--beta", TWO, "--maxlen", "8", "--seed", "1", "--trials", "100"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(checked_json(&o, "validate")["ok"], true);
}

#[test]
fn validate_minimal_pisot_flags_only_the_lower_bound() {
    let o = run(&["validate", "--beta", MP, "--maxlen", "10", "--seed", "1"]);
    assert_eq!(code(&o), 1);
    let v = checked_json(&o, "validate");
    let failed: Vec<&str> = v["checks"].as_array().unwrap().iter().filter(|c| c["ok"] == false).map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(failed, ["cylinder_lower"]);
}
