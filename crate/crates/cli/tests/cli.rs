use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cstringy")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON object per line"))
        .collect()
}

#[test]
fn chi_table_alternates() {
    let out = run(&["chi-table", "--max-t", "5"]);
    assert_eq!(code(&out), 0);
    let values: Vec<String> = lines(&out).iter().map(|r| r["direct"].as_str().unwrap().to_owned()).collect();
    assert_eq!(values, ["1", "2", "1", "2", "1"]);
}

#[test]
fn chi_table_all_methods_to_thirty() {
    let out = run(&["chi-table", "--max-t", "30", "--method", "all"]);
    assert_eq!(code(&out), 0);
    let rows = lines(&out);
    assert_eq!(rows.len(), 30);
    assert_eq!(
        rows[2].to_string(),
        r#"{"t":3,"direct":"1","delta":"1","strata":"1","ok":true}"#
    );
    assert!(rows.iter().all(|r| r["ok"] == true));
}

#[test]
fn chi_table_rejects_zero() {
    assert_eq!(code(&run(&["chi-table", "--max-t", "0"])), 2);
    assert_eq!(code(&run(&["chi-table", "--max-t", "40"])), 2);
}

#[test]
fn delta_methods_agree() {
    let out = run(&["delta", "--j", "1"]);
    assert_eq!(code(&out), 0);
    let rows = lines(&out);
    for r in &rows[..3] {
        assert_eq!(r["delta"], "2(a²+3a+3) / ((a+1)²(a+2)²(a+3)²)");
    }
    assert_eq!(rows[3]["agree"], true);
}

#[test]
fn delta_at_zero_is_inverse_factorial() {
    let out = run(&["delta", "--j", "6", "--eval", "0", "--method", "closed"]);
    assert_eq!(code(&out), 0);
    assert_eq!(lines(&out)[0]["value"], "1/6227020800");
}

#[test]
fn delta_exit_codes() {
    let pole = run(&["delta", "--j", "1", "--eval", "-2"]);
    assert_eq!(code(&pole), 1);
    assert!(String::from_utf8_lossy(&pole.stderr).contains("pole"));
    assert_eq!(code(&run(&["delta", "--j", "-1"])), 2);
    assert_eq!(code(&run(&["delta", "--j", "15", "--method", "direct"])), 2);
    assert_eq!(code(&run(&["delta", "--j", "2", "--eval", "x/y"])), 2);
}

#[test]
fn delta_past_the_direct_cap() {
    let out = run(&["delta", "--j", "20", "--eval", "0"]);
    assert_eq!(code(&out), 0);
    let rows = lines(&out);
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2]["skipped"], "direct (j > 14)");
}

#[test]
fn fan_small() {
    let out = run(&["fan", "--l", "3", "--checks", "smooth,convex"]);
    assert_eq!(code(&out), 0);
    let row = &lines(&out)[0];
    assert_eq!(row["cones"][0], serde_json::json!(["1-3", "1-2", "1-1"]));
    assert_eq!(row["cones"].as_array().unwrap().len(), 4);
    assert_eq!(row["multiplicities"], serde_json::json!([1, 1, 1, 1]));
    assert_eq!(row["convexity_violations"], serde_json::json!([]));
}

#[test]
fn fan_bridge() {
    let out = run(&["fan", "--l", "8", "--checks", "bridge"]);
    assert_eq!(code(&out), 0);
    let row = &lines(&out)[0];
    assert_eq!(row["bridge_subsets"], 255);
    assert_eq!(row["bridge_mismatches"], serde_json::json!([]));
}

#[test]
fn fan_rejects_large_l() {
    assert_eq!(code(&run(&["fan", "--l", "20"])), 2);
    assert_eq!(code(&run(&["fan", "--l", "0"])), 2);
}

#[test]
fn verify_runs_the_ladder() {
    let out = run(&["verify", "--n-max", "10"]);
    assert_eq!(code(&out), 0);
    let rows = lines(&out);
    let seven = rows.iter().find(|r| r["n"] == 7).unwrap();
    assert_eq!(seven["k"], 3);
    assert_eq!(seven["symbolic_equal"], true);
    assert_eq!(seven["oracle_chi_Y"], "51072");
    assert_eq!(rows.last().unwrap()["passed"], true);
}

#[test]
fn verify_rejects_one() {
    assert_eq!(code(&run(&["verify", "--n-max", "1"])), 2);
}

fn discrepancy(rows: &[Value], family: &str, index: &str) -> Value {
    rows.iter().find(|r| r["family"] == family && r["index"] == index).cloned().unwrap()
}

#[test]
fn discrepancy_tables() {
    let rows = lines(&run(&["discrepancies", "--k", "3"]));
    assert_eq!(discrepancy(&rows, "modified", "1,3")["value"], "7");
    let rows = lines(&run(&["discrepancies", "--k", "5"]));
    assert_eq!(discrepancy(&rows, "gamma", "4")["value"], "7");
    let out = run(&["discrepancies", "--k", "7"]);
    assert_eq!(code(&out), 0);
    let row = discrepancy(&lines(&out), "modified", "3,7");
    assert_eq!(row["value"], "34");
    assert!(row["note"].as_str().unwrap().starts_with("paper-example-divergence"));
    assert_eq!(code(&run(&["discrepancies", "--k", "0"])), 2);
}

#[test]
fn csv_and_markdown() {
    let csv = run(&["chi-table", "--max-t", "2", "--format", "csv"]);
    assert_eq!(String::from_utf8_lossy(&csv.stdout), "t,direct,ok\n1,1,true\n2,2,true\n");
    let md = run(&["chi-table", "--max-t", "2", "--format", "md"]);
    let text = String::from_utf8_lossy(&md.stdout).into_owned();
    assert!(text.contains("| t | direct | ok |"));
    assert!(text.contains("| 2 | 2 | true |"));
}

#[test]
fn output_file_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fan.json");
    let out = run(&["fan", "--l", "5", "--threads", "2", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    let single = run(&["fan", "--l", "5", "--threads", "1"]);
    assert_eq!(written, single.stdout);
    assert_eq!(code(&run(&["fan", "--l", "5", "--threads", "0"])), 2);
}
