use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cgsbound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn num(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("{key} missing in {v}"))
}

#[test]
fn petersen_report() {
    let v = json(&["bounds", "--family", "petersen", "--format", "json"]);
    assert!((num(&v, "lambda2") - 2.0).abs() < 1e-10);
    assert_eq!(num(&v, "mohar_bound"), 0.2);
    assert!((num(&v, "lu_bound") - 0.164).abs() < 5e-4);
    assert!((num(&v, "cgs_single_path_bound") - 1.111).abs() < 5e-4);
    assert_eq!(v["n"], 10);
    assert_eq!(v["edge_count"], 15);
    assert_eq!(v["diameter"], 2);
    assert_eq!(v["optimizer_converged"], true);
}

#[test]
fn star_report() {
    let v = json(&["bounds", "--family", "star", "--n", "10", "--format", "json"]);
    assert!((num(&v, "cgs_single_path_bound") - 10.0 / 17.0).abs() < 1e-11);
    assert!((num(&v, "lambda2") - 1.0).abs() < 1e-10);
}

#[test]
fn json_keeps_report_field_order_and_scores() {
    let o = run(&["bounds", "--family", "cycle", "--n", "4", "--format", "json", "--scores"]);
    let text = stdout(&o);
    let keys: Vec<&str> = ["\"n\"", "\"edge_count\"", "\"diameter\"", "\"lambda2\"", "\"argmax_edge\""]
        .into_iter()
        .collect();
    let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{text}");
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["scores"]["uniform"], serde_json::json!([3, 3, 3, 3]));
}

#[test]
fn disconnected_input_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("split.txt");
    std::fs::write(&path, "a b\nb c\nx y\n").unwrap();
    let o = run(&["bounds", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("`x`"), "{err}");
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "0 1\n1 2 3\n").unwrap();
    let o = run(&["bounds", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let looped = dir.path().join("loop.txt");
    std::fs::write(&looped, "x x\n").unwrap();
    assert_eq!(run(&["bounds", "--input", looped.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn file_input_with_labels() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c4.txt");
    std::fs::write(&path, "# square\nnw ne\nne se\nse sw\nsw nw\nne nw\n").unwrap();
    let o = run(&["bounds", "--input", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("duplicate_edges"), "{text}");
    assert!(text.contains("(nw, ne)"), "{text}");
}

#[test]
fn csv_exports() {
    let dir = tempfile::tempdir().unwrap();
    let scores = dir.path().join("scores.csv");
    let strat = dir.path().join("strategy.csv");
    let o = run(&[
        "bounds",
        "--family",
        "cycle",
        "--n",
        "4",
        "--format",
        "csv",
        "--strategies",
        "uniform,optimized",
        "--scores-out",
        scores.to_str().unwrap(),
        "--strategy-out",
        strat.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let report = stdout(&o);
    assert!(report.starts_with("n,edge_count,diameter,lambda2,"));
    assert_eq!(report.lines().count(), 2);
    let s = std::fs::read_to_string(&scores).unwrap();
    assert_eq!(s, "edge_id,u,v,score\n0,0,1,3\n1,1,2,3\n2,2,3,3\n3,0,3,3\n");
    let f = std::fs::read_to_string(&strat).unwrap();
    assert!(f.starts_with("u,v,dag_edge_u,dag_edge_v,flow\n"));
    assert!(f.contains("0,2,0,1,"));
}

#[test]
fn table1_rows_match() {
    let v = json(&["table1", "--format", "json"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for r in rows {
        assert_eq!(r["matches"], true, "{r}");
    }
    let path = rows.iter().find(|r| r["graph"] == "path").unwrap();
    assert_eq!(path["computed"]["cgs"].as_f64().unwrap(), 0.08);
    let complete = rows.iter().find(|r| r["graph"] == "complete").unwrap();
    for key in ["lambda2", "lu", "cgs"] {
        assert!((complete["computed"][key].as_f64().unwrap() - 10.0).abs() < 1e-9);
    }
    let cycle = rows.iter().find(|r| r["graph"] == "cycle").unwrap();
    assert_eq!(cycle["computed"]["cgs"].as_f64().unwrap(), 0.3);
    assert_eq!(cycle["tabulated_cgs"].as_f64().unwrap(), 2.7);
}

#[test]
fn bench_fifty_trials() {
    let o = run(&["bench", "--n", "12", "--p", "0.3", "--trials", "50", "--seed", "7"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("n,p,seed,lambda2,mohar,lu,cgs_single,cgs_uniform,cgs_opt")
    );
    assert_eq!(lines.count(), 50);
}

#[test]
fn bench_k2_and_complete() {
    let o = run(&["bench", "--n", "2", "--p", "1", "--trials", "1"]);
    let row: Vec<f64> = stdout(&o).lines().nth(1).unwrap().split(',').map(|c| c.parse().unwrap()).collect();
    assert_eq!(row[3], 2.0);
    assert_eq!(row[6], 2.0);

    let o = run(&["bench", "--n", "9", "--p", "1", "--trials", "3", "--format", "json"]);
    assert!(o.status.success());
    for line in stdout(&o).lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        for key in ["lambda2", "lu", "cgs_single", "cgs_uniform", "cgs_opt"] {
            assert!((num(&v, key) - 9.0).abs() < 1e-9, "{key}: {v}");
        }
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["bench", "--n", "5..14", "--p", "0.2..0.8", "--trials", "8", "--seed", "3"][..],
        &["bounds", "--family", "erdos_renyi", "--n", "15", "--p", "0.3", "--seed", "5", "--format", "json"][..],
        &["table1"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}

#[test]
fn csv_reals_round_trip_at_twelve_digits() {
    let o = run(&["bounds", "--family", "path", "--n", "10", "--format", "csv"]);
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let lambda2: f64 = row[3].parse().unwrap();
    let exact = 2.0 * (1.0 - (std::f64::consts::PI / 10.0).cos());
    assert!(((lambda2 - exact) / exact).abs() < 1e-11);
}

#[test]
fn usage_errors() {
    assert!(!run(&["bounds"]).status.success());
    assert!(!run(&["bench", "--trials", "0"]).status.success());
    let missing = Path::new("/nonexistent/graph.txt");
    assert_eq!(run(&["bounds", "--input", missing.to_str().unwrap()]).status.code(), Some(1));
}
