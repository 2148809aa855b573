use std::f64::consts::FRAC_1_SQRT_2;
use std::fs;
use std::process::{Command, Output};

use advice_games::cli::{read_scan_csv, ScanRow};
use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_advice-games"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_json_is_the_symmetric_game() {
    let o = bin(&["table", "--epsilon", "0.0", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let got: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let want = serde_json::json!({
        "players": 2,
        "types": [2, 2],
        "actions": [2, 2],
        "u_A": [[1.0, 0.0, 0.0, 0.5], [1.0, 0.0, 0.0, 0.5], [1.0, 0.0, 0.0, 0.5], [0.0, 0.75, 0.75, 0.0]],
        "u_B": [[0.5, 0.0, 0.0, 1.0], [0.5, 0.0, 0.0, 1.0], [0.5, 0.0, 0.0, 1.0], [0.0, 0.75, 0.75, 0.0]],
    });
    assert_eq!(got, want);
}

#[test]
fn game_file_feeds_equilibria() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    fs::write(&path, bin(&["table", "--epsilon", "0.4", "--json"]).stdout).unwrap();
    let o = bin(&["equilibria", "--game", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let eq: Vec<String> = v["equilibria"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            format!(
                "{}{}",
                e["alice"].as_str().unwrap(),
                e["bob"].as_str().unwrap()
            )
        })
        .collect();
    assert_eq!(eq, ["S1S1", "S3S4", "S4S2"]);

    fs::write(
        &path,
        r#"{"players": 2, "types": [2, 2], "actions": [2, 2], "u_A": [[1]], "u_B": []}"#,
    )
    .unwrap();
    assert_eq!(
        bin(&["table", "--game", path.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn equilibria_text_lists_three_profiles() {
    let o = bin(&["equilibria", "--epsilon", "0.1", "--class", "pure"]);
    let out = stdout(&o);
    assert!(out.starts_with("pure Nash equilibria: 3"), "{out}");
    assert!(out.contains("(S1, S3)") && out.contains("(S3, S4)") && out.contains("(S4, S2)"));
}

#[test]
fn certification_verdicts_set_exit_code() {
    assert_eq!(
        bin(&["certify", "--advice", "pr", "--epsilon", "0.7"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        bin(&["certify", "--advice", "pr", "--epsilon", "0.5"])
            .status
            .code(),
        Some(0)
    );
    let o = bin(&["certify", "--advice", "quantum", "--epsilon", "0.4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(
        out.contains("verdict: equilibrium") && out.contains("inside"),
        "{out}"
    );
    let o = bin(&[
        "certify",
        "--advice",
        "quantum",
        "--epsilon",
        "0.1",
        "--json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["in_window"], false);
    assert_eq!(v["report"]["is_equilibrium"], true);
}

#[test]
fn bound_reports_lp_and_s3_status() {
    let o = bin(&["bound", "--epsilon", "0.4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bound_alice"].as_f64().unwrap(), 0.4875);
    assert_eq!(v["ce_alice_lp"].as_f64().unwrap(), 0.485150130548);
    assert_eq!(v["lemma1"]["holds"], false);
    let v: Value =
        serde_json::from_str(&stdout(&bin(&["bound", "--epsilon", "0.1", "--json"]))).unwrap();
    assert!(v["lemma1"].is_null());
}

#[test]
fn vertices_dump() {
    let v: Value = serde_json::from_str(&stdout(&bin(&["vertices"]))).unwrap();
    let v = v.as_array().unwrap();
    assert_eq!(v.len(), 24);
    assert_eq!(v[16]["label"], "PR(000)");
    assert_eq!(
        v[16]["correlation"][3],
        serde_json::json!([0.0, 0.5, 0.5, 0.0])
    );
}

#[test]
fn simulate_with_strategy_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    fs::write(
        &path,
        r#"{"p": [[0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]}"#,
    )
    .unwrap();
    let args = [
        "simulate",
        "--epsilon",
        "0",
        "--advice",
        "classical",
        "--rounds",
        "20000",
        "--seed",
        "5",
        "--strategy-file",
        path.to_str().unwrap(),
        "--json",
    ];
    let o = bin(&args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["analytic"]["alice"].as_f64().unwrap(), 0.6875);
    assert_eq!(stdout(&bin(&args)), stdout(&o));

    fs::write(
        &path,
        r#"{"p": [[0.5, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]}"#,
    )
    .unwrap();
    assert_eq!(bin(&args).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    let mut args = args;
    args[10] = missing.to_str().unwrap();
    assert_eq!(bin(&args).status.code(), Some(3));
}

#[test]
fn scan_writes_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let o = bin(&[
        "scan",
        "--from",
        "0",
        "--to",
        "0.75",
        "--step",
        "0.01",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with('#'));
    let rows: Vec<ScanRow> = read_scan_csv(text.as_bytes()).unwrap();
    assert_eq!(rows.len(), 76);
    let q_sum = 0.75 * (1.0 + FRAC_1_SQRT_2);
    for r in &rows {
        assert!(
            (r.q_alice + r.q_bob - q_sum).abs() <= 1e-12,
            "ε = {}",
            r.epsilon
        );
    }
    let at = |e: f64| rows.iter().find(|r| (r.epsilon - e).abs() < 1e-12).unwrap();
    assert!(at(0.4).in_theorem2_window && !at(0.1).in_theorem2_window);
    assert!(at(0.4).pr_nash && !at(0.7).pr_nash);

    let json = dir.path().join("scan.json");
    let o = bin(&[
        "scan",
        "--from",
        "0.3",
        "--to",
        "0.5",
        "--step",
        "0.1",
        "--out",
        json.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<ScanRow> = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(rows.len(), 3);
}

#[test]
fn scan_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.csv");
    let p = path.to_str().unwrap();
    assert_eq!(
        bin(&["scan", "--from", "0.5", "--to", "0.2", "--step", "0.1", "--out", p])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bin(&["scan", "--from", "0", "--to", "0.9", "--step", "0.1", "--out", p])
            .status
            .code(),
        Some(2)
    );
    let bad = dir.path().join("no/such/dir/x.csv");
    let o = bin(&[
        "scan",
        "--from",
        "0",
        "--to",
        "0.1",
        "--step",
        "0.1",
        "--out",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
}
