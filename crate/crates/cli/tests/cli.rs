use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sumrules")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let o = run(args);
    (serde_json::from_str(&stdout(&o)).expect("valid JSON"), o.status.code().unwrap())
}

#[test]
fn ground_state_table_has_eight_passing_rows() {
    let (v, code) = json(&["table", "--state", "1s", "--orders", "-4..3", "--format", "json"]);
    assert_eq!(code, 0);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 8);
    let exact: Vec<&str> = rows.iter().map(|r| r["constructive"].as_str().unwrap()).collect();
    assert_eq!(exact, ["9673/4608", "319/192", "43/32", "9/8", "1/1", "1/1", "4/3", "16/3"]);
    for r in rows {
        assert_eq!(r["state"], serde_json::json!({ "n": 1, "l": 0 }));
        assert_eq!(r["channel"], "plus");
        assert_eq!(r["pass"], true);
    }
    let s2 = &rows[6];
    assert!((s2["discrete"].as_f64().unwrap() - 0.449355).abs() < 2e-4);
    assert!((s2["continuum"].as_f64().unwrap() - 0.883977).abs() < 2e-4);
}

#[test]
fn two_p_minus_table() {
    let (v, code) = json(&["table", "--state", "2p", "--orders", "0..4", "--channel", "minus", "--format", "json"]);
    assert_eq!(code, 0);
    let totals: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["constructive"].as_str().unwrap()).collect();
    assert_eq!(totals, ["10/1", "-1/3", "1/3", "-2/9", "2/9"]);
}

#[test]
fn oscillator_table_obeys_the_trk_rule() {
    let (v, code) = json(&["table", "--potential", "gamma=2", "--nodes", "0", "--orders", "0..4", "--format", "json"]);
    assert_eq!(code, 0);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0]["state"]["potential"], "gamma=2");
    assert!(rows[1]["continuum"].is_null());
    assert!((rows[1]["total"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    // A single dipole-connected level: every order beyond the first collapses onto one gap.
    assert!((rows[2]["total"].as_f64().unwrap() - 2.0).abs() < 1e-6);
}

#[test]
fn csv_header_order_and_divergent_cells() {
    let o = run(&["table", "--state", "2s", "--orders", "3..4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "J,channel,discrete,continuum,total,constructive,closed_form,pass");
    assert!(lines[1].starts_with("3,plus,"));
    let cells: Vec<&str> = lines[2].split(',').collect();
    assert_eq!(&cells[..2], ["4", "plus"]);
    assert_eq!(cells[3], "div");
    assert_eq!(cells[4], "div");
    assert_eq!(cells[7], "true");
}

#[test]
fn output_is_deterministic() {
    let args = ["table", "--state", "2p", "--orders", "-2..2", "--format", "csv"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn published_tables_verify() {
    let (v, code) = json(&["verify", "--suite", "paper-tables", "--tol", "2e-4", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for table in ["1S positive", "1S negative", "2S", "2P minus", "2P plus", "2P total"] {
        assert!(names.iter().any(|n| n.starts_with(&format!("{table} J="))), "{table}");
    }
    assert!(names.contains(&"2P printed sqrt(4l^2+1) factor rejected"));
}

#[test]
fn other_suites_pass() {
    for suite in ["identities", "equivalences", "contour"] {
        let (v, code) = json(&["verify", "--suite", suite, "--format", "json"]);
        assert_eq!(code, 0, "{suite}");
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true), "{suite}");
    }
}

#[test]
fn impossible_tolerance_fails_with_exit_one() {
    let o = run(&["verify", "--suite", "paper-tables", "--tol", "1e-12"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["table", "--state", "1x"],
        vec!["table", "--state", "1s", "--channel", "minus"],
        vec!["table", "--state", "1s", "--orders", "3..1"],
        vec!["table", "--state", "1s", "--potential", "log"],
        vec!["table", "--potential", "coulomb"],
        vec!["table", "--state", "3f"],
        vec!["matrix", "--state", "1s"],
        vec!["bogus"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn matrix_elements() {
    let (v, code) = json(&["matrix", "--state", "1s", "--to", "2", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(v["z2"], "32768/59049");
    let (v, code) = json(&["matrix", "--state", "1s", "--q", "0.5", "--format", "json"]);
    assert_eq!(code, 0);
    let (a, b) = (v["value"].as_f64().unwrap(), v["numerov"].as_f64().unwrap());
    assert!((a - b).abs() < 1e-6);
}

#[test]
fn kramers_and_potential_diagnostics() {
    let (v, code) = json(&["kramers", "--state", "3d", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"].as_array().unwrap().len(), 8 + 8);
    let (v, code) = json(&["potential", "--potential", "gamma=1", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = std::env::temp_dir().join(format!("sumrules-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.cfg");
    std::fs::write(&path, "# defaults\norders = -1..1\nformat = csv\nsuite = contour\n").unwrap();
    let cfg = path.to_str().unwrap();
    let from_file = stdout(&run(&["--config", cfg, "table", "--state", "1s"]));
    assert_eq!(from_file.lines().count(), 4);
    let overridden = stdout(&run(&["table", "--config", cfg, "--state", "1s", "--orders", "2"]));
    assert_eq!(overridden.lines().count(), 2);
    assert!(overridden.lines().nth(1).unwrap().starts_with("2,plus,"));
    std::fs::write(&path, "nonsense = 1\n").unwrap();
    assert_eq!(run(&["--config", cfg, "table", "--state", "1s"]).status.code(), Some(2));
}
