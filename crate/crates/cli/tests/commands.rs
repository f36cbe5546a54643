use std::fs;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sharpe-horizon")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn recover_prints_both_columns() {
    let o = run(&["recover"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for needle in ["0.111", "0.0429", "0.0542", "-0.941", "0.227", "-0.0051"] {
        assert!(text.contains(needle), "{needle} missing from\n{text}");
    }
}

#[test]
fn params_file_overrides_defaults() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("p.json");
    fs::write(
        &path,
        r#"{"rf_quarterly":0.015,"a_r":0.227,"b_r":0.060,"a_z":-0.155,"b_z":0.5,
            "var_r":0.0060,"var_z":0.0049,"cov_rz":-0.0051}"#,
    )
    .unwrap();
    let o = run(&["--params", path.to_str().unwrap(), "--raw", "recover"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let kappa: f64 =
        stdout(&o).lines().find_map(|l| l.split_once("kappa").map(|(_, v)| v.trim().parse().unwrap())).unwrap();
    assert!((kappa - 2f64.ln()).abs() < 1e-12);
}

#[test]
fn malformed_params_exit_2_and_name_the_field() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("p.json");
    fs::write(&path, r#"{"rf_quarterly":0.015,"a_r":"x"}"#).unwrap();
    let o = run(&["--params", path.to_str().unwrap(), "recover"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("a_r"), "{}", stderr(&o));

    fs::write(&path, "{ not json").unwrap();
    assert_eq!(run(&["--params", path.to_str().unwrap(), "recover"]).status.code(), Some(2));
}

#[test]
fn allocate_prints_percentages() {
    let o = run(&["allocate", "--gamma", "5", "--horizon", "40", "--x-percentile", "50", "--constrained"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("28.6%") && text.contains("58.3%") && text.contains("86.9%"), "{text}");

    let o = run(&["allocate", "--gamma", "5", "--horizon", "10", "--x", "-0.2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(run(&["allocate", "--gamma", "5", "--horizon", "10"]).status.code(), Some(2));
}

#[test]
fn tables_write_csv_and_text() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["--out", out, "table", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("table-2.csv")).unwrap();
    assert_eq!(csv.lines().count(), 41);
    assert!(csv.contains("20,15,90,"));
    assert!(csv.lines().any(|l| l.starts_with("20,15,90,") && l.ends_with(",33.7")));

    let o = run(&["--out", out, "table", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("table-3.csv")).unwrap();
    let row = csv.lines().find(|l| l.starts_with("40,5,50,")).unwrap();
    assert!(row.ends_with(",86.9,77.6,9.3"), "{row}");
    for line in csv.lines().skip(1).filter(|l| l.split(',').nth(2) == Some("10")) {
        assert_eq!(line.split(',').nth(4), Some("0.0"), "{line}");
    }
    assert!(dir.path().join("table-3.txt").exists());

    assert_eq!(run(&["--out", out, "table", "4"]).status.code(), Some(2));
}

#[test]
fn figure_files_are_monotone_and_finite() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().to_str().unwrap();
    for id in ["1", "2", "3"] {
        assert_eq!(run(&["--out", out, "figure", id]).status.code(), Some(0));
    }
    let mut files = 0;
    for entry in fs::read_dir(dir.path()).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.ends_with('\n'));
        let xs: Vec<f64> = text
            .lines()
            .map(|l| {
                let cols: Vec<f64> = l.split(' ').map(|v| v.parse().unwrap()).collect();
                assert_eq!(cols.len(), 2);
                assert!(cols.iter().all(|v| v.is_finite()));
                cols[0]
            })
            .collect();
        assert!(xs.windows(2).all(|w| w[0] < w[1]), "{}", path.display());
        files += 1;
    }
    assert_eq!(files, 5 + 10 + 1);

    let end = fs::read_to_string(dir.path().join("explicit-solution-wrt-T-15-0.900000.txt")).unwrap();
    assert_eq!(end.lines().last(), Some("40 98.3433"));
    let path = fs::read_to_string(dir.path().join("explicit-solution-path.txt")).unwrap();
    assert!(path.starts_with("0 0.0651"));
}

#[test]
fn search_small_and_error_paths() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["--out", out, "search", "--grid", ".5", "--horizon", "1", "--paths", "50"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("expected CRRA utility"));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("search-report.json")).unwrap()).unwrap();
    assert_eq!(report["n_strategies_evaluated"], 1);
    assert_eq!(report["best_sequence"], serde_json::json!([0.5]));
    let stairs = fs::read_to_string(dir.path().join("grid-search-path.txt")).unwrap();
    assert_eq!(stairs, "0 0.5\n1 0.5\n");

    assert_eq!(run(&["--out", out, "search", "--paths", "0"]).status.code(), Some(2));
    let o = run(&["--out", out, "search", "--horizon", "12", "--paths", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("budget"));
}

#[test]
fn search_is_reproducible_for_a_fixed_seed() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().to_str().unwrap();
    let args = ["--out", out, "--seed", "9", "search", "--grid", "0,0.5,1", "--horizon", "4", "--paths", "300"];
    assert_eq!(run(&args).status.code(), Some(0));
    let first: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("search-report.json")).unwrap()).unwrap();
    assert_eq!(run(&args).status.code(), Some(0));
    let second: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("search-report.json")).unwrap()).unwrap();
    assert_eq!(first["best_sequence"], second["best_sequence"]);
    assert_eq!(first["expected_utility"], second["expected_utility"]);
}
