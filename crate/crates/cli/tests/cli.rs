use std::process::{Command, Output};

use charsum::report::VerificationReport;

fn charsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charsum"))
        .args(args)
        .env_remove("CHARSUM_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_euler_passes() {
    let o = charsum(&["verify", "euler", "--q", "2", "--max-degree", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 2);
    assert!(out.ends_with("2 passed, 0 failed\n"));
}

#[test]
fn verify_gl_sweeps_every_pair() {
    let o = charsum(&["verify", "gl", "--n", "2", "--q", "3", "--json", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<VerificationReport> =
        stdout(&o).lines().map(|l| VerificationReport::from_json(l).unwrap()).collect();
    // 2 x 3 character pairs, two checks each
    let pair_checks = ["gl-closed-form", "gl-series"];
    assert_eq!(reports.iter().filter(|r| pair_checks.contains(&r.check.as_str())).count(), 12);
    assert!(reports.iter().all(VerificationReport::passed));
}

#[test]
fn json_lines_round_trip_and_runs_are_deterministic() {
    let args = ["verify", "unitary", "--n", "2", "--q", "2", "--json", "--no-timing"];
    let first = stdout(&charsum(&args));
    let second = stdout(&charsum(&args));
    assert_eq!(first, second);
    for line in first.lines() {
        let r = VerificationReport::from_json(line).unwrap();
        assert_eq!(r.to_json(), line);
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(charsum(&["verify", "gl", "--n", "9", "--q", "9"]).status.code(), Some(2));
    assert_eq!(charsum(&["verify", "everything"]).status.code(), Some(2));
    assert_eq!(charsum(&["table", "--qset", ""]).status.code(), Some(2));
    assert_eq!(charsum(&["sum", "gauss", "--q", "6"]).status.code(), Some(2));
    assert_eq!(charsum(&["sum", "kloosterman", "--q", "5", "--x", "0"]).status.code(), Some(2));
    assert_eq!(charsum(&["cache", "info"]).status.code(), Some(2));
}

#[test]
fn gauss_sum_modulus() {
    let o = charsum(&["sum", "gauss", "--q", "5", "--chi", "1", "--lam", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["abs_squared"], "5");
    assert!(v["value"].as_str().unwrap().starts_with("20; "));
}

#[test]
fn kloosterman_value() {
    let o = charsum(&["sum", "kloosterman", "--q", "5", "--x", "1", "--y", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!((v["re"].as_f64().unwrap() - 0.381966).abs() < 1e-6);
    assert!(v["im"].as_f64().unwrap().abs() < 1e-9);
}

#[test]
fn hyper_and_group_sums() {
    let o = charsum(&["sum", "hyper", "--q", "5", "--n", "3", "--x", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("value      20; "));
    for kind in ["g1", "g2", "usum"] {
        let o = charsum(&["sum", kind, "--q", "2", "--n", "2"]);
        assert_eq!(o.status.code(), Some(0), "{kind}");
    }
    let o = charsum(&["sum", "glsum", "--q", "3", "--n", "2", "--chi", "0", "--lam", "0"]);
    assert!(stdout(&o).contains("value      6; 48/1"));
}

#[test]
fn table_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("t.csv");
    let o = charsum(&["table", "--nmax", "4", "--qset", "3,5,7", "--out", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next(), Some("n,q,deligne,fulman,max_actual,argmax_x"));
    assert_eq!(text.lines().count(), 10);
    let summary = stdout(&o);
    let row_37 = summary.lines().find(|l| l.split_whitespace().take(2).eq(["3", "7"])).unwrap();
    assert!(row_37.ends_with("fulman < deligne"));

    let json = dir.path().join("t.json");
    let o = charsum(&["table", "--nmax", "2", "--qset", "7", "--out", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let line = std::fs::read_to_string(&json).unwrap();
    let v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(v["q"], 7);

    let bad = dir.path().join("missing").join("t.csv");
    assert_eq!(charsum(&["table", "--out", bad.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn cache_warm_and_clear() {
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_charsum"))
            .args(args)
            .env("CHARSUM_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let o = run(&["cache", "warm", "--q", "4", "--max-degree", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "q=4 irreducibles by degree: 4 6 20\n");
    // second run reads the files back
    assert_eq!(stdout(&run(&["cache", "warm", "--q", "4", "--max-degree", "3"])), stdout(&o));
    assert_eq!(stdout(&run(&["cache", "clear"])), "removed 2 files\n");
}
