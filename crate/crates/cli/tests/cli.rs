use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uq-online"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn solve_ski_reports_the_robust_policy() {
    let o = run(&["solve-ski", "--ell", "1", "--u", "1", "--delta", "1", "--B", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let drcr: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("drcr = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((drcr - 4.0 / 3.0).abs() < 1e-9);
    assert!(text.contains("day,probability"));
}

#[test]
fn solve_ski_deterministic() {
    let o = run(&["solve-ski", "--ell", "1", "--u", "4", "--delta", "1", "--B", "2", "--deterministic"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("buy_day = 2\ndrcr = 2\n"));
}

#[test]
fn solve_search_prints_levels() {
    let o = run(&[
        "solve-search", "--ell", "2", "--u", "3", "--delta", "0.2", "--m", "1", "--M", "4", "--eps", "0.1",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("price,level"));
}

#[test]
fn run_and_chart_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = run(&[
        "run", "--out", out.to_str().unwrap(), "--T", "50", "--runs", "2", "--algorithms", "WOA,RSR-PIP",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("RSR-PIP,50,"));
    let svg = dir.path().join("c.svg");
    let o = run(&[
        "chart", "--csv", out.join("records.csv").to_str().unwrap(), "--out", svg.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(svg.exists());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "T = zero\n").unwrap();
    assert_eq!(run(&["run", "--config", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["run", "--T", "0"]).status.code(), Some(2));
    let missing = dir.path().join("missing.conf");
    assert_eq!(run(&["run", "--config", missing.to_str().unwrap()]).status.code(), Some(4));
    let svg = dir.path().join("c.svg");
    let o = run(&["chart", "--csv", missing.to_str().unwrap(), "--out", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(!svg.exists());
}

#[test]
fn oracle_check_agrees() {
    for problem in ["ski", "search"] {
        let o = run(&["oracle-check", "--problem", problem, "--cases", "10"]);
        assert!(o.status.success(), "{}", stdout(&o));
        assert!(stdout(&o).contains("10 of 10 cases agree"));
    }
}
