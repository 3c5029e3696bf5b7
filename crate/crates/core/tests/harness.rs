use std::collections::HashMap;

use uq_online::harness::{
    emit_chart, run_experiment, Algorithm, ExperimentConfig, Problem, RECORD_HEADER,
};

fn config() -> ExperimentConfig {
    ExperimentConfig {
        rounds: 120,
        runs: 3,
        seed: 11,
        algorithms: Algorithm::ALL.to_vec(),
        ..ExperimentConfig::default()
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (_, a) = run_experiment(&config(), &dir.path().join("a")).unwrap();
    let (_, b) = run_experiment(&config(), &dir.path().join("b")).unwrap();
    assert_eq!(std::fs::read(&a.records).unwrap(), std::fs::read(&b.records).unwrap());
    assert_eq!(std::fs::read(&a.summary).unwrap(), std::fs::read(&b.summary).unwrap());
}

#[test]
fn stored_excess_matches_recomputation() {
    let dir = tempfile::tempdir().unwrap();
    let (_, files) = run_experiment(&config(), dir.path()).unwrap();
    let mut reader = csv::Reader::from_path(&files.records).unwrap();
    assert_eq!(reader.headers().unwrap().iter().collect::<Vec<_>>(), RECORD_HEADER);
    let mut sums: HashMap<(String, String), (f64, usize)> = HashMap::new();
    let mut rows = 0;
    for rec in reader.records() {
        let rec = rec.unwrap();
        let e = sums.entry((rec[0].to_string(), rec[2].to_string())).or_insert((0.0, 0));
        e.0 += rec[7].parse::<f64>().unwrap();
        e.1 += 1;
        assert_eq!(rec[1].parse::<usize>().unwrap(), e.1);
        let stored: f64 = rec[8].parse().unwrap();
        assert!((e.0 / e.1 as f64 - 1.0 - stored).abs() < 1e-12);
        rows += 1;
    }
    assert_eq!(rows, 3 * 120 * 6);
}

#[test]
fn chart_has_one_curve_per_algorithm() {
    let dir = tempfile::tempdir().unwrap();
    let (_, files) = run_experiment(&config(), dir.path()).unwrap();
    let svg = dir.path().join("chart.svg");
    let curves = emit_chart(&files.records, &svg).unwrap();
    assert_eq!(curves.len(), 6);
    let text = std::fs::read_to_string(svg).unwrap();
    assert_eq!(text.matches("<polyline").count(), 6);
    for a in Algorithm::ALL {
        assert!(text.contains(&format!(">{}</text>", a.label())));
    }
}

#[test]
fn search_experiment_is_deterministic() {
    let cfg = ExperimentConfig {
        problem: Problem::OnlineSearch,
        rounds: 30,
        runs: 2,
        ..ExperimentConfig::default()
    };
    let dir = tempfile::tempdir().unwrap();
    let (a, _) = run_experiment(&cfg, &dir.path().join("a")).unwrap();
    let (b, _) = run_experiment(&cfg, &dir.path().join("b")).unwrap();
    assert_eq!(a.records, b.records);
    assert_eq!(a.summary.len(), 5);
}

#[test]
fn shipped_config_parses() {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/ski-rental.conf");
    let cfg = ExperimentConfig::from_file(&path).unwrap();
    assert_eq!(cfg.algorithms.len(), 5);
    assert_eq!(cfg.sigma_pattern, vec![(10, 0.0), (10, 6.0)]);
}
