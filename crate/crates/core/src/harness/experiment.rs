//! Runs every configured algorithm over the same streams and writes
//! per-round records plus a checkpoint summary.

use std::collections::{BTreeMap, HashMap};
use std::fs::File;
use std::path::{Path, PathBuf};

use super::config::{Algorithm, ExperimentConfig, Problem};
use super::stream::{generate_search_stream, generate_ski_stream, run_rng, SearchRound, SkiRound};
use crate::error::{Error, Result};
use crate::online_learning::{
    policy_regret, LearnerKey, OlSearch, OlSki, RegretPoint, RoundLog, SearchLearnerConfig,
    SkiLearnerConfig,
};
use crate::online_search::{
    grid_from_points, pfa_run, solve_pfa, worst_case_protection, ProtectionFunction,
};
use crate::ski_rental::{dsr_pip_buy_day, ftp_buy_day, woa_distribution, RsrCache};
use crate::types::Pip;

/// Rounds at which the summary reports the mean cumulative excess.
pub const CHECKPOINTS: [usize; 4] = [100, 500, 1000, 3000];

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRecord {
    pub run: usize,
    pub t: usize,
    pub algorithm: Algorithm,
    pub ell: f64,
    pub u: f64,
    pub delta: f64,
    pub true_value: f64,
    /// Ratio of the sampled decision.
    pub ratio: f64,
    /// Running mean of `ratio` minus one.
    pub cumulative_excess: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub algorithm: Algorithm,
    pub t: usize,
    pub mean_cumulative_excess: f64,
}

/// Round logs of one algorithm in one run.
#[derive(Clone, Debug)]
pub struct AlgorithmTrace {
    pub run: usize,
    pub algorithm: Algorithm,
    pub logs: Vec<RoundLog>,
}

impl AlgorithmTrace {
    pub fn regret(&self) -> Vec<RegretPoint> {
        policy_regret(&self.logs)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ExperimentOutput {
    pub records: Vec<ExperimentRecord>,
    pub summary: Vec<SummaryRow>,
    pub traces: Vec<AlgorithmTrace>,
    /// Linear programs solved on behalf of RSR-PIP.
    pub rsr_solves: usize,
    /// Loss entries clipped by the learners.
    pub clip_events: u64,
}

impl ExperimentOutput {
    pub fn trace(&self, run: usize, algorithm: Algorithm) -> Option<&AlgorithmTrace> {
        self.traces
            .iter()
            .find(|tr| tr.run == run && tr.algorithm == algorithm)
    }

    pub fn summary_at(&self, algorithm: Algorithm, t: usize) -> Option<f64> {
        self.summary
            .iter()
            .find(|s| s.algorithm == algorithm && s.t == t)
            .map(|s| s.mean_cumulative_excess)
    }
}

fn log(t: usize, pip: &Pip, decision: f64, expected: f64, sampled: f64, benchmark: f64) -> RoundLog {
    RoundLog {
        t,
        theta: *pip,
        decision,
        expected_ratio: expected,
        sampled_ratio: sampled,
        benchmark,
        key: LearnerKey::default(),
    }
}

struct SkiState {
    rsr: RsrCache,
}

fn ski_trace(
    config: &ExperimentConfig,
    algorithm: Algorithm,
    stream: &[SkiRound],
    run_seed: u64,
    state: &mut SkiState,
    clips: &mut u64,
) -> Result<Vec<RoundLog>> {
    let mut rng = run_rng(run_seed, algorithm.index() as u64 + 1);
    let b = config.buy_cost;
    let learner_config = SkiLearnerConfig {
        schedule: config.step_schedule(),
        rate_scale: config.eg_rate_scale,
        net_radius: config.net_radius,
        ..SkiLearnerConfig::new(config.horizon_max, b, config.rounds as u64)
    };
    let mut learner = match algorithm {
        Algorithm::OlDynamic => Some(OlSki::dynamic(learner_config)?),
        Algorithm::OlStatic => Some(OlSki::fixed_context(learner_config)?),
        _ => None,
    };
    let woa = woa_distribution(b);
    let mut logs = Vec::with_capacity(stream.len());
    for (i, round) in stream.iter().enumerate() {
        let inst = &round.instance;
        let opt = inst.offline_cost();
        let entry = match algorithm {
            Algorithm::Woa => {
                let day = woa.sample(&mut rng);
                let expected = woa.expected_ratio(inst);
                log(i + 1, &round.pip, day as f64, expected, inst.cost_of_buy_day(day) / opt, f64::NAN)
            }
            Algorithm::Ftp => {
                let ratio = match ftp_buy_day(round.prediction, b as f64, config.ftp_literal) {
                    Some(day) => inst.cost_of_buy_day(day),
                    None => inst.cost_of_renting(),
                } / opt;
                log(i + 1, &round.pip, ratio, ratio, ratio, f64::NAN)
            }
            Algorithm::DsrPip => {
                let day = (dsr_pip_buy_day(&round.pip, b as f64)?.ceil() as u64).max(1);
                let ratio = inst.cost_of_buy_day(day) / opt;
                log(i + 1, &round.pip, day as f64, ratio, ratio, f64::NAN)
            }
            Algorithm::RsrPip => {
                let solution = state.rsr.get(&round.pip)?;
                let day = solution.policy.sample(&mut rng);
                log(
                    i + 1,
                    &round.pip,
                    day as f64,
                    solution.policy.expected_ratio(inst),
                    inst.cost_of_buy_day(day) / opt,
                    solution.drcr,
                )
            }
            Algorithm::OlDynamic | Algorithm::OlStatic => {
                let ol = learner.as_mut().expect("learner built above");
                let (_, mut entry) = ol.round(&round.pip, inst, &mut rng)?;
                entry.t = i + 1;
                entry
            }
        };
        logs.push(entry);
    }
    if let Some(ol) = &learner {
        *clips += ol.clip_count();
    }
    Ok(logs)
}

struct SearchState {
    woa: ProtectionFunction,
    pfa: HashMap<(u64, u64, u64), (ProtectionFunction, f64)>,
    solves: usize,
}

fn threshold_protection(threshold: f64, m: f64, big_m: f64) -> Result<ProtectionFunction> {
    let mut points = vec![m];
    if threshold > m && threshold < big_m {
        points.push(threshold);
    }
    if big_m > m {
        points.push(big_m);
    }
    let levels = points.iter().map(|&v| if v >= threshold { 1.0 } else { 0.0 }).collect();
    ProtectionFunction::new(grid_from_points(&points, m, big_m)?, levels)
}

fn search_trace(
    config: &ExperimentConfig,
    algorithm: Algorithm,
    stream: &[SearchRound],
    state: &mut SearchState,
    clips: &mut u64,
) -> Result<Vec<RoundLog>> {
    let (m, big_m) = (config.m, config.big_m);
    let learner_config = SearchLearnerConfig {
        schedule: config.step_schedule(),
        rate_scale: config.eg_rate_scale,
        net_radius: config.net_radius,
        benchmark_eps: None,
        ..SearchLearnerConfig::new(m, big_m, config.rounds as u64)
    };
    let mut learner = match algorithm {
        Algorithm::OlDynamic => Some(OlSearch::dynamic(learner_config)?),
        Algorithm::OlStatic => Some(OlSearch::fixed_context(learner_config)?),
        _ => None,
    };
    let mut logs = Vec::with_capacity(stream.len());
    for (i, round) in stream.iter().enumerate() {
        let entry = match algorithm {
            Algorithm::Woa => {
                let r = pfa_run(&state.woa, &round.instance)?.ratio;
                log(i + 1, &round.pip, f64::NAN, r, r, f64::NAN)
            }
            Algorithm::Ftp => {
                let threshold = round.prediction.clamp(m, big_m);
                let r = pfa_run(&threshold_protection(threshold, m, big_m)?, &round.instance)?.ratio;
                log(i + 1, &round.pip, threshold, r, r, f64::NAN)
            }
            Algorithm::RsrPip => {
                let pip = &round.pip;
                let key = (pip.lower().to_bits(), pip.upper().to_bits(), pip.delta().to_bits());
                let (protection, drcr) = match state.pfa.get(&key) {
                    Some(hit) if config.memoize => hit.clone(),
                    _ => {
                        let s = solve_pfa(pip, m, big_m, config.grid_eps)?;
                        state.solves += 1;
                        let value = (s.protection, s.attained_drcr);
                        if config.memoize {
                            state.pfa.insert(key, value.clone());
                        }
                        value
                    }
                };
                let r = pfa_run(&protection, &round.instance)?.ratio;
                log(i + 1, pip, f64::NAN, r, r, drcr)
            }
            Algorithm::OlDynamic | Algorithm::OlStatic => {
                let ol = learner.as_mut().expect("learner built above");
                let (_, mut entry) = ol.round(&round.pip, &round.instance)?;
                entry.t = i + 1;
                entry
            }
            Algorithm::DsrPip => {
                return Err(Error::Config("DSR-PIP is a ski-rental policy".into()))
            }
        };
        logs.push(entry);
    }
    if let Some(ol) = &learner {
        *clips += ol.clip_count();
    }
    Ok(logs)
}

fn records_for(run: usize, algorithm: Algorithm, logs: &[RoundLog], truth: &[f64]) -> Vec<ExperimentRecord> {
    let mut total = 0.0;
    logs.iter()
        .zip(truth)
        .enumerate()
        .map(|(i, (log, &true_value))| {
            total += log.sampled_ratio;
            ExperimentRecord {
                run,
                t: i + 1,
                algorithm,
                ell: log.theta.lower(),
                u: log.theta.upper(),
                delta: log.theta.delta(),
                true_value,
                ratio: log.sampled_ratio,
                cumulative_excess: total / (i + 1) as f64 - 1.0,
            }
        })
        .collect()
}

/// Checkpoints at or below `T`, plus `T` itself.
pub fn checkpoints(rounds: usize) -> Vec<usize> {
    let mut ts: Vec<usize> = CHECKPOINTS.iter().copied().filter(|&t| t <= rounds).collect();
    if ts.last() != Some(&rounds) {
        ts.push(rounds);
    }
    ts
}

fn summarize(config: &ExperimentConfig, records: &[ExperimentRecord]) -> Vec<SummaryRow> {
    let ts = checkpoints(config.rounds);
    let mut sums: BTreeMap<(Algorithm, usize), f64> = BTreeMap::new();
    for r in records.iter().filter(|r| ts.contains(&r.t)) {
        *sums.entry((r.algorithm, r.t)).or_insert(0.0) += r.cumulative_excess;
    }
    config
        .algorithms
        .iter()
        .flat_map(|&a| ts.iter().map(move |&t| (a, t)))
        .map(|(algorithm, t)| SummaryRow {
            algorithm,
            t,
            mean_cumulative_excess: sums[&(algorithm, t)] / config.runs as f64,
        })
        .collect()
}

/// Runs the experiment in memory. Runs execute in order and algorithms in
/// the configured order, so the output is a pure function of the config.
pub fn simulate(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    config.validate()?;
    let mut out = ExperimentOutput::default();
    let mut ski = SkiState {
        rsr: if config.memoize {
            RsrCache::new(config.buy_cost)
        } else {
            RsrCache::disabled(config.buy_cost)
        },
    };
    let mut search = match config.problem {
        Problem::OnlineSearch => Some(SearchState {
            woa: worst_case_protection(config.m, config.big_m, config.grid_eps)?,
            pfa: HashMap::new(),
            solves: 0,
        }),
        Problem::SkiRental => None,
    };
    for run in 0..config.runs {
        let seed = config.run_seed(run);
        match config.problem {
            Problem::SkiRental => {
                let stream = generate_ski_stream(config, seed)?;
                let truth: Vec<f64> = stream.iter().map(|r| r.instance.horizon as f64).collect();
                for &algorithm in &config.algorithms {
                    let logs = ski_trace(config, algorithm, &stream, seed, &mut ski, &mut out.clip_events)?;
                    out.records.extend(records_for(run, algorithm, &logs, &truth));
                    out.traces.push(AlgorithmTrace { run, algorithm, logs });
                }
            }
            Problem::OnlineSearch => {
                let stream = generate_search_stream(config, seed)?;
                let truth: Vec<f64> = stream.iter().map(|r| r.peak).collect();
                let state = search.as_mut().expect("built for search");
                for &algorithm in &config.algorithms {
                    let logs = search_trace(config, algorithm, &stream, state, &mut out.clip_events)?;
                    out.records.extend(records_for(run, algorithm, &logs, &truth));
                    out.traces.push(AlgorithmTrace { run, algorithm, logs });
                }
            }
        }
    }
    out.rsr_solves = ski.rsr.solves() + search.map_or(0, |s| s.solves);
    out.summary = summarize(config, &out.records);
    Ok(out)
}

fn csv_writer(path: &Path) -> Result<csv::Writer<File>> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(file))
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(source) => Error::io(path, source),
        other => Error::Csv {
            path: path.to_path_buf(),
            message: format!("{other:?}"),
        },
    }
}

pub const RECORD_HEADER: [&str; 9] = [
    "run",
    "t",
    "algorithm",
    "ell",
    "u",
    "delta",
    "true_value",
    "ratio",
    "cumulative_excess",
];

pub fn write_records(path: &Path, records: &[ExperimentRecord]) -> Result<()> {
    let mut w = csv_writer(path)?;
    let err = |e| csv_error(path, e);
    w.write_record(RECORD_HEADER).map_err(err)?;
    for r in records {
        w.write_record([
            r.run.to_string(),
            r.t.to_string(),
            r.algorithm.label().to_string(),
            r.ell.to_string(),
            r.u.to_string(),
            r.delta.to_string(),
            r.true_value.to_string(),
            r.ratio.to_string(),
            r.cumulative_excess.to_string(),
        ])
        .map_err(err)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_summary(path: &Path, summary: &[SummaryRow]) -> Result<()> {
    let mut w = csv_writer(path)?;
    let err = |e| csv_error(path, e);
    w.write_record(["algorithm", "t", "mean_cumulative_excess"]).map_err(err)?;
    for s in summary {
        w.write_record([
            s.algorithm.label().to_string(),
            s.t.to_string(),
            s.mean_cumulative_excess.to_string(),
        ])
        .map_err(err)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Paths written by [`run_experiment`].
#[derive(Clone, Debug, PartialEq)]
pub struct OutputFiles {
    pub records: PathBuf,
    pub summary: PathBuf,
}

/// Simulates and writes `records.csv` and `summary.csv` into `out_dir`.
/// On failure any file already written is removed.
pub fn run_experiment(config: &ExperimentConfig, out_dir: &Path) -> Result<(ExperimentOutput, OutputFiles)> {
    let output = simulate(config)?;
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let files = OutputFiles {
        records: out_dir.join("records.csv"),
        summary: out_dir.join("summary.csv"),
    };
    let written = write_records(&files.records, &output.records)
        .and_then(|_| write_summary(&files.summary, &output.summary));
    if let Err(e) = written {
        for path in [&files.records, &files.summary] {
            let _ = std::fs::remove_file(path);
        }
        return Err(e);
    }
    Ok((output, files))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(algorithms: Vec<Algorithm>) -> ExperimentConfig {
        ExperimentConfig {
            rounds: 60,
            runs: 2,
            algorithms,
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn single_round_woa_with_unit_buy_cost_is_optimal() {
        let config = ExperimentConfig {
            rounds: 1,
            runs: 1,
            buy_cost: 1,
            algorithms: vec![Algorithm::Woa],
            ..ExperimentConfig::default()
        };
        let out = simulate(&config).unwrap();
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.records[0].ratio, 1.0);
        assert_eq!(out.records[0].cumulative_excess, 0.0);
    }

    #[test]
    fn identical_intervals_solve_once() {
        let config = ExperimentConfig {
            rounds: 30,
            runs: 1,
            sigma_pattern: vec![(1, 0.0)],
            day_support: (3, 3),
            algorithms: vec![Algorithm::RsrPip],
            ..ExperimentConfig::default()
        };
        assert_eq!(simulate(&config).unwrap().rsr_solves, 1);
        let uncached = ExperimentConfig {
            memoize: false,
            ..config
        };
        assert_eq!(simulate(&uncached).unwrap().rsr_solves, 30);
    }

    #[test]
    fn memoization_is_transparent() {
        let a = small(vec![Algorithm::RsrPip]);
        let b = ExperimentConfig {
            memoize: false,
            ..a.clone()
        };
        let (ra, rb) = (simulate(&a).unwrap(), simulate(&b).unwrap());
        assert_eq!(ra.records, rb.records);
        assert!(ra.rsr_solves < rb.rsr_solves);
    }

    #[test]
    fn excess_matches_raw_ratios() {
        let out = simulate(&small(Algorithm::ALL.to_vec())).unwrap();
        let mut sums: HashMap<(usize, Algorithm), f64> = HashMap::new();
        for r in &out.records {
            let s = sums.entry((r.run, r.algorithm)).or_insert(0.0);
            *s += r.ratio;
            assert!((*s / r.t as f64 - 1.0 - r.cumulative_excess).abs() < 1e-12);
            assert!(r.ratio >= 1.0 - 1e-12);
        }
        assert_eq!(out.records.len(), 2 * 60 * 6);
        assert_eq!(out.summary.len(), 6);
    }

    #[test]
    fn algorithms_share_the_stream() {
        let out = simulate(&small(vec![Algorithm::Woa, Algorithm::Ftp])).unwrap();
        let woa: Vec<_> = out.records.iter().filter(|r| r.algorithm == Algorithm::Woa).collect();
        let ftp: Vec<_> = out.records.iter().filter(|r| r.algorithm == Algorithm::Ftp).collect();
        for (a, b) in woa.iter().zip(&ftp) {
            assert_eq!((a.run, a.t, a.ell, a.u, a.true_value), (b.run, b.t, b.ell, b.u, b.true_value));
        }
    }

    #[test]
    fn search_experiment_runs() {
        let config = ExperimentConfig {
            problem: Problem::OnlineSearch,
            rounds: 40,
            runs: 1,
            ..ExperimentConfig::default()
        };
        let out = simulate(&config).unwrap();
        assert_eq!(out.records.len(), 40 * 5);
        assert!(out.records.iter().all(|r| r.ratio >= 1.0 - 1e-9 && r.ratio <= 4.0 + 1e-9));
    }

    #[test]
    fn files_are_written_and_cleaned_on_failure() {
        let dir = tempfile::tempdir().unwrap();
        let (_, files) = run_experiment(&small(vec![Algorithm::Woa]), dir.path()).unwrap();
        let text = std::fs::read_to_string(&files.records).unwrap();
        assert!(text.starts_with("run,t,algorithm,ell,u,delta,true_value,ratio,cumulative_excess\n"));
        assert!(!text.contains('\r'));

        let blocked = dir.path().join("blocked");
        std::fs::create_dir_all(blocked.join("summary.csv")).unwrap();
        let err = run_experiment(&small(vec![Algorithm::Woa]), &blocked).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
        assert!(!blocked.join("records.csv").exists());
    }
}
