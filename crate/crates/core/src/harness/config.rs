//! Experiment configuration: a flat `key = value` file with `#` comments.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::online_learning::StepSchedule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Problem {
    SkiRental,
    OnlineSearch,
}

impl FromStr for Problem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ski-rental" | "ski" => Ok(Problem::SkiRental),
            "online-search" | "search" => Ok(Problem::OnlineSearch),
            other => Err(Error::Config(format!("unknown problem '{other}'"))),
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::SkiRental => "ski-rental",
            Problem::OnlineSearch => "online-search",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Woa,
    Ftp,
    RsrPip,
    OlDynamic,
    OlStatic,
    DsrPip,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Woa,
        Algorithm::Ftp,
        Algorithm::RsrPip,
        Algorithm::OlDynamic,
        Algorithm::OlStatic,
        Algorithm::DsrPip,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Algorithm::Woa => "WOA",
            Algorithm::Ftp => "FTP",
            Algorithm::RsrPip => "RSR-PIP",
            Algorithm::OlDynamic => "OL-Dynamic",
            Algorithm::OlStatic => "OL-Static",
            Algorithm::DsrPip => "DSR-PIP",
        }
    }

    /// Position in [`Algorithm::ALL`]; also selects the sampling stream.
    pub fn index(&self) -> usize {
        Algorithm::ALL.iter().position(|a| a == self).unwrap()
    }
}

impl FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim();
        Algorithm::ALL
            .into_iter()
            .find(|a| a.label().eq_ignore_ascii_case(wanted))
            .ok_or_else(|| Error::Config(format!("unknown algorithm '{wanted}'")))
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScheduleKind {
    /// Step size tuned to the full run length `T`.
    Fixed,
    /// Step size tuned to each learner's own update count.
    Anytime,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub problem: Problem,
    /// Rounds per run, `T`.
    pub rounds: usize,
    pub runs: usize,
    pub seed: u64,
    pub buy_cost: u64,
    /// `N̄`: predictions are clamped to `[1, N̄]` and learners choose days in it.
    pub horizon_max: u64,
    /// Inclusive range of true horizons (ski) drawn uniformly.
    pub day_support: (u64, u64),
    /// Repeating blocks of `(rounds, σ)`.
    pub sigma_pattern: Vec<(usize, f64)>,
    pub confidence: f64,
    pub algorithms: Vec<Algorithm>,
    pub m: f64,
    pub big_m: f64,
    pub grid_eps: f64,
    /// Ramp length of generated search instances.
    pub search_steps: usize,
    pub ftp_literal: bool,
    pub eg_schedule: ScheduleKind,
    pub eg_rate_scale: f64,
    pub net_radius: Option<f64>,
    pub memoize: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            problem: Problem::SkiRental,
            rounds: 3000,
            runs: 10,
            seed: 1,
            buy_cost: 2,
            horizon_max: 8,
            day_support: (1, 8),
            sigma_pattern: vec![(10, 0.0), (10, 6.0)],
            confidence: 0.90,
            algorithms: vec![
                Algorithm::Woa,
                Algorithm::Ftp,
                Algorithm::RsrPip,
                Algorithm::OlDynamic,
                Algorithm::OlStatic,
            ],
            m: 1.0,
            big_m: 4.0,
            grid_eps: 0.05,
            search_steps: 64,
            ftp_literal: false,
            eg_schedule: ScheduleKind::Anytime,
            eg_rate_scale: 1.0,
            net_radius: None,
            memoize: true,
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("{key}: cannot parse '{}'", value.trim())))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        other => Err(Error::Config(format!("{key}: expected a boolean, got '{other}'"))),
    }
}

impl ExperimentConfig {
    pub const KEYS: [&'static str; 19] = [
        "problem",
        "T",
        "runs",
        "seed",
        "B",
        "horizon_max",
        "day_support",
        "sigma_pattern",
        "confidence",
        "algorithms",
        "m",
        "M",
        "grid_eps",
        "search_steps",
        "ftp_literal",
        "eg_schedule",
        "eg_rate_scale",
        "net_radius",
        "memoize",
    ];

    /// Sets one key. Keys are case-sensitive because `m` and `M` differ.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim();
        match key {
            "problem" => self.problem = value.parse()?,
            "T" => self.rounds = parse(key, value)?,
            "runs" => self.runs = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "B" => self.buy_cost = parse(key, value)?,
            "horizon_max" => self.horizon_max = parse(key, value)?,
            "day_support" => {
                let (lo, hi) = value
                    .split_once("..")
                    .ok_or_else(|| Error::Config(format!("{key}: expected 'lo..hi'")))?;
                self.day_support = (parse(key, lo)?, parse(key, hi)?);
            }
            "sigma_pattern" => {
                self.sigma_pattern = value
                    .split(',')
                    .map(|block| {
                        let (len, sigma) = block.split_once(':').ok_or_else(|| {
                            Error::Config(format!("{key}: expected 'rounds:sigma' blocks"))
                        })?;
                        Ok((parse(key, len)?, parse(key, sigma)?))
                    })
                    .collect::<Result<_>>()?;
            }
            "confidence" => self.confidence = parse(key, value)?,
            "algorithms" => {
                self.algorithms = value
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(str::parse)
                    .collect::<Result<_>>()?;
            }
            "m" => self.m = parse(key, value)?,
            "M" => self.big_m = parse(key, value)?,
            "grid_eps" => self.grid_eps = parse(key, value)?,
            "search_steps" => self.search_steps = parse(key, value)?,
            "ftp_literal" => self.ftp_literal = parse_bool(key, value)?,
            "eg_schedule" => {
                self.eg_schedule = match value.trim().to_ascii_lowercase().as_str() {
                    "fixed" => ScheduleKind::Fixed,
                    "anytime" => ScheduleKind::Anytime,
                    other => {
                        return Err(Error::Config(format!(
                            "{key}: expected 'fixed' or 'anytime', got '{other}'"
                        )))
                    }
                }
            }
            "eg_rate_scale" => self.eg_rate_scale = parse(key, value)?,
            "net_radius" => {
                self.net_radius = match value.trim() {
                    "" | "auto" => None,
                    v => Some(parse(key, v)?),
                }
            }
            "memoize" => self.memoize = parse_bool(key, value)?,
            other => return Err(Error::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Parses `key = value` lines over the defaults, then validates.
    pub fn parse_str(text: &str) -> Result<Self> {
        let mut config = ExperimentConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected 'key = value'", i + 1)))?;
            config
                .set(key, value)
                .map_err(|e| Error::Config(format!("line {}: {}", i + 1, strip(e))))?;
        }
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        ExperimentConfig::parse_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if self.rounds == 0 || self.runs == 0 {
            return fail("T and runs must be at least 1".into());
        }
        if self.algorithms.is_empty() {
            return fail("no algorithms selected".into());
        }
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return fail(format!("confidence {} outside (0, 1)", self.confidence));
        }
        if self.sigma_pattern.is_empty()
            || self
                .sigma_pattern
                .iter()
                .any(|&(len, s)| len == 0 || !(s >= 0.0) || !s.is_finite())
        {
            return fail("sigma_pattern needs blocks with length >= 1 and sigma >= 0".into());
        }
        if !(self.eg_rate_scale > 0.0) || !self.eg_rate_scale.is_finite() {
            return fail(format!("eg_rate_scale must be positive, got {}", self.eg_rate_scale));
        }
        if let Some(r) = self.net_radius {
            if !(r > 0.0) {
                return fail(format!("net_radius must be positive, got {r}"));
            }
        }
        match self.problem {
            Problem::SkiRental => {
                if self.buy_cost == 0 || self.horizon_max == 0 {
                    return fail("B and horizon_max must be at least 1".into());
                }
                let (lo, hi) = self.day_support;
                if lo == 0 || lo > hi || hi > self.horizon_max {
                    return fail(format!(
                        "day_support {lo}..{hi} must lie within 1..{}",
                        self.horizon_max
                    ));
                }
            }
            Problem::OnlineSearch => {
                if !(self.m > 0.0) || !(self.big_m > self.m) || !self.big_m.is_finite() {
                    return fail(format!("need 0 < m < M, got [{}, {}]", self.m, self.big_m));
                }
                if !(self.grid_eps > 0.0) {
                    return fail(format!("grid_eps must be positive, got {}", self.grid_eps));
                }
                if self.search_steps < 2 {
                    return fail("search_steps must be at least 2".into());
                }
                if self.algorithms.contains(&Algorithm::DsrPip) {
                    return fail("DSR-PIP is a ski-rental policy".into());
                }
            }
        }
        Ok(())
    }

    /// `δ_t`, the miss probability attached to every interval.
    pub fn delta(&self) -> f64 {
        1.0 - self.confidence
    }

    /// Per-run seed: base seed plus run index.
    pub fn run_seed(&self, run: usize) -> u64 {
        self.seed.wrapping_add(run as u64)
    }

    /// σ used in round `t` (0-based), cycling through the pattern.
    pub fn sigma_at(&self, t: usize) -> f64 {
        let period: usize = self.sigma_pattern.iter().map(|b| b.0).sum();
        let mut r = t % period;
        for &(len, sigma) in &self.sigma_pattern {
            if r < len {
                return sigma;
            }
            r -= len;
        }
        unreachable!("pattern blocks cover the period")
    }

    pub fn step_schedule(&self) -> StepSchedule {
        match self.eg_schedule {
            ScheduleKind::Fixed => StepSchedule::Fixed {
                horizon: self.rounds as u64,
            },
            ScheduleKind::Anytime => StepSchedule::Anytime,
        }
    }
}

fn strip(e: Error) -> String {
    match e {
        Error::Config(msg) => msg,
        other => other.to_string(),
    }
}
