use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use uq_online::harness::{emit_chart, run_experiment, ExperimentConfig, ExperimentOutput};
use uq_online::online_search::{drcr_oracle_search, solve_pfa};
use uq_online::ski_rental::{
    drcr_oracle, dsr_pip_buy_day, dsr_pip_drcr, oracle::truncated_lp_drcr, solve_rsr,
};
use uq_online::{Error, Pip};

#[derive(Parser)]
#[command(name = "uq-online", version, about = "Online ski rental and search with interval predictions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleProblem {
    Ski,
    Search,
}

#[derive(Subcommand)]
enum Command {
    /// Optimal ski-rental policy for one interval prediction.
    SolveSki {
        #[arg(long)]
        ell: f64,
        #[arg(long)]
        u: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long = "B")]
        buy_cost: u64,
        /// Report the deterministic policy instead of the randomized one.
        #[arg(long)]
        deterministic: bool,
    },
    /// Optimal protection function for one interval prediction.
    SolveSearch {
        #[arg(long)]
        ell: f64,
        #[arg(long)]
        u: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        m: f64,
        #[arg(long = "M")]
        big_m: f64,
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
    },
    /// Runs an experiment. Any config key may follow as `--key value`.
    Run {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        overrides: Vec<String>,
    },
    /// Renders a records CSV as an SVG chart.
    Chart {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Cross-checks solvers against brute-force evaluation on random inputs.
    OracleCheck {
        #[arg(long, value_enum)]
        problem: OracleProblem,
        #[arg(long, default_value_t = 50)]
        cases: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::InvalidInput(_) => 2,
        Error::Lp(_) | Error::Solver(_) => 3,
        Error::Io { .. } | Error::Csv { .. } => 4,
    }
}

fn apply_overrides(config: &mut ExperimentConfig, args: &[String]) -> uq_online::Result<()> {
    let mut it = args.iter();
    while let Some(flag) = it.next() {
        let key = flag
            .strip_prefix("--")
            .ok_or_else(|| Error::Config(format!("expected '--key', got '{flag}'")))?;
        let (key, value) = match key.split_once('=') {
            Some((k, v)) => (k, v.to_string()),
            None => (
                key,
                it.next()
                    .ok_or_else(|| Error::Config(format!("--{key} needs a value")))?
                    .clone(),
            ),
        };
        config.set(key, &value)?;
    }
    config.validate()
}

fn print_summary(output: &ExperimentOutput) {
    println!("algorithm,t,mean_cumulative_excess");
    for s in &output.summary {
        println!("{},{},{:.6}", s.algorithm, s.t, s.mean_cumulative_excess);
    }
    eprintln!(
        "lp solves: {}, clipped losses: {}",
        output.rsr_solves, output.clip_events
    );
}

fn oracle_check(problem: OracleProblem, cases: usize, seed: u64) -> uq_online::Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for case in 0..cases {
        match problem {
            OracleProblem::Ski => {
                let b = rng.gen_range(1..=12u64);
                let l = rng.gen_range(1..=3 * b);
                let u = rng.gen_range(l..=3 * b);
                let pip = Pip::new(l as f64, u as f64, rng.gen())?;
                let s = solve_rsr(&pip, b)?;
                let brute = drcr_oracle(&s.policy, &pip, b);
                let full = truncated_lp_drcr(&pip, b, 3 * b + 2)?;
                let ok = (brute - s.drcr).abs() <= 1e-6 && (full - s.drcr).abs() <= 1e-6;
                if !ok {
                    failures += 1;
                    println!(
                        "case {case}: B={b} [{l},{u}] δ={:.4}: solver {} brute {brute} full {full}",
                        pip.delta(),
                        s.drcr
                    );
                }
            }
            OracleProblem::Search => {
                let a: f64 = rng.gen_range(1.0..4.0);
                let c: f64 = rng.gen_range(1.0..4.0);
                let pip = Pip::new(a.min(c), a.max(c), rng.gen())?;
                let eps = 0.05;
                let s = solve_pfa(&pip, 1.0, 4.0, eps)?;
                let brute = drcr_oracle_search(&s.protection, &pip)?;
                if !(brute >= s.drcr - 1e-6 && brute <= s.drcr + eps * 4.0 + 1e-6) {
                    failures += 1;
                    println!(
                        "case {case}: [{:.4},{:.4}] δ={:.4}: solver {} brute {brute}",
                        pip.lower(),
                        pip.upper(),
                        pip.delta(),
                        s.drcr
                    );
                }
            }
        }
    }
    Ok(failures)
}

fn execute(cli: Cli) -> uq_online::Result<bool> {
    match cli.command {
        Command::SolveSki {
            ell,
            u,
            delta,
            buy_cost,
            deterministic,
        } => {
            let pip = Pip::new(ell, u, delta)?;
            if deterministic {
                let day = dsr_pip_buy_day(&pip, buy_cost as f64)?;
                println!("buy_day = {day}");
                println!("drcr = {}", dsr_pip_drcr(&pip, buy_cost as f64)?);
            } else {
                let s = solve_rsr(&pip, buy_cost)?;
                println!("eta = {}", s.eta);
                println!("gamma = {}", s.gamma);
                println!("drcr = {}", s.drcr);
                println!("day,probability");
                for (day, p) in s.policy.iter() {
                    println!("{day},{p}");
                }
            }
        }
        Command::SolveSearch {
            ell,
            u,
            delta,
            m,
            big_m,
            eps,
        } => {
            let s = solve_pfa(&Pip::new(ell, u, delta)?, m, big_m, eps)?;
            println!("eta = {}", s.eta_hat);
            println!("gamma = {}", s.gamma_hat);
            println!("drcr = {}", s.drcr);
            println!("attained_drcr = {}", s.attained_drcr);
            println!("price,level");
            for (v, g) in s.protection.grid().values().iter().zip(s.protection.cumulative()) {
                println!("{v},{g}");
            }
        }
        Command::Run {
            config,
            out,
            overrides,
        } => {
            let mut cfg = match &config {
                Some(path) => ExperimentConfig::from_file(path)?,
                None => ExperimentConfig::default(),
            };
            apply_overrides(&mut cfg, &overrides)?;
            let (output, files) = run_experiment(&cfg, &out)?;
            print_summary(&output);
            eprintln!("wrote {} and {}", files.records.display(), files.summary.display());
        }
        Command::Chart { csv, out } => {
            let curves = emit_chart(&csv, &out)?;
            eprintln!("wrote {} with {} curves", out.display(), curves.len());
        }
        Command::OracleCheck {
            problem,
            cases,
            seed,
        } => {
            let failures = oracle_check(problem, cases, seed)?;
            println!("{} of {cases} cases agree", cases - failures);
            return Ok(failures == 0);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
