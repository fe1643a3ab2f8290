//! Command-line front end behind the `covplan` binary.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};

use crate::energy::{path_energy_oracle, DEFAULT_SAMPLE_DT, J_PER_WH};
use crate::io::{write_outputs, IoError, Scenario, Summary};
use crate::planner::{plan, Plan, PlanError};

/// Deviation above which `validate` fails.
pub const MAX_DEVIATION: f64 = 0.10;

#[derive(Debug, Parser)]
#[command(name = "covplan", version, about = "Energy-aware multi-UAV coverage path planning")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Plan a scenario and write paths, waypoints, summary and plot.
    Plan {
        scenario: PathBuf,
        /// Output directory.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Overrides the scenario's seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Also report oracle energies sampled at this step (s).
        #[arg(long)]
        oracle_dt: Option<f64>,
    },
    /// Plan a scenario and compare both energy estimators on every path.
    Validate {
        scenario: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SAMPLE_DT)]
        oracle_dt: f64,
    },
    /// Plan every scenario of a directory and tabulate energy, length and time.
    Bench {
        suite: PathBuf,
        /// CSV file to write; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SAMPLE_DT)]
        oracle_dt: f64,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error("--oracle-dt must be finite and > 0, got {0}")]
    BadOracleDt(f64),
    #[error("cannot list {path}: {source}")]
    Suite { path: PathBuf, source: std::io::Error },
}

/// A finished planning run.
pub struct PlanRun {
    pub scenario: Scenario,
    pub plan: Plan,
    pub summary: Summary,
    pub elapsed: Duration,
}

fn check_dt(dt: f64) -> Result<f64, CliError> {
    if dt.is_finite() && dt > 0.0 {
        Ok(dt)
    } else {
        Err(CliError::BadOracleDt(dt))
    }
}

/// Loads and plans a scenario without writing anything.
pub fn run_scenario(path: &Path, seed: Option<u64>, oracle_dt: Option<f64>) -> Result<PlanRun, CliError> {
    let scenario = Scenario::load(path)?;
    let oracle_dt = oracle_dt.or(scenario.output.oracle_dt).map(check_dt).transpose()?;
    let region = scenario.region()?;
    let cfg = scenario.plan_config(seed);
    let t0 = Instant::now();
    let plan = plan(&region, &scenario.uav, &cfg)?;
    let elapsed = t0.elapsed();
    let summary = Summary::new(&scenario.name, cfg.seed, cfg.n_uav, cfg.e_bound, &plan, &scenario.uav, oracle_dt);
    Ok(PlanRun { scenario, plan, summary, elapsed })
}

pub fn cmd_plan(scenario: &Path, out: &Path, seed: Option<u64>, oracle_dt: Option<f64>) -> Result<PlanRun, CliError> {
    let run = run_scenario(scenario, seed, oracle_dt)?;
    let region = run.scenario.region()?;
    write_outputs(
        out,
        &region,
        &run.plan,
        &run.summary,
        &run.scenario.uav,
        run.scenario.origin.as_ref(),
        run.scenario.output.svg,
        run.elapsed,
    )?;
    Ok(run)
}

/// Per-path `(E_fast, E_oracle, relative deviation)` in J.
pub fn estimator_deviations(run: &PlanRun, oracle_dt: f64) -> Vec<(f64, f64, f64)> {
    run.plan
        .paths
        .iter()
        .filter(|p| p.waypoints.len() >= 2)
        .map(|p| {
            let fast = p.energy.energy;
            let oracle = path_energy_oracle(&p.waypoints, &run.scenario.uav, oracle_dt).energy;
            (fast, oracle, (fast - oracle).abs() / oracle)
        })
        .collect()
}

/// Returns whether every deviation is within [`MAX_DEVIATION`].
pub fn cmd_validate(scenario: &Path, seed: Option<u64>, oracle_dt: f64, out: &mut impl Write) -> Result<bool, CliError> {
    let oracle_dt = check_dt(oracle_dt)?;
    let run = run_scenario(scenario, seed, None)?;
    let rows = estimator_deviations(&run, oracle_dt);
    let _ = writeln!(out, "{:>4}  {:>12}  {:>12}  {:>8}", "path", "E_fast[Wh]", "E_oracle[Wh]", "dev[%]");
    let mut ok = true;
    for (i, (fast, oracle, dev)) in rows.iter().enumerate() {
        let flag = if *dev > MAX_DEVIATION { "  FAIL" } else { "" };
        ok &= *dev <= MAX_DEVIATION;
        let _ = writeln!(
            out,
            "{i:>4}  {:>12.3}  {:>12.3}  {:>8.2}{flag}",
            fast / J_PER_WH,
            oracle / J_PER_WH,
            100.0 * dev
        );
    }
    let _ = writeln!(out, "{} paths, {}", rows.len(), if ok { "all within 10%" } else { "deviation above 10%" });
    Ok(ok)
}

/// Scenario files (`*.json`) of a directory in name order.
pub fn suite_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let rd = std::fs::read_dir(dir).map_err(|e| CliError::Suite { path: dir.to_path_buf(), source: e })?;
    let mut files: Vec<PathBuf> = rd
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

/// Writes one CSV row per scenario; failures are recorded in the `status`
/// column and do not stop the run. Returns the number of failures.
pub fn cmd_bench(suite: &Path, seed: Option<u64>, oracle_dt: f64, out: impl Write) -> Result<usize, CliError> {
    let oracle_dt = check_dt(oracle_dt)?;
    let mut w = csv::Writer::from_writer(out);
    let header = ["scenario", "n_uav", "E_o[Wh]", "E_t[Wh]", "length[km]", "t_c[s]", "status"];
    w.write_record(header).map_err(IoError::from)?;
    let mut failures = 0;
    for file in suite_files(suite)? {
        let name = file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let row = match run_scenario(&file, seed, None) {
            Ok(run) => {
                let e_t: f64 = estimator_deviations(&run, oracle_dt).iter().map(|r| r.1).sum();
                vec![
                    name,
                    run.summary.n_uav.to_string(),
                    format!("{:.3}", run.plan.e_tot / J_PER_WH),
                    format!("{:.3}", e_t / J_PER_WH),
                    format!("{:.3}", run.plan.total_length() / 1000.0),
                    format!("{:.3}", run.elapsed.as_secs_f64()),
                    "ok".into(),
                ]
            }
            Err(e) => {
                failures += 1;
                vec![name, String::new(), String::new(), String::new(), String::new(), String::new(), e.to_string()]
            }
        };
        w.write_record(&row).map_err(IoError::from)?;
        w.flush().map_err(|e| IoError::from(csv::Error::from(e)))?;
    }
    Ok(failures)
}

/// Entry point of the binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Plan { scenario, out, seed, oracle_dt } => cmd_plan(&scenario, &out, seed, oracle_dt).map(|run| {
            let s = &run.summary;
            println!(
                "{}: {} paths, E_max {:.2} Wh, E_tot {:.2} Wh, {:.2} km, {:.2} s -> {}",
                s.scenario,
                s.n_paths,
                s.e_max_wh,
                s.e_tot_wh,
                s.total_length_m / 1000.0,
                run.elapsed.as_secs_f64(),
                out.display()
            );
            true
        }),
        Command::Validate { scenario, seed, oracle_dt } => {
            cmd_validate(&scenario, seed, oracle_dt, &mut std::io::stdout())
        }
        Command::Bench { suite, out, seed, oracle_dt } => match out {
            Some(p) => std::fs::File::create(&p)
                .map_err(|e| CliError::Io(IoError::Write { path: p.clone(), source: e }))
                .and_then(|f| cmd_bench(&suite, seed, oracle_dt, f)),
            None => cmd_bench(&suite, seed, oracle_dt, std::io::stdout()),
        }
        .map(|failures| failures == 0),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_subcommands() {
        let c = Cli::try_parse_from(["covplan", "plan", "s.json", "--seed", "3", "--out", "o", "--oracle-dt", "0.02"]).unwrap();
        match c.command {
            Command::Plan { seed, out, oracle_dt, .. } => {
                assert_eq!(seed, Some(3));
                assert_eq!(out, PathBuf::from("o"));
                assert_eq!(oracle_dt, Some(0.02));
            }
            _ => panic!(),
        }
        assert!(Cli::try_parse_from(["covplan", "validate", "s.json", "--oracle-dt", "0.1"]).is_ok());
        assert!(Cli::try_parse_from(["covplan", "bench", "dir", "--out", "b.csv"]).is_ok());
        assert!(Cli::try_parse_from(["covplan", "fly"]).is_err());
    }

    #[test]
    fn rejects_bad_dt() {
        assert!(check_dt(0.0).is_err());
        assert!(check_dt(f64::NAN).is_err());
        assert_eq!(check_dt(0.05).unwrap(), 0.05);
    }
}
