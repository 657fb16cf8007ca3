//! Command-line experiment runner: reads one JSON configuration and writes
//! JSON/CSV results. Agent indices in emitted files are one-based.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::path::PathBuf;

pub use args::{Cli, Command, CommonArgs, OpinionArgs};
pub use config::{Experiment, ExperimentConfig, Z0Spec};
pub use error::CliError;

fn load(args: &CommonArgs) -> Result<(Experiment, PathBuf), CliError> {
    let mut cfg = ExperimentConfig::load(&args.config)?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(steps) = args.max_steps {
        cfg.max_steps = steps;
    }
    if let Some(dir) = &args.output {
        cfg.output_dir = Some(dir.clone());
    }
    let exp = cfg.build()?;
    let out = exp.output_dir();
    Ok((exp, out))
}

/// Runs one subcommand and returns a one-line human summary.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Analyze(args) => {
            let (exp, out) = load(args)?;
            let report = commands::analyze(&exp, &out)?;
            let verdict = report
                .z0
                .as_ref()
                .map(|z| format!(", z0 verdict {:?}", z.nash.verdict))
                .unwrap_or_default();
            Ok(format!(
                "V_min {}, alpha* {}{verdict}; wrote {}",
                report.v_min,
                report.alpha_star,
                out.join("analysis.json").display()
            ))
        }
        Command::Simulate(args) => {
            let (exp, out) = load(args)?;
            let s = commands::simulate(&exp, &out)?;
            Ok(format!(
                "converged after {} steps, alpha_hat {}, on segment: {}",
                s.steps,
                s.alpha_hat.map(|a| a.to_string()).unwrap_or_default(),
                s.zstar_member
            ))
        }
        Command::Sweep(args) => {
            let (exp, out) = load(args)?;
            let agg = commands::sweep(&exp, &out)?;
            let range = agg
                .alpha_hat
                .as_ref()
                .map(|a| format!("alpha_hat in [{}, {}]", a.min, a.max))
                .unwrap_or_default();
            Ok(format!(
                "{} runs, convergence rate {}, {range}",
                agg.runs, agg.convergence_rate
            ))
        }
        Command::Opinions(args) => {
            let (mut exp, out) = load(&args.common)?;
            if let Some(r) = args.replicates {
                if r == 0 {
                    return Err(CliError::config("--replicates", "must be at least 1"));
                }
                exp.config.replicates = Some(r);
            }
            if let Some(t) = args.t_max {
                exp.config.t_max = t;
            }
            commands::opinions(&exp, &out)?;
            Ok(format!("wrote opinions to {}", out.display()))
        }
    }
}
