use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "crowdwise",
    version,
    about = "Self-confidence adaptation experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Centrality, Pareto segment and (if z0 is given) Nash report.
    Analyze(CommonArgs),
    /// One best-response learning run: trajectory.csv and summary.json.
    Simulate(CommonArgs),
    /// Learning runs for every seed in `seeds`, in parallel.
    Sweep(CommonArgs),
    /// Opinion trajectory for one noise draw, optionally replicated.
    Opinions(OpinionArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Experiment configuration (JSON).
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
    /// Overrides `seed` from the config.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Overrides `output_dir` from the config.
    #[arg(long, value_name = "DIR")]
    pub output: Option<PathBuf>,
    /// Overrides `max_steps` from the config.
    #[arg(long)]
    pub max_steps: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct OpinionArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Overrides `replicates` from the config.
    #[arg(long)]
    pub replicates: Option<u64>,
    /// Overrides `t_max` from the config.
    #[arg(long)]
    pub t_max: Option<u64>,
}
