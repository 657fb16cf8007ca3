use std::path::Path;

use crowdwise_core::{
    best_response, classify_profile, common_cost, estimation_variances, pareto_segment,
    replicate_opinions, run, simulate_opinions, zstar_membership, BestResponseSet, ConditionCheck,
    Membership, RunSummary, SelfConfidenceProfile, Verdict,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Experiment;
use crate::error::CliError;
use crate::output::{ensure_dir, float, opt_float, write_json, CsvOut};

/// Environment variable capping the sweep's worker threads.
pub const THREADS_ENV: &str = "CROWDWISE_THREADS";

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub centrality: Vec<f64>,
    pub mu_star: Vec<f64>,
    pub v_min: f64,
    pub alpha_star: f64,
    /// `[π]σ²`
    pub direction: Vec<f64>,
    pub z0: Option<ProfileReport>,
}

#[derive(Debug, Serialize)]
pub struct ProfileReport {
    pub z: Vec<f64>,
    /// One-based.
    pub stubborn_agents: Vec<usize>,
    pub estimation_variances: Vec<f64>,
    pub common_cost: Option<f64>,
    pub zstar_membership: Option<Membership>,
    pub best_responses: Vec<AgentResponse>,
    pub nash: NashSummary,
}

#[derive(Debug, Serialize)]
pub struct AgentResponse {
    pub agent: usize,
    pub response: BestResponseSet,
}

#[derive(Debug, Serialize)]
pub struct NashSummary {
    pub verdict: Verdict,
    pub alpha_hat: Option<f64>,
    pub certificate: Vec<ConditionCheck>,
    pub max_deviation_gain: Option<f64>,
    pub best_deviation: Option<DeviationSummary>,
}

#[derive(Debug, Serialize)]
pub struct DeviationSummary {
    /// One-based.
    pub agent: usize,
    pub gain: f64,
    pub to: Option<f64>,
}

pub fn analyze(exp: &Experiment, out_dir: &Path) -> Result<AnalysisReport, CliError> {
    let seg = pareto_segment(&exp.net, &exp.noise)?;
    let z0 = exp
        .z0
        .as_ref()
        .map(|z| profile_report(exp, z))
        .transpose()?;
    let report = AnalysisReport {
        n: exp.net.n(),
        centrality: exp.net.centrality().iter().copied().collect(),
        mu_star: seg.mu_star,
        v_min: seg.v_min,
        alpha_star: seg.alpha_star,
        direction: seg.direction,
        z0,
    };
    ensure_dir(out_dir)?;
    write_json(&out_dir.join("analysis.json"), &report)?;
    Ok(report)
}

fn profile_report(exp: &Experiment, z: &SelfConfidenceProfile) -> Result<ProfileReport, CliError> {
    let (net, noise) = (&exp.net, &exp.noise);
    let interior = !z.has_stubborn();
    let nash = classify_profile(net, noise, z)?;
    let best_responses = (0..net.n())
        .map(|i| {
            Ok(AgentResponse {
                agent: i + 1,
                response: best_response(net, noise, z, i)?,
            })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(ProfileReport {
        z: z.as_slice().to_vec(),
        stubborn_agents: z.stubborn_set().iter().map(|i| i + 1).collect(),
        estimation_variances: estimation_variances(net, z, noise)?,
        common_cost: interior.then(|| common_cost(net, z, noise)).transpose()?,
        zstar_membership: interior
            .then(|| zstar_membership(net, noise, z))
            .transpose()?,
        best_responses,
        nash: NashSummary {
            verdict: nash.verdict,
            alpha_hat: nash.alpha_hat,
            certificate: nash.certificate,
            max_deviation_gain: nash.max_deviation_gain,
            best_deviation: nash.best_deviation.map(|d| DeviationSummary {
                agent: d.agent + 1,
                gain: d.gain,
                to: d.to,
            }),
        },
    })
}

/// Writes `trajectory.csv` and `summary.json`. A run that hits `max_steps`
/// still writes both files before reporting `NotConverged`.
pub fn simulate(exp: &Experiment, out_dir: &Path) -> Result<RunSummary, CliError> {
    let cfg = exp.run_config(exp.config.seed)?;
    let (summary, trajectory) = run(&exp.net, &exp.noise, &cfg)?;
    ensure_dir(out_dir)?;

    let n = exp.net.n();
    let header = ["t".to_string(), "active_agent".to_string()]
        .into_iter()
        .chain((1..=n).map(|i| format!("z_{i}")))
        .chain(["V".to_string(), "M".to_string()]);
    let mut csv = CsvOut::create(&out_dir.join("trajectory.csv"), header)?;
    for rec in &trajectory {
        let fields = [
            rec.t.to_string(),
            rec.active_agent
                .map(|k| (k + 1).to_string())
                .unwrap_or_default(),
        ]
        .into_iter()
        .chain(rec.z.iter().map(|&v| float(v)))
        .chain([opt_float(rec.v), opt_float(rec.m)]);
        csv.row(fields)?;
    }
    csv.finish()?;
    write_json(&out_dir.join("summary.json"), &summary)?;

    if !summary.converged {
        return Err(CliError::NotConverged(format!(
            "no fixed point after {} steps",
            summary.steps
        )));
    }
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaStats {
    pub min: f64,
    pub mean: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepAggregate {
    pub runs: usize,
    pub converged: usize,
    pub convergence_rate: f64,
    pub zstar_members: usize,
    pub alpha_star: f64,
    /// Over converged runs.
    pub alpha_hat: Option<AlphaStats>,
    pub max_fixed_point_residual: Option<f64>,
    pub max_membership_residual: f64,
    pub seeds: Vec<u64>,
}

fn thread_cap() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(k) if k > 0 => Ok(Some(k)),
            _ => Err(CliError::config(
                THREADS_ENV,
                format!("{s:?} is not a positive integer"),
            )),
        },
    }
}

/// Runs every seed (in parallel), then writes one summary per run under
/// `runs/` and `aggregate.json`.
pub fn sweep(exp: &Experiment, out_dir: &Path) -> Result<SweepAggregate, CliError> {
    let seeds = match &exp.config.seeds {
        Some(s) if !s.is_empty() => s.clone(),
        _ => {
            return Err(CliError::config(
                "seeds",
                "sweep needs a nonempty list of seeds",
            ))
        }
    };
    let configs = seeds
        .iter()
        .map(|&s| {
            let mut cfg = exp.run_config(s)?;
            cfg.record_every = u64::MAX;
            Ok(cfg)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let alpha_star = pareto_segment(&exp.net, &exp.noise)?.alpha_star;

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(k) = thread_cap()? {
        pool = pool.num_threads(k);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::io("thread pool", std::io::Error::other(e)))?;
    let results: Vec<_> = pool.install(|| {
        configs
            .par_iter()
            .map(|cfg| run(&exp.net, &exp.noise, cfg).map(|(summary, _)| summary))
            .collect()
    });
    let summaries = results.into_iter().collect::<Result<Vec<_>, _>>()?;

    let runs_dir = out_dir.join("runs");
    ensure_dir(&runs_dir)?;
    let width = seeds.len().to_string().len();
    for (k, s) in summaries.iter().enumerate() {
        let name = format!("run_{:0width$}_seed_{}.json", k + 1, s.seed);
        write_json(&runs_dir.join(name), s)?;
    }

    let alphas: Vec<f64> = summaries
        .iter()
        .filter(|s| s.converged)
        .filter_map(|s| s.alpha_hat)
        .collect();
    let converged = summaries.iter().filter(|s| s.converged).count();
    let aggregate = SweepAggregate {
        runs: summaries.len(),
        converged,
        convergence_rate: converged as f64 / summaries.len() as f64,
        zstar_members: summaries.iter().filter(|s| s.zstar_member).count(),
        alpha_star,
        alpha_hat: (!alphas.is_empty()).then(|| AlphaStats {
            min: alphas.iter().copied().fold(f64::INFINITY, f64::min),
            mean: alphas.iter().sum::<f64>() / alphas.len() as f64,
            max: alphas.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }),
        max_fixed_point_residual: summaries
            .iter()
            .filter_map(|s| s.fixed_point_residual)
            .reduce(f64::max),
        max_membership_residual: summaries
            .iter()
            .map(|s| s.membership_residual)
            .fold(0.0, f64::max),
        seeds,
    };
    write_json(&out_dir.join("aggregate.json"), &aggregate)?;

    if converged < summaries.len() {
        return Err(CliError::NotConverged(format!(
            "{} of {} runs did not reach a fixed point",
            summaries.len() - converged,
            summaries.len()
        )));
    }
    Ok(aggregate)
}

/// Writes `opinions.csv` for one noise draw and, when `replicates` is set,
/// `opinion_variances.csv` comparing the spread of `x(t_max)` with `υ(z)`.
/// Uses `z0` if given, otherwise the zero profile.
pub fn opinions(exp: &Experiment, out_dir: &Path) -> Result<(), CliError> {
    let n = exp.net.n();
    let z = exp
        .z0
        .clone()
        .unwrap_or_else(|| SelfConfidenceProfile::zeros(n));
    let seed = exp.config.seed;
    let t_max = exp.config.t_max;
    let states = simulate_opinions(&exp.net, &z, &exp.noise, seed, t_max)?;
    ensure_dir(out_dir)?;

    let header = std::iter::once("t".to_string()).chain((1..=n).map(|i| format!("x_{i}")));
    let mut csv = CsvOut::create(&out_dir.join("opinions.csv"), header)?;
    for s in &states {
        csv.row(std::iter::once(s.t.to_string()).chain(s.x.iter().map(|&v| float(v))))?;
    }
    csv.finish()?;

    if let Some(r) = exp.config.replicates {
        let stats = replicate_opinions(&exp.net, &z, &exp.noise, seed, t_max, r)?;
        let mut csv = CsvOut::create(
            &out_dir.join("opinion_variances.csv"),
            [
                "agent",
                "predicted_variance",
                "empirical_variance",
                "standard_error",
                "mean_error",
            ],
        )?;
        for i in 0..n {
            csv.row([
                (i + 1).to_string(),
                float(stats.predicted_variance[i]),
                float(stats.empirical_variance[i]),
                float(stats.standard_error[i]),
                float(stats.mean_error[i]),
            ])?;
        }
        csv.finish()?;
    }
    Ok(())
}
