//! Randomized asynchronous best-response dynamics.
//!
//! At every step one agent is activated uniformly at random and replaces its
//! self-confidence by a value drawn uniformly from its best-response set; the
//! other agents keep theirs. Each step consumes the generator in a fixed
//! order: one draw for the activated agent, then one draw for the new value
//! only when the best-response set is an interval.
//!
//! Once no agent is stubborn (the entry time `T`) every best response is a
//! point in `[0, 1)`, so stubbornness never returns, and
//! `M(t) = max_j π_jσ_j²/(1 - z_j(t))` and `V(z(t))` are non-increasing.
//! Consequently `z_j(t) ≤ 1 - π_jσ_j²/M(T)` for `t ≥ T`.
//!
//! Note that this bound is stated relative to `M(T)`, not `M(0)`: before the
//! entry time `M` is not monotone and `M(0)` can be infinite.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dynamics::{check_dims, check_noise, weighted_sums, NoiseModel, SelfConfidenceProfile};
use crate::equilibrium::{best_response, membership_in, pareto_segment, BestResponseSet};
use crate::error::{Error, Result};
use crate::network::InfluenceNetwork;
use crate::rng::seeded_rng;

/// Slack used by the monotonicity and a-priori bound checks. Monotonicity
/// of `M` and `V` is checked with slack `MONOTONE_TOL * max(1, previous)`.
pub const MONOTONE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub z0: SelfConfidenceProfile,
    pub max_steps: u64,
    /// Fixed point reached once every `|z_i - b_i| ≤ tol_fp`.
    pub tol_fp: f64,
    /// Keep every `record_every`-th state (the initial and final states are
    /// always kept).
    pub record_every: u64,
}

impl RunConfig {
    pub fn new(seed: u64, z0: SelfConfidenceProfile) -> Self {
        Self {
            seed,
            z0,
            max_steps: 1_000_000,
            tol_fp: 1e-10,
            record_every: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub t: u64,
    /// Agent updated at step `t`; `None` for the initial state.
    pub active_agent: Option<usize>,
    pub z: Vec<f64>,
    /// Common cost, present iff nobody is stubborn.
    pub v: Option<f64>,
    /// `max_j π_jσ_j²/(1 - z_j)`, present iff nobody is stubborn.
    pub m: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub seed: u64,
    /// A fixed point of the best-response map was reached.
    pub converged: bool,
    pub steps: u64,
    /// First step from which no agent is stubborn.
    pub entry_time: Option<u64>,
    /// Recovered `α` of the final profile, present iff converged.
    pub alpha_hat: Option<f64>,
    pub zstar_member: bool,
    pub membership_residual: f64,
    /// `max_i |z_i - b_i|` at the final profile, when all best responses are
    /// points.
    pub fixed_point_residual: Option<f64>,
    pub final_z: Vec<f64>,
    pub m_entry: Option<f64>,
    pub apriori_bound_ok: bool,
}

/// `M(z) = max_j π_jσ_j²/(1 - z_j)`; infinite if someone is stubborn.
pub fn m_diagnostic(net: &InfluenceNetwork, noise: &NoiseModel, z: &[f64]) -> f64 {
    net.centrality()
        .iter()
        .zip(noise.sigma2())
        .zip(z)
        .map(|((p, s), zj)| {
            if *zj == 1.0 {
                f64::INFINITY
            } else {
                p * s / (1.0 - zj)
            }
        })
        .fold(0.0, f64::max)
}

fn interior_cost(
    net: &InfluenceNetwork,
    noise: &NoiseModel,
    z: &SelfConfidenceProfile,
) -> Option<f64> {
    (!z.has_stubborn()).then(|| {
        let (a, b) = weighted_sums(net, noise, z, None);
        b / (a * a)
    })
}

/// One asynchronous best-response update. Returns the new profile and the
/// (zero-based) activated agent.
pub fn br_step<R: Rng + ?Sized>(
    net: &InfluenceNetwork,
    noise: &NoiseModel,
    z: &SelfConfidenceProfile,
    rng: &mut R,
) -> Result<(SelfConfidenceProfile, usize)> {
    let k = rng.random_range(0..net.n());
    let value = match best_response(net, noise, z, k)? {
        BestResponseSet::Point(b) => b,
        BestResponseSet::HalfOpen01 => rng.random::<f64>(),
        BestResponseSet::Closed01 => rng.random_range(0.0..=1.0),
        BestResponseSet::One => 1.0,
    };
    let mut next = z.clone();
    next.set(k, value);
    Ok((next, k))
}

/// `max_i |z_i - b_i|` if every best response is a point.
pub fn fixed_point_residual(
    net: &InfluenceNetwork,
    noise: &NoiseModel,
    z: &SelfConfidenceProfile,
) -> Result<Option<f64>> {
    if z.has_stubborn() {
        return Ok(None);
    }
    let mut worst = 0.0f64;
    for i in 0..net.n() {
        match best_response(net, noise, z, i)? {
            BestResponseSet::Point(b) => worst = worst.max((z.get(i) - b).abs()),
            _ => return Ok(None),
        }
    }
    Ok(Some(worst))
}

fn record(
    net: &InfluenceNetwork,
    noise: &NoiseModel,
    t: u64,
    active_agent: Option<usize>,
    z: &SelfConfidenceProfile,
) -> TrajectoryRecord {
    let v = interior_cost(net, noise, z);
    TrajectoryRecord {
        t,
        active_agent,
        z: z.as_slice().to_vec(),
        v,
        m: v.map(|_| m_diagnostic(net, noise, z.as_slice())),
    }
}

/// Runs the dynamics from `cfg.z0` until a fixed point or `cfg.max_steps`.
///
/// Hitting `max_steps` is not an error: the summary reports
/// `converged = false`.
pub fn run(
    net: &InfluenceNetwork,
    noise: &NoiseModel,
    cfg: &RunConfig,
) -> Result<(RunSummary, Vec<TrajectoryRecord>)> {
    check_dims(net, &cfg.z0)?;
    check_noise(net, noise)?;
    if cfg.max_steps == 0 {
        return Err(Error::Empty("max_steps"));
    }
    if cfg.tol_fp.is_nan() || cfg.tol_fp <= 0.0 {
        return Err(Error::Empty("tol_fp"));
    }
    let stride = cfg.record_every.max(1);
    let segment = pareto_segment(net, noise)?;
    let bound_dir = &segment.direction;

    let mut rng = seeded_rng(cfg.seed, 0);
    let mut z = cfg.z0.clone();
    let mut trajectory = vec![record(net, noise, 0, None, &z)];
    let mut entry_time = (!z.has_stubborn()).then_some(0);
    let mut m_entry = entry_time.map(|_| m_diagnostic(net, noise, z.as_slice()));
    let mut bound_ok = true;
    let mut residual = fixed_point_residual(net, noise, &z)?;
    let mut t = 0u64;

    let fixed = |r: Option<f64>| r.is_some_and(|r| r <= cfg.tol_fp);
    while !fixed(residual) && t < cfg.max_steps {
        let (next, k) = br_step(net, noise, &z, &mut rng)?;
        z = next;
        t += 1;

        if z.has_stubborn() {
            if entry_time.is_some() {
                return Err(Error::DiagnosticViolation {
                    step: t,
                    check: "no_stubborn_after_entry",
                });
            }
        } else if entry_time.is_none() {
            entry_time = Some(t);
            m_entry = Some(m_diagnostic(net, noise, z.as_slice()));
        }
        if let Some(m0) = m_entry {
            bound_ok &= z
                .as_slice()
                .iter()
                .zip(bound_dir)
                .all(|(zj, d)| *zj <= 1.0 - d / m0 + MONOTONE_TOL);
        }

        residual = fixed_point_residual(net, noise, &z)?;
        if t.is_multiple_of(stride) || fixed(residual) || t == cfg.max_steps {
            trajectory.push(record(net, noise, t, Some(k), &z));
        }
    }

    let converged = fixed(residual);
    let membership = membership_in(&segment, &z);
    let summary = RunSummary {
        seed: cfg.seed,
        converged,
        steps: t,
        entry_time,
        alpha_hat: converged.then_some(membership.alpha_hat),
        zstar_member: membership.is_member,
        membership_residual: membership.residual,
        fixed_point_residual: residual,
        final_z: z.as_slice().to_vec(),
        m_entry,
        apriori_bound_ok: bound_ok,
    };
    Ok((summary, trajectory))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagnosticsReport {
    /// Time of the first recorded state with no stubborn agent.
    pub entry_time: Option<u64>,
    pub m_entry: Option<f64>,
    /// Number of recorded post-entry transitions checked.
    pub checked_transitions: usize,
    pub m_final: Option<f64>,
    pub v_final: Option<f64>,
}

/// Re-derives `M` and `V` from the recorded profiles and checks that after
/// the first stubborn-free record: stubbornness never returns, `M` and `V`
/// are non-increasing, and every coordinate respects the bound
/// `z_j ≤ 1 - π_jσ_j²/M(entry)`.
pub fn diagnostics(
    net: &InfluenceNetwork,
    noise: &NoiseModel,
    trajectory: &[TrajectoryRecord],
) -> Result<DiagnosticsReport> {
    if trajectory.is_empty() {
        return Err(Error::Empty("trajectory"));
    }
    check_noise(net, noise)?;
    let direction: Vec<f64> = net
        .centrality()
        .iter()
        .zip(noise.sigma2())
        .map(|(p, s)| p * s)
        .collect();

    let mut entry: Option<(u64, f64)> = None;
    let mut prev: Option<(f64, f64)> = None;
    let mut checked = 0;
    for rec in trajectory {
        let z = SelfConfidenceProfile::new(rec.z.clone())?;
        check_dims(net, &z)?;
        let stubborn = z.has_stubborn();
        if entry.is_some() && stubborn {
            return Err(Error::DiagnosticViolation {
                step: rec.t,
                check: "stubborn_reactivated",
            });
        }
        if stubborn {
            continue;
        }
        let m = m_diagnostic(net, noise, z.as_slice());
        let v = interior_cost(net, noise, &z).expect("no stubborn agents");
        let (_, m0) = *entry.get_or_insert((rec.t, m));

        if rec
            .z
            .iter()
            .zip(&direction)
            .any(|(zj, d)| *zj > 1.0 - d / m0 + MONOTONE_TOL)
        {
            return Err(Error::DiagnosticViolation {
                step: rec.t,
                check: "apriori_bound",
            });
        }
        if let Some((m_prev, v_prev)) = prev {
            if m > m_prev + MONOTONE_TOL * m_prev.max(1.0) {
                return Err(Error::DiagnosticViolation {
                    step: rec.t,
                    check: "m_non_increasing",
                });
            }
            if v > v_prev + MONOTONE_TOL * v_prev.max(1.0) {
                return Err(Error::DiagnosticViolation {
                    step: rec.t,
                    check: "v_non_increasing",
                });
            }
            checked += 1;
        }
        prev = Some((m, v));
    }

    Ok(DiagnosticsReport {
        entry_time: entry.map(|(t, _)| t),
        m_entry: entry.map(|(_, m)| m),
        checked_transitions: checked,
        m_final: prev.map(|(m, _)| m),
        v_final: prev.map(|(_, v)| v),
    })
}
