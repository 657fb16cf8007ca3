//! Best responses, the Pareto segment and Nash classification.
//!
//! Agent `i` minimises `υ_i(z_i, z_{-i})`. When nobody else is stubborn the
//! cost is the common `V(z)` and the minimiser is unique and closed form.
//! When someone else is stubborn, `H(z)` depends on `z` only through the
//! stubborn set, so the cost takes one value on `[0, 1)` and possibly
//! another at `z_i = 1`; the best response is one of `[0, 1)`, `[0, 1]` or
//! `{1}`.

use serde::{Deserialize, Serialize};

use crate::dynamics::{
    check_dims, check_noise, limit_matrix, variances_from_limit, weighted_sums, NoiseModel,
    SelfConfidenceProfile,
};
use crate::error::{Error, Result};
use crate::graph::is_directed_ring;
use crate::network::InfluenceNetwork;

/// Relative tolerance for comparing the regular and stubborn costs of an
/// agent when somebody else is stubborn.
pub const TIE_TOL: f64 = 1e-12;
/// Absolute tolerance on `|z_i - b|` when checking a point best response.
pub const POINT_TOL: f64 = 1e-9;
/// Absolute tolerance on the `Z*` membership residual.
pub const MEMBERSHIP_TOL: f64 = 1e-9;
/// Slack on `α̂ ≤ α*` in the membership test.
pub const ALPHA_SLACK: f64 = 1e-12;

/// Exact best-response set of one agent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value")]
pub enum BestResponseSet {
    /// `{b}` with `b ∈ [0, 1)`.
    Point(f64),
    /// `[0, 1)`
    HalfOpen01,
    /// `[0, 1]`
    Closed01,
    /// `{1}`
    One,
}

impl BestResponseSet {
    /// Membership with the point case compared up to [`POINT_TOL`].
    pub fn contains(&self, z: f64) -> bool {
        match *self {
            Self::Point(b) => (z - b).abs() <= POINT_TOL,
            Self::HalfOpen01 => (0.0..1.0).contains(&z),
            Self::Closed01 => (0.0..=1.0).contains(&z),
            Self::One => z == 1.0,
        }
    }

    pub fn point(&self) -> Option<f64> {
        match *self {
            Self::Point(b) => Some(b),
            _ => None,
        }
    }
}

/// A best response together with the costs it was derived from.
#[derive(Debug, Clone, PartialEq)]
pub struct BestResponseDetail {
    pub set: BestResponseSet,
    /// Cost for any `z_i < 1`; for a point response, the cost at the point.
    pub regular_cost: f64,
    /// Cost at `z_i = 1`, which is `σ_i²`.
    pub stubborn_cost: f64,
    /// The only stubborn agent reachable from `i` when `i` is regular, if
    /// exactly one is.
    pub sole_reachable_stubborn: Option<usize>,
    /// True when `Closed01` was decided by the exact reachability test
    /// (single reachable stubborn agent with bit-identical variance).
    pub certified: bool,
}

/// `A_k = Σ_{j≠k} π_j/(1-z_j)` and `B_k = Σ_{j≠k} π_j²σ_j²/(1-z_j)²`.
pub fn aggregates(
    net: &InfluenceNetwork,
    noise: &NoiseModel,
    z: &SelfConfidenceProfile,
    k: usize,
) -> Result<(f64, f64)> {
    check_dims(net, z)?;
    check_noise(net, noise)?;
    let others: Vec<usize> = z.stubborn_set().iter().filter(|&j| j != k).collect();
    if !others.is_empty() {
        return Err(Error::StubbornPresent { agents: others });
    }
    Ok(weighted_sums(net, noise, z, Some(k)))
}

/// Best-response set of agent `i` against `z_{-i}` (the entry `z_i` is
/// ignored).
pub fn best_response(
    net: &InfluenceNetwork,
    noise: &NoiseModel,
    z: &SelfConfidenceProfile,
    i: usize,
) -> Result<BestResponseSet> {
    best_response_detailed(net, noise, z, i).map(|d| d.set)
}

pub fn best_response_detailed(
    net: &InfluenceNetwork,
    noise: &NoiseModel,
    z: &SelfConfidenceProfile,
    i: usize,
) -> Result<BestResponseDetail> {
    check_dims(net, z)?;
    check_noise(net, noise)?;
    let pi = net.centrality();
    let s2 = noise.sigma2();
    let stubborn_cost = s2[i];

    if !z.others_stubborn(i) {
        let (a, b) = weighted_sums(net, noise, z, Some(i));
        let value = (1.0 - a * pi[i] * s2[i] / b).max(0.0);
        let at = z.with(i, value)?;
        let (a_all, b_all) = weighted_sums(net, noise, &at, None);
        return Ok(BestResponseDetail {
            set: BestResponseSet::Point(value),
            regular_cost: b_all / (a_all * a_all),
            stubborn_cost,
            sole_reachable_stubborn: None,
            certified: false,
        });
    }

    let regular = z.with(i, 0.0)?;
    let sole = sole_reachable_stubborn(net, &regular, i);
    if let Some(j) = sole {
        if s2[j] == s2[i] {
            return Ok(BestResponseDetail {
                set: BestResponseSet::Closed01,
                regular_cost: s2[j],
                stubborn_cost,
                sole_reachable_stubborn: sole,
                certified: true,
            });
        }
    }

    let lm = limit_matrix(net, &regular)?;
    let s2 = noise.sigma2();
    let regular_cost: f64 = (0..net.n()).map(|j| lm.h[(i, j)].powi(2) * s2[j]).sum();
    let tol = TIE_TOL * stubborn_cost;
    let set = if regular_cost < stubborn_cost - tol {
        BestResponseSet::HalfOpen01
    } else if regular_cost > stubborn_cost + tol {
        BestResponseSet::One
    } else {
        BestResponseSet::Closed01
    };
    Ok(BestResponseDetail {
        set,
        regular_cost,
        stubborn_cost,
        sole_reachable_stubborn: sole,
        certified: false,
    })
}

/// With agent `i` regular, the stubborn agents reachable from `i` in the
/// graph of `W(z)`; returns the agent if there is exactly one.
fn sole_reachable_stubborn(
    net: &InfluenceNetwork,
    z: &SelfConfidenceProfile,
    i: usize,
) -> Option<usize> {
    let stubborn = z.stubborn_set();
    let seen = net.graph().reach_avoiding(i, |v| stubborn.contains(v));
    let mut hits = stubborn.iter().filter(|&j| seen[j]);
    match (hits.next(), hits.next()) {
        (Some(j), None) => Some(j),
        _ => None,
    }
}

/// The Pareto segment `Z* = {1 - α[π]σ² : 0 < α ≤ α*}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParetoSegment {
    /// Inverse-variance weights `μ*_i ∝ σ_i^{-2}`.
    pub mu_star: Vec<f64>,
    /// `(Σ σ_i^{-2})^{-1}`
    pub v_min: f64,
    /// `1 / max_i π_i σ_i²`
    pub alpha_star: f64,
    /// `[π]σ²`, so that `z(α) = 1 - α · direction`.
    pub direction: Vec<f64>,
}

impl ParetoSegment {
    /// `z(α) = 1 - α[π]σ²`, for `α ∈ (0, α*]`.
    pub fn profile(&self, alpha: f64) -> Result<SelfConfidenceProfile> {
        if !(alpha > 0.0 && alpha <= self.alpha_star) {
            return Err(Error::AlphaOutOfRange {
                alpha,
                alpha_star: self.alpha_star,
            });
        }
        SelfConfidenceProfile::new(
            self.direction
                .iter()
                .map(|d| (1.0 - alpha * d).clamp(0.0, 1.0))
                .collect(),
        )
    }
}

pub fn pareto_segment(net: &InfluenceNetwork, noise: &NoiseModel) -> Result<ParetoSegment> {
    check_noise(net, noise)?;
    let precision: Vec<f64> = noise.sigma2().iter().map(|s| 1.0 / s).collect();
    let total: f64 = precision.iter().sum();
    let direction: Vec<f64> = net
        .centrality()
        .iter()
        .zip(noise.sigma2())
        .map(|(p, s)| p * s)
        .collect();
    let max_dir = direction.iter().copied().fold(f64::MIN, f64::max);
    Ok(ParetoSegment {
        mu_star: precision.iter().map(|p| p / total).collect(),
        v_min: 1.0 / total,
        alpha_star: 1.0 / max_dir,
        direction,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Membership {
    pub is_member: bool,
    /// Mean of `(1 - z_i) / (π_i σ_i²)` over agents, capped at `α*`.
    pub alpha_hat: f64,
    /// `max_i |(1 - z_i) - α̂ π_i σ_i²|`
    pub residual: f64,
}

/// Tests `z ∈ Z*` by recovering `α` and checking every coordinate.
pub fn zstar_membership(
    net: &InfluenceNetwork,
    noise: &NoiseModel,
    z: &SelfConfidenceProfile,
) -> Result<Membership> {
    check_dims(net, z)?;
    let seg = pareto_segment(net, noise)?;
    Ok(membership_in(&seg, z))
}

pub(crate) fn membership_in(seg: &ParetoSegment, z: &SelfConfidenceProfile) -> Membership {
    let n = seg.direction.len() as f64;
    let mean_ratio = z
        .as_slice()
        .iter()
        .zip(&seg.direction)
        .map(|(zi, d)| (1.0 - zi) / d)
        .sum::<f64>()
        / n;
    // Profiles at the α* end of the segment have an agent clipped at zero;
    // round-off in the others can push the mean ratio past α*.
    let alpha_hat = mean_ratio.min(seg.alpha_star);
    let residual = z
        .as_slice()
        .iter()
        .zip(&seg.direction)
        .map(|(zi, d)| ((1.0 - zi) - alpha_hat * d).abs())
        .fold(0.0, f64::max);
    Membership {
        is_member: residual <= MEMBERSHIP_TOL
            && alpha_hat > 0.0
            && alpha_hat <= seg.alpha_star + ALPHA_SLACK,
        alpha_hat,
        residual,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Interior profile on the Pareto segment; a strict equilibrium.
    StrictNashInterior,
    /// Boundary profile meeting the sufficient two-stubborn condition.
    NonStrictBoundaryCertified,
    /// Every agent plays a best response, but no structural result covers
    /// the profile.
    NashNumericOnly,
    NotNash,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionCheck {
    pub name: &'static str,
    pub passed: bool,
}

/// Largest cost reduction available to a single agent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Deviation {
    pub agent: usize,
    /// `υ_i(z) - min_{z'_i} υ_i(z'_i, z_{-i})`, never negative beyond
    /// round-off.
    pub gain: f64,
    /// A profitable self-confidence value, `None` when any `z'_i < 1` works.
    pub to: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NashReport {
    pub verdict: Verdict,
    pub alpha_hat: Option<f64>,
    pub certificate: Vec<ConditionCheck>,
    pub max_deviation_gain: Option<f64>,
    pub best_deviation: Option<Deviation>,
}

/// Classifies `z` as a (strict / non-strict) Nash equilibrium or not.
///
/// Interior profiles are decided exactly by `Z*` membership. Boundary
/// profiles must have at least two stubborn agents with identical variances
/// whose restricted graph is a directed ring; a stubborn pair with globally
/// minimal variance is certified. Anything else falls back to checking each
/// agent's best response numerically.
pub fn classify_profile(
    net: &InfluenceNetwork,
    noise: &NoiseModel,
    z: &SelfConfidenceProfile,
) -> Result<NashReport> {
    check_dims(net, z)?;
    check_noise(net, noise)?;
    let stubborn = z.stubborn_set();

    if stubborn.is_empty() {
        let m = zstar_membership(net, noise, z)?;
        let mut certificate = vec![
            ConditionCheck {
                name: "no_stubborn_agents",
                passed: true,
            },
            ConditionCheck {
                name: "on_pareto_segment",
                passed: m.is_member,
            },
        ];
        if m.is_member {
            return Ok(NashReport {
                verdict: Verdict::StrictNashInterior,
                alpha_hat: Some(m.alpha_hat),
                certificate,
                max_deviation_gain: None,
                best_deviation: None,
            });
        }
        let dev = deviation_search(net, noise, z)?;
        certificate.push(ConditionCheck {
            name: "profitable_deviation_found",
            passed: dev.gain > 0.0,
        });
        return Ok(NashReport {
            verdict: Verdict::NotNash,
            alpha_hat: None,
            certificate,
            max_deviation_gain: Some(dev.gain),
            best_deviation: Some(dev),
        });
    }

    let s2 = noise.sigma2();
    let members = stubborn.to_vec();
    let shared = s2[members[0]];
    let at_least_two = members.len() >= 2;
    let equal_variances = members.iter().all(|&j| s2[j] == shared);
    let ring = is_directed_ring(net.restricted_graph(&stubborn).graph());
    let mut certificate = vec![
        ConditionCheck {
            name: "at_least_two_stubborn",
            passed: at_least_two,
        },
        ConditionCheck {
            name: "stubborn_variances_equal",
            passed: equal_variances,
        },
        ConditionCheck {
            name: "stubborn_graph_is_directed_ring",
            passed: ring,
        },
    ];

    if at_least_two && equal_variances && ring {
        let pair_minimal = members.len() == 2 && s2.iter().all(|&v| shared <= v);
        certificate.push(ConditionCheck {
            name: "stubborn_pair_with_minimal_variance",
            passed: pair_minimal,
        });
        if pair_minimal {
            return Ok(NashReport {
                verdict: Verdict::NonStrictBoundaryCertified,
                alpha_hat: None,
                certificate,
                max_deviation_gain: None,
                best_deviation: None,
            });
        }
    }

    let dev = deviation_search(net, noise, z)?;
    let all_best = if at_least_two && equal_variances && ring {
        let mut ok = true;
        for i in 0..net.n() {
            ok &= best_response(net, noise, z, i)?.contains(z.get(i));
        }
        certificate.push(ConditionCheck {
            name: "every_agent_best_responds",
            passed: ok,
        });
        ok
    } else {
        false
    };
    Ok(NashReport {
        verdict: if all_best {
            Verdict::NashNumericOnly
        } else {
            Verdict::NotNash
        },
        alpha_hat: None,
        certificate,
        max_deviation_gain: Some(dev.gain),
        best_deviation: Some(dev),
    })
}

/// Exact unilateral deviation search: each agent's best achievable cost
/// comes from its best-response set, compared with its current cost.
pub fn deviation_search(
    net: &InfluenceNetwork,
    noise: &NoiseModel,
    z: &SelfConfidenceProfile,
) -> Result<Deviation> {
    let current = variances_from_limit(&limit_matrix(net, z)?, noise);
    let mut best = Deviation {
        agent: 0,
        gain: f64::NEG_INFINITY,
        to: None,
    };
    for (i, &now) in current.iter().enumerate() {
        let d = best_response_detailed(net, noise, z, i)?;
        let (cost, to) = match d.set {
            BestResponseSet::Point(b) => (d.regular_cost, Some(b)),
            BestResponseSet::HalfOpen01 => (d.regular_cost, None),
            BestResponseSet::Closed01 => (d.regular_cost.min(d.stubborn_cost), None),
            BestResponseSet::One => (d.stubborn_cost, Some(1.0)),
        };
        let gain = now - cost;
        if gain > best.gain {
            best = Deviation { agent: i, gain, to };
        }
    }
    Ok(best)
}
