//! Self-confidence adaptation on French-DeGroot opinion dynamics.
//!
//! Agents hold noisy measurements of a common scalar, pool them through
//! `x(t+1) = W(z) x(t)` with `W(z) = (I - [z]) P + [z]`, and each picks its
//! self-confidence `z_i` to minimise the variance of its limiting estimate.
//! The crate computes the limit matrix and variances exactly, the
//! best-response correspondences, the Pareto segment of optimal profiles,
//! Nash classification, and simulates the asynchronous best-response
//! learning dynamics.
//!
//! Agent indices are zero-based throughout the library API.

pub mod dynamics;
pub mod equilibrium;
pub mod error;
pub mod graph;
pub mod instances;
pub mod learning;
pub mod network;
pub mod rng;

#[cfg(test)]
mod testutil;

pub use dynamics::{
    common_cost, estimation_variances, interaction_matrix, limit_matrix, replicate_opinions,
    simulate_opinions, social_power, step, stubborn_set, Branch, LimitMatrix, NoiseKind,
    NoiseModel, OpinionState, ReplicateStats, SelfConfidenceProfile,
};
pub use equilibrium::{
    aggregates, best_response, best_response_detailed, classify_profile, deviation_search,
    pareto_segment, zstar_membership, BestResponseDetail, BestResponseSet, ConditionCheck,
    Deviation, Membership, NashReport, ParetoSegment, Verdict,
};
pub use error::{Error, Result};
pub use graph::{is_directed_ring, Digraph};
pub use learning::{
    br_step, diagnostics, fixed_point_residual, m_diagnostic, run, DiagnosticsReport, RunConfig,
    RunSummary, TrajectoryRecord,
};
pub use network::{InfluenceNetwork, NodeSet, RestrictedGraph};
pub use rng::{seeded_rng, ExperimentRng};
