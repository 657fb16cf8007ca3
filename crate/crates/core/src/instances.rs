//! Small reference instances used by tests, benches and the CLI docs.

use crate::dynamics::NoiseModel;
use crate::network::InfluenceNetwork;

/// Four-agent directed network with zero diagonal.
pub fn four_agent_network() -> InfluenceNetwork {
    InfluenceNetwork::from_rows(&four_agent_rows()).expect("valid reference network")
}

pub fn four_agent_rows() -> Vec<Vec<f64>> {
    vec![
        vec![0.0, 0.1, 0.2, 0.7],
        vec![0.25, 0.0, 0.25, 0.5],
        vec![0.5, 0.5, 0.0, 0.0],
        vec![0.2, 0.0, 0.8, 0.0],
    ]
}

/// Variances `(0.32², 0.35², 0.38², 0.29²)`, θ = 0.
pub fn four_agent_noise() -> NoiseModel {
    NoiseModel::new(0.0, four_agent_sigma2()).expect("positive variances")
}

pub fn four_agent_sigma2() -> Vec<f64> {
    [0.32f64, 0.35, 0.38, 0.29].iter().map(|s| s * s).collect()
}

/// Two agents that each split weight evenly, with the given variances.
pub fn symmetric_pair(s1: f64, s2: f64) -> (InfluenceNetwork, NoiseModel) {
    let net =
        InfluenceNetwork::from_rows(&[vec![0.5, 0.5], vec![0.5, 0.5]]).expect("valid pair network");
    (
        net,
        NoiseModel::new(0.0, vec![s1, s2]).expect("positive variances"),
    )
}

/// Undirected 4-cycle `0-1-2-3-0` where every agent splits weight evenly
/// between itself and its two neighbours (the self-loops make it aperiodic).
pub fn lazy_four_cycle() -> InfluenceNetwork {
    let t = 1.0 / 3.0;
    InfluenceNetwork::from_rows(&[
        vec![t, t, 0.0, t],
        vec![t, t, t, 0.0],
        vec![0.0, t, t, t],
        vec![t, 0.0, t, t],
    ])
    .expect("valid lazy cycle")
}
