//! Deterministic fixtures for the benchmarks in `benches/`.

use crowdwise_core::{InfluenceNetwork, NoiseModel, SelfConfidenceProfile};

/// Ring of `n ≥ 3` agents with chords: each agent keeps 0.4 on itself, puts
/// 0.35 on its successor and 0.25 on the agent `n / 3` steps ahead.
pub fn chorded_ring(n: usize) -> InfluenceNetwork {
    assert!(n >= 3, "need at least three agents");
    let hop = (n / 3).max(2);
    let mut rows = vec![vec![0.0; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] += 0.4;
        row[(i + 1) % n] += 0.35;
        row[(i + hop) % n] += 0.25;
    }
    InfluenceNetwork::from_rows(&rows).expect("chorded ring is valid")
}

pub fn varied_noise(n: usize) -> NoiseModel {
    NoiseModel::new(0.0, (0..n).map(|i| 0.5 + 0.1 * (i % 7) as f64).collect())
        .expect("positive variances")
}

/// Interior profile with values spread over `[0.1, 0.8]`.
pub fn spread_profile(n: usize) -> SelfConfidenceProfile {
    SelfConfidenceProfile::new((0..n).map(|i| 0.1 + 0.7 * (i % 5) as f64 / 4.0).collect())
        .expect("values in [0, 1]")
}

/// `spread_profile` with every `k`-th agent stubborn.
pub fn stubborn_every(n: usize, k: usize) -> SelfConfidenceProfile {
    let z = spread_profile(n);
    let v = z
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, &x)| if i % k == 0 { 1.0 } else { x })
        .collect();
    SelfConfidenceProfile::new(v).expect("values in [0, 1]")
}
