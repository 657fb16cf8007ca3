use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator used by every randomized routine in the crate.
pub type ExperimentRng = ChaCha8Rng;

/// ChaCha8 keyed by `seed`, positioned on independent stream `stream`.
///
/// Distinct streams of the same seed never overlap, which lets replicate
/// and sweep workers run in parallel without sharing state.
pub fn seeded_rng(seed: u64, stream: u64) -> ExperimentRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
