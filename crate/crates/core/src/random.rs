//! Seeded random generation shared by the randomized suites.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Environment variable consulted by [`seed_from_env`].
pub const SEED_ENV: &str = "OPERADLAB_SEED";

/// The seed from `OPERADLAB_SEED`, or `default` when unset or malformed.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var(SEED_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(default)
}

/// An independent stream for instance `k` of a suite seeded with `seed`, so
/// results do not depend on scheduling order.
pub fn rng_for(seed: u64, k: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    rng
}
