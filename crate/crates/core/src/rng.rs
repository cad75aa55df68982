//! Deterministic random streams.
//!
//! Every random draw in the crate goes through a [`ChaCha8Rng`]. A run is
//! identified by a 64-bit seed; independent trajectories of the same run use
//! distinct ChaCha stream ids, so trajectory `i` never depends on how many
//! draws trajectory `j` consumed.

use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

/// Random stream for trajectory `stream` of the run seeded with `seed`.
pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
