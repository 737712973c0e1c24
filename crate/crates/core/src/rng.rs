//! Deterministic RNG streams. Every random quantity in a run is drawn from a
//! ChaCha stream whose seed is derived from the master seed and a purpose tag,
//! so selective and baseline runs share initial states and failure draws.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

/// Purpose tags for derived streams.
pub mod stream {
    pub const TOPOLOGY: u64 = 0x746f706f;
    pub const INIT: u64 = 0x696e6974;
    pub const SELECT: u64 = 0x73656c65;
    pub const FAILURE: u64 = 0x6661696c;
    pub const REPLICATE: u64 = 0x7265706c;
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes a seed with a tag and an index into an independent child seed.
pub fn derive_seed(seed: u64, tag: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed ^ splitmix64(tag)) ^ index)
}

pub fn rng_from_seed(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}

pub fn derived_rng(seed: u64, tag: u64, index: u64) -> SimRng {
    rng_from_seed(derive_seed(seed, tag, index))
}
