//! Seeding.
//!
//! Every random draw in the crate comes from a `ChaCha8Rng` (the ChaCha
//! stream cipher reduced to 8 rounds, as implemented by `rand_chacha`).
//! Independent streams are derived from a root seed with the SplitMix64
//! finalizer:
//!
//! ```text
//! derive(seed, stream, index) = mix(mix(seed ^ mix(stream)) ^ index)
//! mix(z) = splitmix64 finalizer of z + 0x9E3779B97F4A7C15
//! ```
//!
//! so a pattern's generator depends only on `(root seed, stream, index)` and
//! never on the order in which patterns are produced.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Stream tags used with [`Seed::derive`].
pub mod stream {
    pub const PATTERN: u64 = 1;
    pub const SHUFFLE: u64 = 2;
    pub const JITTER: u64 = 3;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

impl Seed {
    pub fn derive(self, stream: u64, index: u64) -> Seed {
        Seed(mix(mix(self.0 ^ mix(stream)) ^ index))
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}

fn mix(z: u64) -> u64 {
    let mut z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
