//! Deterministic seed derivation.
//!
//! Every randomized operation takes one `u64` master seed. Independent
//! subtasks (polynomial components, trials, pipeline stages) each get their
//! own generator derived as `ChaCha12(SHA-256(seed_le || label))`. Both
//! algorithms are stable published standards, so runs are reproducible
//! across platforms and releases, and subtask streams never alias unless
//! their labels collide.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use sha2::{Digest, Sha256};

/// Derives the generator for one labeled subtask of a seeded operation.
pub fn rng_for(seed: u64, label: &str) -> ChaCha12Rng {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    hasher.update(label.as_bytes());
    let digest: [u8; 32] = hasher.finalize().into();
    ChaCha12Rng::from_seed(digest)
}
