// SPDX-License-Identifier: Apache-2.0

//! Seed derivation. Every random draw in the crate comes from a ChaCha8
//! stream whose key is derived from a root seed plus a name or a tuple of
//! indices, so results never depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Derives a child seed for the named substream (`"ba"`, `"labels"`, `"init"`, ...).
pub fn derive_seed(root: u64, name: &str) -> u64 {
    let mut h = Sha256::new();
    h.update(root.to_le_bytes());
    h.update(name.as_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest is 32 bytes"))
}

/// A generator keyed by `seed` alone.
pub fn stream(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The counter-based substream for `(seed, key, index)`.
///
/// `seed` and `key` form the 256-bit ChaCha key; `index` selects the stream,
/// so every `(seed, key, index)` triple owns an independent sequence.
pub fn substream(seed: u64, key: u64, index: u64) -> ChaCha8Rng {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    bytes[8..16].copy_from_slice(&key.to_le_bytes());
    bytes[16..24].copy_from_slice(b"cgsrank\0");
    let mut rng = ChaCha8Rng::from_seed(bytes);
    rng.set_stream(index);
    rng
}
