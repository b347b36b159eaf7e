//! Seeding and uniform sampling for the benchmark protocol.
//!
//! Every generated polynomial gets its own generator, seeded from the master
//! seed and its (m, n, index) coordinates through the SplitMix64 finalizer:
//!
//! ```text
//! seed = mix(mix(mix(mix(master) ^ m) ^ n) ^ index)
//! mix(z) = splitmix64 step: z += 0x9E3779B97F4A7C15, then the two
//!          xor-shift-multiply rounds and a final xor-shift
//! ```
//!
//! The stream itself is ChaCha8 (`rand_chacha`), whose output is fixed for a
//! given 32-byte key; the key is the little-endian seed repeated four times
//! after successive SplitMix64 steps. Reals are drawn as
//! `(next_u64 >> 11) * 2^-53`, so every value in `[0, 1)` is a multiple of
//! `2^-53`.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn splitmix64(z: u64) -> u64 {
    let mut z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for polynomial `index` of cell `(m, n)`.
pub fn poly_seed(master_seed: u64, m: usize, n: usize, index: usize) -> u64 {
    let h = splitmix64(master_seed);
    let h = splitmix64(h ^ m as u64);
    let h = splitmix64(h ^ n as u64);
    splitmix64(h ^ index as u64)
}

pub struct BenchRng(ChaCha8Rng);

impl BenchRng {
    pub fn from_seed(seed: u64) -> Self {
        let mut key = [0u8; 32];
        let mut s = seed;
        for chunk in key.chunks_exact_mut(8) {
            s = splitmix64(s);
            chunk.copy_from_slice(&s.to_le_bytes());
        }
        BenchRng(ChaCha8Rng::from_seed(key))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `(0, 1]`.
    pub fn unit_open_closed(&mut self) -> f64 {
        1.0 - self.unit()
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }
}
