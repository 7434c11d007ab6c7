//! Seeded, hierarchically splittable random streams.
//!
//! Every simulation draws from a [`RandomStream`]. Child streams are derived
//! from the parent's seed and a child index only, never from how much of the
//! parent has been consumed, so a replication's draws are fixed by
//! `(seed, replication, arm)` alone.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct RandomStream {
    seed: u64,
    rng: ChaCha8Rng,
}

const SPLIT_SALT: u64 = 0x6a09_e667_f3bc_c909;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Derives the `index`-th child stream. Depends only on `(self.seed, index)`.
    pub fn split(&self, index: u64) -> RandomStream {
        let child = splitmix64(splitmix64(self.seed ^ SPLIT_SALT) ^ splitmix64(index));
        RandomStream::new(child)
    }

    /// Stream for replication `rep` of an experiment rooted at this stream.
    pub fn replication(&self, rep: u64) -> RandomStream {
        self.split(rep)
    }

    /// Per-arm stream inside a replication stream.
    pub fn arm(&self, arm: usize) -> RandomStream {
        self.split(arm as u64)
    }

    /// Uniform draw in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        // 53 random mantissa bits.
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

impl RngCore for RandomStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_seeds_give_equal_sequences() {
        let mut a = RandomStream::new(42);
        let mut b = RandomStream::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn split_ignores_consumed_state() {
        let fresh = RandomStream::new(9);
        let mut used = RandomStream::new(9);
        for _ in 0..17 {
            used.next_u64();
        }
        let mut c1 = fresh.split(3);
        let mut c2 = used.split(3);
        assert_eq!(c1.next_u64(), c2.next_u64());
    }

    #[test]
    fn children_differ() {
        let root = RandomStream::new(1);
        let mut a = root.split(0);
        let mut b = root.split(1);
        assert_ne!(a.next_u64(), b.next_u64());
        assert_ne!(root.split(0).seed(), root.seed());
    }

    #[test]
    fn uniform_in_unit_interval() {
        let mut s = RandomStream::new(5);
        for _ in 0..10_000 {
            let u = s.uniform();
            assert!((0.0..1.0).contains(&u));
        }
    }
}
