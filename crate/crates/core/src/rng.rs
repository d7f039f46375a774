//! Deterministic pseudo-random numbers for chain simulation.
//!
//! The generator is SplitMix64 (Steele, Lea & Flood's `splitmix64` finalizer,
//! the same mixing constants used by `java.util.SplittableRandom`). The
//! algorithm identity is part of this repository's contract: simulation
//! frequencies are reproducible bit-for-bit across platforms given the same
//! seed, step count and burn-in.

/// SplitMix64 generator with splittable independent streams.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Derives an independent stream seeded from this one.
    pub fn split(&mut self) -> SplitMix64 {
        SplitMix64::new(self.next_u64())
    }

    /// Uniform index in `0..n` by the rejection-free multiply-shift method.
    /// The bias is at most `n / 2^64`, far below anything observable at the
    /// step counts used here, and the method is deterministic.
    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }
}
