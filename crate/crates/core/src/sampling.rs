//! Deterministic sampling for the reproducibility harness.

/// Fixed default seed for all sampled suites.
pub const DEFAULT_SEED: u64 = 0xC05E7;

/// SplitMix64: tiny, stable across platforms, good enough for subset
/// sampling at desk scale.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    pub fn next_below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }

    pub fn next_bool(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }

    /// Uniform random subset of {1, .., n-1} (identity excluded).
    pub fn subset_excluding_identity(&mut self, n: usize) -> Vec<usize> {
        (1..n).filter(|_| self.next_bool()).collect()
    }
}
