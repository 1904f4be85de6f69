//! Seed derivation and the position shuffle shared by both parties.
//!
//! Both parties must derive identical extension layouts from a shared seed, so
//! the shuffle is pinned down completely here rather than delegated to a
//! general-purpose RNG crate whose streams may change between versions.
//!
//! Shuffle `fy-splitmix64-v1`:
//! * generator: SplitMix64, i.e. the `k`-th output (k = 1, 2, ...) is
//!   `mix64(seed + k * 0x9E3779B97F4A7C15)` in wrapping 64-bit arithmetic;
//! * bounded draws in `[0, s)`: Lemire's multiply-shift with rejection;
//! * Fisher–Yates over the identity permutation: for `i = len-1 ..= 1`,
//!   swap `i` with a bounded draw in `[0, i]`.

/// Name of the shuffle algorithm, for logs and interoperability checks.
pub const SHUFFLE_ALGORITHM: &str = "fy-splitmix64-v1";

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent child seed from `parent` for stream `tag`.
///
/// This is the `(tag + 1)`-th SplitMix64 output for `parent`.
#[inline]
pub fn derive_seed(parent: u64, tag: u64) -> u64 {
    mix64(parent.wrapping_add(GOLDEN_GAMMA.wrapping_mul(tag.wrapping_add(1))))
}

/// Counter-based SplitMix64 generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    seed: u64,
    counter: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { seed, counter: 0 }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix64(
            self.seed
                .wrapping_add(GOLDEN_GAMMA.wrapping_mul(self.counter)),
        )
    }

    /// Uniform draw from `[0, bound)`. `bound` must be nonzero.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        let mut m = u128::from(self.next_u64()) * u128::from(bound);
        let mut low = m as u64;
        if low < bound {
            let threshold = bound.wrapping_neg() % bound;
            while low < threshold {
                m = u128::from(self.next_u64()) * u128::from(bound);
                low = m as u64;
            }
        }
        (m >> 64) as u64
    }
}

/// Seeded permutation of `0..len` using the `fy-splitmix64-v1` shuffle.
pub fn shuffled_indices(len: usize, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..len).collect();
    let mut gen = SplitMix64::new(seed);
    for i in (1..len).rev() {
        let j = gen.next_below(i as u64 + 1) as usize;
        perm.swap(i, j);
    }
    perm
}
