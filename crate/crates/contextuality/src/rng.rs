//! Deterministic pseudo-random number generation for the solver.
//!
//! Two tiny, well-known generators: SplitMix64 for seed expansion and
//! xoshiro256** for the search streams. Restart streams are derived from a
//! single master seed by a fixed mixing function, so a run is reproducible
//! bit-for-bit regardless of how restarts are scheduled across threads.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer: a 64-bit permutation mixing all input bits.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// SplitMix64 sequence generator, used only to expand seeds.
#[derive(Clone, Debug)]
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(GOLDEN_GAMMA);
        mix64(self.0)
    }
}

/// Seed of the `index`-th restart stream under a master seed:
/// `mix64(master + (index + 1)·γ)` with γ the SplitMix64 increment.
/// Distinct indices map to distinct SplitMix64 states, giving independent
/// streams for any index order.
pub fn derive_restart_seed(master_seed: u64, index: u32) -> u64 {
    mix64(master_seed.wrapping_add(u64::from(index).wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

/// xoshiro256** generator (Blackman & Vigna), state seeded via SplitMix64.
#[derive(Clone, Debug)]
pub struct Xoshiro256 {
    s: [u64; 4],
}

impl Xoshiro256 {
    pub fn from_seed(seed: u64) -> Self {
        let mut sm = SplitMix64(seed);
        let s = [sm.next_u64(), sm.next_u64(), sm.next_u64(), sm.next_u64()];
        debug_assert!(s.iter().any(|&w| w != 0));
        Xoshiro256 { s }
    }

    pub fn next_u64(&mut self) -> u64 {
        let result = self.s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    /// Uniform draw from [0, 1): the top 53 bits scaled by 2⁻⁵³.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
