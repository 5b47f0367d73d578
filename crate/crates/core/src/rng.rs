//! SplitMix64, fixed so that generated benchmark instances are identical on
//! every platform.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform integer on `[1, max]`, rejecting the biased tail of the 64-bit
    /// output range. `max` must be positive.
    pub fn uniform_from_one(&mut self, max: u64) -> u64 {
        assert!(max > 0, "empty range");
        // 2^64 mod max; outputs at or above 2^64 − tail would bias the modulus.
        let tail = (u64::MAX % max + 1) % max;
        let accept_below = 0u64.wrapping_sub(tail);
        loop {
            let v = self.next_u64();
            if tail == 0 || v < accept_below {
                return 1 + v % max;
            }
        }
    }
}
