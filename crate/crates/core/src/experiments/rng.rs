/// Identifier of the generator and its float conversion; printed by the CLI.
pub const PRNG_CONTRACT: &str = "splitmix64/top53";

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64. `next_f64` takes the top 53 bits divided by 2^53, giving a
/// uniform double in `[0, 1)`; both are part of the scenario file contract
/// and must stay bit-exact.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// Scenario seed of replicate `replicate` at channel count `n`:
/// the first SplitMix64 output for `base ^ (n * golden) ^ replicate`.
pub fn mix_seed(base: u64, n: usize, replicate: u64) -> u64 {
    SplitMix64::new(base ^ (n as u64).wrapping_mul(GOLDEN_GAMMA) ^ replicate).next_u64()
}
