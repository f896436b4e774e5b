//! Deterministic pseudorandom source used to generate test sections.
//!
//! The generator is the 64-bit linear congruential recurrence
//!
//! ```text
//! state ← state · 6364136223846793005 + 1442695040888963407   (mod 2⁶⁴)
//! ```
//!
//! seeded with `state = seed`. A small integer in `[-r, r]` is produced from
//! the top 32 bits of the new state as `(state >> 32) % (2r + 1) − r`. Any
//! other implementation following these three lines reproduces our streams.

#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

const MUL: u64 = 6_364_136_223_846_793_005;
const INC: u64 = 1_442_695_040_888_963_407;

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(MUL).wrapping_add(INC);
        self.state
    }

    /// Uniform-ish integer in `[-radius, radius]`.
    pub fn small_int(&mut self, radius: u32) -> i128 {
        let span = 2 * u64::from(radius) + 1;
        let hi = self.next_u64() >> 32;
        (hi % span) as i128 - i128::from(radius)
    }
}
