//! Deterministic 64-bit generator: xorshift64* (shifts 12/25/27, multiplier
//! `0x2545F4914F6CDD1D`), seeded through SplitMix64. Gaussians use the Box–Muller transform.
//!
//! Output is reproducible within a build for a given seed. Independent streams for parallel
//! workers are derived from `(seed, index)`, so results never depend on scheduling.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XorShift64Star {
    state: u64,
    spare: Option<u64>,
}

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        let state = match splitmix64(seed) {
            0 => GOLDEN,
            s => s,
        };
        Self { state, spare: None }
    }

    /// The `index`-th substream of `seed`.
    pub fn stream(seed: u64, index: u64) -> Self {
        Self::new(seed ^ splitmix64(index.wrapping_mul(GOLDEN) ^ 0xD1B5_4A32_D192_ED03))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box–Muller; the second value of each pair is kept for the next call.
    pub fn normal(&mut self) -> f64 {
        if let Some(bits) = self.spare.take() {
            return f64::from_bits(bits);
        }
        let u1 = 1.0 - self.next_f64(); // (0, 1]
        let u2 = self.next_f64();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = 2.0 * std::f64::consts::PI * u2;
        self.spare = Some((radius * angle.sin()).to_bits());
        radius * angle.cos()
    }
}
