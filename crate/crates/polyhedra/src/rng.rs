//! The single deterministic pseudo-random generator used everywhere a seed
//! appears. splitmix64 is fixed so that identical seeds give byte-identical
//! results across platforms and releases.

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// One splitmix64 scrambling round.
pub fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Sequential splitmix64 stream.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform draw in [0,1) with 53 bits of precision.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw in 0..upper (upper = 0 yields 0).
    pub fn next_below(&mut self, upper: usize) -> usize {
        if upper == 0 {
            0
        } else {
            (self.next_u64() % upper as u64) as usize
        }
    }
}

/// Derived seed for independent sub-streams, e.g. per-sample generation.
/// Documented formula: `mix(seed ^ mix(index))`.
pub fn sub_seed(seed: u64, index: u64) -> u64 {
    mix(seed ^ mix(index))
}

/// Stateless coin for a labelled finite set: hashes the seed together with
/// the sorted labels and compares a 53-bit uniform value against `bias`.
/// Membership does not depend on any enclosing truncation, which is what
/// keeps seeded oracles coherent between truncation levels.
pub fn set_coin(seed: u64, labels: &[u32], bias: f64) -> bool {
    let mut h = mix(seed);
    for &v in labels {
        h = mix(h ^ (u64::from(v).wrapping_add(1).wrapping_mul(GOLDEN)));
    }
    ((h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)) < bias
}
