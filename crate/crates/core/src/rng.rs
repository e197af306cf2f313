//! Reproducible random streams.
//!
//! Every random draw in the crate comes from a [`RngSeed`]: a master seed plus a
//! stream index. Two seeds with the same pair produce bit-identical draws on every
//! platform, and distinct stream indices give independent ChaCha streams, so batch
//! runs can be scheduled on any number of threads without changing output.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSeed {
    pub master: u64,
    pub stream: u64,
}

impl RngSeed {
    pub const fn new(master: u64, stream: u64) -> Self {
        Self { master, stream }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master);
        rng.set_stream(self.stream);
        rng
    }

    /// Same stream, different purpose: derives an independent master seed by mixing
    /// `label` into the current one.
    pub fn derive(&self, label: u64) -> Self {
        Self {
            master: splitmix64(self.master ^ splitmix64(label.wrapping_add(0x5851_f42d_4c95_7f2d))),
            stream: self.stream,
        }
    }

    pub fn with_stream(&self, stream: u64) -> Self {
        Self {
            master: self.master,
            stream,
        }
    }
}

impl Default for RngSeed {
    fn default() -> Self {
        Self::new(0, 0)
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn same_seed_same_draws() {
        let a: Vec<u64> = (0..8)
            .map(|_| 0)
            .scan(RngSeed::new(7, 3).rng(), |r, _| Some(r.gen()))
            .collect();
        let b: Vec<u64> = (0..8)
            .map(|_| 0)
            .scan(RngSeed::new(7, 3).rng(), |r, _| Some(r.gen()))
            .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn streams_differ() {
        let x: u64 = RngSeed::new(7, 0).rng().gen();
        let y: u64 = RngSeed::new(7, 1).rng().gen();
        let z: u64 = RngSeed::new(7, 0).derive(1).rng().gen();
        assert_ne!(x, y);
        assert_ne!(x, z);
    }
}
