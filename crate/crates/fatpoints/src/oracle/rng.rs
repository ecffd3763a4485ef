//! Counter-based pseudo-random numbers: value i of stream `seed` is a pure
//! function of (seed, i), so reports are replayable from the seed alone.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer over seed + i·golden.
pub fn mix(seed: u64, counter: u64) -> u64 {
    let mut z = seed.wrapping_add(counter.wrapping_mul(GOLDEN)).wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent stream key, for keying sub-tasks off a master seed.
pub fn substream(seed: u64, label: u64) -> u64 {
    mix(seed ^ 0x0057_4552_5241_4E44, label)
}

/// Sequential view over one counter stream.
#[derive(Debug, Clone)]
pub struct Stream {
    seed: u64,
    counter: u64,
}

impl Stream {
    pub fn new(seed: u64) -> Self {
        Stream { seed, counter: 0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        let v = mix(self.seed, self.counter);
        self.counter += 1;
        v
    }

    /// Uniform value in [0, bound) by rejection; bound must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    /// Uniform value in [lo, hi] inclusive.
    pub fn range(&mut self, lo: u64, hi: u64) -> u64 {
        debug_assert!(lo <= hi);
        lo + self.below(hi - lo + 1)
    }
}
