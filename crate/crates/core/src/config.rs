/// Run configuration shared by every sampled or exhaustive check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub seed: u64,
    /// Samples per sampled clause.
    pub samples: usize,
    /// Tail coordinates are drawn from `[-bound, bound]`.
    pub bound: i64,
    /// Sample loops are split across this many threads.  Reports do not
    /// depend on it.
    pub workers: usize,
    pub caps: Caps,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 1,
            samples: 1000,
            bound: 25,
            workers: 1,
            caps: Caps::default(),
        }
    }
}

impl Config {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }
}

/// Size limits for the finite oracle.  Exceeding one yields an explicit
/// cap-exceeded verdict instead of a truncated search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest algebra accepted by the finite commands.
    pub finite_size: usize,
    /// Largest algebra for which ideals are enumerated by brute force over
    /// all subsets (above it, principal generation is used).
    pub subset_enumeration: usize,
    /// Largest algebra for which subalgebra complements are searched.
    pub complement_size: usize,
    /// Largest algebra for the four-interpolant RDP₂ search.
    pub rdp_size: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            finite_size: 64,
            subset_enumeration: 12,
            complement_size: 16,
            rdp_size: 36,
        }
    }
}
