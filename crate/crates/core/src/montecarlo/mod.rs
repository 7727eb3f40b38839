//! Exact samplers of exit and hitting positions, a walk-on-balls estimator
//! of the sphere hitting probability, and goodness-of-fit tests.

mod oracle;
mod sample;
mod samplers;
mod stats;
mod walk;

pub use oracle::{ball_radial_w_cdf, halfplane_hit_cdf, hit_time_cdf};
pub use sample::{draw_parallel, EmpiricalSample, SampleMeta, CHUNK};
pub use samplers::{sample_ball_exit, sample_ball_exit_center, sample_gamma, sample_halfplane_hit, sample_halfplane_hit_with_time, unit_direction};
pub use stats::{chi2_test, ks_test, kolmogorov_sf, validate_empirical, Chi2Result, GofTest, KsResult, Reference, Validation};
pub use walk::{summarize_walk, walk_on_balls_phi, walk_outcomes, walk_single, WalkConfig, WalkCounts, WalkEstimate, WalkOutcome};

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// Identifies an independent ChaCha20 stream: the seed picks the key and the
/// stream id the nonce, so equal pairs replay the same draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub seed: u64,
    pub stream_id: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        RngStream { seed, stream_id }
    }

    pub fn rng(&self) -> ChaCha20Rng {
        let mut r = ChaCha20Rng::seed_from_u64(self.seed);
        r.set_stream(self.stream_id);
        r
    }
}
