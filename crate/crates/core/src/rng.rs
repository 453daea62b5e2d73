//! Seeded Bernoulli sources for energy arrivals, channel outcomes and
//! version generation.
//!
//! A run is identified by `(seed, run)`. Each run owns four ChaCha8 streams
//! (energy, channel, version, decision) keyed by `4 * run + k`, so a
//! trajectory depends only on its own run index and never on how many other
//! runs are requested.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::params::SystemParams;

/// Per-slot outcomes `e(t)`, `c(t)`, `z(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BernoulliDraws {
    pub energy: bool,
    pub channel: bool,
    pub version: bool,
}

const STREAMS_PER_RUN: u64 = 4;

#[derive(Debug, Clone)]
pub struct RunStreams {
    energy: ChaCha8Rng,
    channel: ChaCha8Rng,
    version: ChaCha8Rng,
    decision: ChaCha8Rng,
}

impl RunStreams {
    pub fn new(seed: u64, run: u64) -> Self {
        let stream = |k: u64| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(run * STREAMS_PER_RUN + k);
            rng
        };
        Self {
            energy: stream(0),
            channel: stream(1),
            version: stream(2),
            decision: stream(3),
        }
    }

    pub fn for_run(params: &SystemParams, run: u64) -> Self {
        Self::new(params.rng_seed(), run)
    }

    /// Stream reserved for randomized policy decisions.
    pub fn decision(&mut self) -> &mut ChaCha8Rng {
        &mut self.decision
    }
}

pub fn draw_slot(streams: &mut RunStreams, params: &SystemParams) -> BernoulliDraws {
    BernoulliDraws {
        energy: streams.energy.random_bool(params.p_energy()),
        channel: streams.channel.random_bool(params.p_success()),
        version: streams.version.random_bool(params.p_generate()),
    }
}
