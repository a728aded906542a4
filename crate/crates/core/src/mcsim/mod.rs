//! Seeded packet-level Monte-Carlo simulation.
//!
//! Every trial draws from its own random stream keyed by `(seed, trial index)`
//! so that results do not depend on execution order or thread count. Trials
//! are grouped in fixed-size chunks, chunk sums are collected in index order
//! and then reduced sequentially.

mod protocols;
mod report;

pub use protocols::{sim_aloha, sim_twoway, AlohaSimReport};
pub use report::SimReport;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::{Error, Result};

/// Fewest trials accepted by any Monte-Carlo estimator.
pub const MIN_TRIALS: u64 = 10_000;

const CHUNK: u64 = 4096;

pub(crate) fn check_trials(trials: u64) -> Result<()> {
    if trials < MIN_TRIALS {
        return Err(Error::Config(format!("{trials} trials requested, at least {MIN_TRIALS} are required")));
    }
    Ok(())
}

/// Counter-based stream family: trial `i` of seed `s` always sees the same
/// random sequence.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Streams {
    key: [u8; 32],
}

impl Streams {
    pub(crate) fn new(seed: u64) -> Self {
        let mut key = [0u8; 32];
        for (i, chunk) in key.chunks_mut(8).enumerate() {
            // splitmix64 expansion of the user seed into a 256-bit key
            let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(i as u64 + 1));
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            z ^= z >> 31;
            chunk.copy_from_slice(&z.to_le_bytes());
        }
        Streams { key }
    }

    pub(crate) fn trial(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::from_seed(self.key);
        rng.set_stream(index);
        rng
    }
}

/// First two raw moments of a per-trial outcome.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Moments {
    pub(crate) sum: f64,
    pub(crate) sum_sq: f64,
}

/// Runs `outcome` once per trial index and returns the moment sums.
pub(crate) fn run_trials<F>(seed: u64, trials: u64, outcome: F) -> Moments
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    let streams = Streams::new(seed);
    let chunks = trials.div_ceil(CHUNK);
    let partial: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut m = Moments::default();
            for i in c * CHUNK..((c + 1) * CHUNK).min(trials) {
                let x = outcome(&mut streams.trial(i));
                m.sum += x;
                m.sum_sq += x * x;
            }
            m
        })
        .collect();
    partial.iter().fold(Moments::default(), |acc, m| Moments { sum: acc.sum + m.sum, sum_sq: acc.sum_sq + m.sum_sq })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let s = Streams::new(7);
        let a: u64 = s.trial(3).random();
        let b: u64 = Streams::new(7).trial(3).random();
        let c: u64 = s.trial(4).random();
        let d: u64 = Streams::new(8).trial(3).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
    }

    #[test]
    fn result_independent_of_thread_count() {
        let f = |rng: &mut ChaCha8Rng| rng.random::<f64>();
        let base = run_trials(11, 50_000, f);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let single = pool.install(|| run_trials(11, 50_000, f));
        assert_eq!(base, single);
    }

    #[test]
    fn too_few_trials() {
        assert!(matches!(check_trials(9_999), Err(Error::Config(_))));
        assert!(check_trials(10_000).is_ok());
    }
}
