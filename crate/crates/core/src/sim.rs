//! Seeded Monte Carlo estimation of the frame error rate.
//!
//! Trial `i` draws its message and channel noise from `trial_rng(seed, i)`,
//! so results do not depend on how trials are spread over threads.

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use crate::channel::{channel_apply, trial_rng, ChannelParams};
use crate::code::{GcCode, Outcome};

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SimStats {
    pub trials: u64,
    pub correct: u64,
    pub failures: u64,
    pub miscorrections: u64,
    pub guesses: u64,
    /// wall-clock seconds spent in the whole run
    pub seconds: f64,
}

impl SimStats {
    pub fn errors(&self) -> u64 {
        self.failures + self.miscorrections
    }

    pub fn fer(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.errors() as f64 / self.trials as f64
        }
    }

    pub fn mean_guesses(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.guesses as f64 / self.trials as f64
        }
    }

    fn merge(mut self, o: SimStats) -> SimStats {
        self.trials += o.trials;
        self.correct += o.correct;
        self.failures += o.failures;
        self.miscorrections += o.miscorrections;
        self.guesses += o.guesses;
        self
    }
}

pub fn random_bits<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<u8> {
    (0..n).map(|_| rng.gen_range(0..2u8)).collect()
}

/// One encode, channel, decode round for trial `index`.
pub fn run_trial(code: &GcCode, channel: &ChannelParams, seed: u64, index: u64) -> SimStats {
    let mut rng = trial_rng(seed, index);
    let msg = random_bits(&mut rng, code.params().k);
    let x = code.encode(&msg).expect("message length matches");
    let y = channel_apply(channel, &x, &mut rng).expect("window fits the codeword");
    let out = code.decode(&y);
    let mut s = SimStats { trials: 1, guesses: out.guesses as u64, ..Default::default() };
    match out.outcome {
        Outcome::Decoded(m) if m == msg => s.correct = 1,
        Outcome::Decoded(_) => s.miscorrections = 1,
        Outcome::Failure => s.failures = 1,
    }
    s
}

pub fn simulate(code: &GcCode, channel: &ChannelParams, trials: u64, seed: u64) -> SimStats {
    let t0 = Instant::now();
    let mut s = (0..trials)
        .into_par_iter()
        .map(|i| run_trial(code, channel, seed, i))
        .reduce(SimStats::default, SimStats::merge);
    s.seconds = t0.elapsed().as_secs_f64();
    s
}
