//! Seeded Monte Carlo play of the RAC game.
//!
//! Trials are split into fixed-size shards. Shard `k` draws from a ChaCha20
//! stream seeded with the user seed and stream id `k`, so results do not
//! depend on the number of worker threads or on the platform.
//!
//! Each quantum trial draws `(x1, x2, y)`, samples the measurement outcome by
//! inverse CDF over the exact Born distribution, then samples Bob's guess.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classical::{ClassicalTask, DeterministicStrategy};
use crate::error::{RacError, Result};
use crate::quantum::{decoding_basis, guess_from_outcome, outcome_distributions, ProtocolSpec};

/// Trials per independently seeded shard.
pub const SHARD_SIZE: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialConfig {
    pub trials: u64,
    pub seed: u64,
}

impl TrialConfig {
    pub fn new(trials: u64, seed: u64) -> Result<Self> {
        if trials == 0 {
            return Err(RacError::ZeroTrials);
        }
        Ok(Self { trials, seed })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: u64,
    pub successes: u64,
}

impl Estimate {
    pub fn from_counts(successes: u64, trials: u64) -> Self {
        let mean = successes as f64 / trials as f64;
        Self {
            mean,
            stderr: (mean * (1.0 - mean) / trials as f64).sqrt(),
            trials,
            successes,
        }
    }

    /// `|mean - exact|` in units of the standard error.
    pub fn z_score(&self, exact: f64) -> f64 {
        let diff = (self.mean - exact).abs();
        if self.stderr == 0.0 {
            if diff == 0.0 { 0.0 } else { f64::INFINITY }
        } else {
            diff / self.stderr
        }
    }
}

/// A protocol that can be played as a sampled game.
#[derive(Debug, Clone, PartialEq)]
pub enum Protocol {
    Quantum(ProtocolSpec),
    Classical {
        task: ClassicalTask,
        strategy: DeterministicStrategy,
    },
}

impl Protocol {
    pub fn classical(task: ClassicalTask, strategy: DeterministicStrategy) -> Result<Self> {
        strategy.validate(&task)?;
        Ok(Protocol::Classical { task, strategy })
    }

    pub fn inputs(&self) -> usize {
        match self {
            Protocol::Quantum(spec) => spec.d() * spec.d(),
            Protocol::Classical { task, .. } => task.inputs(),
        }
    }

    pub fn questions(&self) -> usize {
        match self {
            Protocol::Quantum(_) => 2,
            Protocol::Classical { task, .. } => task.n(),
        }
    }
}

/// Trial and success counts per (input, question), row-major like `SuccessReport`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub questions: usize,
    pub trials: Vec<u64>,
    pub successes: Vec<u64>,
}

impl Tally {
    fn zeros(inputs: usize, questions: usize) -> Self {
        Self {
            questions,
            trials: vec![0; inputs * questions],
            successes: vec![0; inputs * questions],
        }
    }

    fn record(&mut self, input: usize, y: usize, ok: bool) {
        let i = input * self.questions + (y - 1);
        self.trials[i] += 1;
        self.successes[i] += ok as u64;
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.trials.iter_mut().zip(other.trials) {
            *a += b;
        }
        for (a, b) in self.successes.iter_mut().zip(other.successes) {
            *a += b;
        }
        self
    }

    pub fn estimate(&self) -> Estimate {
        Estimate::from_counts(self.successes.iter().sum(), self.trials.iter().sum())
    }
}

struct QuantumSampler {
    d: usize,
    /// cumulative outcome distributions, indexed `(x1 * d + x2) * 2 + (y - 1)`
    cdfs: Vec<Vec<f64>>,
    guesses: Vec<Vec<usize>>,
}

impl QuantumSampler {
    fn new(spec: &ProtocolSpec) -> Result<Self> {
        let d = spec.d();
        let bases = [decoding_basis::<f64>(spec.d_prime(), 1)?, decoding_basis::<f64>(spec.d_prime(), 2)?];
        let mut cdfs = Vec::with_capacity(d * d * 2);
        for x1 in 0..d {
            for x2 in 0..d {
                for dist in outcome_distributions(spec, &bases, x1, x2)? {
                    let mut acc = 0.0;
                    cdfs.push(
                        dist.iter()
                            .map(|p| {
                                acc += p;
                                acc
                            })
                            .collect(),
                    );
                }
            }
        }
        let guesses = (0..spec.d_prime())
            .map(|l| {
                guess_from_outcome::<f64>(l, spec)
                    .map(|g| g.support.into_iter().map(|(a, _)| a).collect())
            })
            .collect::<Result<_>>()?;
        Ok(Self { d, cdfs, guesses })
    }

    fn outcome(cdf: &[f64], u: f64) -> usize {
        // u is in [0, 1); rounding can leave the last cumulative value just below u
        let scaled = u * cdf[cdf.len() - 1];
        cdf.partition_point(|&c| c <= scaled).min(cdf.len() - 1)
    }

    fn trial<R: Rng>(&self, rng: &mut R, tally: &mut Tally) {
        let x1 = rng.gen_range(0..self.d);
        let x2 = rng.gen_range(0..self.d);
        let y = rng.gen_range(1..=2);
        let input = x1 * self.d + x2;
        let l = Self::outcome(&self.cdfs[input * 2 + (y - 1)], rng.gen::<f64>());
        let options = &self.guesses[l];
        let guess = if options.len() == 1 {
            options[0]
        } else {
            options[rng.gen_range(0..options.len())]
        };
        let target = if y == 1 { x1 } else { x2 };
        tally.record(input, y, guess == target);
    }
}

fn shard_rng(seed: u64, shard: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(shard);
    rng
}

fn run_shards<F>(config: TrialConfig, inputs: usize, questions: usize, play: F) -> Tally
where
    F: Fn(&mut ChaCha20Rng, &mut Tally) + Sync,
{
    let shards = config.trials.div_ceil(SHARD_SIZE);
    (0..shards)
        .into_par_iter()
        .map(|k| {
            let mut rng = shard_rng(config.seed, k);
            let mut tally = Tally::zeros(inputs, questions);
            let count = SHARD_SIZE.min(config.trials - k * SHARD_SIZE);
            for _ in 0..count {
                play(&mut rng, &mut tally);
            }
            tally
        })
        .reduce(|| Tally::zeros(inputs, questions), Tally::merge)
}

/// Plays `config.trials` rounds and records per-(input, question) counts.
pub fn simulate_tally(protocol: &Protocol, config: TrialConfig) -> Result<Tally> {
    if config.trials == 0 {
        return Err(RacError::ZeroTrials);
    }
    let (inputs, questions) = (protocol.inputs(), protocol.questions());
    match protocol {
        Protocol::Quantum(spec) => {
            let sampler = QuantumSampler::new(spec)?;
            Ok(run_shards(config, inputs, questions, |rng, tally| sampler.trial(rng, tally)))
        }
        Protocol::Classical { task, strategy } => {
            strategy.validate(task)?;
            Ok(run_shards(config, inputs, questions, |rng, tally| {
                let x = rng.gen_range(0..inputs);
                let y = rng.gen_range(1..=questions);
                let digit = x / task.d().pow((questions - y) as u32) % task.d();
                tally.record(x, y, strategy.answer(x, y) == digit);
            }))
        }
    }
}

/// Empirical success rate with its binomial standard error.
pub fn simulate(protocol: &Protocol, config: TrialConfig) -> Result<Estimate> {
    simulate_tally(protocol, config).map(|t| t.estimate())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::majority_identity_strategy;
    use crate::quantum::GatingVariant;

    #[test]
    fn zero_trials_rejected() {
        assert_eq!(TrialConfig::new(0, 1).unwrap_err(), RacError::ZeroTrials);
        let p = Protocol::Quantum(ProtocolSpec::full(2).unwrap());
        let bad = TrialConfig { trials: 0, seed: 0 };
        assert!(simulate(&p, bad).is_err());
    }

    #[test]
    fn single_trial_is_bernoulli() {
        let task = ClassicalTask::new(2, 3).unwrap();
        let p = Protocol::classical(task, majority_identity_strategy(&task)).unwrap();
        for seed in 0..20 {
            let e = simulate(&p, TrialConfig::new(1, seed).unwrap()).unwrap();
            assert!(e.mean == 0.0 || e.mean == 1.0);
            assert_eq!(e.stderr, 0.0);
        }
    }

    #[test]
    fn reproducible_across_calls() {
        let spec = ProtocolSpec::new(6, 5, GatingVariant::canonical()).unwrap();
        let p = Protocol::Quantum(spec);
        let c = TrialConfig::new(200_000, 42).unwrap();
        assert_eq!(simulate_tally(&p, c).unwrap(), simulate_tally(&p, c).unwrap());
        let other = simulate(&p, TrialConfig::new(200_000, 43).unwrap()).unwrap();
        assert_ne!(simulate(&p, c).unwrap(), other);
    }

    #[test]
    fn tally_covers_every_trial() {
        let p = Protocol::Quantum(ProtocolSpec::full(3).unwrap());
        let t = simulate_tally(&p, TrialConfig::new(SHARD_SIZE + 17, 5).unwrap()).unwrap();
        assert_eq!(t.trials.iter().sum::<u64>(), SHARD_SIZE + 17);
        assert_eq!(t.trials.len(), 9 * 2);
    }

    #[test]
    fn inverse_cdf_edges() {
        let cdf = [0.25, 0.25, 1.0 - 1e-17];
        assert_eq!(QuantumSampler::outcome(&cdf, 0.0), 0);
        assert_eq!(QuantumSampler::outcome(&cdf, 0.2499), 0);
        assert_eq!(QuantumSampler::outcome(&cdf, 0.26), 2);
        assert_eq!(QuantumSampler::outcome(&cdf, 0.999_999_999_999), 2);
    }

    #[test]
    fn estimate_stderr() {
        let e = Estimate::from_counts(25, 100);
        assert!((e.stderr - (0.25f64 * 0.75 / 100.0).sqrt()).abs() < 1e-15);
        assert_eq!(Estimate::from_counts(0, 10).z_score(0.0), 0.0);
    }
}
