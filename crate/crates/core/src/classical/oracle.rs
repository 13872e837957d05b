//! Exhaustive search for the optimal deterministic classical code.
//!
//! Only decoder tuples are enumerated: once `(D_1, ..., D_n)` is fixed, the
//! best encoder picks, independently for each input `x`, a message `m`
//! maximizing the number of questions `y` with `D_y(m) = x_y`.
//!
//! With symmetry reduction on, `D_1` is restricted to non-decreasing tables.
//! Relabeling messages by a permutation `σ` maps `(D_1, ..., D_n)` to
//! `(D_1∘σ, ..., D_n∘σ)` without changing the score, and every orbit holds
//! exactly one tuple whose `D_1` is sorted. The sorted table is also the
//! lexicographic minimum of its orbit, so the reported witness is unchanged.

use rayon::prelude::*;
use serde::Serialize;

use super::{ClassicalTask, DeterministicStrategy};
use crate::error::{RacError, Result};
use crate::scalar::{Rational, Real};

/// Limits on the exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleBudget {
    pub max_tuples: u128,
    pub symmetry_reduction: bool,
}

impl OracleBudget {
    /// Covers `(n=2, d<=5)` and `(n=3, d<=3)`.
    pub const DEFAULT_MAX_TUPLES: u128 = 10_000_000;
    /// Raised ceiling for explicit overrides; admits `(n=2, d=6)` with symmetry reduction.
    pub const OVERRIDE_MAX_TUPLES: u128 = 50_000_000;

    /// Symmetry-reduced search with the raised ceiling.
    pub fn large() -> Self {
        Self {
            max_tuples: Self::OVERRIDE_MAX_TUPLES,
            symmetry_reduction: true,
        }
    }
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_tuples: Self::DEFAULT_MAX_TUPLES,
            symmetry_reduction: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult<T> {
    pub optimum: T,
    pub exact: Rational,
    pub witness: DeterministicStrategy,
    pub strategies_examined: u128,
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Number of decoder tuples the search visits.
pub fn required_tuples(task: &ClassicalTask, symmetry_reduction: bool) -> u128 {
    let d = task.d() as u128;
    let per_decoder = (0..d).fold(1u128, |acc, _| acc.saturating_mul(d));
    let first = if symmetry_reduction {
        // multisets of size d drawn from d values
        binomial(2 * d - 1, d)
    } else {
        per_decoder
    };
    (1..task.n()).fold(first, |acc, _| acc.saturating_mul(per_decoder))
}

/// All `d^d` decoder tables in lexicographic order, flattened.
fn all_tables(d: usize) -> Vec<u8> {
    let count = d.pow(d as u32);
    let mut out = Vec::with_capacity(count * d);
    let mut t = vec![0u8; d];
    for _ in 0..count {
        out.extend_from_slice(&t);
        for slot in t.iter_mut().rev() {
            *slot += 1;
            if (*slot as usize) < d {
                break;
            }
            *slot = 0;
        }
    }
    out
}

fn is_sorted(t: &[u8]) -> bool {
    t.windows(2).all(|w| w[0] <= w[1])
}

/// Searches every decoder tuple, keeping the highest score and the smallest
/// tuple index among ties.
pub fn optimal_classical_bruteforce<T: Real>(
    task: &ClassicalTask,
    budget: OracleBudget,
) -> Result<OracleResult<T>> {
    let required = required_tuples(task, budget.symmetry_reduction);
    if required > budget.max_tuples {
        return Err(RacError::InfeasibleSize {
            required,
            allowed: budget.max_tuples,
        });
    }
    let d = task.d();
    let n = task.n();
    let tables = all_tables(d);
    let table = |i: usize| &tables[i * d..(i + 1) * d];
    let per_decoder = d.pow(d as u32);
    let first: Vec<usize> = (0..per_decoder)
        .filter(|&i| !budget.symmetry_reduction || is_sorted(table(i)))
        .collect();
    let rest_count = per_decoder.pow((n - 1) as u32);

    let scorer = Scorer::new(*task);
    let (score, d1, rest) = first
        .par_iter()
        .map(|&d1| {
            let mut best = (0usize, d1, 0usize);
            let mut decs: Vec<&[u8]> = vec![table(d1); n];
            let mut idx = vec![0usize; n - 1];
            for r in 0..rest_count {
                for (slot, &i) in decs[1..].iter_mut().zip(&idx) {
                    *slot = table(i);
                }
                let s = scorer.score(&decs);
                if s > best.0 {
                    best = (s, d1, r);
                }
                for i in idx.iter_mut().rev() {
                    *i += 1;
                    if *i < per_decoder {
                        break;
                    }
                    *i = 0;
                }
            }
            best
        })
        .reduce(
            || (0, usize::MAX, usize::MAX),
            |a, b| {
                if a.0 > b.0 || (a.0 == b.0 && (a.1, a.2) <= (b.1, b.2)) {
                    a
                } else {
                    b
                }
            },
        );

    let mut decoders = vec![table(d1).iter().map(|&v| v as usize).collect::<Vec<_>>()];
    let mut r = rest;
    let mut tail = Vec::with_capacity(n - 1);
    for _ in 1..n {
        tail.push(r % per_decoder);
        r /= per_decoder;
    }
    for &i in tail.iter().rev() {
        decoders.push(table(i).iter().map(|&v| v as usize).collect());
    }
    let witness = best_encoder(task, decoders);
    let exact = Rational::new(score as i64, (task.inputs() * n) as i64);
    Ok(OracleResult {
        optimum: T::from_rational(exact),
        exact,
        witness,
        strategies_examined: first.len() as u128 * rest_count as u128,
    })
}

/// Per-input greedy encoder for fixed decoders; ties go to the smallest message.
pub fn best_encoder(task: &ClassicalTask, decoders: Vec<Vec<usize>>) -> DeterministicStrategy {
    let mut digits = vec![0; task.n()];
    let encoder = (0..task.inputs())
        .map(|x| {
            task.write_digits(x, &mut digits);
            let mut best = (0, 0);
            for m in 0..task.d() {
                let hits = digits
                    .iter()
                    .zip(&decoders)
                    .filter(|(&xy, dec)| dec[m] == xy)
                    .count();
                if hits > best.0 {
                    best = (hits, m);
                }
            }
            best.1
        })
        .collect();
    DeterministicStrategy::new(encoder, decoders)
}

/// Total number of correct (input, question) pairs under the greedy encoder.
struct Scorer {
    task: ClassicalTask,
    inputs: Vec<u8>,
}

impl Scorer {
    fn new(task: ClassicalTask) -> Self {
        let mut digits = vec![0; task.n()];
        let mut inputs = Vec::with_capacity(task.inputs() * task.n());
        for x in 0..task.inputs() {
            task.write_digits(x, &mut digits);
            inputs.extend(digits.iter().map(|&v| v as u8));
        }
        Self { task, inputs }
    }

    fn score(&self, decs: &[&[u8]]) -> usize {
        let d = self.task.d();
        if decs.len() == 2 && d * d <= 128 {
            score_pair(decs[0], decs[1], d)
        } else {
            self.score_generic(decs)
        }
    }

    fn score_generic(&self, decs: &[&[u8]]) -> usize {
        let n = self.task.n();
        let d = self.task.d();
        self.inputs
            .chunks_exact(n)
            .map(|x| {
                (0..d)
                    .map(|m| x.iter().zip(decs).filter(|(&xy, dec)| dec[m] == xy).count())
                    .max()
                    .unwrap_or(0)
            })
            .sum()
    }
}

/// Closed count for two questions: every input scores 2 if some message
/// decodes to the pair `(x1, x2)`, else 1 if either dit is in its decoder's
/// image, else 0.
fn score_pair(d1: &[u8], d2: &[u8], d: usize) -> usize {
    let mut img1 = 0u64;
    let mut img2 = 0u64;
    let mut pairs = 0u128;
    for (&a, &b) in d1.iter().zip(d2) {
        img1 |= 1u64 << a;
        img2 |= 1u64 << b;
        pairs |= 1u128 << (a as usize * d + b as usize);
    }
    let a = img1.count_ones() as usize;
    let b = img2.count_ones() as usize;
    d * d - (d - a) * (d - b) + pairs.count_ones() as usize
}
