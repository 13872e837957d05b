//! Classical `[(n,d)→1]` random access codes with deterministic tables.

mod oracle;
mod table;

pub use oracle::{best_encoder, optimal_classical_bruteforce, required_tuples, OracleBudget, OracleResult};
pub use table::StrategyTable;

use serde::Serialize;

use crate::error::{RacError, Result};
use crate::report::SuccessReport;
use crate::scalar::{Rational, Real};

/// Largest input space a task may have.
pub const MAX_INPUTS: usize = 1 << 26;

/// `n` dits over an alphabet of size `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ClassicalTask {
    n: usize,
    d: usize,
}

impl ClassicalTask {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n == 0 {
            return Err(RacError::InvalidTask("n must be at least 1".into()));
        }
        if d < 2 {
            return Err(RacError::InvalidTask(format!("d must be at least 2, got {d}")));
        }
        match d.checked_pow(n as u32) {
            Some(k) if k <= MAX_INPUTS => Ok(Self { n, d }),
            _ => Err(RacError::InvalidTask(format!("{d}^{n} inputs is too many"))),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of input strings, `d^n`.
    pub fn inputs(&self) -> usize {
        self.d.pow(self.n as u32)
    }

    /// Digits of input `index`, first dit most significant.
    pub fn digits(&self, index: usize) -> Vec<usize> {
        let mut out = vec![0; self.n];
        self.write_digits(index, &mut out);
        out
    }

    pub(crate) fn write_digits(&self, mut index: usize, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = index % self.d;
            index /= self.d;
        }
    }

    pub fn index_of(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.n {
            return Err(RacError::MalformedStrategy(format!(
                "input has {} dits, expected {}",
                digits.len(),
                self.n
            )));
        }
        digits.iter().try_fold(0, |acc, &x| {
            if x >= self.d {
                Err(RacError::DitOutOfRange { value: x, d: self.d })
            } else {
                Ok(acc * self.d + x)
            }
        })
    }
}

/// Encoder table over all `d^n` inputs plus one decoder table per question.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DeterministicStrategy {
    pub encoder: Vec<usize>,
    pub decoders: Vec<Vec<usize>>,
}

impl DeterministicStrategy {
    pub fn new(encoder: Vec<usize>, decoders: Vec<Vec<usize>>) -> Self {
        Self { encoder, decoders }
    }

    /// Checks that every table is total over `task` and in range.
    pub fn validate(&self, task: &ClassicalTask) -> Result<()> {
        let d = task.d();
        if self.encoder.len() != task.inputs() {
            return Err(RacError::MalformedStrategy(format!(
                "encoder has {} entries, expected {}",
                self.encoder.len(),
                task.inputs()
            )));
        }
        if let Some(m) = self.encoder.iter().find(|&&m| m >= d) {
            return Err(RacError::MalformedStrategy(format!("message {m} out of range")));
        }
        if self.decoders.len() != task.n() {
            return Err(RacError::MalformedStrategy(format!(
                "{} decoders, expected {}",
                self.decoders.len(),
                task.n()
            )));
        }
        for (y, dec) in self.decoders.iter().enumerate() {
            if dec.len() != d {
                return Err(RacError::MalformedStrategy(format!(
                    "decoder {} has {} entries, expected {d}",
                    y + 1,
                    dec.len()
                )));
            }
            if let Some(a) = dec.iter().find(|&&a| a >= d) {
                return Err(RacError::MalformedStrategy(format!(
                    "decoder {} answer {a} out of range",
                    y + 1
                )));
            }
        }
        Ok(())
    }

    /// Bob's answer to question `y` (1-based) on input `index`.
    pub fn answer(&self, index: usize, y: usize) -> usize {
        self.decoders[y - 1][self.encoder[index]]
    }
}

fn correct_table(task: &ClassicalTask, s: &DeterministicStrategy) -> Result<Vec<bool>> {
    s.validate(task)?;
    let mut digits = vec![0; task.n()];
    let mut out = Vec::with_capacity(task.inputs() * task.n());
    for x in 0..task.inputs() {
        task.write_digits(x, &mut digits);
        let m = s.encoder[x];
        out.extend(digits.iter().zip(&s.decoders).map(|(&xy, dec)| dec[m] == xy));
    }
    Ok(out)
}

/// Success statistics of a deterministic strategy by exact counting.
pub fn evaluate_strategy<T: Real>(task: &ClassicalTask, s: &DeterministicStrategy) -> Result<SuccessReport<T>> {
    let per_input = correct_table(task, s)?
        .into_iter()
        .map(|ok| if ok { T::one() } else { T::zero() })
        .collect();
    Ok(SuccessReport::from_per_input(task.inputs(), task.n(), per_input))
}

/// Average success as an exact fraction `correct / (n d^n)`.
pub fn exact_average(task: &ClassicalTask, s: &DeterministicStrategy) -> Result<Rational> {
    let table = correct_table(task, s)?;
    let correct = table.iter().filter(|&&ok| ok).count();
    Ok(Rational::new(correct as i64, table.len() as i64))
}

/// Most frequent dit of `x`; ties go to the value that occurs first.
pub fn majority(x: &[usize], d: usize) -> usize {
    let mut counts = vec![0usize; d];
    for &v in x {
        counts[v] += 1;
    }
    let top = counts.iter().copied().max().unwrap_or(0);
    x.iter().copied().find(|&v| counts[v] == top).unwrap_or(0)
}

/// Majority encoding with identity decoders.
pub fn majority_identity_strategy(task: &ClassicalTask) -> DeterministicStrategy {
    let mut digits = vec![0; task.n()];
    let encoder = (0..task.inputs())
        .map(|x| {
            task.write_digits(x, &mut digits);
            majority(&digits, task.d())
        })
        .collect();
    let identity: Vec<usize> = (0..task.d()).collect();
    DeterministicStrategy::new(encoder, vec![identity; task.n()])
}

/// `(1 + 1/d)/2` for `n = 2` and `(1 + 3/d - 1/d²)/3` for `n = 3`.
pub fn closed_form_classical_exact(n: usize, d: usize) -> Result<Rational> {
    if d < 2 {
        return Err(RacError::InvalidTask(format!("d must be at least 2, got {d}")));
    }
    let one = Rational::from_integer(1);
    let inv = Rational::new(1, d as i64);
    match n {
        2 => Ok((one + inv) / 2),
        3 => Ok((one + inv * 3 - inv * inv) / 3),
        _ => Err(RacError::UnsupportedLength(n)),
    }
}

pub fn closed_form_classical<T: Real>(n: usize, d: usize) -> Result<T> {
    closed_form_classical_exact(n, d).map(T::from_rational)
}

/// Average success of a shared-randomness mixture of deterministic strategies.
pub fn mixture_value<T: Real>(task: &ClassicalTask, strategies: &[(DeterministicStrategy, T)]) -> Result<T> {
    if strategies.is_empty() {
        return Err(RacError::InvalidMixture("no strategies".into()));
    }
    if let Some((_, w)) = strategies.iter().find(|(_, w)| w.is_nan() || *w < T::zero()) {
        return Err(RacError::InvalidMixture(format!("negative weight {w}")));
    }
    let total: T = strategies.iter().map(|(_, w)| *w).sum();
    if (total - T::one()).abs() > T::tolerance() {
        return Err(RacError::InvalidMixture(format!("weights sum to {total}")));
    }
    strategies.iter().try_fold(T::zero(), |acc, (s, w)| {
        Ok(acc + *w * evaluate_strategy::<T>(task, s)?.average)
    })
}
