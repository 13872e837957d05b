//! Quantum `[(2,d)→1]` random access codes.
//!
//! Alice encodes `x1 x2` as `X^{x1} Z^{x2} |ψ00⟩`; Bob measures in the
//! computational basis for the first dit and the Fourier basis for the second.
//! The restricted protocol does the same in a smaller dimension `d' < d`,
//! gating the operators for dits that do not fit and resolving outcome 0 by
//! a uniform guess over `{0, d', ..., d-1}`.

use serde::Serialize;

use crate::error::{RacError, Result};
use crate::qudit::{anchor_state, born_distribution, fourier_basis, OrthonormalBasis, PauliPower, StateVector};
use crate::report::SuccessReport;
use crate::scalar::{Rational, Real};

/// Rule for which operators the restricted encoder applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GatingVariant {
    /// `Z^{x2}` applied iff `x2 < d'`, `X^{x1}` applied iff `x1 < d'`.
    IndependentGating,
    /// `X^{x1} Z^{x2}` applied only when both dits are below `d'`, identity otherwise.
    LiteralBothOrNothing,
}

impl GatingVariant {
    pub fn canonical() -> Self {
        GatingVariant::IndependentGating
    }

    pub fn label(self) -> &'static str {
        match self {
            GatingVariant::IndependentGating => "independent",
            GatingVariant::LiteralBothOrNothing => "literal",
        }
    }
}

/// Parameters of a quantum RAC instance on alphabet `d` using a `d_prime`-level system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ProtocolSpec {
    d: usize,
    d_prime: usize,
    variant: GatingVariant,
}

impl ProtocolSpec {
    pub fn new(d: usize, d_prime: usize, variant: GatingVariant) -> Result<Self> {
        if d_prime == 0 || d_prime > d {
            return Err(RacError::InvalidProtocol(format!(
                "need 1 <= d' <= d, got d = {d}, d' = {d_prime}"
            )));
        }
        Ok(Self {
            d,
            d_prime,
            variant,
        })
    }

    /// The unrestricted protocol, `d' = d`.
    pub fn full(d: usize) -> Result<Self> {
        Self::new(d, d, GatingVariant::canonical())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn d_prime(&self) -> usize {
        self.d_prime
    }

    pub fn variant(&self) -> GatingVariant {
        self.variant
    }

    /// Dimensional advantage `r = d - d'`.
    pub fn r(&self) -> usize {
        self.d - self.d_prime
    }

    fn check_dit(&self, x: usize) -> Result<()> {
        if x >= self.d {
            return Err(RacError::DitOutOfRange { value: x, d: self.d });
        }
        Ok(())
    }
}

/// `X^{x1} Z^{x2} |ψ00⟩` in dimension `d` (clock applied first).
pub fn encode_full<T: Real>(d: usize, x1: usize, x2: usize) -> Result<StateVector<T>> {
    let spec = ProtocolSpec::full(d)?;
    encode_restricted(&spec, x1, x2)
}

/// Encoder of the restricted protocol; every object lives in dimension `d'`.
pub fn encode_restricted<T: Real>(spec: &ProtocolSpec, x1: usize, x2: usize) -> Result<StateVector<T>> {
    spec.check_dit(x1)?;
    spec.check_dit(x2)?;
    let dp = spec.d_prime;
    let (apply_clock, apply_shift) = match spec.variant {
        GatingVariant::IndependentGating => (x2 < dp, x1 < dp),
        GatingVariant::LiteralBothOrNothing => {
            let both = x1 < dp && x2 < dp;
            (both, both)
        }
    };
    let mut state = anchor_state::<T>(dp)?;
    if apply_clock {
        state = state.apply(PauliPower::clock(x2 as i64));
    }
    if apply_shift {
        state = state.apply(PauliPower::shift(x1 as i64));
    }
    Ok(state)
}

/// Computational basis for `y = 1`, Fourier basis for `y = 2`.
pub fn decoding_basis<T: Real>(d_prime: usize, y: usize) -> Result<OrthonormalBasis<T>> {
    match y {
        1 => OrthonormalBasis::computational(d_prime),
        2 => fourier_basis(d_prime),
        _ => Err(RacError::QuestionOutOfRange(y)),
    }
}

/// Distribution over Bob's answers given one measurement outcome.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GuessDistribution<T> {
    pub support: Vec<(usize, T)>,
}

impl<T: Real> GuessDistribution<T> {
    pub fn point(answer: usize) -> Self {
        Self {
            support: vec![(answer, T::one())],
        }
    }

    pub fn uniform(answers: Vec<usize>) -> Self {
        let p = T::one() / T::from_count(answers.len());
        Self {
            support: answers.into_iter().map(|a| (a, p)).collect(),
        }
    }

    pub fn probability_of(&self, answer: usize) -> T {
        self.support
            .iter()
            .filter(|(a, _)| *a == answer)
            .map(|(_, p)| *p)
            .sum()
    }

    pub fn total(&self) -> T {
        self.support.iter().map(|(_, p)| *p).sum()
    }
}

/// Outcome `l >= 1` is answered as `l`; outcome 0 as a uniform pick from `{0, d', ..., d-1}`.
pub fn guess_from_outcome<T: Real>(outcome: usize, spec: &ProtocolSpec) -> Result<GuessDistribution<T>> {
    if outcome >= spec.d_prime {
        return Err(RacError::OutcomeOutOfRange {
            outcome,
            dim: spec.d_prime,
        });
    }
    if outcome > 0 {
        return Ok(GuessDistribution::point(outcome));
    }
    let answers = std::iter::once(0).chain(spec.d_prime..spec.d).collect();
    Ok(GuessDistribution::uniform(answers))
}

/// Born distributions of both decoding measurements for input `(x1, x2)`.
pub(crate) fn outcome_distributions<T: Real>(
    spec: &ProtocolSpec,
    bases: &[OrthonormalBasis<T>; 2],
    x1: usize,
    x2: usize,
) -> Result<[Vec<T>; 2]> {
    let state = encode_restricted::<T>(spec, x1, x2)?;
    Ok([
        born_distribution(&state, &bases[0])?,
        born_distribution(&state, &bases[1])?,
    ])
}

/// Exact success statistics by enumerating every input string and question.
pub fn exact_success<T: Real>(spec: &ProtocolSpec) -> SuccessReport<T> {
    let d = spec.d;
    let bases = [
        decoding_basis::<T>(spec.d_prime, 1).expect("valid dimension"),
        decoding_basis::<T>(spec.d_prime, 2).expect("valid dimension"),
    ];
    let guesses: Vec<GuessDistribution<T>> = (0..spec.d_prime)
        .map(|l| guess_from_outcome(l, spec).expect("outcome in range"))
        .collect();

    let mut per_input = Vec::with_capacity(d * d * 2);
    for x1 in 0..d {
        for x2 in 0..d {
            let dists = outcome_distributions(spec, &bases, x1, x2).expect("dits in range");
            for (dist, target) in dists.iter().zip([x1, x2]) {
                let p = dist
                    .iter()
                    .zip(&guesses)
                    .map(|(&pl, g)| pl * g.probability_of(target))
                    .sum::<T>();
                per_input.push(p);
            }
        }
    }
    SuccessReport::from_per_input(d * d, 2, per_input)
}

/// `(1 + 1/√d) / 2`
pub fn closed_form_full<T: Real>(d: usize) -> T {
    let half = T::one() / (T::one() + T::one());
    half * (T::one() + T::one() / T::from_count(d).sqrt())
}

/// `((d-r)/(2d)) (1 + 1/√(d-r))`
pub fn closed_form_restricted<T: Real>(d: usize, r: usize) -> Result<T> {
    if r >= d {
        return Err(RacError::AdvantageOutOfRange { d, r });
    }
    let dp = T::from_count(d - r);
    let two_d = T::from_count(2 * d);
    Ok(dp / two_d * (T::one() + T::one() / dp.sqrt()))
}

/// Exact value of the restricted closed form, available when `d - r` is a perfect square.
pub fn closed_form_restricted_exact(d: usize, r: usize) -> Result<Option<Rational>> {
    if r >= d {
        return Err(RacError::AdvantageOutOfRange { d, r });
    }
    let dp = (d - r) as i64;
    let root = (dp as f64).sqrt().round() as i64;
    if root * root != dp {
        return Ok(None);
    }
    let dp = Rational::from_integer(dp);
    let two_d = Rational::from_integer(2 * d as i64);
    Ok(Some(dp / two_d * (Rational::from_integer(1) + Rational::new(1, root))))
}
