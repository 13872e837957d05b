//! Pure states of a single qudit and the generalized Pauli group acting on them.
//!
//! Operators are never materialized as matrices: the shift `X` is an index
//! rotation and the clock `Z` is a diagonal phase, so applying either costs
//! O(d) and introduces no rounding beyond the phase factors themselves.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{RacError, Result};
use crate::scalar::Real;

/// A complex probability amplitude.
pub type Amplitude<T> = Complex<T>;

/// `exp(2πi k / dim)` with `k` reduced modulo `dim` first.
fn phase<T: Real>(k: i64, dim: usize) -> Amplitude<T> {
    let dim_i = dim as i64;
    let k = k.rem_euclid(dim_i);
    if k == 0 {
        return Complex::new(T::one(), T::zero());
    }
    let theta = T::TAU() * T::from_count(k as usize) / T::from_count(dim);
    Complex::from_polar(T::one(), theta)
}

/// The primitive root of unity `ω = exp(2πi/dim)`.
pub fn root_of_unity<T: Real>(dim: usize) -> Result<Amplitude<T>> {
    if dim == 0 {
        return Err(RacError::InvalidDimension(dim));
    }
    Ok(phase(1, dim))
}

/// Unit-norm vector of amplitudes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateVector<T> {
    amps: Vec<Amplitude<T>>,
}

impl<T: Real> StateVector<T> {
    /// Wraps amplitudes that are already normalized.
    pub fn new(amps: Vec<Amplitude<T>>) -> Result<Self> {
        if amps.is_empty() {
            return Err(RacError::InvalidDimension(0));
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(RacError::NotNormalized("non-finite amplitude".into()));
        }
        let state = Self { amps };
        let n = state.norm_sqr();
        if (n - T::one()).abs() > T::tolerance() {
            return Err(RacError::NotNormalized(n.to_string()));
        }
        Ok(state)
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amps: Vec<Amplitude<T>>) -> Result<Self> {
        if amps.is_empty() {
            return Err(RacError::InvalidDimension(0));
        }
        let n = amps.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt();
        if n.is_nan() || n <= T::zero() || !n.is_finite() {
            return Err(RacError::NotNormalized(n.to_string()));
        }
        Self::new(amps.into_iter().map(|a| a / n).collect())
    }

    /// Computational basis state `|k⟩`.
    pub fn basis_state(dim: usize, k: usize) -> Result<Self> {
        if dim == 0 {
            return Err(RacError::InvalidDimension(dim));
        }
        if k >= dim {
            return Err(RacError::OutcomeOutOfRange { outcome: k, dim });
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); dim];
        amps[k] = Complex::new(T::one(), T::zero());
        Ok(Self { amps })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Amplitude<T>] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Result<Amplitude<T>> {
        if self.dim() != other.dim() {
            return Err(RacError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .fold(Complex::new(T::zero(), T::zero()), |acc, z| acc + z))
    }

    /// Multiplies every amplitude by a unit-modulus phase.
    pub fn scaled(&self, phase: Amplitude<T>) -> Self {
        Self {
            amps: self.amps.iter().map(|a| a * phase).collect(),
        }
    }

    /// Applies `op` in this state's dimension.
    pub fn apply(&self, op: PauliPower) -> Self {
        let d = self.dim();
        let p = op.power.rem_euclid(d as i64) as usize;
        match op.kind {
            PauliKind::Shift => {
                let mut out = vec![Complex::new(T::zero(), T::zero()); d];
                for (k, a) in self.amps.iter().enumerate() {
                    out[(k + p) % d] = *a;
                }
                Self { amps: out }
            }
            PauliKind::Clock => Self {
                amps: self
                    .amps
                    .iter()
                    .enumerate()
                    .map(|(k, a)| a * phase::<T>((k * p) as i64, d))
                    .collect(),
            },
        }
    }

    /// Largest amplitude-wise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.dim() != other.dim() {
            return Err(RacError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max))
    }
}

/// Ordered orthonormal basis of `C^dim`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrthonormalBasis<T> {
    vectors: Vec<StateVector<T>>,
}

impl<T: Real> OrthonormalBasis<T> {
    /// Checks completeness and pairwise orthonormality.
    pub fn new(vectors: Vec<StateVector<T>>) -> Result<Self> {
        let dim = vectors
            .first()
            .map(StateVector::dim)
            .ok_or(RacError::InvalidDimension(0))?;
        if vectors.len() != dim {
            return Err(RacError::NotOrthonormal(format!(
                "{} vectors in dimension {dim}",
                vectors.len()
            )));
        }
        for (i, u) in vectors.iter().enumerate() {
            for (j, v) in vectors.iter().enumerate().skip(i) {
                let g = u.inner(v)?;
                let target = if i == j { T::one() } else { T::zero() };
                if (g - Complex::new(target, T::zero())).norm() > T::tolerance() {
                    return Err(RacError::NotOrthonormal(format!("<{i}|{j}> = {g}")));
                }
            }
        }
        Ok(Self { vectors })
    }

    /// `{|0⟩, ..., |dim-1⟩}`.
    pub fn computational(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(RacError::InvalidDimension(dim));
        }
        let vectors = (0..dim)
            .map(|k| StateVector::basis_state(dim, k))
            .collect::<Result<_>>()?;
        Ok(Self { vectors })
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[StateVector<T>] {
        &self.vectors
    }

    pub fn vector(&self, l: usize) -> &StateVector<T> {
        &self.vectors[l]
    }

    /// Gram matrix `G[i][j] = ⟨v_i|v_j⟩`.
    pub fn gram(&self) -> Vec<Vec<Amplitude<T>>> {
        self.vectors
            .iter()
            .map(|u| {
                self.vectors
                    .iter()
                    .map(|v| u.inner(v).expect("same dimension"))
                    .collect()
            })
            .collect()
    }
}

/// Discrete Fourier basis: vector `l` has amplitude `ω^{kl}/√dim` at index `k`.
pub fn fourier_basis<T: Real>(dim: usize) -> Result<OrthonormalBasis<T>> {
    if dim == 0 {
        return Err(RacError::InvalidDimension(dim));
    }
    let scale = T::one() / T::from_count(dim).sqrt();
    let vectors = (0..dim)
        .map(|l| StateVector {
            amps: (0..dim)
                .map(|k| phase::<T>(((k * l) % dim) as i64, dim) * scale)
                .collect(),
        })
        .collect();
    Ok(OrthonormalBasis { vectors })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PauliKind {
    /// `X|k⟩ = |k+1 mod d⟩`
    Shift,
    /// `Z|k⟩ = ω^k |k⟩`
    Clock,
}

/// An integer power of the shift or clock operator. The power is reduced
/// modulo the dimension of whatever state it acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PauliPower {
    pub kind: PauliKind,
    pub power: i64,
}

impl PauliPower {
    pub fn shift(power: i64) -> Self {
        Self {
            kind: PauliKind::Shift,
            power,
        }
    }

    pub fn clock(power: i64) -> Self {
        Self {
            kind: PauliKind::Clock,
            power,
        }
    }
}

/// Applies a shift or clock power to `state`.
pub fn apply_pauli<T: Real>(state: &StateVector<T>, op: PauliPower) -> StateVector<T> {
    state.apply(op)
}

/// `(|0⟩ + |e_0⟩) / √(2 + 2/√dim)`, the encoding of the all-zero string.
pub fn anchor_state<T: Real>(dim: usize) -> Result<StateVector<T>> {
    if dim == 0 {
        return Err(RacError::InvalidDimension(dim));
    }
    let d = T::from_count(dim);
    let two = T::one() + T::one();
    let norm = (two + two / d.sqrt()).sqrt();
    let uniform = T::one() / d.sqrt();
    let amps = (0..dim)
        .map(|k| {
            let a = if k == 0 { T::one() + uniform } else { uniform };
            Complex::new(a / norm, T::zero())
        })
        .collect();
    StateVector::new(amps)
}

/// Born-rule outcome probabilities `|⟨basis_l|state⟩|²`.
pub fn born_distribution<T: Real>(
    state: &StateVector<T>,
    basis: &OrthonormalBasis<T>,
) -> Result<Vec<T>> {
    if state.dim() != basis.dim() {
        return Err(RacError::DimensionMismatch {
            expected: basis.dim(),
            found: state.dim(),
        });
    }
    basis
        .vectors()
        .iter()
        .map(|v| v.inner(state).map(|z| z.norm_sqr()))
        .collect()
}
