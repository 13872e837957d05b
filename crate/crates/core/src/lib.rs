//! Exact and sampled simulation of `d`-level random access codes.
//!
//! * [`qudit`]: state vectors, shift/clock operators, computational and
//!   Fourier bases, Born-rule probabilities.
//! * [`quantum`]: the `[(2,d)→1]` quantum code and its restricted-dimension
//!   variant, with exact success enumeration and closed forms.
//! * [`classical`]: deterministic classical codes, majority encoding, exact
//!   counting and an exhaustive optimality search.
//! * [`advantage`]: the `d > r² + 3r + 1` condition and the `r_max(d)` staircase.
//! * [`shots`]: seeded Monte Carlo play of any of the above.
//!
//! Numeric code is generic over [`Real`]; the `*64` aliases below fix the
//! reference double precision.

pub mod advantage;
pub mod classical;
pub mod error;
pub mod quantum;
pub mod qudit;
pub mod report;
pub mod scalar;
pub mod shots;

pub use error::{RacError, Result};
pub use report::SuccessReport;
pub use scalar::{approx_eq, Rational, Real};

pub type Amplitude64 = qudit::Amplitude<f64>;
pub type StateVector64 = qudit::StateVector<f64>;
pub type OrthonormalBasis64 = qudit::OrthonormalBasis<f64>;
pub type SuccessReport64 = SuccessReport<f64>;
pub type GuessDistribution64 = quantum::GuessDistribution<f64>;
pub type AdvantageRow64 = advantage::AdvantageRow<f64>;
pub type OracleResult64 = classical::OracleResult<f64>;

pub type StateVector32 = qudit::StateVector<f32>;
pub type OrthonormalBasis32 = qudit::OrthonormalBasis<f32>;
pub type SuccessReport32 = SuccessReport<f32>;
