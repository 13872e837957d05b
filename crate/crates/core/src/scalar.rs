//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! The linear algebra is written once against [`Real`] and instantiated for
//! `f64` (the reference precision) and `f32`. Exact values, where the
//! quantities are rational, are carried as [`Rational`].

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Exact rational arithmetic for counting-based success probabilities.
pub type Rational = num_rational::Ratio<i64>;

/// Real floating point scalar: f32 or f64.
pub trait Real:
    Float + FloatConst + FromPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Absolute tolerance used for norm, orthogonality and probability checks.
    fn tolerance() -> Self;

    /// Lossless for every count this crate produces at the supported sizes.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable as float")
    }

    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("finite float")
    }

    fn from_rational(q: Rational) -> Self {
        Self::from_i64(*q.numer()).unwrap() / Self::from_i64(*q.denom()).unwrap()
    }
}

impl Real for f64 {
    fn tolerance() -> Self {
        1e-12
    }
}

impl Real for f32 {
    fn tolerance() -> Self {
        1e-5
    }
}

/// `|a - b| <= tol`
pub fn approx_eq<T: Real>(a: T, b: T, tol: T) -> bool {
    (a - b).abs() <= tol
}
