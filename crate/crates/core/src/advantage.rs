//! When a `d'`-level quantum code beats the best `d`-level classical code.
//!
//! The restricted protocol wins exactly when `d > r² + 3r + 1` with
//! `r = d - d'`. Boundary points `d = r² + 3r + 1` are exact ties.

use serde::Serialize;

use crate::classical::closed_form_classical;
use crate::error::{RacError, Result};
use crate::quantum::{closed_form_full, closed_form_restricted, exact_success, GatingVariant, ProtocolSpec};
use crate::scalar::Real;

/// Rows with `d` above this use the closed form instead of enumeration.
pub const ENUMERATION_LIMIT: usize = 64;

fn threshold(r: usize) -> usize {
    r * r + 3 * r + 1
}

/// `d > r² + 3r + 1`.
pub fn advantage_holds(d: usize, r: usize) -> Result<bool> {
    if r >= d {
        return Err(RacError::AdvantageOutOfRange { d, r });
    }
    let holds = d > threshold(r);
    debug_assert!({
        let q: f64 = closed_form_restricted(d, r)?;
        let c: f64 = closed_form_classical(2, d)?;
        // the two sides tie exactly at the boundary
        d == threshold(r) || (q > c) == holds
    });
    Ok(holds)
}

/// Largest `r` with `d > r² + 3r + 1`; 0 when no restricted code wins.
pub fn r_max(d: usize) -> usize {
    (0..d).take_while(|&r| d > threshold(r)).last().unwrap_or(0)
}

/// `⌊(√(4d+5) − 3)/2⌋`, which overshoots by one whenever `4d+5` is a perfect square.
pub fn r_max_floor_formula(d: usize) -> usize {
    let s = ((4 * d + 5) as f64).sqrt();
    ((s - 3.0) / 2.0).floor().max(0.0) as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ValueSource {
    Enumerated,
    ClosedForm,
}

/// One line of the `r` vs `d` staircase table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdvantageRow<T> {
    pub d: usize,
    pub dprime: usize,
    pub r_max: usize,
    pub p_classical: T,
    pub p_quantum_full: T,
    pub p_quantum_restricted: T,
    pub ratio: T,
    pub restricted_source: ValueSource,
}

pub fn advantage_row<T: Real>(d: usize) -> Result<AdvantageRow<T>> {
    if d < 2 {
        return Err(RacError::InvalidTask(format!("d must be at least 2, got {d}")));
    }
    let r = r_max(d);
    let dprime = d - r;
    let p_classical = closed_form_classical::<T>(2, d)?;
    let (p_quantum_restricted, restricted_source) = if d <= ENUMERATION_LIMIT {
        let spec = ProtocolSpec::new(d, dprime, GatingVariant::canonical())?;
        (exact_success::<T>(&spec).average, ValueSource::Enumerated)
    } else {
        (closed_form_restricted::<T>(d, r)?, ValueSource::ClosedForm)
    };
    Ok(AdvantageRow {
        d,
        dprime,
        r_max: r,
        p_classical,
        p_quantum_full: closed_form_full(d),
        p_quantum_restricted,
        ratio: p_quantum_restricted / p_classical,
        restricted_source,
    })
}

/// Rows for every `d` in `d_min..=d_max`, sorted by `d`.
pub fn scan<T: Real>(d_min: usize, d_max: usize) -> Result<Vec<AdvantageRow<T>>> {
    if d_min < 2 || d_min > d_max {
        return Err(RacError::InvalidTask(format!(
            "scan range must satisfy 2 <= dmin <= dmax, got {d_min}..{d_max}"
        )));
    }
    use rayon::prelude::*;
    (d_min..=d_max).into_par_iter().map(advantage_row).collect()
}

/// `d` in the range maximizing `closed_form_full(d) / closed_form_classical(2, d)`.
pub fn best_ratio_d<T: Real>(d_min: usize, d_max: usize) -> Result<usize> {
    let mut best: Option<(usize, T)> = None;
    for d in d_min.max(2)..=d_max {
        let ratio = closed_form_full::<T>(d) / closed_form_classical::<T>(2, d)?;
        if best.is_none_or(|(_, b)| ratio > b) {
            best = Some((d, ratio));
        }
    }
    best.map(|(d, _)| d)
        .ok_or_else(|| RacError::InvalidTask("empty range".into()))
}
