//! Piecewise-constant cost traces with exact integration.
//!
//! A [`PiecewiseTrace`] records the running cost along a trajectory as a
//! finite piecewise-constant function of time: `values[i]` holds on
//! `[breakpoints[i], breakpoints[i+1])` and the last value holds on
//! `[breakpoints[last], ∞)`. Restricting cost histories to this class makes
//! every integral the averaging layer needs a finite sum of piece lengths
//! or exponential weights, so the headline numbers carry no quadrature
//! error. Costs that are not piecewise constant go through the adaptive
//! quadrature fallback in [`crate::averages`] instead.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// Breakpoints closer than this are merged when traces are spliced or
/// shifted, so splicing never produces zero-width pieces.
pub const MERGE_EPS: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseTrace {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl PiecewiseTrace {
    /// Builds a trace from piece start times and cost levels.
    ///
    /// `breakpoints` must start at 0 and increase strictly; `values` must
    /// have the same length with every level in `[0, 1]`. The stored
    /// representation is canonical: runs of equal levels become one piece
    /// and breakpoints closer than [`MERGE_EPS`] are merged, so equality
    /// of traces is equality of the functions they describe.
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if breakpoints.is_empty() {
            return Err(Error::InvalidTrace("at least one piece is required".into()));
        }
        if breakpoints.len() != values.len() {
            return Err(Error::InvalidTrace(format!(
                "{} breakpoints but {} values",
                breakpoints.len(),
                values.len()
            )));
        }
        if breakpoints[0] != 0.0 {
            return Err(Error::InvalidTrace(format!(
                "first breakpoint must be 0, got {}",
                breakpoints[0]
            )));
        }
        for pair in breakpoints.windows(2) {
            if !(pair[1] > pair[0]) || !pair[1].is_finite() {
                return Err(Error::InvalidTrace(format!(
                    "breakpoints must increase strictly, got {} then {}",
                    pair[0], pair[1]
                )));
            }
        }
        for &v in &values {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidTrace(format!("value {v} outside [0, 1]")));
            }
        }
        Ok(normalize(
            breakpoints.into_iter().zip(values).collect(),
        ))
    }

    /// A trace that holds one level forever.
    pub fn constant(value: f64) -> Result<Self> {
        Self::new(vec![0.0], vec![value])
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Cost level at time `t ≥ 0`.
    pub fn value_at(&self, t: f64) -> f64 {
        debug_assert!(t >= 0.0);
        let idx = self.breakpoints.partition_point(|&b| b <= t);
        self.values[idx.saturating_sub(1)]
    }

    /// Exact `∫₀^{t_end}` of the trace (zero when `t_end ≤ 0`).
    pub fn integral_up_to(&self, t_end: f64) -> f64 {
        let n = self.breakpoints.len();
        let mut total = 0.0;
        for i in 0..n {
            let a = self.breakpoints[i];
            if a >= t_end {
                break;
            }
            let b = if i + 1 < n {
                self.breakpoints[i + 1].min(t_end)
            } else {
                t_end
            };
            total += self.values[i] * (b - a);
        }
        total
    }

    /// Exact `λ ∫₀^∞ e^(−λt)·trace(t) dt`.
    ///
    /// Each finite piece `[a, b)` contributes `value · (e^(−λa) − e^(−λb))`
    /// and the tail contributes `value · e^(−λa)`; the weights telescope to
    /// 1, so the result is a convex combination of the levels.
    pub fn discounted_mean(&self, lambda: f64) -> f64 {
        let n = self.breakpoints.len();
        let mut total = 0.0;
        for i in 0..n {
            let a = self.breakpoints[i];
            let weight = if i + 1 < n {
                math::exp(-lambda * a) - math::exp(-lambda * self.breakpoints[i + 1])
            } else {
                math::exp(-lambda * a)
            };
            total += self.values[i] * weight;
        }
        total
    }

    /// Exact `λ ∫₀^{t_end} e^(−λt)·trace(t) dt`, the discounted mass of the
    /// initial segment (not normalized by the truncated kernel).
    pub fn discounted_mass_up_to(&self, lambda: f64, t_end: f64) -> f64 {
        let n = self.breakpoints.len();
        let mut total = 0.0;
        for i in 0..n {
            let a = self.breakpoints[i];
            if a >= t_end {
                break;
            }
            let b = if i + 1 < n {
                self.breakpoints[i + 1].min(t_end)
            } else {
                t_end
            };
            total += self.values[i] * (math::exp(-lambda * a) - math::exp(-lambda * b));
        }
        total
    }

    /// The trace with its first `tau` time units removed.
    pub fn shifted(&self, tau: f64) -> PiecewiseTrace {
        debug_assert!(tau >= 0.0);
        if tau == 0.0 {
            return self.clone();
        }
        let idx = self.breakpoints.partition_point(|&b| b <= tau);
        let active = idx.saturating_sub(1);
        let mut raw = Vec::with_capacity(self.breakpoints.len() - active);
        raw.push((0.0, self.values[active]));
        for j in active + 1..self.breakpoints.len() {
            raw.push((self.breakpoints[j] - tau, self.values[j]));
        }
        normalize(raw)
    }

    /// This trace cut at `h > 0`, then `suffix` re-anchored at `h`.
    ///
    /// Breakpoints that land within [`MERGE_EPS`] of each other are merged
    /// and adjacent pieces with equal levels are coalesced, so splicing a
    /// trace with a suffix it already agrees with reproduces the original
    /// pieces exactly.
    pub fn splice(&self, h: f64, suffix: &PiecewiseTrace) -> PiecewiseTrace {
        debug_assert!(h > 0.0);
        let mut raw = Vec::with_capacity(self.breakpoints.len() + suffix.breakpoints.len());
        for (i, &b) in self.breakpoints.iter().enumerate() {
            if b >= h {
                break;
            }
            raw.push((b, self.values[i]));
        }
        for (j, &b) in suffix.breakpoints.iter().enumerate() {
            raw.push((h + b, suffix.values[j]));
        }
        normalize(raw)
    }
}

/// Collapses a sorted raw piece list: pieces narrower than [`MERGE_EPS`]
/// are absorbed by their successor and runs of equal levels become one
/// piece. The input must be sorted with the first entry at time 0.
fn normalize(raw: Vec<(f64, f64)>) -> PiecewiseTrace {
    debug_assert!(!raw.is_empty() && raw[0].0 == 0.0);
    let mut breakpoints: Vec<f64> = Vec::with_capacity(raw.len());
    let mut values: Vec<f64> = Vec::with_capacity(raw.len());
    for (b, v) in raw {
        if let Some(&last_b) = breakpoints.last() {
            if b - last_b <= MERGE_EPS {
                // The previous piece is a sliver: overwrite its level.
                *values.last_mut().unwrap() = v;
            } else if *values.last().unwrap() != v {
                breakpoints.push(b);
                values.push(v);
            }
        } else {
            breakpoints.push(b);
            values.push(v);
        }
        // An overwrite can make the last two levels equal; re-coalesce.
        while values.len() >= 2 && values[values.len() - 1] == values[values.len() - 2] {
            values.pop();
            breakpoints.pop();
        }
    }
    PiecewiseTrace {
        breakpoints,
        values,
    }
}
