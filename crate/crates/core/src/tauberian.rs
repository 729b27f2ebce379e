//! Limit sweeps over horizons and discount rates.
//!
//! A sweep evaluates both value functions on geometric schedules for every
//! state in a caller-supplied witness set, estimates each limit from the
//! trailing window of the curve, measures uniformity as the worst residual
//! across states, and renders a verdict: the limits coincide, they differ
//! by a gap, or the curves have not settled (`Inconclusive`).
//!
//! Limit estimation is deliberately plain — the last value, with the
//! spread of the last three values as the residual. The built-in systems
//! stabilize exactly, so extrapolation would only add machinery that
//! nothing here can verify. A genuinely slowly converging user system may
//! therefore be labelled `Inconclusive` at a tolerance its limits would
//! eventually meet; widen the schedule or the tolerance in that case.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::process::State;
use crate::system::ControlSystem;
use crate::value::{value_discounted, value_time};

/// The verdict tolerance is this multiple of the value-function tolerance.
pub const VERDICT_TOL_FACTOR: f64 = 10.0;

/// Trailing-window length used by [`estimate_limit`].
const LIMIT_WINDOW: usize = 3;

/// Minimum points per schedule.
pub const MIN_SCHEDULE_POINTS: usize = 4;

/// Minimum geometric ratio between consecutive schedule points.
pub const MIN_SCHEDULE_RATIO: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleKind {
    /// Horizons `T`, strictly increasing.
    Time,
    /// Discount rates `λ`, strictly decreasing.
    Discount,
}

/// A geometric schedule of horizons or discount rates.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    kind: ScheduleKind,
    points: Vec<f64>,
}

impl Schedule {
    /// Validates monotonicity (increasing for time, decreasing for
    /// discounts), positivity, and a geometric spacing ratio of at least
    /// [`MIN_SCHEDULE_RATIO`] between consecutive points.
    pub fn new(kind: ScheduleKind, points: Vec<f64>) -> Result<Self> {
        if points.len() < MIN_SCHEDULE_POINTS {
            return Err(Error::InvalidSchedule(format!(
                "need at least {MIN_SCHEDULE_POINTS} points, got {}",
                points.len()
            )));
        }
        for &p in &points {
            if !(p > 0.0) || !p.is_finite() {
                return Err(Error::InvalidSchedule(format!(
                    "schedule point {p} is not a positive finite real"
                )));
            }
        }
        // Tiny slack so decimal ladders like 1, 0.1, 0.01 validate cleanly.
        let floor = MIN_SCHEDULE_RATIO * (1.0 - 1e-12);
        for pair in points.windows(2) {
            let ratio = match kind {
                ScheduleKind::Time => pair[1] / pair[0],
                ScheduleKind::Discount => pair[0] / pair[1],
            };
            if !(ratio >= floor) {
                return Err(Error::InvalidSchedule(format!(
                    "consecutive points {} and {} violate the geometric ratio >= {MIN_SCHEDULE_RATIO}",
                    pair[0], pair[1]
                )));
            }
        }
        Ok(Self { kind, points })
    }

    /// Geometric ladder: `start·ratio^k` for time schedules,
    /// `start/ratio^k` for discount schedules.
    pub fn geometric(kind: ScheduleKind, start: f64, ratio: f64, count: usize) -> Result<Self> {
        if !(start > 0.0) {
            return Err(Error::InvalidSchedule(format!(
                "start {start} must be positive"
            )));
        }
        if !(ratio >= MIN_SCHEDULE_RATIO) {
            return Err(Error::InvalidSchedule(format!(
                "ratio {ratio} must be at least {MIN_SCHEDULE_RATIO}"
            )));
        }
        let mut points = Vec::with_capacity(count);
        let mut p = start;
        for _ in 0..count {
            points.push(p);
            p = match kind {
                ScheduleKind::Time => p * ratio,
                ScheduleKind::Discount => p / ratio,
            };
        }
        Self::new(kind, points)
    }

    pub fn kind(&self) -> ScheduleKind {
        self.kind
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }
}

/// Trailing-window limit estimate of a value curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitEstimate {
    /// The last value of the curve.
    pub limit: f64,
    /// Spread (max − min) of the last three values; a residual above the
    /// caller's tolerance means the limit has not numerically settled.
    pub residual: f64,
}

/// Estimates the limit of a value curve with at least 4 entries.
pub fn estimate_limit(values: &[f64]) -> LimitEstimate {
    assert!(
        values.len() >= MIN_SCHEDULE_POINTS,
        "limit estimation needs at least {MIN_SCHEDULE_POINTS} values"
    );
    let tail = &values[values.len() - LIMIT_WINDOW..];
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in tail {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    LimitEstimate {
        limit: *values.last().unwrap(),
        residual: hi - lo,
    }
}

/// Outcome of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    /// Both limits settled and agree; carries the shared per-state limit
    /// profile (midpoints of the two estimates).
    Coincide { limits: Vec<f64> },
    /// Both limits settled but disagree somewhere; carries both profiles
    /// and the largest per-state disagreement.
    Gap {
        v_limits: Vec<f64>,
        w_limits: Vec<f64>,
        max_gap: f64,
    },
    /// At least one curve has not settled at the verdict tolerance.
    Inconclusive,
}

/// Renders the verdict from per-state limit profiles and uniformity
/// residuals at tolerance `epsilon`.
pub fn decide_verdict(
    v_limits: &[f64],
    w_limits: &[f64],
    uniformity_v: f64,
    uniformity_w: f64,
    epsilon: f64,
) -> Verdict {
    assert!(epsilon > 0.0, "verdict tolerance must be positive");
    assert_eq!(v_limits.len(), w_limits.len());
    if uniformity_v > epsilon || uniformity_w > epsilon {
        return Verdict::Inconclusive;
    }
    let mut max_gap = 0.0f64;
    for (v, w) in v_limits.iter().zip(w_limits) {
        max_gap = max_gap.max((v - w).abs());
    }
    if max_gap <= epsilon {
        Verdict::Coincide {
            limits: v_limits
                .iter()
                .zip(w_limits)
                .map(|(v, w)| 0.5 * (v + w))
                .collect(),
        }
    } else {
        Verdict::Gap {
            v_limits: v_limits.to_vec(),
            w_limits: w_limits.to_vec(),
            max_gap,
        }
    }
}

/// Full result of a sweep: the raw value matrices, per-state limit
/// estimates, uniformity residuals, and the verdict at `10·tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct TauberianReport {
    pub states: Vec<State>,
    pub time_schedule: Schedule,
    pub discount_schedule: Schedule,
    /// `v_values[i][j]` is the time value at `states[i]`,
    /// `time_schedule.points()[j]`.
    pub v_values: Vec<Vec<f64>>,
    pub w_values: Vec<Vec<f64>>,
    pub v_limits: Vec<f64>,
    pub w_limits: Vec<f64>,
    pub v_residuals: Vec<f64>,
    pub w_residuals: Vec<f64>,
    /// Sup over states of the residuals.
    pub uniformity_v: f64,
    pub uniformity_w: f64,
    pub verdict: Verdict,
}

impl TauberianReport {
    /// Largest per-state disagreement between the two limit profiles.
    pub fn max_gap(&self) -> f64 {
        self.v_limits
            .iter()
            .zip(&self.w_limits)
            .map(|(v, w)| (v - w).abs())
            .fold(0.0, f64::max)
    }
}

/// Evaluates both value functions over the schedules for every state,
/// estimates limits and uniformity, and renders the verdict at `10·tol`.
pub fn sweep(
    system: &ControlSystem,
    states: &[State],
    time_schedule: &Schedule,
    discount_schedule: &Schedule,
    tol: f64,
) -> Result<TauberianReport> {
    if states.is_empty() {
        return Err(Error::InvalidSchedule("state witness set is empty".into()));
    }
    if time_schedule.kind() != ScheduleKind::Time {
        return Err(Error::InvalidSchedule(
            "first schedule must be a time schedule".into(),
        ));
    }
    if discount_schedule.kind() != ScheduleKind::Discount {
        return Err(Error::InvalidSchedule(
            "second schedule must be a discount schedule".into(),
        ));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain {
            arg: "tol",
            value: tol,
            requirement: "tol > 0",
        });
    }

    fn annotate(state: &State, point: f64, err: Error) -> Error {
        Error::Sweep {
            state: state.clone(),
            point,
            source: Box::new(err),
        }
    }

    let mut v_values = Vec::with_capacity(states.len());
    let mut w_values = Vec::with_capacity(states.len());
    for state in states {
        let mut v_row = Vec::with_capacity(time_schedule.points().len());
        for &horizon in time_schedule.points() {
            let value = value_time(system, state, horizon, tol)
                .map_err(|e| annotate(state, horizon, e))?
                .value;
            v_row.push(value);
        }
        v_values.push(v_row);
        let mut w_row = Vec::with_capacity(discount_schedule.points().len());
        for &lambda in discount_schedule.points() {
            let value = value_discounted(system, state, lambda, tol)
                .map_err(|e| annotate(state, lambda, e))?
                .value;
            w_row.push(value);
        }
        w_values.push(w_row);
    }

    let mut v_limits = Vec::with_capacity(states.len());
    let mut v_residuals = Vec::with_capacity(states.len());
    for row in &v_values {
        let estimate = estimate_limit(row);
        v_limits.push(estimate.limit);
        v_residuals.push(estimate.residual);
    }
    let mut w_limits = Vec::with_capacity(states.len());
    let mut w_residuals = Vec::with_capacity(states.len());
    for row in &w_values {
        let estimate = estimate_limit(row);
        w_limits.push(estimate.limit);
        w_residuals.push(estimate.residual);
    }
    let uniformity_v = v_residuals.iter().fold(0.0f64, |a, &b| a.max(b));
    let uniformity_w = w_residuals.iter().fold(0.0f64, |a, &b| a.max(b));
    let verdict = decide_verdict(
        &v_limits,
        &w_limits,
        uniformity_v,
        uniformity_w,
        VERDICT_TOL_FACTOR * tol,
    );

    Ok(TauberianReport {
        states: states.to_vec(),
        time_schedule: time_schedule.clone(),
        discount_schedule: discount_schedule.clone(),
        v_values,
        w_values,
        v_limits,
        w_limits,
        v_residuals,
        w_residuals,
        uniformity_v,
        uniformity_w,
        verdict,
    })
}
