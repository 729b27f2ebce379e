//! Time and discounted averages of a cost trace.
//!
//! The exact path is the primary one: for a [`PiecewiseTrace`] both
//! averages are finite sums, so every built-in number is reproducible
//! bit-for-bit. The adaptive Simpson fallback exists for user-supplied
//! cost functions that are not piecewise constant; it truncates the
//! improper integral using the `g ≤ 1` tail bound and certifies a total
//! error bound of at most the requested `ε`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::trace::PiecewiseTrace;

/// Largest overshoot of `[0, 1]` that is silently clamped; anything worse
/// is reported as [`Error::AverageOutOfRange`].
pub const CLAMP_GUARD: f64 = 1e-12;

/// Maximum bisection depth of the adaptive quadrature.
pub const MAX_QUAD_DEPTH: u32 = 40;

/// Number of uniform starting panels when no breakpoints are supplied.
const DEFAULT_PANELS: usize = 16;

/// How an average was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    Quadrature,
}

/// An average in `[0, 1]` together with its provenance and a certified
/// absolute error bound (zero for exact evaluation).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AverageValue {
    pub value: f64,
    pub method: Method,
    pub abs_error_bound: f64,
}

/// Exact time average `(1/T) ∫₀ᵀ trace(t) dt` for `T > 0`.
pub fn time_average(trace: &PiecewiseTrace, horizon: f64) -> Result<AverageValue> {
    if !(horizon > 0.0) {
        return Err(Error::Domain {
            arg: "T",
            value: horizon,
            requirement: "T > 0",
        });
    }
    let value = clamp_unit(trace.integral_up_to(horizon) / horizon)?;
    Ok(AverageValue {
        value,
        method: Method::Exact,
        abs_error_bound: 0.0,
    })
}

/// Exact discounted average `λ ∫₀^∞ e^(−λt) trace(t) dt` for `λ > 0`.
pub fn discounted_average(trace: &PiecewiseTrace, lambda: f64) -> Result<AverageValue> {
    if !(lambda > 0.0) {
        return Err(Error::Domain {
            arg: "lambda",
            value: lambda,
            requirement: "lambda > 0",
        });
    }
    let value = clamp_unit(trace.discounted_mean(lambda))?;
    Ok(AverageValue {
        value,
        method: Method::Exact,
        abs_error_bound: 0.0,
    })
}

/// Discounted average of an arbitrary cost function `t ↦ [0, 1]` by
/// adaptive Simpson quadrature, certified to `ε` absolute error.
///
/// The improper integral is truncated at `T_max = ln(2/ε)/λ`, where the
/// tail is at most `ε/2` because the cost is bounded by 1; the panel error
/// budget covers the other `ε/2`.
pub fn discounted_average_quadrature<F>(cost: F, lambda: f64, eps: f64) -> Result<AverageValue>
where
    F: Fn(f64) -> f64,
{
    quadrature(&cost, None, lambda, eps, MAX_QUAD_DEPTH)
}

/// Like [`discounted_average_quadrature`], with starting panels seeded at
/// the supplied breakpoints. Seeding puts known discontinuities on panel
/// boundaries, where Simpson handles them exactly.
pub fn discounted_average_quadrature_seeded<F>(
    cost: F,
    breakpoints: &[f64],
    lambda: f64,
    eps: f64,
) -> Result<AverageValue>
where
    F: Fn(f64) -> f64,
{
    quadrature(&cost, Some(breakpoints), lambda, eps, MAX_QUAD_DEPTH)
}

fn clamp_unit(v: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else if v > 1.0 && v - 1.0 <= CLAMP_GUARD {
        Ok(1.0)
    } else if v < 0.0 && -v <= CLAMP_GUARD {
        Ok(0.0)
    } else {
        Err(Error::AverageOutOfRange { value: v })
    }
}

struct QuadAcc {
    total: f64,
    residual: f64,
    worst_err: f64,
    worst: (f64, f64),
}

fn quadrature(
    cost: &dyn Fn(f64) -> f64,
    breakpoints: Option<&[f64]>,
    lambda: f64,
    eps: f64,
    max_depth: u32,
) -> Result<AverageValue> {
    if !(lambda > 0.0) {
        return Err(Error::Domain {
            arg: "lambda",
            value: lambda,
            requirement: "lambda > 0",
        });
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Domain {
            arg: "eps",
            value: eps,
            requirement: "0 < eps < 1",
        });
    }
    let t_max = math::ln(2.0 / eps) / lambda;
    let f = |t: f64| lambda * math::exp(-lambda * t) * cost(t);

    let mut cuts: Vec<f64> = vec![0.0];
    match breakpoints {
        Some(points) => {
            let mut interior: Vec<f64> = points
                .iter()
                .copied()
                .filter(|&b| b > 0.0 && b < t_max)
                .collect();
            interior.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for b in interior {
                if b - cuts.last().unwrap() > 1e-14 {
                    cuts.push(b);
                }
            }
        }
        None => {
            for i in 1..DEFAULT_PANELS {
                cuts.push(t_max * i as f64 / DEFAULT_PANELS as f64);
            }
        }
    }
    if t_max - cuts.last().unwrap() > 1e-14 {
        cuts.push(t_max);
    }
    // Split panels to width ≤ 1/λ: the acceptance test's error model
    // assumes the kernel is resolved, and λ·t_max = ln(2/ε) keeps the
    // panel count small.
    let max_width = 1.0 / lambda;
    let mut refined: Vec<f64> = Vec::with_capacity(cuts.len() * 2);
    for pair in cuts.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        refined.push(a);
        let parts = math::ceil((b - a) / max_width) as usize;
        for j in 1..parts {
            refined.push(a + (b - a) * j as f64 / parts as f64);
        }
    }
    refined.push(t_max);
    let cuts = refined;

    let budget = eps / 2.0;
    let mut acc = QuadAcc {
        total: 0.0,
        residual: 0.0,
        worst_err: 0.0,
        worst: (0.0, t_max),
    };
    for pair in cuts.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let m = 0.5 * (a + b);
        let (fa, fm, fb) = (f(a), f(m), f(b));
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        let tol = budget * (b - a) / t_max;
        adaptive(&f, a, fa, m, fm, b, fb, whole, tol, 0, max_depth, &mut acc);
    }
    if acc.residual > budget {
        return Err(Error::QuadratureNonConvergence {
            lo: acc.worst.0,
            hi: acc.worst.1,
        });
    }
    let value = clamp_unit(acc.total)?;
    Ok(AverageValue {
        value,
        method: Method::Quadrature,
        abs_error_bound: eps / 2.0 + acc.residual,
    })
}

/// One panel of adaptive Simpson with Richardson correction. Panels accept
/// when the halved estimate agrees within `15·tol`; panels that hit the
/// depth limit accept anyway but add their residual estimate to the
/// accumulator, and the caller rejects the whole integral if the summed
/// residuals blow the budget.
#[allow(clippy::too_many_arguments)]
fn adaptive(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    fa: f64,
    m: f64,
    fm: f64,
    b: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    max_depth: u32,
    acc: &mut QuadAcc,
) {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    let converged = math::abs(delta) <= 15.0 * tol;
    if converged || depth >= max_depth {
        acc.total += left + right + delta / 15.0;
        // A depth-capped panel has shown no convergence, so it is charged
        // its full disagreement rather than the asymptotic fraction.
        let err = if converged {
            math::abs(delta) / 15.0
        } else {
            math::abs(delta)
        };
        acc.residual += err;
        if err > acc.worst_err {
            acc.worst_err = err;
            acc.worst = (a, b);
        }
    } else {
        adaptive(f, a, fa, lm, flm, m, fm, left, tol / 2.0, depth + 1, max_depth, acc);
        adaptive(f, m, fm, rm, frm, b, fb, right, tol / 2.0, depth + 1, max_depth, acc);
    }
}
