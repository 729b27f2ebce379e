//! States, processes, and the two trajectory operators everything else
//! builds on: concatenation and time shift.
//!
//! A [`Process`] is a trajectory `t ↦ state` paired with a structural
//! [`ProcessDescriptor`] and the exact piecewise-constant trace of its
//! running cost. The descriptor is what makes membership in a feasible set
//! decidable: concatenation and shift canonicalize the result back into
//! the structural grammar whenever the outcome matches one of its forms,
//! and tag it [`ProcessDescriptor::Opaque`] otherwise.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::math;
use crate::trace::PiecewiseTrace;

/// Per-coordinate tolerance for endpoint matching when either side of a
/// concatenation is [`ProcessDescriptor::Opaque`]. Structural descriptors
/// must match exactly.
pub const OPAQUE_ENDPOINT_TOL: f64 = 1e-12;

/// A point of the state space: a fixed-length vector of nonnegative reals.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    coords: Vec<f64>,
}

impl State {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidState("states need at least one coordinate".into()));
        }
        for &c in &coords {
            if !c.is_finite() || c < 0.0 {
                return Err(Error::InvalidState(format!(
                    "coordinate {c} is not a nonnegative finite real"
                )));
            }
        }
        Ok(Self { coords })
    }

    /// Three-coordinate state `(x, y, r)`. Panics on invalid coordinates.
    pub fn xyz(x: f64, y: f64, r: f64) -> Self {
        Self::new([x, y, r].to_vec()).expect("xyz coordinates must be nonnegative")
    }

    /// One-coordinate state. Panics on an invalid coordinate.
    pub fn scalar(u: f64) -> Self {
        Self::new([u].to_vec()).expect("scalar coordinate must be nonnegative")
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(|&c| c == 0.0)
    }

    /// Per-coordinate comparison within `tol`.
    pub fn approx_eq(&self, other: &State, tol: f64) -> bool {
        self.coords.len() == other.coords.len()
            && self
                .coords
                .iter()
                .zip(&other.coords)
                .all(|(a, b)| math::abs(a - b) <= tol)
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Structural tag of a trajectory: the closed algebra the built-in systems
/// reason over.
///
/// `Hold` keeps every coordinate fixed except the last, which advances
/// with elapsed time. `Run` starts at the origin of a three-coordinate
/// space and moves at `speed` along the first axis while the second tracks
/// elapsed time and the third stays at zero; `RunThenHold` is a run cut at
/// `switch` and held from there on. Anything outside these forms is
/// `Opaque` and carries a human-readable provenance id.
#[derive(Debug, Clone, PartialEq)]
pub enum ProcessDescriptor {
    Hold { anchor: State },
    Run { speed: f64 },
    RunThenHold { speed: f64, switch: f64 },
    Opaque { id: String },
}

impl fmt::Display for ProcessDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProcessDescriptor::Hold { anchor } => write!(f, "a{anchor}"),
            ProcessDescriptor::Run { speed } => write!(f, "b(s={speed})"),
            ProcessDescriptor::RunThenHold { speed, switch } => {
                write!(f, "b+a(s={speed},tau={switch})")
            }
            ProcessDescriptor::Opaque { id } => write!(f, "{id}"),
        }
    }
}

/// Evaluator mapping elapsed time to a state.
pub type StateFn = dyn Fn(f64) -> State + Send + Sync;

/// A feasible trajectory: structural descriptor, evaluator, and the exact
/// cost trace the averaging layer integrates.
///
/// Processes are immutable; the evaluator is shared, so cloning is cheap
/// and every operation on processes is safe to call concurrently.
#[derive(Clone)]
pub struct Process {
    descriptor: ProcessDescriptor,
    eval: Arc<StateFn>,
    trace: PiecewiseTrace,
}

impl Process {
    pub fn new(descriptor: ProcessDescriptor, eval: Arc<StateFn>, trace: PiecewiseTrace) -> Self {
        Self {
            descriptor,
            eval,
            trace,
        }
    }

    pub fn descriptor(&self) -> &ProcessDescriptor {
        &self.descriptor
    }

    pub fn trace(&self) -> &PiecewiseTrace {
        &self.trace
    }

    pub fn initial_state(&self) -> State {
        (self.eval)(0.0)
    }
}

impl fmt::Debug for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Process")
            .field("descriptor", &self.descriptor)
            .field("trace", &self.trace)
            .finish_non_exhaustive()
    }
}

/// State of `z` at time `t ≥ 0`.
pub fn eval_process(z: &Process, t: f64) -> Result<State> {
    if !(t >= 0.0) {
        return Err(Error::Domain {
            arg: "t",
            value: t,
            requirement: "t >= 0",
        });
    }
    Ok((z.eval)(t))
}

/// Follows `z` on `[0, h)`, then `z2` restarted at time `h`.
///
/// Requires `h > 0` and matching endpoints: the state of `z` at `h` must
/// equal the initial state of `z2` — exactly for structural descriptors,
/// within [`OPAQUE_ENDPOINT_TOL`] per coordinate when either side is
/// opaque. The result's trace is the spliced trace and its descriptor is
/// canonicalized back into the structural grammar when possible.
pub fn concatenate(z: &Process, h: f64, z2: &Process) -> Result<Process> {
    if !(h > 0.0) {
        return Err(Error::Domain {
            arg: "h",
            value: h,
            requirement: "h > 0",
        });
    }
    let prefix_end = (z.eval)(h);
    let suffix_start = z2.initial_state();
    let generic = matches!(z.descriptor, ProcessDescriptor::Opaque { .. })
        || matches!(z2.descriptor, ProcessDescriptor::Opaque { .. });
    let matched = if generic {
        prefix_end.approx_eq(&suffix_start, OPAQUE_ENDPOINT_TOL)
    } else {
        prefix_end == suffix_start
    };
    if !matched {
        return Err(Error::EndpointMismatch {
            at: h,
            prefix_end,
            suffix_start,
        });
    }
    let descriptor = concat_descriptor(&z.descriptor, h, &z2.descriptor);
    let trace = z.trace.splice(h, &z2.trace);
    let prefix = Arc::clone(&z.eval);
    let suffix = Arc::clone(&z2.eval);
    let eval: Arc<StateFn> = Arc::new(move |t| {
        if t < h {
            prefix(t)
        } else {
            suffix(t - h)
        }
    });
    Ok(Process::new(descriptor, eval, trace))
}

/// Cuts the first `tau ≥ 0` time units off `z`: the result evaluates to
/// `t ↦ z(t + tau)`.
pub fn shift(z: &Process, tau: f64) -> Result<Process> {
    if !(tau >= 0.0) {
        return Err(Error::Domain {
            arg: "tau",
            value: tau,
            requirement: "tau >= 0",
        });
    }
    if tau == 0.0 {
        return Ok(z.clone());
    }
    let descriptor = shift_descriptor(&z.descriptor, tau);
    let trace = z.trace.shifted(tau);
    let inner = Arc::clone(&z.eval);
    let eval: Arc<StateFn> = Arc::new(move |t| inner(t + tau));
    Ok(Process::new(descriptor, eval, trace))
}

/// The closed part of the concatenation algebra. A held trajectory absorbs
/// a matching hold; a run followed by a hold becomes a cut run; cutting a
/// cut run earlier moves the switch. Everything else leaves the grammar.
fn concat_descriptor(
    a: &ProcessDescriptor,
    h: f64,
    b: &ProcessDescriptor,
) -> ProcessDescriptor {
    use ProcessDescriptor::*;
    match (a, b) {
        (Hold { anchor }, Hold { .. }) => Hold {
            anchor: anchor.clone(),
        },
        (Run { speed }, Hold { .. }) => RunThenHold {
            speed: *speed,
            switch: h,
        },
        (RunThenHold { speed, switch }, Hold { .. }) => RunThenHold {
            speed: *speed,
            switch: switch.min(h),
        },
        _ => Opaque {
            id: format!("concat({a}, {h}, {b})"),
        },
    }
}

/// The closed part of the shift algebra. Shifting a hold advances its
/// clock; shifting a cut run past its switch lands inside the held part.
/// Shifting into a moving run leaves the grammar.
fn shift_descriptor(d: &ProcessDescriptor, tau: f64) -> ProcessDescriptor {
    use ProcessDescriptor::*;
    match d {
        Hold { anchor } => {
            let mut coords = anchor.coords().to_vec();
            *coords.last_mut().unwrap() += tau;
            Hold {
                anchor: State::new(coords).expect("advancing the clock keeps coordinates valid"),
            }
        }
        RunThenHold { speed, switch } if tau >= *switch => Hold {
            anchor: State::xyz(speed * switch, *switch, tau - switch),
        },
        Run { .. } | RunThenHold { .. } => Opaque {
            id: format!("shift({d}, {tau})"),
        },
        Opaque { id } => Opaque {
            id: format!("shift({id}, {tau})"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::paper_process;
    use alloc::vec;

    fn hold(x: f64, y: f64, r: f64) -> Process {
        paper_process(&ProcessDescriptor::Hold {
            anchor: State::xyz(x, y, r),
        })
    }

    fn run(speed: f64) -> Process {
        paper_process(&ProcessDescriptor::Run { speed })
    }

    #[test]
    fn state_rejects_invalid_coordinates() {
        assert!(State::new(vec![]).is_err());
        assert!(State::new(vec![-0.1]).is_err());
        assert!(State::new(vec![f64::NAN]).is_err());
        assert!(State::new(vec![0.0, 1.0, 2.0]).is_ok());
    }

    #[test]
    fn eval_run_moves_along_first_axis() {
        let z = run(1.0);
        assert_eq!(eval_process(&z, 2.0).unwrap(), State::xyz(2.0, 2.0, 0.0));
    }

    #[test]
    fn eval_hold_starts_at_its_anchor() {
        let z = hold(1.0, 1.0, 1.0);
        assert_eq!(eval_process(&z, 0.0).unwrap(), State::xyz(1.0, 1.0, 1.0));
    }

    #[test]
    fn eval_concatenation_piecewise() {
        // Follow the unit run for 3 time units, then hold at (3,3,0):
        // at t=5 the held clock has advanced by 2.
        let joined = concatenate(&run(1.0), 3.0, &hold(3.0, 3.0, 0.0)).unwrap();
        assert_eq!(
            eval_process(&joined, 5.0).unwrap(),
            State::xyz(3.0, 3.0, 2.0)
        );
    }

    #[test]
    fn eval_rejects_negative_time() {
        let z = run(1.0);
        assert!(matches!(
            eval_process(&z, -1.0),
            Err(Error::Domain { arg: "t", .. })
        ));
    }

    #[test]
    fn hold_absorbs_matching_hold() {
        let joined = concatenate(&hold(1.0, 1.0, 0.0), 2.0, &hold(1.0, 1.0, 2.0)).unwrap();
        assert_eq!(
            joined.descriptor(),
            &ProcessDescriptor::Hold {
                anchor: State::xyz(1.0, 1.0, 0.0)
            }
        );
        for t in [0.0, 0.5, 2.0, 7.25] {
            assert_eq!(
                eval_process(&joined, t).unwrap(),
                State::xyz(1.0, 1.0, t)
            );
        }
    }

    #[test]
    fn concatenation_boundary_belongs_to_suffix() {
        let joined = concatenate(&run(1.0), 3.0, &hold(3.0, 3.0, 0.0)).unwrap();
        assert_eq!(
            eval_process(&joined, 2.0).unwrap(),
            State::xyz(2.0, 2.0, 0.0)
        );
        assert_eq!(
            eval_process(&joined, 3.0).unwrap(),
            State::xyz(3.0, 3.0, 0.0)
        );
    }

    #[test]
    fn concatenation_splices_traces() {
        // The run's cost dips on [1,2); the held tail costs 1 throughout,
        // because its clock is positive after the switch.
        let joined = concatenate(&run(1.0), 3.0, &hold(3.0, 3.0, 0.0)).unwrap();
        assert_eq!(joined.trace().breakpoints(), &[0.0, 1.0, 2.0]);
        assert_eq!(joined.trace().values(), &[1.0, 0.0, 1.0]);
    }

    #[test]
    fn concatenation_rejects_mismatched_endpoints() {
        let err = concatenate(&run(1.0), 3.0, &hold(1.0, 1.0, 0.0)).unwrap_err();
        match err {
            Error::EndpointMismatch {
                at,
                prefix_end,
                suffix_start,
            } => {
                assert_eq!(at, 3.0);
                assert_eq!(prefix_end, State::xyz(3.0, 3.0, 0.0));
                assert_eq!(suffix_start, State::xyz(1.0, 1.0, 0.0));
            }
            other => panic!("expected endpoint mismatch, got {other:?}"),
        }
    }

    #[test]
    fn concatenation_rejects_nonpositive_splice_time() {
        let z = hold(1.0, 1.0, 0.0);
        assert!(matches!(
            concatenate(&z, 0.0, &z),
            Err(Error::Domain { arg: "h", .. })
        ));
        assert!(matches!(
            concatenate(&z, -1.0, &z),
            Err(Error::Domain { arg: "h", .. })
        ));
    }

    #[test]
    fn shift_advances_a_hold() {
        let shifted = shift(&hold(1.0, 2.0, 0.0), 3.0).unwrap();
        assert_eq!(
            shifted.descriptor(),
            &ProcessDescriptor::Hold {
                anchor: State::xyz(1.0, 2.0, 3.0)
            }
        );
    }

    #[test]
    fn shift_of_run_is_opaque() {
        let shifted = shift(&run(1.0), 0.5).unwrap();
        assert!(matches!(
            shifted.descriptor(),
            ProcessDescriptor::Opaque { .. }
        ));
        for t in [0.0, 1.0, 4.5] {
            assert_eq!(
                eval_process(&shifted, t).unwrap(),
                State::xyz(t + 0.5, t + 0.5, 0.0)
            );
        }
    }

    #[test]
    fn shift_past_switch_lands_in_the_hold() {
        let joined = concatenate(&run(1.0), 2.0, &hold(2.0, 2.0, 0.0)).unwrap();
        let shifted = shift(&joined, 2.0).unwrap();
        assert_eq!(
            shifted.descriptor(),
            &ProcessDescriptor::Hold {
                anchor: State::xyz(2.0, 2.0, 0.0)
            }
        );
        let reference = hold(2.0, 2.0, 0.0);
        for t in [0.0, 0.25, 3.0] {
            assert_eq!(
                eval_process(&shifted, t).unwrap(),
                eval_process(&reference, t).unwrap()
            );
        }
    }

    #[test]
    fn shift_rejects_negative_time() {
        assert!(matches!(
            shift(&run(1.0), -0.5),
            Err(Error::Domain { arg: "tau", .. })
        ));
    }
}
