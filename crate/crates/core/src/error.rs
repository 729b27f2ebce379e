use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use crate::process::State;
use crate::system::Param;

/// Errors surfaced by the library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A numeric argument violated its documented precondition.
    Domain {
        arg: &'static str,
        value: f64,
        requirement: &'static str,
    },
    /// Concatenation endpoints disagree: the prefix state at the splice
    /// time does not match the suffix's initial state.
    EndpointMismatch {
        at: f64,
        prefix_end: State,
        suffix_start: State,
    },
    /// Trace construction rejected its breakpoints or values.
    InvalidTrace(String),
    /// State construction rejected its coordinates.
    InvalidState(String),
    /// Schedule construction rejected its points.
    InvalidSchedule(String),
    /// No feasible process starts at the given state.
    EmptyFeasibleSet(State),
    /// A minimization objective returned a value outside `[0, 1]` beyond
    /// the contract guard.
    ObjectiveOutOfRange { param: Param, value: f64 },
    /// An average left `[0, 1]` by more than the clamp guard.
    AverageOutOfRange { value: f64 },
    /// Adaptive quadrature could not certify the requested error bound;
    /// `lo..hi` brackets the worst unresolved panel.
    QuadratureNonConvergence { lo: f64, hi: f64 },
    /// A sweep evaluation failed at the given state and schedule point.
    Sweep {
        state: State,
        point: f64,
        source: Box<Error>,
    },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain {
                arg,
                value,
                requirement,
            } => write!(f, "argument `{arg}` = {value} violates `{requirement}`"),
            Error::EndpointMismatch {
                at,
                prefix_end,
                suffix_start,
            } => write!(
                f,
                "concatenation endpoints at t={at} disagree: prefix ends at {prefix_end}, suffix starts at {suffix_start}"
            ),
            Error::InvalidTrace(why) => write!(f, "invalid trace: {why}"),
            Error::InvalidState(why) => write!(f, "invalid state: {why}"),
            Error::InvalidSchedule(why) => write!(f, "invalid schedule: {why}"),
            Error::EmptyFeasibleSet(state) => {
                write!(f, "no feasible process starts at {state}")
            }
            Error::ObjectiveOutOfRange { param, value } => write!(
                f,
                "objective returned {value} at parameter {param}, outside [0, 1]"
            ),
            Error::AverageOutOfRange { value } => {
                write!(f, "average {value} lies outside [0, 1] beyond the clamp guard")
            }
            Error::QuadratureNonConvergence { lo, hi } => write!(
                f,
                "quadrature did not settle on [{lo}, {hi}] within the depth limit"
            ),
            Error::Sweep {
                state,
                point,
                source,
            } => write!(f, "sweep failed at state {state}, point {point}: {source}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
