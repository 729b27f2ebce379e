//! Cesàro (time-average) and Abel (discounted) value functions of abstract
//! control systems.
//!
//! A control system here is a set of feasible trajectories ("processes")
//! over a state space, together with a running cost taking values in
//! `[0, 1]`. For a process `z` the library evaluates
//!
//! ```text
//! v_T(z) = (1/T) ∫₀ᵀ g(z(t)) dt            (time average)
//! w_λ(z) = λ ∫₀^∞ e^(−λt) g(z(t)) dt        (discounted average)
//! ```
//!
//! and the corresponding value functions as infima over the feasible
//! processes starting at a state. Cost histories are kept as finite
//! piecewise-constant traces so both averages are computed exactly.
//!
//! On top of that sit two structural checks on the feasible set — closure
//! under concatenation and closure under cutting an initial segment — and a
//! sweep harness that drives `T → ∞` and `λ → 0`, estimates both value
//! limits per state, and reports whether they coincide, disagree by a gap,
//! or cannot be settled at the requested tolerance.
//!
//! Two systems ship built in: `paper`, a three-coordinate system that is
//! concatenation-closed but not shift-closed and whose two limits stabilize
//! immediately yet differ at the origin (1/2 vs 3/4), and `sanity`, a
//! one-coordinate drift system satisfying both closure properties, where
//! the limits coincide at 0.
//!
//! The crate is `no_std`-compatible (`alloc` required): disable default
//! features and enable `libm` for targets without the standard library.

#![cfg_attr(not(feature = "std"), no_std)]
// `!(x > 0.0)`-style guards reject NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("tauberian-core needs either the `std` or the `libm` feature");

pub mod averages;
pub mod closure;
mod error;
pub(crate) mod math;
pub mod process;
pub mod rng;
pub mod system;
pub mod systems;
pub mod tauberian;
pub mod trace;
pub mod value;

pub use error::{Error, Result};
pub use process::{concatenate, eval_process, shift, Process, ProcessDescriptor, State};
pub use system::{ControlSystem, Param, ParamDomain, ParamRange, ProcessFamily};
pub use trace::PiecewiseTrace;
