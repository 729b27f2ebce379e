//! Built-in control systems.
//!
//! `paper` is a three-coordinate system over states `(x, y, r)` with
//! running cost 0 exactly when `x ∈ [1, 2]` and `r = 0`, and 1 otherwise.
//! Its feasible set consists of held trajectories from every state, runs
//! from the origin, and runs cut and held — a grammar that is closed under
//! concatenation but not under cutting an initial segment. At the origin
//! the time value is 1/2 at every horizon while the discounted value is
//! 3/4 at every rate, so both limits stabilize uniformly yet disagree.
//!
//! `sanity` is a one-coordinate drift system (`z_ω(t) = ω + t`, cost 1
//! below 1 and 0 above) that is closed under both operators; both of its
//! value limits vanish, so the sweep verdict is `Coincide`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::process::{Process, ProcessDescriptor, State, StateFn};
use crate::rng::SplitMix64;
use crate::system::{ControlSystem, Param, ParamDomain, ParamRange, ProcessFamily};
use crate::trace::PiecewiseTrace;

/// Looks up a built-in system by its registry name: `paper` or `sanity`.
pub fn system_by_name(name: &str) -> Option<ControlSystem> {
    match name {
        "paper" => Some(paper_system()),
        "sanity" => Some(sanity_system()),
        _ => None,
    }
}

/// Running cost of the `paper` system: 0 iff `x ∈ [1, 2]` and `r = 0`.
pub fn paper_cost(state: &State) -> f64 {
    let c = state.coords();
    debug_assert_eq!(c.len(), 3);
    if (1.0..=2.0).contains(&c[0]) && c[2] == 0.0 {
        0.0
    } else {
        1.0
    }
}

/// Builds a `paper` process from a structural descriptor, with its exact
/// cost trace. Panics on [`ProcessDescriptor::Opaque`], which carries no
/// evaluator.
///
/// Held trajectories store a constant-1 trace even when the anchor sits in
/// the zero-cost window with `r = 0`: the cost dips only at the single
/// instant `t = 0`, a null set that no integral sees.
pub fn paper_process(descriptor: &ProcessDescriptor) -> Process {
    match descriptor {
        ProcessDescriptor::Hold { anchor } => {
            assert_eq!(anchor.dim(), 3, "paper states have three coordinates");
            let coords = anchor.coords().to_vec();
            let eval: Arc<StateFn> = Arc::new(move |t| {
                State::xyz(coords[0], coords[1], coords[2] + t)
            });
            Process::new(
                descriptor.clone(),
                eval,
                PiecewiseTrace::constant(1.0).unwrap(),
            )
        }
        ProcessDescriptor::Run { speed } => {
            let s = *speed;
            assert!(s >= 0.0 && s.is_finite(), "run speed must be nonnegative");
            let eval: Arc<StateFn> = Arc::new(move |t| State::xyz(s * t, t, 0.0));
            Process::new(descriptor.clone(), eval, run_trace(s))
        }
        ProcessDescriptor::RunThenHold { speed, switch } => {
            let (s, cut) = (*speed, *switch);
            assert!(s >= 0.0 && s.is_finite(), "run speed must be nonnegative");
            assert!(cut > 0.0 && cut.is_finite(), "switch time must be positive");
            let eval: Arc<StateFn> = Arc::new(move |t| {
                if t < cut {
                    State::xyz(s * t, t, 0.0)
                } else {
                    State::xyz(s * cut, cut, t - cut)
                }
            });
            let trace = run_trace(s).splice(cut, &PiecewiseTrace::constant(1.0).unwrap());
            Process::new(descriptor.clone(), eval, trace)
        }
        ProcessDescriptor::Opaque { id } => {
            panic!("cannot build a process from the opaque descriptor `{id}`")
        }
    }
}

/// Exact trace of a run: the cost window `x ∈ [1, 2]` is crossed on
/// `[1/s, 2/s]`, so the trace is 1, then 0, then 1; a zero-speed run never
/// enters the window.
fn run_trace(speed: f64) -> PiecewiseTrace {
    if speed > 0.0 {
        PiecewiseTrace::new(
            vec![0.0, 1.0 / speed, 2.0 / speed],
            vec![1.0, 0.0, 1.0],
        )
        .unwrap()
    } else {
        PiecewiseTrace::constant(1.0).unwrap()
    }
}

/// Structural membership grammar of the `paper` system.
fn paper_member(descriptor: &ProcessDescriptor) -> bool {
    match descriptor {
        ProcessDescriptor::Hold { anchor } => anchor.dim() == 3,
        ProcessDescriptor::Run { speed } => *speed >= 0.0 && speed.is_finite(),
        ProcessDescriptor::RunThenHold { speed, switch } => {
            *speed >= 0.0 && speed.is_finite() && *switch > 0.0 && switch.is_finite()
        }
        ProcessDescriptor::Opaque { .. } => false,
    }
}

/// The built-in `paper` system.
pub fn paper_system() -> ControlSystem {
    let feasible = |state: &State| -> Vec<ProcessFamily> {
        let hold_anchor = state.clone();
        let hold = ProcessFamily::new(
            "a",
            ParamDomain::One(ParamRange::Interval { lo: 0.0, hi: 0.0 }),
            state.clone(),
            Arc::new(move |_| {
                paper_process(&ProcessDescriptor::Hold {
                    anchor: hold_anchor.clone(),
                })
            }),
        );
        if !state.is_origin() {
            return vec![hold];
        }
        let run = ProcessFamily::new(
            "b",
            ParamDomain::One(ParamRange::Ray { lo: 0.0 }),
            state.clone(),
            Arc::new(|p: Param| paper_process(&ProcessDescriptor::Run { speed: p.scalar() })),
        );
        // The switch axis is compactified over [0, ∞); at the degenerate
        // endpoint the prefix vanishes, leaving the held origin process.
        let run_then_hold = ProcessFamily::new(
            "b+a",
            ParamDomain::Two(ParamRange::Ray { lo: 0.0 }, ParamRange::Ray { lo: 0.0 }),
            state.clone(),
            Arc::new(|p: Param| {
                let (speed, switch) = p.pair();
                if switch > 0.0 {
                    paper_process(&ProcessDescriptor::RunThenHold { speed, switch })
                } else {
                    paper_process(&ProcessDescriptor::Hold {
                        anchor: State::xyz(0.0, 0.0, 0.0),
                    })
                }
            }),
        );
        vec![hold, run, run_then_hold]
    };

    let generators = |seed: u64, count: usize| -> Vec<Process> {
        let mut rng = SplitMix64::new(seed);
        (0..count)
            .map(|i| {
                let descriptor = match i % 3 {
                    0 => ProcessDescriptor::Hold {
                        anchor: random_paper_state(&mut rng),
                    },
                    1 => ProcessDescriptor::Run {
                        speed: rng.log_uniform(1e-3, 1e3),
                    },
                    _ => ProcessDescriptor::RunThenHold {
                        speed: rng.log_uniform(1e-3, 1e3),
                        switch: rng.log_uniform(1e-3, 1e3),
                    },
                };
                paper_process(&descriptor)
            })
            .collect()
    };

    ControlSystem::new(
        "paper",
        3,
        Arc::new(paper_cost),
        Arc::new(feasible),
        Arc::new(paper_member),
        Arc::new(generators),
    )
}

/// Random `paper` state covering all three cost regimes: half the draws
/// pin the clock coordinate at zero so the zero-cost window is reachable.
fn random_paper_state(rng: &mut SplitMix64) -> State {
    let x = rng.uniform(0.0, 4.0);
    let y = rng.uniform(0.0, 4.0);
    let r = if rng.next_f64() < 0.5 {
        0.0
    } else {
        rng.uniform(0.0, 2.0)
    };
    State::xyz(x, y, r)
}

/// Running cost of the `sanity` system: 1 below 1, 0 from there on.
pub fn sanity_cost(state: &State) -> f64 {
    if state.coords()[0] < 1.0 {
        1.0
    } else {
        0.0
    }
}

/// Builds the drift process of the `sanity` system from its anchor: the
/// one coordinate advances with time, so the trace is 1 on
/// `[0, max(0, 1 − ω))` and 0 afterwards.
pub fn sanity_process(anchor: &State) -> Process {
    assert_eq!(anchor.dim(), 1, "sanity states have one coordinate");
    let omega = anchor.coords()[0];
    let eval: Arc<StateFn> = Arc::new(move |t| State::scalar(omega + t));
    let trace = if omega >= 1.0 {
        PiecewiseTrace::constant(0.0).unwrap()
    } else {
        PiecewiseTrace::new(vec![0.0, 1.0 - omega], vec![1.0, 0.0]).unwrap()
    };
    Process::new(
        ProcessDescriptor::Hold {
            anchor: anchor.clone(),
        },
        eval,
        trace,
    )
}

/// The built-in `sanity` system: one drift trajectory from every state.
/// Shifting a drift re-anchors it, and concatenating compatible drifts
/// reproduces the prefix, so both closure checks pass by construction.
pub fn sanity_system() -> ControlSystem {
    let feasible = |state: &State| -> Vec<ProcessFamily> {
        let anchor = state.clone();
        vec![ProcessFamily::new(
            "z",
            ParamDomain::One(ParamRange::Interval { lo: 0.0, hi: 0.0 }),
            state.clone(),
            Arc::new(move |_| sanity_process(&anchor)),
        )]
    };
    let member = |descriptor: &ProcessDescriptor| -> bool {
        matches!(descriptor, ProcessDescriptor::Hold { anchor } if anchor.dim() == 1)
    };
    let generators = |seed: u64, count: usize| -> Vec<Process> {
        let mut rng = SplitMix64::new(seed);
        (0..count)
            .map(|_| sanity_process(&State::scalar(rng.uniform(0.0, 3.0))))
            .collect()
    };
    ControlSystem::new(
        "sanity",
        1,
        Arc::new(sanity_cost),
        Arc::new(feasible),
        Arc::new(member),
        Arc::new(generators),
    )
}
