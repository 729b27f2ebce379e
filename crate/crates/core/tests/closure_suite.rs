//! Closure checks on built-in and user-assembled systems.

use std::sync::Arc;

use tauberian_core::closure::{
    check_concat_closure, check_shift_closure, structural_member, ClosureStatus,
};
use tauberian_core::process::{shift, ProcessDescriptor};
use tauberian_core::rng::SplitMix64;
use tauberian_core::systems::{paper_cost, paper_process, paper_system};
use tauberian_core::{ControlSystem, ParamDomain, ParamRange, ProcessFamily, State};

/// The grammar with held trajectories only: shifting a hold stays a hold,
/// so restricting the generators to holds makes the shift check pass.
fn paper_system_with_hold_generators() -> ControlSystem {
    let feasible = |state: &State| -> Vec<ProcessFamily> {
        let anchor = state.clone();
        vec![ProcessFamily::new(
            "a",
            ParamDomain::One(ParamRange::Interval { lo: 0.0, hi: 0.0 }),
            state.clone(),
            Arc::new(move |_| {
                paper_process(&ProcessDescriptor::Hold {
                    anchor: anchor.clone(),
                })
            }),
        )]
    };
    let member = |descriptor: &ProcessDescriptor| -> bool {
        matches!(descriptor, ProcessDescriptor::Hold { anchor } if anchor.dim() == 3)
            || matches!(descriptor, ProcessDescriptor::Run { .. })
            || matches!(descriptor, ProcessDescriptor::RunThenHold { .. })
    };
    let generators = |seed: u64, count: usize| {
        let mut rng = SplitMix64::new(seed);
        (0..count)
            .map(|_| {
                paper_process(&ProcessDescriptor::Hold {
                    anchor: State::xyz(
                        rng.uniform(0.0, 4.0),
                        rng.uniform(0.0, 4.0),
                        rng.uniform(0.0, 2.0),
                    ),
                })
            })
            .collect()
    };
    ControlSystem::new(
        "paper-holds",
        3,
        Arc::new(paper_cost),
        Arc::new(feasible),
        Arc::new(member),
        Arc::new(generators),
    )
}

#[test]
fn hold_generators_shift_closed() {
    let system = paper_system_with_hold_generators();
    let report = check_shift_closure(&system, 17, 300);
    assert_eq!(report.status, ClosureStatus::Pass);
    assert!(report.witnesses.is_empty());
    assert_eq!(report.samples_checked, 300);
}

#[test]
fn shift_witnesses_replay_deterministically() {
    let system = paper_system();
    let report = check_shift_closure(&system, 7, 500);
    assert_eq!(report.status, ClosureStatus::Fail);
    for witness in &report.witnesses {
        let z = paper_process(&witness.source);
        let shifted = shift(&z, witness.time).unwrap();
        assert!(!structural_member(&system, shifted.descriptor()));
        assert_eq!(witness.outcome.as_ref(), Some(shifted.descriptor()));
    }
}

#[test]
fn concat_closure_scales_with_samples() {
    let system = paper_system();
    for n in [1, 10, 500] {
        let report = check_concat_closure(&system, 23, n);
        assert_eq!(report.status, ClosureStatus::Pass);
        assert!(report.samples_checked >= n);
    }
}

#[test]
fn failing_report_has_nonempty_witnesses() {
    // Declare everything a non-member: every sample becomes a witness,
    // capped at the report limit.
    let base = paper_system();
    let system = ControlSystem::new(
        "reject-all",
        3,
        Arc::new(paper_cost),
        {
            let base = base.clone();
            Arc::new(move |s: &State| base.feasible(s))
        },
        Arc::new(|_: &ProcessDescriptor| false),
        {
            let base = base.clone();
            Arc::new(move |seed, count| base.sample_generators(seed, count))
        },
    );
    let report = check_shift_closure(&system, 29, 50);
    assert_eq!(report.status, ClosureStatus::Fail);
    assert!(!report.witnesses.is_empty());
    assert!(report.witnesses.len() <= 10);
    assert_eq!(report.samples_checked, 50);
}
