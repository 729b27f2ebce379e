//! Concatenation- and shift-closure checks with reproducible witnesses.
//!
//! Both checks are seeded samplings: they draw generator processes from
//! the system, apply the operator, canonicalize, and test structural
//! membership. A passing report therefore means "no counterexample found
//! in the sampled cases", never a proof; a failing report carries
//! witnesses that replay deterministically — rebuilding the witness
//! process, re-applying the operator, and re-testing membership
//! reproduces the failure.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::process::{concatenate, eval_process, shift, ProcessDescriptor};
use crate::rng::SplitMix64;
use crate::system::{ControlSystem, Param, ParamDomain, ParamRange, ProcessFamily};

/// Sampled splice and shift times are log-uniform over this range, which
/// spans the scales where the built-in systems have structure.
pub const TIME_RANGE: (f64, f64) = (1e-3, 1e3);

/// At most this many witnesses are retained in a failing report.
pub const MAX_WITNESSES: usize = 10;

/// Non-singleton families contribute this many sampled partners per draw
/// in the concatenation check.
const FAMILY_SAMPLES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureProperty {
    Concatenation,
    Shift,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureStatus {
    Pass,
    Fail,
}

/// One reproducible counterexample.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosureWitness {
    /// Descriptor of the process the operator was applied to.
    pub source: ProcessDescriptor,
    /// The concatenation partner, when the property is concatenation.
    pub partner: Option<ProcessDescriptor>,
    /// Splice or shift time.
    pub time: f64,
    /// Canonicalized descriptor of the outcome, when it could be built.
    pub outcome: Option<ProcessDescriptor>,
    pub explanation: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosureReport {
    pub property: ClosureProperty,
    pub status: ClosureStatus,
    pub witnesses: Vec<ClosureWitness>,
    pub samples_checked: usize,
}

/// Structural membership of a descriptor in the system's feasible set.
/// Built-in systems decide this from the descriptor grammar; user systems
/// supply their own predicate.
pub fn structural_member(system: &ControlSystem, descriptor: &ProcessDescriptor) -> bool {
    system.is_member(descriptor)
}

/// Samples `n` generator processes, concatenates each at a sampled time
/// with partners drawn from the families feasible at the splice state, and
/// tests membership of the canonicalized outcome.
pub fn check_concat_closure(system: &ControlSystem, seed: u64, n: usize) -> ClosureReport {
    assert!(n >= 1, "at least one sample is required");
    let generators = system.sample_generators(seed, n);
    let mut rng = SplitMix64::new(seed ^ 0x434f_4e43_4154);
    let mut witnesses = Vec::new();
    let mut failed = false;
    let mut checked = 0usize;
    for z in &generators {
        let splice_time = rng.log_uniform(TIME_RANGE.0, TIME_RANGE.1);
        let at = eval_process(z, splice_time).expect("sampled time is positive");
        for family in system.feasible(&at) {
            for p in representative_params(&family, &mut rng) {
                let partner = family.build(p);
                checked += 1;
                match concatenate(z, splice_time, &partner) {
                    Ok(joined) => {
                        if !system.is_member(joined.descriptor()) {
                            failed = true;
                            if witnesses.len() < MAX_WITNESSES {
                                witnesses.push(ClosureWitness {
                                    source: z.descriptor().clone(),
                                    partner: Some(partner.descriptor().clone()),
                                    time: splice_time,
                                    outcome: Some(joined.descriptor().clone()),
                                    explanation: format!(
                                        "{} joined with {} at t={} canonicalizes to {}, which is outside the feasible set",
                                        z.descriptor(),
                                        partner.descriptor(),
                                        splice_time,
                                        joined.descriptor()
                                    ),
                                });
                            }
                        }
                    }
                    Err(err) => {
                        // A partner that cannot even be attached means the
                        // family violated its anchor contract; report it.
                        failed = true;
                        if witnesses.len() < MAX_WITNESSES {
                            witnesses.push(ClosureWitness {
                                source: z.descriptor().clone(),
                                partner: Some(partner.descriptor().clone()),
                                time: splice_time,
                                outcome: None,
                                explanation: format!("concatenation rejected: {err}"),
                            });
                        }
                    }
                }
            }
        }
    }
    ClosureReport {
        property: ClosureProperty::Concatenation,
        status: if failed {
            ClosureStatus::Fail
        } else {
            ClosureStatus::Pass
        },
        witnesses,
        samples_checked: checked,
    }
}

/// Samples `n` pairs `(z, τ)` with `τ > 0`, shifts, canonicalizes, and
/// tests membership. The first [`MAX_WITNESSES`] failures are retained.
pub fn check_shift_closure(system: &ControlSystem, seed: u64, n: usize) -> ClosureReport {
    assert!(n >= 1, "at least one sample is required");
    let generators = system.sample_generators(seed, n);
    let mut rng = SplitMix64::new(seed ^ 0x0053_4849_4654);
    let mut witnesses = Vec::new();
    let mut failed = false;
    for z in &generators {
        let tau = rng.log_uniform(TIME_RANGE.0, TIME_RANGE.1);
        let shifted = shift(z, tau).expect("sampled time is nonnegative");
        if !system.is_member(shifted.descriptor()) {
            failed = true;
            if witnesses.len() < MAX_WITNESSES {
                witnesses.push(ClosureWitness {
                    source: z.descriptor().clone(),
                    partner: None,
                    time: tau,
                    outcome: Some(shifted.descriptor().clone()),
                    explanation: format!(
                        "{} shifted by tau={} leaves the feasible set (canonical form {})",
                        z.descriptor(),
                        tau,
                        shifted.descriptor()
                    ),
                });
            }
        }
    }
    ClosureReport {
        property: ClosureProperty::Shift,
        status: if failed {
            ClosureStatus::Fail
        } else {
            ClosureStatus::Pass
        },
        witnesses,
        samples_checked: generators.len(),
    }
}

/// Parameters probing a family: the singleton parameter when the family is
/// degenerate, otherwise a few sampled points per axis.
fn representative_params(family: &ProcessFamily, rng: &mut SplitMix64) -> Vec<Param> {
    fn sample(range: ParamRange, rng: &mut SplitMix64) -> f64 {
        match range {
            ParamRange::Interval { lo, hi } => rng.uniform(lo, hi),
            ParamRange::Ray { lo } => lo + rng.log_uniform(TIME_RANGE.0, TIME_RANGE.1),
        }
    }
    match family.domain() {
        ParamDomain::One(range) => {
            if range.is_singleton() {
                if let ParamRange::Interval { lo, .. } = range {
                    return [Param::Scalar(lo)].to_vec();
                }
            }
            (0..FAMILY_SAMPLES)
                .map(|_| Param::Scalar(sample(range, rng)))
                .collect()
        }
        ParamDomain::Two(r1, r2) => (0..FAMILY_SAMPLES)
            .map(|_| Param::Pair(sample(r1, rng), sample(r2, rng)))
            .collect(),
    }
}
