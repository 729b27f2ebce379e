//! Feasible families and the control-system container.
//!
//! A [`ControlSystem`] bundles the pieces the value, closure, and sweep
//! layers consume: the state dimension, the running cost, a map from a
//! state to the finite list of [`ProcessFamily`]s feasible from it, a
//! structural membership test over descriptors, and a seeded generator
//! sampler for closure checks. Built-in instances live in
//! [`crate::systems`]; user systems are assembled through
//! [`ControlSystem::new`].

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::process::{Process, ProcessDescriptor, State};

/// A family parameter: scalar for one-dimensional domains, a pair for
/// product domains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Param {
    Scalar(f64),
    Pair(f64, f64),
}

impl Param {
    /// The scalar payload; panics on a pair.
    pub fn scalar(self) -> f64 {
        match self {
            Param::Scalar(x) => x,
            Param::Pair(..) => panic!("expected a scalar parameter"),
        }
    }

    /// The pair payload; panics on a scalar.
    pub fn pair(self) -> (f64, f64) {
        match self {
            Param::Pair(a, b) => (a, b),
            Param::Scalar(_) => panic!("expected a pair parameter"),
        }
    }

    pub fn components(self) -> Vec<f64> {
        match self {
            Param::Scalar(x) => [x].to_vec(),
            Param::Pair(a, b) => [a, b].to_vec(),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Scalar(x) => write!(f, "{x}"),
            Param::Pair(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

/// One axis of a parameter domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamRange {
    /// Closed interval `[lo, hi]`; a singleton when `lo == hi`.
    Interval { lo: f64, hi: f64 },
    /// Ray `[lo, ∞)`.
    Ray { lo: f64 },
}

impl ParamRange {
    pub fn contains(&self, x: f64) -> bool {
        match *self {
            ParamRange::Interval { lo, hi } => x >= lo && x <= hi,
            ParamRange::Ray { lo } => x >= lo,
        }
    }

    pub fn is_singleton(&self) -> bool {
        matches!(*self, ParamRange::Interval { lo, hi } if lo == hi)
    }
}

/// Parameter domain of a family: one axis or a product of two.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamDomain {
    One(ParamRange),
    Two(ParamRange, ParamRange),
}

impl ParamDomain {
    pub fn contains(&self, p: Param) -> bool {
        match (*self, p) {
            (ParamDomain::One(r), Param::Scalar(x)) => r.contains(x),
            (ParamDomain::Two(r1, r2), Param::Pair(a, b)) => r1.contains(a) && r2.contains(b),
            _ => false,
        }
    }
}

/// Builder mapping a parameter to a process.
pub type BuildFn = dyn Fn(Param) -> Process + Send + Sync;

/// A parameterized slice of the feasible set: every built process starts
/// at the family's anchor state.
#[derive(Clone)]
pub struct ProcessFamily {
    label: String,
    domain: ParamDomain,
    anchor: State,
    build: Arc<BuildFn>,
}

impl ProcessFamily {
    pub fn new(
        label: impl Into<String>,
        domain: ParamDomain,
        anchor: State,
        build: Arc<BuildFn>,
    ) -> Self {
        Self {
            label: label.into(),
            domain,
            anchor,
            build,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn domain(&self) -> ParamDomain {
        self.domain
    }

    pub fn anchor(&self) -> &State {
        &self.anchor
    }

    /// Builds the process at `p`, which must lie in the family's domain.
    pub fn build(&self, p: Param) -> Process {
        debug_assert!(self.domain.contains(p), "parameter {p} outside the domain");
        (self.build)(p)
    }
}

impl fmt::Debug for ProcessFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProcessFamily")
            .field("label", &self.label)
            .field("domain", &self.domain)
            .field("anchor", &self.anchor)
            .finish_non_exhaustive()
    }
}

pub type CostFn = dyn Fn(&State) -> f64 + Send + Sync;
pub type FeasibleFn = dyn Fn(&State) -> Vec<ProcessFamily> + Send + Sync;
pub type MemberFn = dyn Fn(&ProcessDescriptor) -> bool + Send + Sync;
pub type GeneratorFn = dyn Fn(u64, usize) -> Vec<Process> + Send + Sync;

/// An abstract control system: state space dimension, running cost with
/// range `[0, 1]`, feasible-set generator, structural membership test,
/// and a seeded sampler of generator processes for closure checks.
///
/// Instances are immutable and cheap to clone; all accessors are pure.
#[derive(Clone)]
pub struct ControlSystem {
    name: String,
    state_dim: usize,
    cost: Arc<CostFn>,
    feasible: Arc<FeasibleFn>,
    member: Arc<MemberFn>,
    generators: Arc<GeneratorFn>,
}

impl ControlSystem {
    pub fn new(
        name: impl Into<String>,
        state_dim: usize,
        cost: Arc<CostFn>,
        feasible: Arc<FeasibleFn>,
        member: Arc<MemberFn>,
        generators: Arc<GeneratorFn>,
    ) -> Self {
        assert!(state_dim > 0, "state dimension must be positive");
        Self {
            name: name.into(),
            state_dim,
            cost,
            feasible,
            member,
            generators,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn state_dim(&self) -> usize {
        self.state_dim
    }

    /// Running cost of a state, in `[0, 1]`.
    pub fn cost(&self, state: &State) -> f64 {
        (self.cost)(state)
    }

    /// The finite list of families feasible from `state`.
    pub fn feasible(&self, state: &State) -> Vec<ProcessFamily> {
        (self.feasible)(state)
    }

    /// Structural membership of a descriptor in the feasible set.
    pub fn is_member(&self, descriptor: &ProcessDescriptor) -> bool {
        (self.member)(descriptor)
    }

    /// Deterministic sample of `count` generator processes for `seed`.
    pub fn sample_generators(&self, seed: u64, count: usize) -> Vec<Process> {
        (self.generators)(seed, count)
    }
}

impl fmt::Debug for ControlSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ControlSystem")
            .field("name", &self.name)
            .field("state_dim", &self.state_dim)
            .finish_non_exhaustive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domains_classify_membership() {
        let interval = ParamRange::Interval { lo: 0.0, hi: 2.0 };
        assert!(interval.contains(0.0) && interval.contains(2.0));
        assert!(!interval.contains(2.5));
        let ray = ParamRange::Ray { lo: 1.0 };
        assert!(ray.contains(1e9));
        assert!(!ray.contains(0.5));
        let two = ParamDomain::Two(interval, ray);
        assert!(two.contains(Param::Pair(1.0, 3.0)));
        assert!(!two.contains(Param::Scalar(1.0)));
    }

    #[test]
    fn singleton_detection() {
        assert!(ParamRange::Interval { lo: 1.0, hi: 1.0 }.is_singleton());
        assert!(!ParamRange::Interval { lo: 1.0, hi: 2.0 }.is_singleton());
        assert!(!ParamRange::Ray { lo: 0.0 }.is_singleton());
    }

    #[test]
    fn shared_types_are_thread_safe() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<ControlSystem>();
        assert_send_sync::<ProcessFamily>();
        assert_send_sync::<Process>();
    }
}
