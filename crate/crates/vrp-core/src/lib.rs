//! Constraint engines for 16 capacitated vehicle routing variants.
//!
//! The crate defines instances and solutions, a decoding state machine with
//! per-step feasibility masking, the travel-distance objective, and an
//! independent verifier. Construction that only ever takes mask-allowed
//! actions produces verifier-feasible solutions for every variant; the two
//! code paths are deliberately separate so they can check each other.
//!
//! All types are immutable value objects after construction except
//! [`DecodeState`], which is advanced functionally by [`transition`]; every
//! operation is a pure function of its inputs and safe to call from many
//! threads at once.

mod construct;
mod instance;
mod mask;
mod solution;
mod state;
mod variant;
mod verify;

pub use construct::{
    choose, construct, replay, solution_from_actions, DecodeMode, StepPolicy, StepRecord,
    UniformPolicy,
};
pub use instance::{
    build_instance, Instance, DEFAULT_CAPACITY, DEFAULT_DURATION_LIMIT, DEFAULT_SERVICE_TIME,
    DEPOT_TW,
};
pub use mask::{feasibility_mask, FeasibilityMask, MaskReason};
pub use solution::{check_partition, evaluate, evaluate_unchecked, route_cost, Solution};
pub use state::{initial_state, transition, DecodeState};
pub use variant::VariantSpec;
pub use verify::{verify, VerifyReport, Violation, ViolationKind};

/// Absolute slack for feasibility comparisons, to avoid boundary flapping.
pub const EPS: f64 = 1e-9;

/// Errors raised by the core operations.
#[derive(Debug, thiserror::Error)]
pub enum CoreError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("node index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("structural violation: {0}")]
    Structure(String),
    #[error("action {action} is masked ({reason})")]
    MaskedAction { action: usize, reason: String },
    #[error("policy contract violation: {0}")]
    PolicyContract(String),
    #[error("bad giant tour: {0}")]
    GiantTour(String),
}
