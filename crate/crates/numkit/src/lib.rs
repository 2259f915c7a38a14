//! Dense-tensor numerical core sized for embedding dimensions up to 128:
//! reverse-mode autodiff on a tape, attention and feed-forward blocks, and
//! an adaptive-moment optimizer.
//!
//! Tensors are immutable once written onto a tape; a tape is single-threaded
//! but independent tapes may run on independent threads, which is how batch
//! parallelism works upstream.

mod adam;
mod gradcheck;
mod nn;
mod params;
mod tape;
mod tensor;

pub use adam::{Adam, AdamConfig};
pub use gradcheck::grad_check;
pub use nn::{feed_forward, linear, multi_head_attention, AttentionWeights};
pub use params::{ParamSet, ParamVars};
pub use tape::{Gradients, Tape, Var};
pub use tensor::{Real, Tensor, NEG_INF};
