//! Network building blocks composed from tape primitives.

use crate::tape::Var;
use crate::tensor::{Real, Tensor};

/// Affine map `x W + b` with `b` broadcast over rows.
pub fn linear<'t>(x: Var<'t>, w: Var<'t>, b: Var<'t>) -> Var<'t> {
    x.matmul(w).add_rowvec(b)
}

/// Two-layer position-wise feed-forward: `relu(x W1 + b1) W2 + b2`.
pub fn feed_forward<'t>(
    x: Var<'t>,
    w1: Var<'t>,
    b1: Var<'t>,
    w2: Var<'t>,
    b2: Var<'t>,
) -> Var<'t> {
    linear(linear(x, w1, b1).relu(), w2, b2)
}

/// Projection weights of one attention block.
#[derive(Clone, Copy)]
pub struct AttentionWeights<'t> {
    pub wq: Var<'t>,
    pub wk: Var<'t>,
    pub wv: Var<'t>,
    pub wo: Var<'t>,
}

/// Multi-head scaled dot-product attention.
///
/// Queries come from `q_src`, keys and values from `kv_src`; the two may
/// have different widths as long as the projections agree on the model
/// dimension. `mask` is additive (`0` valid, `-1e30` excluded) over key
/// positions, either one row shared by every query or one row per query.
/// An all-zero mask gives plain unmasked attention.
pub fn multi_head_attention<'t>(
    q_src: Var<'t>,
    kv_src: Var<'t>,
    mask: Option<&Tensor>,
    heads: usize,
    w: AttentionWeights<'t>,
) -> Var<'t> {
    let d_model = w.wq.shape().1;
    assert_eq!(d_model % heads, 0, "model dim {d_model} not divisible by {heads} heads");
    let d_head = d_model / heads;
    let scaling = 1.0 / (d_head as Real).sqrt();

    let q = q_src.matmul(w.wq);
    let k = kv_src.matmul(w.wk);
    let v = kv_src.matmul(w.wv);

    let mut outputs = Vec::with_capacity(heads);
    for h in 0..heads {
        let qh = q.slice_cols(h * d_head, d_head);
        let kh = k.slice_cols(h * d_head, d_head);
        let vh = v.slice_cols(h * d_head, d_head);
        let scores = qh.matmul_nt(kh).scale(scaling);
        let weights = scores.masked_log_softmax(mask).exp();
        outputs.push(weights.matmul(vh));
    }
    Var::concat_cols(&outputs).matmul(w.wo)
}
