//! Reverse-mode autodiff on an append-only tape.
//!
//! Operations push nodes in execution order, which is already a topological
//! order, so the backward pass is a single reverse sweep that visits each
//! node exactly once. A tape is single-threaded; independent tapes can run
//! on independent threads.

use std::cell::RefCell;

use crate::tensor::{Real, Tensor, NEG_INF};

/// Entries at or below this are treated as the -inf sentinel.
const MASKED_BELOW: Real = -1e29;

#[derive(Debug)]
enum Op {
    Leaf,
    Add(usize, usize),
    Sub(usize, usize),
    Neg(usize),
    Mul(usize, usize),
    Scale(usize, Real),
    AddRowVec(usize, usize),
    MatMul(usize, usize),
    /// a * b^T
    MatMulNT(usize, usize),
    Relu(usize),
    Tanh(usize),
    Exp(usize),
    Sum(usize),
    MeanRows(usize),
    ConcatRows(Vec<usize>),
    ConcatCols(Vec<usize>),
    SliceCols { input: usize, start: usize },
    SelectRows { input: usize, rows: Vec<usize> },
    Pick { input: usize, row: usize, col: usize },
    PickPerRow { input: usize, cols: Vec<usize> },
    LogSoftmaxRows { input: usize, mask: Option<Tensor> },
    LayerNorm { x: usize, gamma: usize, beta: usize },
}

struct Node {
    op: Op,
    value: Tensor,
    /// False on branches no trainable leaf feeds; backward skips them.
    needs_grad: bool,
}

/// Records primitive operations for one forward computation.
pub struct Tape {
    nodes: RefCell<Vec<Node>>,
}

/// Handle to a tape node.
#[derive(Clone, Copy)]
pub struct Var<'t> {
    tape: &'t Tape,
    id: usize,
}

/// Per-node gradients produced by [`Tape::backward`].
pub struct Gradients {
    grads: Vec<Option<Tensor>>,
}

impl Gradients {
    /// Gradient of a leaf; zero when the leaf did not participate.
    pub fn of(&self, var: Var<'_>) -> Tensor {
        match &self.grads[var.id] {
            Some(g) => g.clone(),
            None => {
                let (r, c) = var.shape();
                Tensor::zeros(r, c)
            }
        }
    }
}

impl Default for Tape {
    fn default() -> Self {
        Self::new()
    }
}

impl Tape {
    pub fn new() -> Tape {
        Tape { nodes: RefCell::new(Vec::new()) }
    }

    pub fn len(&self) -> usize {
        self.nodes.borrow().len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.borrow().is_empty()
    }

    /// Lift a tensor onto the tape. It receives gradients iff its
    /// `requires_grad` flag is set.
    pub fn leaf(&self, value: Tensor) -> Var<'_> {
        let needs = value.requires_grad;
        self.push(Op::Leaf, value, needs)
    }

    /// Lift a tensor that never receives gradients.
    pub fn constant(&self, mut value: Tensor) -> Var<'_> {
        value.requires_grad = false;
        self.push(Op::Leaf, value, false)
    }

    pub fn scalar(&self, v: Real) -> Var<'_> {
        self.constant(Tensor::scalar(v))
    }

    fn push(&self, op: Op, value: Tensor, needs_grad: bool) -> Var<'_> {
        let mut nodes = self.nodes.borrow_mut();
        nodes.push(Node { op, value, needs_grad });
        Var { tape: self, id: nodes.len() - 1 }
    }

    fn value_of<R>(&self, id: usize, f: impl FnOnce(&Tensor) -> R) -> R {
        f(&self.nodes.borrow()[id].value)
    }

    fn needs(&self, id: usize) -> bool {
        self.nodes.borrow()[id].needs_grad
    }

    /// Reverse sweep from a scalar loss. Panics when the loss is not 1x1.
    pub fn backward(&self, loss: Var<'_>) -> Gradients {
        let nodes = self.nodes.borrow();
        assert_eq!(
            nodes[loss.id].value.shape(),
            (1, 1),
            "backward requires a scalar loss"
        );
        let mut grads: Vec<Option<Tensor>> = vec![None; nodes.len()];
        grads[loss.id] = Some(Tensor::scalar(1.0));

        for id in (0..=loss.id).rev() {
            let g = match grads[id].take() {
                Some(g) => g,
                None => continue,
            };
            let node = &nodes[id];
            if !node.needs_grad {
                continue;
            }
            match &node.op {
                Op::Leaf => {
                    grads[id] = Some(g);
                    continue;
                }
                Op::Add(a, b) => {
                    accumulate(&nodes, &mut grads, *a, g.clone());
                    accumulate(&nodes, &mut grads, *b, g);
                }
                Op::Sub(a, b) => {
                    accumulate(&nodes, &mut grads, *a, g.clone());
                    accumulate(&nodes, &mut grads, *b, g.scale(-1.0));
                }
                Op::Neg(a) => accumulate(&nodes, &mut grads, *a, g.scale(-1.0)),
                Op::Mul(a, b) => {
                    let ga = g.mul(&nodes[*b].value);
                    let gb = g.mul(&nodes[*a].value);
                    accumulate(&nodes, &mut grads, *a, ga);
                    accumulate(&nodes, &mut grads, *b, gb);
                }
                Op::Scale(a, c) => accumulate(&nodes, &mut grads, *a, g.scale(*c)),
                Op::AddRowVec(a, b) => {
                    accumulate(&nodes, &mut grads, *b, g.sum_rows());
                    accumulate(&nodes, &mut grads, *a, g);
                }
                Op::MatMul(a, b) => {
                    // y = a b: da = g b^T, db = a^T g
                    let ga = g.matmul_nt(&nodes[*b].value);
                    let gb = nodes[*a].value.matmul_tn(&g);
                    accumulate(&nodes, &mut grads, *a, ga);
                    accumulate(&nodes, &mut grads, *b, gb);
                }
                Op::MatMulNT(a, b) => {
                    // y = a b^T: da = g b, db = g^T a
                    let ga = g.matmul(&nodes[*b].value);
                    let gb = g.matmul_tn(&nodes[*a].value);
                    accumulate(&nodes, &mut grads, *a, ga);
                    accumulate(&nodes, &mut grads, *b, gb);
                }
                Op::Relu(a) => {
                    let mut ga = g;
                    let x = &nodes[*a].value;
                    for (gv, &xv) in ga.data_mut().iter_mut().zip(x.data()) {
                        if xv <= 0.0 {
                            *gv = 0.0;
                        }
                    }
                    accumulate(&nodes, &mut grads, *a, ga);
                }
                Op::Tanh(a) => {
                    let mut ga = g;
                    for (gv, &yv) in ga.data_mut().iter_mut().zip(node.value.data()) {
                        *gv *= 1.0 - yv * yv;
                    }
                    accumulate(&nodes, &mut grads, *a, ga);
                }
                Op::Exp(a) => {
                    let ga = g.mul(&node.value);
                    accumulate(&nodes, &mut grads, *a, ga);
                }
                Op::Sum(a) => {
                    let (r, c) = nodes[*a].value.shape();
                    let ga = Tensor::from_vec(r, c, vec![g.item(); r * c]);
                    accumulate(&nodes, &mut grads, *a, ga);
                }
                Op::MeanRows(a) => {
                    let (r, c) = nodes[*a].value.shape();
                    let w = 1.0 / r as Real;
                    let mut ga = Tensor::zeros(r, c);
                    for row in 0..r {
                        for col in 0..c {
                            ga.set(row, col, g.get(0, col) * w);
                        }
                    }
                    accumulate(&nodes, &mut grads, *a, ga);
                }
                Op::ConcatRows(parts) => {
                    let mut offset = 0;
                    for &p in parts {
                        let rows = nodes[p].value.rows();
                        let gp = g.select_rows(&(offset..offset + rows).collect::<Vec<_>>());
                        accumulate(&nodes, &mut grads, p, gp);
                        offset += rows;
                    }
                }
                Op::ConcatCols(parts) => {
                    let mut offset = 0;
                    for &p in parts {
                        let cols = nodes[p].value.cols();
                        let gp = g.slice_cols(offset, cols);
                        accumulate(&nodes, &mut grads, p, gp);
                        offset += cols;
                    }
                }
                Op::SliceCols { input, start } => {
                    let (r, c) = nodes[*input].value.shape();
                    let mut ga = Tensor::zeros(r, c);
                    for row in 0..g.rows() {
                        for col in 0..g.cols() {
                            ga.set(row, start + col, g.get(row, col));
                        }
                    }
                    accumulate(&nodes, &mut grads, *input, ga);
                }
                Op::SelectRows { input, rows } => {
                    let (r, c) = nodes[*input].value.shape();
                    let mut ga = Tensor::zeros(r, c);
                    for (out_row, &src_row) in rows.iter().enumerate() {
                        for col in 0..c {
                            let v = ga.get(src_row, col) + g.get(out_row, col);
                            ga.set(src_row, col, v);
                        }
                    }
                    accumulate(&nodes, &mut grads, *input, ga);
                }
                Op::Pick { input, row, col } => {
                    let (r, c) = nodes[*input].value.shape();
                    let mut ga = Tensor::zeros(r, c);
                    ga.set(*row, *col, g.item());
                    accumulate(&nodes, &mut grads, *input, ga);
                }
                Op::PickPerRow { input, cols } => {
                    let (r, c) = nodes[*input].value.shape();
                    let mut ga = Tensor::zeros(r, c);
                    for (row, &col) in cols.iter().enumerate() {
                        ga.set(row, col, g.get(row, 0));
                    }
                    accumulate(&nodes, &mut grads, *input, ga);
                }
                Op::LogSoftmaxRows { input, mask } => {
                    // y_i = x_i - lse over valid entries; dx_i = g_i - p_i * sum(g)
                    // restricted to valid entries, zero on masked ones.
                    let y = &node.value;
                    let (r, c) = y.shape();
                    let mut ga = Tensor::zeros(r, c);
                    for row in 0..r {
                        let mut gsum = 0.0;
                        for col in 0..c {
                            if !is_masked(mask, row, col) {
                                gsum += g.get(row, col);
                            }
                        }
                        for col in 0..c {
                            if is_masked(mask, row, col) {
                                continue;
                            }
                            let p = y.get(row, col).exp();
                            ga.set(row, col, g.get(row, col) - p * gsum);
                        }
                    }
                    accumulate(&nodes, &mut grads, *input, ga);
                }
                Op::LayerNorm { x, gamma, beta } => {
                    let xt = &nodes[*x].value;
                    let gm = &nodes[*gamma].value;
                    let (r, c) = xt.shape();
                    let mut gx = Tensor::zeros(r, c);
                    let mut ggamma = Tensor::zeros(1, c);
                    let mut gbeta = Tensor::zeros(1, c);
                    for row in 0..r {
                        let xs = xt.row_slice(row);
                        let mean = xs.iter().sum::<Real>() / c as Real;
                        let var =
                            xs.iter().map(|&v| (v - mean) * (v - mean)).sum::<Real>() / c as Real;
                        let inv = 1.0 / (var + LN_EPS).sqrt();
                        // h = gamma .* g; means over the row drive dx.
                        let mut h_mean = 0.0;
                        let mut hx_mean = 0.0;
                        for col in 0..c {
                            let xhat = (xs[col] - mean) * inv;
                            let gv = g.get(row, col);
                            let h = gm.get(0, col) * gv;
                            h_mean += h;
                            hx_mean += h * xhat;
                            ggamma.set(0, col, ggamma.get(0, col) + gv * xhat);
                            gbeta.set(0, col, gbeta.get(0, col) + gv);
                        }
                        h_mean /= c as Real;
                        hx_mean /= c as Real;
                        for col in 0..c {
                            let xhat = (xs[col] - mean) * inv;
                            let h = gm.get(0, col) * g.get(row, col);
                            gx.set(row, col, inv * (h - h_mean - xhat * hx_mean));
                        }
                    }
                    accumulate(&nodes, &mut grads, *x, gx);
                    accumulate(&nodes, &mut grads, *gamma, ggamma);
                    accumulate(&nodes, &mut grads, *beta, gbeta);
                }
            }
        }
        Gradients { grads }
    }
}

pub(crate) const LN_EPS: Real = 1e-5;

fn is_masked(mask: &Option<Tensor>, row: usize, col: usize) -> bool {
    match mask {
        None => false,
        Some(m) => {
            let r = if m.rows() == 1 { 0 } else { row };
            m.get(r, col) <= MASKED_BELOW
        }
    }
}

fn accumulate(nodes: &[Node], grads: &mut [Option<Tensor>], id: usize, g: Tensor) {
    if !nodes[id].needs_grad {
        return;
    }
    match &mut grads[id] {
        Some(existing) => *existing = existing.add(&g),
        slot => *slot = Some(g),
    }
}

impl<'t> Var<'t> {
    pub fn id(&self) -> usize {
        self.id
    }

    pub fn shape(&self) -> (usize, usize) {
        self.tape.value_of(self.id, |v| v.shape())
    }

    pub fn value(&self) -> Tensor {
        self.tape.value_of(self.id, |v| v.clone())
    }

    /// Read the forward value without cloning.
    pub fn with_value<R>(&self, f: impl FnOnce(&Tensor) -> R) -> R {
        self.tape.value_of(self.id, f)
    }

    pub fn item(&self) -> Real {
        self.tape.value_of(self.id, |v| v.item())
    }

    fn unary(self, op: Op, value: Tensor) -> Var<'t> {
        let needs = match &op {
            Op::Neg(a)
            | Op::Scale(a, _)
            | Op::Relu(a)
            | Op::Tanh(a)
            | Op::Exp(a)
            | Op::Sum(a)
            | Op::MeanRows(a)
            | Op::SliceCols { input: a, .. }
            | Op::SelectRows { input: a, .. }
            | Op::Pick { input: a, .. }
            | Op::PickPerRow { input: a, .. }
            | Op::LogSoftmaxRows { input: a, .. } => self.tape.needs(*a),
            _ => unreachable!(),
        };
        self.tape.push(op, value, needs)
    }

    fn binary(self, other: Var<'t>, op: Op, value: Tensor) -> Var<'t> {
        let needs = self.tape.needs(self.id) || self.tape.needs(other.id);
        self.tape.push(op, value, needs)
    }

    pub fn add(self, other: Var<'t>) -> Var<'t> {
        let v = self.with_value(|a| other.with_value(|b| a.add(b)));
        self.binary(other, Op::Add(self.id, other.id), v)
    }

    pub fn sub(self, other: Var<'t>) -> Var<'t> {
        let v = self.with_value(|a| other.with_value(|b| a.sub(b)));
        self.binary(other, Op::Sub(self.id, other.id), v)
    }

    pub fn neg(self) -> Var<'t> {
        let v = self.with_value(|a| a.scale(-1.0));
        self.unary(Op::Neg(self.id), v)
    }

    pub fn mul(self, other: Var<'t>) -> Var<'t> {
        let v = self.with_value(|a| other.with_value(|b| a.mul(b)));
        self.binary(other, Op::Mul(self.id, other.id), v)
    }

    pub fn scale(self, c: Real) -> Var<'t> {
        let v = self.with_value(|a| a.scale(c));
        self.unary(Op::Scale(self.id, c), v)
    }

    pub fn add_rowvec(self, b: Var<'t>) -> Var<'t> {
        let v = self.with_value(|a| b.with_value(|bv| a.add_rowvec(bv)));
        self.binary(b, Op::AddRowVec(self.id, b.id), v)
    }

    pub fn matmul(self, other: Var<'t>) -> Var<'t> {
        let v = self.with_value(|a| other.with_value(|b| a.matmul(b)));
        self.binary(other, Op::MatMul(self.id, other.id), v)
    }

    pub fn matmul_nt(self, other: Var<'t>) -> Var<'t> {
        let v = self.with_value(|a| other.with_value(|b| a.matmul_nt(b)));
        self.binary(other, Op::MatMulNT(self.id, other.id), v)
    }

    pub fn relu(self) -> Var<'t> {
        let v = self.with_value(|a| a.map(|x| x.max(0.0)));
        self.unary(Op::Relu(self.id), v)
    }

    pub fn tanh(self) -> Var<'t> {
        let v = self.with_value(|a| a.map(Real::tanh));
        self.unary(Op::Tanh(self.id), v)
    }

    pub fn exp(self) -> Var<'t> {
        let v = self.with_value(|a| a.map(Real::exp));
        self.unary(Op::Exp(self.id), v)
    }

    pub fn sum(self) -> Var<'t> {
        let v = self.with_value(|a| Tensor::scalar(a.sum()));
        self.unary(Op::Sum(self.id), v)
    }

    pub fn mean(self) -> Var<'t> {
        let n = self.with_value(|a| a.len());
        self.sum().scale(1.0 / n as Real)
    }

    pub fn mean_rows(self) -> Var<'t> {
        let v = self.with_value(|a| a.sum_rows().scale(1.0 / a.rows() as Real));
        self.unary(Op::MeanRows(self.id), v)
    }

    pub fn slice_cols(self, start: usize, len: usize) -> Var<'t> {
        let v = self.with_value(|a| a.slice_cols(start, len));
        self.unary(Op::SliceCols { input: self.id, start }, v)
    }

    pub fn select_rows(self, rows: &[usize]) -> Var<'t> {
        let v = self.with_value(|a| a.select_rows(rows));
        self.unary(Op::SelectRows { input: self.id, rows: rows.to_vec() }, v)
    }

    pub fn pick(self, row: usize, col: usize) -> Var<'t> {
        let v = self.with_value(|a| Tensor::scalar(a.get(row, col)));
        self.unary(Op::Pick { input: self.id, row, col }, v)
    }

    pub fn pick_per_row(self, cols: &[usize]) -> Var<'t> {
        let v = self.with_value(|a| {
            let data = cols.iter().enumerate().map(|(r, &c)| a.get(r, c)).collect();
            Tensor::from_vec(cols.len(), 1, data)
        });
        self.unary(Op::PickPerRow { input: self.id, cols: cols.to_vec() }, v)
    }

    pub fn concat_rows(parts: &[Var<'t>]) -> Var<'t> {
        assert!(!parts.is_empty(), "concat_rows of nothing");
        let tape = parts[0].tape;
        let values: Vec<Tensor> = parts.iter().map(|p| p.value()).collect();
        let refs: Vec<&Tensor> = values.iter().collect();
        let v = Tensor::concat_rows(&refs);
        let needs = parts.iter().any(|p| tape.needs(p.id));
        tape.push(Op::ConcatRows(parts.iter().map(|p| p.id).collect()), v, needs)
    }

    pub fn concat_cols(parts: &[Var<'t>]) -> Var<'t> {
        assert!(!parts.is_empty(), "concat_cols of nothing");
        let tape = parts[0].tape;
        let values: Vec<Tensor> = parts.iter().map(|p| p.value()).collect();
        let refs: Vec<&Tensor> = values.iter().collect();
        let v = Tensor::concat_cols(&refs);
        let needs = parts.iter().any(|p| tape.needs(p.id));
        tape.push(Op::ConcatCols(parts.iter().map(|p| p.id).collect()), v, needs)
    }

    /// Row-wise log-softmax under an optional additive mask of `{0, -1e30}`
    /// entries. Masked positions get log-probability `-1e30`, hence exactly
    /// zero probability after `exp`. Panics if a row is fully masked or the
    /// mask contains anything but the two sentinel values.
    pub fn masked_log_softmax(self, mask: Option<&Tensor>) -> Var<'t> {
        let v = self.with_value(|x| {
            let (r, c) = x.shape();
            if let Some(m) = mask {
                assert!(
                    m.shape() == (r, c) || m.shape() == (1, c),
                    "mask shape {:?} incompatible with logits {:?}",
                    m.shape(),
                    x.shape()
                );
                assert!(
                    m.data().iter().all(|&e| e == 0.0 || e <= MASKED_BELOW),
                    "additive mask entries must be 0 or the -inf sentinel"
                );
            }
            let mask_owned = mask.cloned();
            let mut out = Tensor::zeros(r, c);
            for row in 0..r {
                let mut hi = Real::NEG_INFINITY;
                for col in 0..c {
                    if !is_masked(&mask_owned, row, col) {
                        hi = hi.max(x.get(row, col));
                    }
                }
                assert!(hi > Real::NEG_INFINITY, "all entries masked in row {row}");
                let mut z = 0.0;
                for col in 0..c {
                    if !is_masked(&mask_owned, row, col) {
                        z += (x.get(row, col) - hi).exp();
                    }
                }
                let lse = hi + z.ln();
                for col in 0..c {
                    let y = if is_masked(&mask_owned, row, col) {
                        NEG_INF
                    } else {
                        x.get(row, col) - lse
                    };
                    out.set(row, col, y);
                }
            }
            out
        });
        self.unary(
            Op::LogSoftmaxRows { input: self.id, mask: mask.cloned() },
            v,
        )
    }

    /// Per-row layer normalization with learned gain and bias.
    pub fn layer_norm(self, gamma: Var<'t>, beta: Var<'t>) -> Var<'t> {
        let v = self.with_value(|x| {
            gamma.with_value(|gm| {
                beta.with_value(|bt| {
                    let (r, c) = x.shape();
                    assert_eq!(gm.shape(), (1, c), "layer_norm gain shape");
                    assert_eq!(bt.shape(), (1, c), "layer_norm bias shape");
                    let mut out = Tensor::zeros(r, c);
                    for row in 0..r {
                        let xs = x.row_slice(row);
                        let mean = xs.iter().sum::<Real>() / c as Real;
                        let var = xs.iter().map(|&v| (v - mean) * (v - mean)).sum::<Real>()
                            / c as Real;
                        let inv = 1.0 / (var + LN_EPS).sqrt();
                        for col in 0..c {
                            out.set(row, col, (xs[col] - mean) * inv * gm.get(0, col) + bt.get(0, col));
                        }
                    }
                    out
                })
            })
        });
        let needs = self.tape.needs(self.id) || self.tape.needs(gamma.id) || self.tape.needs(beta.id);
        self.tape.push(
            Op::LayerNorm { x: self.id, gamma: gamma.id, beta: beta.id },
            v,
            needs,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule() {
        let tape = Tape::new();
        let x = tape.leaf(Tensor::scalar(2.0).trainable());
        let y = tape.leaf(Tensor::scalar(3.0).trainable());
        let z = x.mul(y);
        let grads = tape.backward(z);
        assert_eq!(grads.of(x).item(), 3.0);
        assert_eq!(grads.of(y).item(), 2.0);
    }

    #[test]
    fn non_participating_leaf_gets_zero() {
        let tape = Tape::new();
        let x = tape.leaf(Tensor::scalar(2.0).trainable());
        let unused = tape.leaf(Tensor::from_vec(2, 2, vec![1.0; 4]).trainable());
        let z = x.mul(x);
        let grads = tape.backward(z);
        assert_eq!(grads.of(x).item(), 4.0);
        assert_eq!(grads.of(unused), Tensor::zeros(2, 2));
    }

    #[test]
    #[should_panic(expected = "scalar loss")]
    fn non_scalar_loss_rejected() {
        let tape = Tape::new();
        let x = tape.leaf(Tensor::from_vec(1, 2, vec![1.0, 2.0]).trainable());
        tape.backward(x);
    }

    #[test]
    fn masked_softmax_single_survivor() {
        let tape = Tape::new();
        let logits = tape.constant(Tensor::row(&[0.0, 0.0]));
        let mask = Tensor::row(&[0.0, NEG_INF]);
        let probs = logits.masked_log_softmax(Some(&mask)).exp().value();
        assert_eq!(probs.get(0, 0), 1.0);
        assert_eq!(probs.get(0, 1), 0.0);
    }

    #[test]
    fn masked_softmax_rows_sum_to_one() {
        let tape = Tape::new();
        let logits = tape.constant(Tensor::from_vec(
            2,
            3,
            vec![0.3, -1.2, 0.7, 2.0, 0.1, -0.5],
        ));
        let mask = Tensor::from_vec(2, 3, vec![0.0, NEG_INF, 0.0, 0.0, 0.0, NEG_INF]);
        let probs = logits.masked_log_softmax(Some(&mask)).exp().value();
        for row in 0..2 {
            let s: Real = probs.row_slice(row).iter().sum();
            assert!((s - 1.0).abs() < 1e-9);
        }
        assert_eq!(probs.get(0, 1), 0.0);
        assert_eq!(probs.get(1, 2), 0.0);
    }

    #[test]
    #[should_panic(expected = "all entries masked")]
    fn fully_masked_row_rejected() {
        let tape = Tape::new();
        let logits = tape.constant(Tensor::row(&[0.0, 0.0]));
        let mask = Tensor::row(&[NEG_INF, NEG_INF]);
        let _ = logits.masked_log_softmax(Some(&mask));
    }

    #[test]
    fn masked_logits_get_zero_gradient() {
        let tape = Tape::new();
        let x = tape.leaf(Tensor::row(&[0.5, 1.5, -0.3]).trainable());
        let mask = Tensor::row(&[0.0, NEG_INF, 0.0]);
        let y = x.masked_log_softmax(Some(&mask));
        let loss = y.pick(0, 0).add(y.pick(0, 2).scale(0.7));
        let grads = tape.backward(loss);
        assert_eq!(grads.of(x).get(0, 1), 0.0);
    }

    #[test]
    fn concat_backward_splits_without_loss() {
        let tape = Tape::new();
        let a = tape.leaf(Tensor::row(&[1.0, 2.0]).trainable());
        let b = tape.leaf(Tensor::row(&[3.0]).trainable());
        let joined = Var::concat_cols(&[a, b]);
        let weights = tape.constant(Tensor::row(&[0.5, -1.0, 2.0]));
        let loss = joined.mul(weights).sum();
        let grads = tape.backward(loss);
        let ga = grads.of(a);
        let gb = grads.of(b);
        assert_eq!(ga.data(), &[0.5, -1.0]);
        assert_eq!(gb.data(), &[2.0]);
        // No overlap or loss: squared norms partition the incoming norm.
        let incoming: Real = [0.5_f64, -1.0, 2.0].iter().map(|&v| (v * v) as Real).sum();
        let split: Real = ga.data().iter().chain(gb.data()).map(|&v| v * v).sum();
        assert!((incoming - split).abs() < 1e-12);
    }
}
