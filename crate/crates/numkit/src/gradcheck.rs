//! Central finite-difference validation of tape gradients.

use crate::params::{ParamSet, ParamVars};
use crate::tape::{Tape, Var};
use crate::tensor::Real;

/// Compare tape gradients of a scalar function against central differences.
///
/// Returns the maximum over all parameter entries of
/// `|analytic - numeric| / max(1, |analytic|)`.
pub fn grad_check<F>(f: F, params: &ParamSet, eps: Real) -> Real
where
    F: for<'t> Fn(&'t Tape, &ParamVars<'t>) -> Var<'t>,
{
    let tape = Tape::new();
    let vars = params.lift(&tape);
    let loss = f(&tape, &vars);
    let grads = tape.backward(loss);
    let analytic = vars.collect_grads(&grads);

    let eval = |p: &ParamSet| -> Real {
        let tape = Tape::new();
        let vars = p.lift(&tape);
        f(&tape, &vars).item()
    };

    let mut max_rel: Real = 0.0;
    for (pi, (_, tensor)) in params.iter().enumerate() {
        for e in 0..tensor.len() {
            let mut plus = params.clone();
            plus.tensor_at_mut(pi).data_mut()[e] += eps;
            let mut minus = params.clone();
            minus.tensor_at_mut(pi).data_mut()[e] -= eps;
            let numeric = (eval(&plus) - eval(&minus)) / (2.0 * eps);
            let a = analytic[pi].data()[e];
            let rel = (a - numeric).abs() / a.abs().max(1.0);
            max_rel = max_rel.max(rel);
        }
    }
    max_rel
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nn::{feed_forward, multi_head_attention, AttentionWeights};
    use crate::tensor::{Tensor, NEG_INF};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn quadratic_form_is_near_exact() {
        let mut p = ParamSet::new();
        p.insert("x", Tensor::row(&[0.7, -1.3, 0.4]));
        // f = sum(x .* x): gradient 2x, exact for central differences.
        let err = grad_check(
            |_tape, vars| {
                let x = vars.get("x");
                x.mul(x).sum()
            },
            &p,
            1e-5,
        );
        assert!(err < 1e-9, "relative error {err}");
    }

    #[test]
    fn attention_block_under_1e_4() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for &d in &[8usize, 16] {
            let mut p = ParamSet::new();
            let bound = 1.0 / (d as Real).sqrt();
            p.insert("q_src", Tensor::uniform(2, d, 1.0, &mut rng));
            p.insert("kv", Tensor::uniform(4, d, 1.0, &mut rng));
            p.insert("wq", Tensor::uniform(d, d, bound, &mut rng));
            p.insert("wk", Tensor::uniform(d, d, bound, &mut rng));
            p.insert("wv", Tensor::uniform(d, d, bound, &mut rng));
            p.insert("wo", Tensor::uniform(d, d, bound, &mut rng));
            let err = grad_check(
                |_tape, vars| {
                    let w = AttentionWeights {
                        wq: vars.get("wq"),
                        wk: vars.get("wk"),
                        wv: vars.get("wv"),
                        wo: vars.get("wo"),
                    };
                    let mask = Tensor::row(&[0.0, 0.0, 0.0, NEG_INF]);
                    multi_head_attention(vars.get("q_src"), vars.get("kv"), Some(&mask), 2, w)
                        .tanh()
                        .sum()
                },
                &p,
                1e-5,
            );
            assert!(err < 1e-4, "d={d} relative error {err}");
        }
    }

    #[test]
    fn three_layer_network_under_1e_4() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut p = ParamSet::new();
        p.insert("x", Tensor::uniform(3, 6, 1.0, &mut rng));
        for layer in 0..3 {
            p.insert(&format!("w1.{layer}"), Tensor::uniform(6, 8, 0.4, &mut rng));
            p.insert(&format!("b1.{layer}"), Tensor::uniform(1, 8, 0.1, &mut rng));
            p.insert(&format!("w2.{layer}"), Tensor::uniform(8, 6, 0.35, &mut rng));
            p.insert(&format!("b2.{layer}"), Tensor::uniform(1, 6, 0.1, &mut rng));
        }
        let err = grad_check(
            |_tape, vars| {
                let mut h = vars.get("x");
                for layer in 0..3 {
                    h = feed_forward(
                        h,
                        vars.get(&format!("w1.{layer}")),
                        vars.get(&format!("b1.{layer}")),
                        vars.get(&format!("w2.{layer}")),
                        vars.get(&format!("b2.{layer}")),
                    )
                    .tanh();
                }
                h.sum()
            },
            &p,
            1e-5,
        );
        assert!(err < 1e-4, "relative error {err}");
    }

    #[test]
    fn layer_norm_gradients_check_out() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut p = ParamSet::new();
        p.insert("x", Tensor::uniform(3, 8, 1.0, &mut rng));
        p.insert("gamma", Tensor::uniform(1, 8, 0.5, &mut rng));
        p.insert("beta", Tensor::uniform(1, 8, 0.5, &mut rng));
        let err = grad_check(
            |_tape, vars| {
                vars.get("x")
                    .layer_norm(vars.get("gamma"), vars.get("beta"))
                    .tanh()
                    .sum()
            },
            &p,
            1e-5,
        );
        assert!(err < 1e-4, "relative error {err}");
    }

    #[test]
    fn masked_entries_contribute_zero() {
        let mut p = ParamSet::new();
        p.insert("logits", Tensor::row(&[0.2, -0.4, 1.1]));
        let tape = Tape::new();
        let vars = p.lift(&tape);
        let mask = Tensor::row(&[0.0, NEG_INF, 0.0]);
        let loss = vars.get("logits").masked_log_softmax(Some(&mask)).pick(0, 2);
        let grads = tape.backward(loss);
        assert_eq!(grads.of(vars.get("logits")).get(0, 1), 0.0);
    }
}
