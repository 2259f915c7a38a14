//! Adaptive-moment optimizer with bias correction.

use crate::params::ParamSet;
use crate::tensor::{Real, Tensor};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdamConfig {
    pub lr: Real,
    pub beta1: Real,
    pub beta2: Real,
    pub eps: Real,
}

impl Default for AdamConfig {
    fn default() -> Self {
        AdamConfig { lr: 1e-4, beta1: 0.9, beta2: 0.999, eps: 1e-8 }
    }
}

/// Optimizer state: first and second moments per parameter plus the step
/// counter. Updates are deterministic functions of (state, gradients).
#[derive(Debug, Clone, PartialEq)]
pub struct Adam {
    pub config: AdamConfig,
    pub step: u64,
    m: Vec<Tensor>,
    v: Vec<Tensor>,
}

impl Adam {
    pub fn new(params: &ParamSet, config: AdamConfig) -> Adam {
        let m = params.iter().map(|(_, t)| Tensor::zeros(t.rows(), t.cols())).collect();
        let v = params.iter().map(|(_, t)| Tensor::zeros(t.rows(), t.cols())).collect();
        Adam { config, step: 0, m, v }
    }

    /// Apply one update. `grads` must be in parameter order with matching
    /// shapes; `lr` overrides the configured rate (for schedules).
    pub fn update(&mut self, params: &mut ParamSet, grads: &[Tensor], lr: Real) {
        assert_eq!(grads.len(), params.len(), "gradient count mismatch");
        self.step += 1;
        let t = self.step as i32;
        let c = self.config;
        let bc1 = 1.0 - c.beta1.powi(t);
        let bc2 = 1.0 - c.beta2.powi(t);
        for i in 0..grads.len() {
            let p = params.tensor_at_mut(i);
            assert_eq!(p.shape(), grads[i].shape(), "gradient shape mismatch at {i}");
            let m = self.m[i].data_mut();
            let v = self.v[i].data_mut();
            let g = grads[i].data();
            let pd = p.data_mut();
            for e in 0..g.len() {
                m[e] = c.beta1 * m[e] + (1.0 - c.beta1) * g[e];
                v[e] = c.beta2 * v[e] + (1.0 - c.beta2) * g[e] * g[e];
                let mhat = m[e] / bc1;
                let vhat = v[e] / bc2;
                pd[e] -= lr * mhat / (vhat.sqrt() + c.eps);
            }
        }
    }

    /// Serialize moments and step for checkpointing.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(&self.step.to_le_bytes());
        out.extend_from_slice(&(self.m.len() as u32).to_le_bytes());
        for t in self.m.iter().chain(self.v.iter()) {
            out.extend_from_slice(&(t.rows() as u32).to_le_bytes());
            out.extend_from_slice(&(t.cols() as u32).to_le_bytes());
            for &x in t.data() {
                out.extend_from_slice(&(x as f64).to_le_bytes());
            }
        }
        out
    }

    pub fn from_bytes(bytes: &[u8], config: AdamConfig) -> Option<(Adam, usize)> {
        let mut pos = 0usize;
        let mut b8 = [0u8; 8];
        b8.copy_from_slice(bytes.get(0..8)?);
        let step = u64::from_le_bytes(b8);
        pos += 8;
        let mut b4 = [0u8; 4];
        b4.copy_from_slice(bytes.get(pos..pos + 4)?);
        let count = u32::from_le_bytes(b4) as usize;
        pos += 4;
        let mut tensors = Vec::with_capacity(count * 2);
        for _ in 0..count * 2 {
            b4.copy_from_slice(bytes.get(pos..pos + 4)?);
            let rows = u32::from_le_bytes(b4) as usize;
            pos += 4;
            b4.copy_from_slice(bytes.get(pos..pos + 4)?);
            let cols = u32::from_le_bytes(b4) as usize;
            pos += 4;
            let mut data = Vec::with_capacity(rows * cols);
            for _ in 0..rows * cols {
                b8.copy_from_slice(bytes.get(pos..pos + 8)?);
                pos += 8;
                data.push(f64::from_le_bytes(b8) as Real);
            }
            tensors.push(Tensor::from_vec(rows, cols, data));
        }
        let v = tensors.split_off(count);
        Some((Adam { config, step, m: tensors, v }, pos))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_param(value: Real) -> ParamSet {
        let mut p = ParamSet::new();
        p.insert("w", Tensor::scalar(value));
        p
    }

    #[test]
    fn zero_gradient_leaves_parameters_unchanged() {
        let mut p = one_param(1.5);
        let mut adam = Adam::new(&p, AdamConfig::default());
        adam.update(&mut p, &[Tensor::scalar(0.0)], 1e-4);
        assert_eq!(p.get("w").item(), 1.5);
    }

    #[test]
    fn first_step_has_closed_form() {
        // With g = 1 and defaults, mhat = 1, vhat = 1, so the step is
        // -lr / (1 + eps) regardless of the betas.
        let mut p = one_param(0.0);
        let mut adam = Adam::new(&p, AdamConfig::default());
        adam.update(&mut p, &[Tensor::scalar(1.0)], 1e-4);
        let expected = -1e-4 / (1.0 + 1e-8);
        assert!((p.get("w").item() - expected).abs() < 1e-12);
    }

    #[test]
    fn identical_runs_are_identical() {
        let run = || {
            let mut p = one_param(0.3);
            let mut adam = Adam::new(&p, AdamConfig::default());
            for k in 0..50 {
                let g = Tensor::scalar((k as Real * 0.37).sin());
                adam.update(&mut p, &[g], 1e-3);
            }
            p.get("w").item()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn state_roundtrips_through_bytes() {
        let mut p = one_param(0.3);
        let mut adam = Adam::new(&p, AdamConfig::default());
        adam.update(&mut p, &[Tensor::scalar(0.5)], 1e-3);
        let bytes = adam.to_bytes();
        let (back, used) = Adam::from_bytes(&bytes, AdamConfig::default()).unwrap();
        assert_eq!(used, bytes.len());
        assert_eq!(back, adam);
    }
}
