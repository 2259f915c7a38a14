//! Named-tensor parameter container, the unit of model state: lifted onto
//! tapes for training, serialized into checkpoints.

use std::collections::HashMap;

use crate::tape::{Gradients, Tape, Var};
use crate::tensor::{Real, Tensor};

/// Ordered collection of named tensors.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamSet {
    entries: Vec<(String, Tensor)>,
    index: HashMap<String, usize>,
}

impl ParamSet {
    pub fn new() -> ParamSet {
        ParamSet::default()
    }

    /// Insert a trainable tensor. Names must be unique.
    pub fn insert(&mut self, name: &str, tensor: Tensor) {
        assert!(
            !self.index.contains_key(name),
            "duplicate parameter name {name:?}"
        );
        self.index.insert(name.to_string(), self.entries.len());
        self.entries.push((name.to_string(), tensor.trainable()));
    }

    pub fn get(&self, name: &str) -> &Tensor {
        let idx = self.index[name];
        &self.entries[idx].1
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Tensor)> {
        self.entries.iter().map(|(n, t)| (n.as_str(), t))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }

    pub fn tensor_at(&self, i: usize) -> &Tensor {
        &self.entries[i].1
    }

    pub fn tensor_at_mut(&mut self, i: usize) -> &mut Tensor {
        &mut self.entries[i].1
    }

    /// Total scalar count across all tensors.
    pub fn scalar_count(&self) -> usize {
        self.entries.iter().map(|(_, t)| t.len()).sum()
    }

    /// Lift every parameter onto a tape as a trainable leaf.
    pub fn lift<'t>(&self, tape: &'t Tape) -> ParamVars<'t> {
        let vars: Vec<Var<'t>> = self.entries.iter().map(|(_, t)| tape.leaf(t.clone())).collect();
        ParamVars { vars, index: self.index.clone() }
    }

    /// Serialize: count, then per entry name, shape and raw little-endian
    /// scalars (always written as f64).
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(&(self.entries.len() as u32).to_le_bytes());
        for (name, t) in &self.entries {
            out.extend_from_slice(&(name.len() as u16).to_le_bytes());
            out.extend_from_slice(name.as_bytes());
            out.extend_from_slice(&(t.rows() as u32).to_le_bytes());
            out.extend_from_slice(&(t.cols() as u32).to_le_bytes());
            for &v in t.data() {
                out.extend_from_slice(&(v as f64).to_le_bytes());
            }
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Option<(ParamSet, usize)> {
        let mut pos = 0usize;
        let count = read_u32(bytes, &mut pos)? as usize;
        let mut set = ParamSet::new();
        for _ in 0..count {
            let name_len = read_u16(bytes, &mut pos)? as usize;
            let name = std::str::from_utf8(bytes.get(pos..pos + name_len)?).ok()?.to_string();
            pos += name_len;
            let rows = read_u32(bytes, &mut pos)? as usize;
            let cols = read_u32(bytes, &mut pos)? as usize;
            let mut data = Vec::with_capacity(rows * cols);
            for _ in 0..rows * cols {
                let mut b = [0u8; 8];
                b.copy_from_slice(bytes.get(pos..pos + 8)?);
                pos += 8;
                data.push(f64::from_le_bytes(b) as Real);
            }
            set.insert(&name, Tensor::from_vec(rows, cols, data));
        }
        Some((set, pos))
    }
}

fn read_u32(bytes: &[u8], pos: &mut usize) -> Option<u32> {
    let mut b = [0u8; 4];
    b.copy_from_slice(bytes.get(*pos..*pos + 4)?);
    *pos += 4;
    Some(u32::from_le_bytes(b))
}

fn read_u16(bytes: &[u8], pos: &mut usize) -> Option<u16> {
    let mut b = [0u8; 2];
    b.copy_from_slice(bytes.get(*pos..*pos + 2)?);
    *pos += 2;
    Some(u16::from_le_bytes(b))
}

/// Tape handles for one lifted parameter set.
pub struct ParamVars<'t> {
    vars: Vec<Var<'t>>,
    index: HashMap<String, usize>,
}

impl<'t> ParamVars<'t> {
    pub fn get(&self, name: &str) -> Var<'t> {
        match self.index.get(name) {
            Some(&i) => self.vars[i],
            None => panic!("unknown parameter {name:?}"),
        }
    }

    /// Gradients in parameter order; zeros for parameters the loss never
    /// touched.
    pub fn collect_grads(&self, grads: &Gradients) -> Vec<Tensor> {
        self.vars.iter().map(|&v| grads.of(v)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bytes_roundtrip() {
        let mut set = ParamSet::new();
        set.insert("w", Tensor::from_vec(2, 3, vec![1.0, -2.0, 3.5, 0.0, 4.0, -0.25]));
        set.insert("b", Tensor::row(&[0.5]));
        let bytes = set.to_bytes();
        let (back, consumed) = ParamSet::from_bytes(&bytes).unwrap();
        assert_eq!(consumed, bytes.len());
        assert_eq!(back, set);
    }

    #[test]
    fn zero_grad_for_untouched_parameter() {
        let mut set = ParamSet::new();
        set.insert("used", Tensor::scalar(2.0));
        set.insert("unused", Tensor::row(&[1.0, 1.0]));
        let tape = Tape::new();
        let vars = set.lift(&tape);
        let loss = vars.get("used").mul(vars.get("used"));
        let grads = tape.backward(loss);
        let all = vars.collect_grads(&grads);
        assert_eq!(all[0].item(), 4.0);
        assert_eq!(all[1], Tensor::zeros(1, 2));
    }
}
