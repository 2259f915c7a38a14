//! Dense 2-D tensors and the plain kernels both the forward and backward
//! passes are built from.

use rand::Rng;

/// Scalar type; 64-bit by default so finite-difference checks are meaningful.
#[cfg(not(feature = "f32"))]
pub type Real = f64;
#[cfg(feature = "f32")]
pub type Real = f32;

/// Additive mask sentinel standing in for negative infinity. Large enough
/// that `exp` underflows to exactly zero.
pub const NEG_INF: Real = -1e30;

/// Row-major 2-D tensor. Vectors are `1 x n` rows, scalars `1 x 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    rows: usize,
    cols: usize,
    data: Vec<Real>,
    /// Leaves with this flag set receive gradients from `Tape::backward`.
    pub requires_grad: bool,
}

impl Tensor {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Real>) -> Tensor {
        assert_eq!(data.len(), rows * cols, "data length must equal rows * cols");
        Tensor { rows, cols, data, requires_grad: false }
    }

    pub fn zeros(rows: usize, cols: usize) -> Tensor {
        Tensor::from_vec(rows, cols, vec![0.0; rows * cols])
    }

    pub fn scalar(v: Real) -> Tensor {
        Tensor::from_vec(1, 1, vec![v])
    }

    pub fn row(values: &[Real]) -> Tensor {
        Tensor::from_vec(1, values.len(), values.to_vec())
    }

    /// Uniform init on [-bound, bound], the usual fan-in scaling when
    /// `bound = 1/sqrt(fan_in)`.
    pub fn uniform<R: Rng>(rows: usize, cols: usize, bound: Real, rng: &mut R) -> Tensor {
        let data = (0..rows * cols)
            .map(|_| {
                let u: f64 = rng.gen::<f64>() * 2.0 - 1.0;
                u as Real * bound
            })
            .collect();
        Tensor::from_vec(rows, cols, data)
    }

    pub fn trainable(mut self) -> Tensor {
        self.requires_grad = true;
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[Real] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Real] {
        &mut self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Real {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Real) {
        self.data[r * self.cols + c] = v;
    }

    /// Value of a 1x1 tensor.
    pub fn item(&self) -> Real {
        assert_eq!(self.data.len(), 1, "item() requires a scalar tensor");
        self.data[0]
    }

    pub fn row_slice(&self, r: usize) -> &[Real] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn same_shape(&self, other: &Tensor, op: &str) {
        assert_eq!(
            self.shape(),
            other.shape(),
            "{op}: shape mismatch {:?} vs {:?}",
            self.shape(),
            other.shape()
        );
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        self.same_shape(other, "add");
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.same_shape(other, "sub");
        self.zip(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Tensor) -> Tensor {
        self.same_shape(other, "mul");
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, c: Real) -> Tensor {
        self.map(|a| a * c)
    }

    pub fn map(&self, f: impl Fn(Real) -> Real) -> Tensor {
        Tensor::from_vec(self.rows, self.cols, self.data.iter().map(|&a| f(a)).collect())
    }

    fn zip(&self, other: &Tensor, f: impl Fn(Real, Real) -> Real) -> Tensor {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Tensor::from_vec(self.rows, self.cols, data)
    }

    /// `self + b` with `b` a `1 x cols` row broadcast over the rows.
    pub fn add_rowvec(&self, b: &Tensor) -> Tensor {
        assert_eq!(b.rows, 1, "add_rowvec: rhs must be a single row");
        assert_eq!(self.cols, b.cols, "add_rowvec: width mismatch");
        let mut out = self.clone();
        out.requires_grad = false;
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[r * self.cols + c] += b.data[c];
            }
        }
        out
    }

    pub fn matmul(&self, other: &Tensor) -> Tensor {
        assert_eq!(
            self.cols, other.rows,
            "matmul: inner dimensions {} vs {}",
            self.cols, other.rows
        );
        let (m, k, n) = (self.rows, self.cols, other.cols);
        let mut out = vec![0.0; m * n];
        for i in 0..m {
            for p in 0..k {
                let a = self.data[i * k + p];
                if a == 0.0 {
                    continue;
                }
                let brow = &other.data[p * n..(p + 1) * n];
                let orow = &mut out[i * n..(i + 1) * n];
                for c in 0..n {
                    orow[c] += a * brow[c];
                }
            }
        }
        Tensor::from_vec(m, n, out)
    }

    /// `self * other^T` without materializing the transpose.
    pub fn matmul_nt(&self, other: &Tensor) -> Tensor {
        assert_eq!(
            self.cols, other.cols,
            "matmul_nt: inner dimensions {} vs {}",
            self.cols, other.cols
        );
        let (m, k, n) = (self.rows, self.cols, other.rows);
        let mut out = vec![0.0; m * n];
        for i in 0..m {
            let arow = &self.data[i * k..(i + 1) * k];
            for j in 0..n {
                let brow = &other.data[j * k..(j + 1) * k];
                let mut acc = 0.0;
                for p in 0..k {
                    acc += arow[p] * brow[p];
                }
                out[i * n + j] = acc;
            }
        }
        Tensor::from_vec(m, n, out)
    }

    /// `self^T * other`.
    pub fn matmul_tn(&self, other: &Tensor) -> Tensor {
        assert_eq!(
            self.rows, other.rows,
            "matmul_tn: inner dimensions {} vs {}",
            self.rows, other.rows
        );
        let (m, k, n) = (self.cols, self.rows, other.cols);
        let mut out = vec![0.0; m * n];
        for p in 0..k {
            let arow = &self.data[p * m..(p + 1) * m];
            let brow = &other.data[p * n..(p + 1) * n];
            for i in 0..m {
                let a = arow[i];
                if a == 0.0 {
                    continue;
                }
                let orow = &mut out[i * n..(i + 1) * n];
                for c in 0..n {
                    orow[c] += a * brow[c];
                }
            }
        }
        Tensor::from_vec(m, n, out)
    }

    pub fn sum(&self) -> Real {
        self.data.iter().sum()
    }

    pub fn sum_rows(&self) -> Tensor {
        let mut out = vec![0.0; self.cols];
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[c] += self.data[r * self.cols + c];
            }
        }
        Tensor::from_vec(1, self.cols, out)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Tensor {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row_slice(r));
        }
        Tensor::from_vec(rows.len(), self.cols, data)
    }

    pub fn slice_cols(&self, start: usize, len: usize) -> Tensor {
        assert!(start + len <= self.cols, "slice_cols out of range");
        let mut data = Vec::with_capacity(self.rows * len);
        for r in 0..self.rows {
            data.extend_from_slice(&self.data[r * self.cols + start..r * self.cols + start + len]);
        }
        Tensor::from_vec(self.rows, len, data)
    }

    pub fn concat_rows(parts: &[&Tensor]) -> Tensor {
        assert!(!parts.is_empty(), "concat_rows of nothing");
        let cols = parts[0].cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "concat_rows: width mismatch");
            rows += p.rows;
            data.extend_from_slice(&p.data);
        }
        Tensor::from_vec(rows, cols, data)
    }

    pub fn concat_cols(parts: &[&Tensor]) -> Tensor {
        assert!(!parts.is_empty(), "concat_cols of nothing");
        let rows = parts[0].rows;
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for p in parts {
                assert_eq!(p.rows, rows, "concat_cols: height mismatch");
                data.extend_from_slice(p.row_slice(r));
            }
        }
        Tensor::from_vec(rows, cols, data)
    }

    /// Max absolute difference, for tests.
    pub fn max_abs_diff(&self, other: &Tensor) -> Real {
        self.same_shape(other, "max_abs_diff");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).abs())
            .fold(0.0, Real::max)
    }
}
