//! Dense row-major tensors over a [`Semiring`], together with the
//! compact-closed structure maps: `eta` produces `Σᵢ eᵢ ⊗ eᵢ` and `contract`
//! applies `ε` by summing over matched index pairs.

use std::fmt;

use thiserror::Error;

use crate::scalar::{RealScalar, Semiring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("invalid shape {0:?}: every dimension must be at least 1")]
    InvalidShape(Vec<usize>),
    #[error("data length {len} does not match shape {shape:?}")]
    DataLength { len: usize, shape: Vec<usize> },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: Vec<usize>, right: Vec<usize> },
    #[error("axis pairing invalid: {0}")]
    AxisMismatch(String),
    #[error("contracted axes {a} and {b} have different dimensions {dim_a} and {dim_b}")]
    DimMismatch {
        a: usize,
        b: usize,
        dim_a: usize,
        dim_b: usize,
    },
    #[error("expected a rank-{expected} tensor, got rank {actual}")]
    RankError { expected: usize, actual: usize },
    #[error("cannot normalize a zero vector")]
    ZeroVector,
}

/// Dimensions of a tensor. Rank 0 is a scalar.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Shape(Vec<usize>);

impl Shape {
    pub fn new(dims: Vec<usize>) -> Result<Self, TensorError> {
        if dims.contains(&0) {
            return Err(TensorError::InvalidShape(dims));
        }
        Ok(Shape(dims))
    }

    pub fn scalar() -> Self {
        Shape(Vec::new())
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn len(&self) -> usize {
        self.0.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Row-major strides, last index fastest.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.0.len()];
        for axis in (0..self.0.len().saturating_sub(1)).rev() {
            strides[axis] = strides[axis + 1] * self.0[axis + 1];
        }
        strides
    }

    pub fn offset(&self, index: &[usize]) -> Result<usize, TensorError> {
        if index.len() != self.rank() {
            return Err(TensorError::RankError {
                expected: self.rank(),
                actual: index.len(),
            });
        }
        let mut offset = 0;
        for (&i, &d) in index.iter().zip(&self.0) {
            if i >= d {
                return Err(TensorError::IndexOutOfRange { index: i, dim: d });
            }
            offset = offset * d + i;
        }
        Ok(offset)
    }

    /// Inverse of [`Shape::offset`].
    pub fn unravel(&self, mut offset: usize) -> Vec<usize> {
        let mut index = vec![0; self.rank()];
        for axis in (0..self.rank()).rev() {
            index[axis] = offset % self.0[axis];
            offset /= self.0[axis];
        }
        index
    }
}

impl From<Shape> for Vec<usize> {
    fn from(shape: Shape) -> Self {
        shape.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<T> {
    shape: Shape,
    data: Vec<T>,
}

impl<T: Semiring> Tensor<T> {
    pub fn from_vec(dims: Vec<usize>, data: Vec<T>) -> Result<Self, TensorError> {
        let shape = Shape::new(dims)?;
        if data.len() != shape.len() {
            return Err(TensorError::DataLength {
                len: data.len(),
                shape: shape.0,
            });
        }
        Ok(Tensor { shape, data })
    }

    pub fn zeros(dims: Vec<usize>) -> Result<Self, TensorError> {
        let shape = Shape::new(dims)?;
        let data = vec![T::zero(); shape.len()];
        Ok(Tensor { shape, data })
    }

    pub fn scalar(value: T) -> Self {
        Tensor {
            shape: Shape::scalar(),
            data: vec![value],
        }
    }

    /// Rank-1 vector with `one` at position `i`.
    pub fn basis_vector(dim: usize, i: usize) -> Result<Self, TensorError> {
        if i >= dim {
            return Err(TensorError::IndexOutOfRange { index: i, dim });
        }
        let mut t = Self::zeros(vec![dim])?;
        t.data[i] = T::one();
        Ok(t)
    }

    /// `η`: the rank-2 state `Σᵢ eᵢ ⊗ eᵢ`.
    pub fn eta(dim: usize) -> Result<Self, TensorError> {
        let mut t = Self::zeros(vec![dim, dim])?;
        for i in 0..dim {
            t.data[i * dim + i] = T::one();
        }
        Ok(t)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dims(&self) -> &[usize] {
        self.shape.dims()
    }

    pub fn rank(&self) -> usize {
        self.shape.rank()
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    pub fn get(&self, index: &[usize]) -> Result<T, TensorError> {
        Ok(self.data[self.shape.offset(index)?])
    }

    pub fn set(&mut self, index: &[usize], value: T) -> Result<(), TensorError> {
        let offset = self.shape.offset(index)?;
        self.data[offset] = value;
        Ok(())
    }

    /// Value of a rank-0 tensor.
    pub fn as_scalar(&self) -> Option<T> {
        (self.rank() == 0).then(|| self.data[0])
    }

    /// Nonzero entries with their multi-indices, in row-major order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (Vec<usize>, T)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, &v)| (self.shape.unravel(k), v))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Semiring::is_zero)
    }

    /// `A ⊗ B`: shape is the concatenation, entry `(I, J)` is `A[I]·B[J]`.
    pub fn tensor_product(&self, other: &Tensor<T>) -> Tensor<T> {
        let mut dims = self.dims().to_vec();
        dims.extend_from_slice(other.dims());
        let mut data = Vec::with_capacity(self.data.len() * other.data.len());
        for &a in &self.data {
            data.extend(other.data.iter().map(|&b| a.mul(b)));
        }
        Tensor {
            shape: Shape(dims),
            data,
        }
    }

    /// Applies `ε` to every axis pair: sums over all index assignments in
    /// which paired indices agree. Remaining axes keep their relative order.
    pub fn contract(&self, pairs: &[(usize, usize)]) -> Result<Tensor<T>, TensorError> {
        if pairs.is_empty() {
            return Ok(self.clone());
        }
        let rank = self.rank();
        let mut used = vec![false; rank];
        for &(a, b) in pairs {
            for axis in [a, b] {
                if axis >= rank {
                    return Err(TensorError::AxisMismatch(format!(
                        "axis {axis} out of range for rank {rank}"
                    )));
                }
                if used[axis] {
                    return Err(TensorError::AxisMismatch(format!("axis {axis} used twice")));
                }
                used[axis] = true;
            }
            let (dim_a, dim_b) = (self.dims()[a], self.dims()[b]);
            if dim_a != dim_b {
                return Err(TensorError::DimMismatch { a, b, dim_a, dim_b });
            }
        }

        let strides = self.shape.strides();
        let free: Vec<usize> = (0..rank).filter(|&ax| !used[ax]).collect();
        let out_dims: Vec<usize> = free.iter().map(|&ax| self.dims()[ax]).collect();
        let out_strides: Vec<usize> = free.iter().map(|&ax| strides[ax]).collect();
        // a paired index k advances both axes at once
        let pair_dims: Vec<usize> = pairs.iter().map(|&(a, _)| self.dims()[a]).collect();
        let pair_strides: Vec<usize> = pairs.iter().map(|&(a, b)| strides[a] + strides[b]).collect();

        let out_shape = Shape(out_dims);
        let out_len = out_shape.len();
        let mut data = Vec::with_capacity(out_len);
        let mut out_index = vec![0usize; free.len()];
        for _ in 0..out_len {
            let base: usize = out_index
                .iter()
                .zip(&out_strides)
                .map(|(i, s)| i * s)
                .sum();
            let mut acc = T::zero();
            let mut pair_index = vec![0usize; pairs.len()];
            loop {
                let offset = base
                    + pair_index
                        .iter()
                        .zip(&pair_strides)
                        .map(|(i, s)| i * s)
                        .sum::<usize>();
                acc = acc.add(self.data[offset]);
                if !increment(&mut pair_index, &pair_dims) {
                    break;
                }
            }
            data.push(acc);
            increment(&mut out_index, out_shape.dims());
        }
        Ok(Tensor {
            shape: out_shape,
            data,
        })
    }

    /// Reorders axes: output axis `k` is input axis `perm[k]`.
    pub fn permute_axes(&self, perm: &[usize]) -> Result<Tensor<T>, TensorError> {
        let rank = self.rank();
        let mut seen = vec![false; rank];
        if perm.len() != rank || perm.iter().any(|&p| p >= rank || std::mem::replace(&mut seen[p], true)) {
            return Err(TensorError::AxisMismatch(format!(
                "{perm:?} is not a permutation of 0..{rank}"
            )));
        }
        let strides = self.shape.strides();
        let out_shape = Shape(perm.iter().map(|&p| self.dims()[p]).collect());
        let src_strides: Vec<usize> = perm.iter().map(|&p| strides[p]).collect();
        let mut index = vec![0usize; rank];
        let mut data = Vec::with_capacity(self.data.len());
        for _ in 0..self.data.len() {
            let offset: usize = index.iter().zip(&src_strides).map(|(i, s)| i * s).sum();
            data.push(self.data[offset]);
            increment(&mut index, out_shape.dims());
        }
        Ok(Tensor {
            shape: out_shape,
            data,
        })
    }

    /// Semiring sum of entrywise products. Real: dot product; Boolean:
    /// whether the two supports intersect.
    pub fn inner_product(&self, other: &Tensor<T>) -> Result<T, TensorError> {
        self.check_same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |acc, (&a, &b)| acc.add(a.mul(b))))
    }

    pub fn add(&self, other: &Tensor<T>) -> Result<Tensor<T>, TensorError> {
        self.check_same_shape(other)?;
        Ok(Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a.add(b)).collect(),
        })
    }

    pub fn scale(&self, c: T) -> Tensor<T> {
        Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().map(|&a| c.mul(a)).collect(),
        }
    }

    /// The state `Ψ_f = Σᵢ eᵢ ⊗ f(eᵢ)` of a linear map stored as a matrix
    /// with axes `(input, output)`. Entry `(i, j)` of the state is entry
    /// `(i, j)` of the matrix.
    pub fn map_to_state(&self) -> Result<Tensor<T>, TensorError> {
        if self.rank() != 2 {
            return Err(TensorError::RankError {
                expected: 2,
                actual: self.rank(),
            });
        }
        Ok(self.clone())
    }

    fn check_same_shape(&self, other: &Tensor<T>) -> Result<(), TensorError> {
        if self.shape != other.shape {
            return Err(TensorError::ShapeMismatch {
                left: self.dims().to_vec(),
                right: other.dims().to_vec(),
            });
        }
        Ok(())
    }
}

impl<T: RealScalar> Tensor<T> {
    pub fn norm(&self) -> T {
        self.data
            .iter()
            .fold(<T as Semiring>::zero(), |acc, &a| acc + a * a)
            .sqrt()
    }

    pub fn normalize(&self) -> Result<Tensor<T>, TensorError> {
        let norm = self.norm();
        if norm == <T as Semiring>::zero() {
            return Err(TensorError::ZeroVector);
        }
        Ok(self.scale(<T as Semiring>::one() / norm))
    }
}

impl<T: Semiring + fmt::Display> fmt::Display for Tensor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[", self.dims())?;
        for (k, v) in self.data.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

/// Odometer step over `dims`; returns false after wrapping back to all zeros.
fn increment(index: &mut [usize], dims: &[usize]) -> bool {
    for axis in (0..index.len()).rev() {
        index[axis] += 1;
        if index[axis] < dims[axis] {
            return true;
        }
        index[axis] = 0;
    }
    false
}
