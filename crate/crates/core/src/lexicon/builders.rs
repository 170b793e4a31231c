//! Tensors for relation-style verbs and for the logical words "does" and
//! "not", built only from `η` states.

use crate::scalar::Semiring;
use crate::tensor::{Tensor, TensorError};

/// Rank-3 verb tensor `Σᵢⱼ eᵢ ⊗ truth(i, j) ⊗ eⱼ` over
/// `subject ⊗ sentence ⊗ object`. Pairs missing from `truth` get the zero
/// vector.
pub fn build_relation_verb<T, I>(
    dim_subj: usize,
    dim_sent: usize,
    dim_obj: usize,
    truth: I,
) -> Result<Tensor<T>, TensorError>
where
    T: Semiring,
    I: IntoIterator<Item = ((usize, usize), Tensor<T>)>,
{
    let mut verb = Tensor::zeros(vec![dim_subj, dim_sent, dim_obj])?;
    for ((i, j), value) in truth {
        if i >= dim_subj {
            return Err(TensorError::IndexOutOfRange { index: i, dim: dim_subj });
        }
        if j >= dim_obj {
            return Err(TensorError::IndexOutOfRange { index: j, dim: dim_obj });
        }
        if value.dims() != [dim_sent] {
            return Err(TensorError::ShapeMismatch {
                left: vec![dim_sent],
                right: value.dims().to_vec(),
            });
        }
        for (k, &v) in value.data().iter().enumerate() {
            verb.set(&[i, k, j], v)?;
        }
    }
    Ok(verb)
}

/// `(1_V ⊗ η_J ⊗ 1_V) ∘ η_V`: entry `(i, j, k, l)` is one iff `i = l` and
/// `j = k`.
pub fn build_does<T: Semiring>(dim_v: usize, dim_j: usize) -> Result<Tensor<T>, TensorError> {
    let mut t = Tensor::zeros(vec![dim_v, dim_j, dim_j, dim_v])?;
    for i in 0..dim_v {
        for j in 0..dim_j {
            t.set(&[i, j, j, i], T::one())?;
        }
    }
    Ok(t)
}

/// `Σᵢ eᵢ ⊗ Ψ_N ⊗ eᵢ` where `Ψ_N` is the state of the square matrix
/// `neg_map`. With the identity this is [`build_does`].
pub fn build_not<T: Semiring>(dim_v: usize, neg_map: &Tensor<T>) -> Result<Tensor<T>, TensorError> {
    let state = neg_map.map_to_state()?;
    let d = state.dims()[0];
    if state.dims()[1] != d {
        return Err(TensorError::ShapeMismatch {
            left: vec![d, d],
            right: state.dims().to_vec(),
        });
    }
    let mut t = Tensor::zeros(vec![dim_v, d, d, dim_v])?;
    for i in 0..dim_v {
        for (a, b) in (0..d).flat_map(|a| (0..d).map(move |b| (a, b))) {
            t.set(&[i, a, b, i], state.get(&[a, b])?)?;
        }
    }
    Ok(t)
}

/// The two-dimensional logical negation `((0, 1), (1, 0))`.
pub fn logical_not<T: Semiring>() -> Tensor<T> {
    Tensor::from_vec(vec![2, 2], vec![T::zero(), T::one(), T::one(), T::zero()])
        .expect("2x2 data has four entries")
}

pub fn identity_map<T: Semiring>(dim: usize) -> Result<Tensor<T>, TensorError> {
    Tensor::eta(dim)
}
