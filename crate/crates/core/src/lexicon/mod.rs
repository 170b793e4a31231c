//! Meaning spaces and the word store.
//!
//! A [`Lexicon`] pairs every word with one or more `(pregroup type, tensor)`
//! entries. Each basic type is assigned a vector space dimension; adjoints
//! share the dimension of their base, so the tensor of a word typed
//! `n^r s n^l` has shape `[dim n, dim s, dim n]`.

mod builders;
mod format;

use std::fmt;

use indexmap::IndexMap;
use thiserror::Error;

use crate::pregroup::{parse_type, BasicType, PregroupError, PregroupType, SimpleType, TypePoset, TypeRegistry};
use crate::scalar::{Semiring, SemiringKind};
use crate::tensor::{Tensor, TensorError};

pub use builders::{build_does, build_not, build_relation_verb, identity_map, logical_not};
pub use format::{load_lexicon, validate, AnyLexicon, LexiconScalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LexiconError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Pregroup(#[from] PregroupError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("basic type `{0}` has no assigned dimension")]
    MissingDimension(String),
    #[error("tensor shape {actual:?} does not match typing `{typing}` (expected {expected:?})")]
    ShapeMismatch {
        typing: String,
        expected: Vec<usize>,
        actual: Vec<usize>,
    },
    #[error("value {value} is not a valid {semiring} scalar")]
    InvalidScalarForSemiring { value: String, semiring: SemiringKind },
    #[error("expected a {expected} lexicon, found {found}")]
    SemiringMismatch {
        expected: SemiringKind,
        found: SemiringKind,
    },
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
}

/// Dimension of the space assigned to each basic type.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpaceAssignment {
    dims: IndexMap<BasicType, usize>,
}

impl SpaceAssignment {
    pub fn dim(&self, basic: &BasicType) -> Option<usize> {
        self.dims.get(basic).copied()
    }

    /// `p`, `pˡ`, `pʳ`, ... all live in the same space.
    pub fn dim_of(&self, t: &SimpleType) -> Option<usize> {
        self.dim(&t.base)
    }

    pub fn shape_of(&self, typing: &PregroupType) -> Result<Vec<usize>, LexiconError> {
        typing
            .simples
            .iter()
            .map(|t| {
                self.dim_of(t)
                    .ok_or_else(|| LexiconError::MissingDimension(t.base.name().to_string()))
            })
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasicType, usize)> {
        self.dims.iter().map(|(b, &d)| (b, d))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LexiconEntry<T> {
    pub word: String,
    pub typing: PregroupType,
    pub tensor: Tensor<T>,
}

/// One problem found while checking a lexicon.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    /// `None` for problems in the header (semiring, basic types, order).
    pub word: Option<String>,
    pub error: LexiconError,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.word {
            Some(word) => write!(f, "{word}: {}", self.error),
            None => write!(f, "{}", self.error),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lexicon<T> {
    registry: TypeRegistry,
    poset: TypePoset,
    spaces: SpaceAssignment,
    entries: IndexMap<String, Vec<LexiconEntry<T>>>,
}

impl<T: Semiring> Lexicon<T> {
    /// Empty lexicon over `(name, dim)` basic types with a discrete order.
    pub fn new(basic_types: &[(&str, usize)]) -> Result<Self, LexiconError> {
        let mut registry = TypeRegistry::new();
        let mut spaces = SpaceAssignment::default();
        for &(name, dim) in basic_types {
            let basic = registry.register(name)?;
            if dim == 0 {
                return Err(TensorError::InvalidShape(vec![dim]).into());
            }
            spaces.dims.insert(basic, dim);
        }
        Ok(Lexicon {
            registry,
            poset: TypePoset::discrete(),
            spaces,
            entries: IndexMap::new(),
        })
    }

    /// Replaces the order on basic types with the closure of `pairs`.
    pub fn with_order(mut self, pairs: &[(&str, &str)]) -> Result<Self, LexiconError> {
        let lookup = |name: &str| {
            self.registry
                .get(name)
                .cloned()
                .ok_or_else(|| PregroupError::UnknownBasicType(name.to_string()))
        };
        let pairs = pairs
            .iter()
            .map(|&(p, q)| Ok((lookup(p)?, lookup(q)?)))
            .collect::<Result<Vec<_>, PregroupError>>()?;
        self.poset = TypePoset::from_pairs(&self.registry, &pairs)?;
        Ok(self)
    }

    pub fn registry(&self) -> &TypeRegistry {
        &self.registry
    }

    pub fn poset(&self) -> &TypePoset {
        &self.poset
    }

    pub fn spaces(&self) -> &SpaceAssignment {
        &self.spaces
    }

    pub fn semiring(&self) -> SemiringKind {
        T::KIND
    }

    pub fn parse_type(&self, text: &str) -> Result<PregroupType, LexiconError> {
        Ok(parse_type(text, &self.registry)?)
    }

    /// Adds an entry after checking its tensor against the typing.
    pub fn insert(&mut self, word: &str, typing: PregroupType, tensor: Tensor<T>) -> Result<(), LexiconError> {
        self.check_entry(&typing, &tensor)?;
        self.entries.entry(word.to_string()).or_default().push(LexiconEntry {
            word: word.to_string(),
            typing,
            tensor,
        });
        Ok(())
    }

    pub fn add(&mut self, word: &str, typing: &str, tensor: Tensor<T>) -> Result<(), LexiconError> {
        let typing = self.parse_type(typing)?;
        self.insert(word, typing, tensor)
    }

    /// Adds a basis vector of the space of an atomic `typing`.
    pub fn add_basis_word(&mut self, word: &str, typing: &str, index: usize) -> Result<(), LexiconError> {
        let typing = self.parse_type(typing)?;
        let shape = self.spaces.shape_of(&typing)?;
        if shape.len() != 1 {
            return Err(LexiconError::ShapeMismatch {
                typing: typing.to_string(),
                expected: shape,
                actual: vec![index + 1],
            });
        }
        let tensor = Tensor::basis_vector(shape[0], index)?;
        self.insert(word, typing, tensor)
    }

    /// Adds the `η`-built auxiliary. The typing must have four simple types
    /// whose outer and inner pairs share a space, e.g. `n^r s j^l sigma`
    /// with `dim n = dim sigma` and `dim s = dim j`.
    pub fn add_does(&mut self, word: &str, typing: &str) -> Result<(), LexiconError> {
        let typing = self.parse_type(typing)?;
        let (dim_v, dim_j) = self.logical_dims(&typing)?;
        let tensor = build_does(dim_v, dim_j)?;
        self.insert(word, typing, tensor)
    }

    /// Adds a negation built from `neg_map`, which defaults to the logical
    /// NOT when the inner space is two-dimensional.
    pub fn add_not(&mut self, word: &str, typing: &str, neg_map: Option<&Tensor<T>>) -> Result<(), LexiconError> {
        let typing = self.parse_type(typing)?;
        let (dim_v, dim_j) = self.logical_dims(&typing)?;
        let default;
        let neg_map = match neg_map {
            Some(m) => m,
            None if dim_j == 2 => {
                default = logical_not();
                &default
            }
            None => {
                return Err(LexiconError::Schema(format!(
                    "`not` over a {dim_j}-dimensional space needs an explicit neg_map"
                )))
            }
        };
        let tensor = build_not(dim_v, neg_map)?;
        self.insert(word, typing, tensor)
    }

    fn logical_dims(&self, typing: &PregroupType) -> Result<(usize, usize), LexiconError> {
        let shape = self.spaces.shape_of(typing)?;
        match shape[..] {
            [v, j, j2, v2] if v == v2 && j == j2 => Ok((v, j)),
            _ => {
                let expected = match shape[..] {
                    [v, j, _, _] => vec![v, j, j, v],
                    _ => vec![0; 4],
                };
                Err(LexiconError::ShapeMismatch {
                    typing: typing.to_string(),
                    expected,
                    actual: shape,
                })
            }
        }
    }

    fn check_entry(&self, typing: &PregroupType, tensor: &Tensor<T>) -> Result<(), LexiconError> {
        for t in &typing.simples {
            if !self.registry.contains(&t.base) {
                return Err(PregroupError::UnknownBasicType(t.base.name().to_string()).into());
            }
        }
        let expected = self.spaces.shape_of(typing)?;
        if tensor.dims() != expected.as_slice() {
            return Err(LexiconError::ShapeMismatch {
                typing: typing.to_string(),
                expected,
                actual: tensor.dims().to_vec(),
            });
        }
        Ok(())
    }

    /// Typings for `word`, in insertion order.
    pub fn lookup(&self, word: &str) -> Option<&[LexiconEntry<T>]> {
        self.entries.get(word).map(Vec::as_slice)
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn entries(&self) -> impl Iterator<Item = &LexiconEntry<T>> {
        self.entries.values().flatten()
    }

    /// Number of entries (a word with two typings counts twice).
    pub fn len(&self) -> usize {
        self.entries.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Rechecks every entry against the space assignment.
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        self.entries()
            .filter_map(|e| {
                self.check_entry(&e.typing, &e.tensor).err().map(|error| Diagnostic {
                    word: Some(e.word.clone()),
                    error,
                })
            })
            .collect()
    }
}
