//! Compositional distributional semantics over pregroup grammars.
//!
//! Words carry a pregroup type and a tensor in the matching product of
//! spaces. A sentence is reduced to a target type, and the reduction's
//! contraction links are evaluated as `ε` maps on the tensor product of the
//! word meanings. Scalars come from any [`Semiring`]: reals give graded
//! meanings, booleans give relational ones.
//!
//! ```
//! use pgsem::{sentence_meaning, RealLexicon, RealTensor};
//!
//! let mut lex = RealLexicon::new(&[("n", 2), ("s", 2)]).unwrap();
//! lex.add_basis_word("Alice", "n", 0).unwrap();
//! lex.add_basis_word("Bob", "n", 1).unwrap();
//! let mut sees = RealTensor::zeros(vec![2, 2, 2]).unwrap();
//! sees.set(&[0, 1, 1], 1.0).unwrap();
//! lex.add("sees", "n^r s n^l", sees).unwrap();
//!
//! let target = lex.parse_type("s").unwrap();
//! let meaning = sentence_meaning("Alice sees Bob", &lex, &target).unwrap();
//! assert_eq!(meaning.vector.data(), &[0.0, 1.0]);
//! ```

pub mod demo;
pub mod engine;
pub mod lexicon;
pub mod pregroup;
pub mod scalar;
pub mod tensor;

pub use engine::{
    analyze, analyze_all, compute_meaning, cosine_similarity, materialize_meaning, raw_similarity, sentence_meaning,
    similarity, tokenize, Analysis, EngineError, MeaningResult, ScalarValue, SimilarityMode,
};
pub use lexicon::{
    build_does, build_not, build_relation_verb, identity_map, load_lexicon, logical_not, validate, AnyLexicon,
    Diagnostic, Lexicon, LexiconEntry, LexiconError, SpaceAssignment,
};
pub use pregroup::{
    parse_type, reduce_to, BasicType, PregroupError, PregroupType, ReductionDiagram, SimpleType, TypePoset,
    TypeRegistry,
};
pub use scalar::{RealScalar, Semiring, SemiringKind};
pub use tensor::{Shape, Tensor, TensorError};

pub type RealTensor = Tensor<f64>;
pub type BoolTensor = Tensor<bool>;
pub type NatTensor = Tensor<u64>;
pub type RealLexicon = Lexicon<f64>;
pub type BoolLexicon = Lexicon<bool>;
pub type NatLexicon = Lexicon<u64>;
pub type F32Tensor = Tensor<f32>;
pub type F32Lexicon = Lexicon<f32>;
