//! The free pregroup over a finite poset of basic types: type algebra,
//! contraction-only reduction, and rendering of reduction diagrams.

mod diagram;
mod reduce;
mod types;

use thiserror::Error;

pub use diagram::ReductionDiagram;
pub use reduce::{all_reductions, contracts, greedy_reduce, reduce_to, survives_as};
pub use types::{
    parse_type, BasicType, PregroupType, SimpleType, TypePoset, TypeRegistry, MAX_ADJOINT_ORDER,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PregroupError {
    #[error("unknown basic type `{0}`")]
    UnknownBasicType(String),
    #[error("malformed type token `{0}`")]
    MalformedToken(String),
    #[error("invalid basic type name `{0}`")]
    InvalidBasicTypeName(String),
    #[error("duplicate basic type `{0}`")]
    DuplicateBasicType(String),
    #[error("adjoint order {0} exceeds the bound of {MAX_ADJOINT_ORDER}")]
    AdjointOrderOverflow(i32),
    #[error("order relation has a cycle through `{0}`")]
    OrderCycle(String),
    #[error("invalid reduction diagram: {0}")]
    InvalidDiagram(String),
}
