//! JSON lexicon files.
//!
//! ```json
//! {
//!   "semiring": "real",
//!   "basic_types": [{"name": "n", "dim": 4}, {"name": "s", "dim": 2}],
//!   "order": [["p", "q"]],
//!   "entries": [
//!     {"word": "likes", "type": "n^r s n^l",
//!      "tensor": {"shape": [4, 2, 4], "dense": [0, 1, ...]}},
//!     {"word": "John", "type": "n",
//!      "tensor": {"shape": [4], "sparse": [{"idx": [2], "val": 1}]}},
//!     {"word": "does", "type": "n^r s j^l sigma", "builtin": "does"}
//!   ]
//! }
//! ```
//!
//! `order` is optional. Each entry carries exactly one of `dense`, `sparse`
//! or `builtin`; `not` builtins accept an optional `neg_map` matrix.

use serde::{Deserialize, Serialize};
use serde_json::Number;

use super::{Diagnostic, Lexicon, LexiconError};
use crate::scalar::{Semiring, SemiringKind};
use crate::tensor::{Tensor, TensorError};

/// Scalars that can be read from and written to lexicon files.
pub trait LexiconScalar: Semiring {
    fn from_json(value: &Number) -> Option<Self>;
    fn to_json(self) -> Number;
}

impl LexiconScalar for f64 {
    fn from_json(value: &Number) -> Option<Self> {
        value.as_f64().and_then(f64::from_f64)
    }

    fn to_json(self) -> Number {
        Number::from_f64(self).unwrap_or_else(|| Number::from(0))
    }
}

impl LexiconScalar for f32 {
    fn from_json(value: &Number) -> Option<Self> {
        value.as_f64().and_then(f32::from_f64)
    }

    fn to_json(self) -> Number {
        Number::from_f64(f64::from(self)).unwrap_or_else(|| Number::from(0))
    }
}

impl LexiconScalar for u64 {
    fn from_json(value: &Number) -> Option<Self> {
        value.as_u64().or_else(|| value.as_f64().and_then(u64::from_f64))
    }

    fn to_json(self) -> Number {
        Number::from(self)
    }
}

impl LexiconScalar for u32 {
    fn from_json(value: &Number) -> Option<Self> {
        u64::from_json(value).and_then(|v| u32::try_from(v).ok())
    }

    fn to_json(self) -> Number {
        Number::from(self)
    }
}

impl LexiconScalar for bool {
    fn from_json(value: &Number) -> Option<Self> {
        value.as_f64().and_then(bool::from_f64)
    }

    fn to_json(self) -> Number {
        Number::from(u8::from(self))
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LexiconDoc {
    semiring: SemiringKind,
    basic_types: Vec<BasicTypeDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    order: Vec<(String, String)>,
    entries: Vec<EntryDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasicTypeDoc {
    name: String,
    dim: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    word: String,
    #[serde(rename = "type")]
    typing: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tensor: Option<TensorDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    neg_map: Option<Vec<Vec<Number>>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorDoc {
    shape: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dense: Option<Vec<Number>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sparse: Option<Vec<SparseDoc>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SparseDoc {
    idx: Vec<usize>,
    val: Number,
}

/// A lexicon whose carrier is only known after reading the file.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyLexicon {
    Real(Lexicon<f64>),
    Boolean(Lexicon<bool>),
    Natural(Lexicon<u64>),
}

impl AnyLexicon {
    pub fn semiring(&self) -> SemiringKind {
        match self {
            AnyLexicon::Real(_) => SemiringKind::Real,
            AnyLexicon::Boolean(_) => SemiringKind::Boolean,
            AnyLexicon::Natural(_) => SemiringKind::Natural,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnyLexicon::Real(l) => l.len(),
            AnyLexicon::Boolean(l) => l.len(),
            AnyLexicon::Natural(l) => l.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_json(&self) -> String {
        match self {
            AnyLexicon::Real(l) => l.to_json(),
            AnyLexicon::Boolean(l) => l.to_json(),
            AnyLexicon::Natural(l) => l.to_json(),
        }
    }
}

/// Parses and validates a lexicon file, failing on the first problem.
pub fn load_lexicon(text: &str) -> Result<AnyLexicon, LexiconError> {
    let doc = parse_doc(text)?;
    Ok(match doc.semiring {
        SemiringKind::Real => AnyLexicon::Real(first_error(build(&doc))?),
        SemiringKind::Boolean => AnyLexicon::Boolean(first_error(build(&doc))?),
        SemiringKind::Natural => AnyLexicon::Natural(first_error(build(&doc))?),
    })
}

/// Every problem in a lexicon file, one diagnostic per violation. Empty iff
/// [`load_lexicon`] succeeds.
pub fn validate(text: &str) -> Vec<Diagnostic> {
    let doc = match parse_doc(text) {
        Ok(doc) => doc,
        Err(error) => return vec![Diagnostic { word: None, error }],
    };
    match doc.semiring {
        SemiringKind::Real => build::<f64>(&doc).1,
        SemiringKind::Boolean => build::<bool>(&doc).1,
        SemiringKind::Natural => build::<u64>(&doc).1,
    }
}

fn parse_doc(text: &str) -> Result<LexiconDoc, LexiconError> {
    serde_json::from_str(text).map_err(|e| LexiconError::Schema(e.to_string()))
}

fn first_error<T>((lexicon, diagnostics): (Option<Lexicon<T>>, Vec<Diagnostic>)) -> Result<Lexicon<T>, LexiconError> {
    match diagnostics.into_iter().next() {
        Some(d) => Err(d.error),
        None => Ok(lexicon.expect("lexicon is built when there are no diagnostics")),
    }
}

fn build<T: LexiconScalar>(doc: &LexiconDoc) -> (Option<Lexicon<T>>, Vec<Diagnostic>) {
    let header = |error| (None, vec![Diagnostic { word: None, error }]);
    let basic: Vec<(&str, usize)> = doc.basic_types.iter().map(|b| (b.name.as_str(), b.dim)).collect();
    let lexicon = match Lexicon::<T>::new(&basic) {
        Ok(l) => l,
        Err(e) => return header(e),
    };
    let order: Vec<(&str, &str)> = doc.order.iter().map(|(p, q)| (p.as_str(), q.as_str())).collect();
    let mut lexicon = match lexicon.with_order(&order) {
        Ok(l) => l,
        Err(e) => return header(e),
    };
    let mut diagnostics = Vec::new();
    for entry in &doc.entries {
        if let Err(error) = add_entry(&mut lexicon, entry) {
            diagnostics.push(Diagnostic {
                word: Some(entry.word.clone()),
                error,
            });
        }
    }
    (Some(lexicon), diagnostics)
}

fn scalar<T: LexiconScalar>(value: &Number) -> Result<T, LexiconError> {
    T::from_json(value).ok_or_else(|| LexiconError::InvalidScalarForSemiring {
        value: value.to_string(),
        semiring: T::KIND,
    })
}

fn add_entry<T: LexiconScalar>(lexicon: &mut Lexicon<T>, entry: &EntryDoc) -> Result<(), LexiconError> {
    if entry.word.is_empty() || entry.word.chars().any(char::is_whitespace) {
        return Err(LexiconError::Schema(format!(
            "word `{}` must be a non-empty token without whitespace",
            entry.word
        )));
    }
    match (&entry.tensor, &entry.builtin) {
        (Some(tensor), None) => {
            if entry.neg_map.is_some() {
                return Err(LexiconError::Schema("neg_map is only allowed with builtin `not`".into()));
            }
            let typing = lexicon.parse_type(&entry.typing)?;
            let expected = lexicon.spaces().shape_of(&typing)?;
            if tensor.shape != expected {
                return Err(LexiconError::ShapeMismatch {
                    typing: typing.to_string(),
                    expected,
                    actual: tensor.shape.clone(),
                });
            }
            let tensor = tensor_from_doc::<T>(tensor)?;
            lexicon.insert(&entry.word, typing, tensor)
        }
        (None, Some(builtin)) => match (builtin.as_str(), &entry.neg_map) {
            ("does", None) => lexicon.add_does(&entry.word, &entry.typing),
            ("does", Some(_)) => Err(LexiconError::Schema("neg_map is only allowed with builtin `not`".into())),
            ("not", neg_map) => {
                let neg_map = neg_map.as_ref().map(|rows| matrix_from_doc::<T>(rows)).transpose()?;
                lexicon.add_not(&entry.word, &entry.typing, neg_map.as_ref())
            }
            (other, _) => Err(LexiconError::UnknownBuiltin(other.to_string())),
        },
        _ => Err(LexiconError::Schema(format!(
            "entry `{}` needs exactly one of `tensor` or `builtin`",
            entry.word
        ))),
    }
}

fn tensor_from_doc<T: LexiconScalar>(doc: &TensorDoc) -> Result<Tensor<T>, LexiconError> {
    match (&doc.dense, &doc.sparse) {
        (Some(dense), None) => {
            let data = dense.iter().map(scalar::<T>).collect::<Result<Vec<_>, _>>()?;
            let expected: usize = doc.shape.iter().product();
            if data.len() != expected {
                return Err(TensorError::DataLength {
                    len: data.len(),
                    shape: doc.shape.clone(),
                }
                .into());
            }
            Ok(Tensor::from_vec(doc.shape.clone(), data)?)
        }
        (None, Some(sparse)) => {
            let mut tensor = Tensor::zeros(doc.shape.clone())?;
            let mut seen = std::collections::HashSet::new();
            for item in sparse {
                if !seen.insert(item.idx.clone()) {
                    return Err(LexiconError::Schema(format!("index {:?} listed twice", item.idx)));
                }
                tensor.set(&item.idx, scalar::<T>(&item.val)?)?;
            }
            Ok(tensor)
        }
        _ => Err(LexiconError::Schema(
            "tensor needs exactly one of `dense` or `sparse`".into(),
        )),
    }
}

fn matrix_from_doc<T: LexiconScalar>(rows: &[Vec<Number>]) -> Result<Tensor<T>, LexiconError> {
    let d = rows.len();
    if d == 0 || rows.iter().any(|r| r.len() != d) {
        return Err(LexiconError::Schema("neg_map must be a non-empty square matrix".into()));
    }
    let data = rows.iter().flatten().map(scalar::<T>).collect::<Result<Vec<_>, _>>()?;
    Ok(Tensor::from_vec(vec![d, d], data)?)
}

impl<T: LexiconScalar> Lexicon<T> {
    /// Reads a lexicon whose `semiring` must be `T`'s carrier.
    pub fn from_json(text: &str) -> Result<Self, LexiconError> {
        let doc = parse_doc(text)?;
        if doc.semiring != T::KIND {
            return Err(LexiconError::SemiringMismatch {
                expected: T::KIND,
                found: doc.semiring,
            });
        }
        first_error(build(&doc))
    }

    /// Serializes every entry as an explicit tensor, sparse when fewer than
    /// half of the entries are nonzero.
    pub fn to_json(&self) -> String {
        let doc = LexiconDoc {
            semiring: T::KIND,
            basic_types: self
                .spaces()
                .iter()
                .map(|(b, dim)| BasicTypeDoc {
                    name: b.name().to_string(),
                    dim,
                })
                .collect(),
            order: self
                .poset()
                .pairs()
                .into_iter()
                .map(|(p, q)| (p.name().to_string(), q.name().to_string()))
                .collect(),
            entries: self
                .entries()
                .map(|e| EntryDoc {
                    word: e.word.clone(),
                    typing: e.typing.to_string(),
                    tensor: Some(tensor_to_doc(&e.tensor)),
                    builtin: None,
                    neg_map: None,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("lexicon documents always serialize")
    }
}

fn tensor_to_doc<T: LexiconScalar>(tensor: &Tensor<T>) -> TensorDoc {
    let nonzero = tensor.nonzeros().count();
    let shape = tensor.dims().to_vec();
    if nonzero * 2 < tensor.data().len() {
        TensorDoc {
            shape,
            dense: None,
            sparse: Some(
                tensor
                    .nonzeros()
                    .map(|(idx, v)| SparseDoc { idx, val: v.to_json() })
                    .collect(),
            ),
        }
    } else {
        TensorDoc {
            shape,
            dense: Some(tensor.data().iter().map(|v| v.to_json()).collect()),
            sparse: None,
        }
    }
}
