//! From the meanings of words to the meaning of a sentence.
//!
//! A sentence is typed word by word against the lexicon, its flattened type
//! sequence is reduced to the target, and the reduction diagram is read as a
//! tensor network: every link is an `ε` contraction between the two word
//! tensors it joins, and the survivors are the free indices of the result.

use std::fmt;

use thiserror::Error;

use crate::lexicon::{AnyLexicon, Lexicon, LexiconEntry, LexiconError};
use crate::pregroup::{all_reductions, reduce_to, PregroupType, ReductionDiagram, SimpleType};
use crate::scalar::{RealScalar, Semiring, SemiringKind};
use crate::tensor::{Tensor, TensorError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("empty sentence")]
    EmptySentence,
    #[error("unknown word `{0}`")]
    UnknownWord(String),
    #[error("`{sentence}` does not reduce to `{target}`")]
    NoReduction { sentence: String, target: String },
    #[error("linked positions {a} and {b} live in spaces of different dimension ({dim_a} vs {dim_b})")]
    DimMismatch {
        a: usize,
        b: usize,
        dim_a: usize,
        dim_b: usize,
    },
    #[error("analysis does not fit the lexicon: {0}")]
    InvalidAnalysis(String),
    #[error("sentence meaning is the zero vector")]
    ZeroVector,
    #[error("{mode} similarity is not available over the {semiring} semiring")]
    ModeUnsupported {
        mode: SimilarityMode,
        semiring: SemiringKind,
    },
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// A typed and reduced sentence.
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub tokens: Vec<String>,
    /// Index into `lexicon.lookup(token)` of the typing used for each token.
    pub chosen: Vec<usize>,
    /// Position of each token's first simple type in `flat_types`.
    pub offsets: Vec<usize>,
    pub flat_types: Vec<SimpleType>,
    pub diagram: ReductionDiagram,
    pub target: PregroupType,
}

impl Analysis {
    pub fn entries<'a, T: Semiring>(&self, lexicon: &'a Lexicon<T>) -> Result<Vec<&'a LexiconEntry<T>>, EngineError> {
        self.tokens
            .iter()
            .zip(&self.chosen)
            .map(|(token, &k)| {
                lexicon
                    .lookup(token)
                    .ok_or_else(|| EngineError::UnknownWord(token.clone()))?
                    .get(k)
                    .ok_or_else(|| EngineError::InvalidAnalysis(format!("`{token}` has no typing #{k}")))
            })
            .collect()
    }

    pub fn flat_type(&self) -> PregroupType {
        PregroupType::new(self.flat_types.clone())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeaningResult<T> {
    pub vector: Tensor<T>,
    pub analysis: Analysis,
}

pub fn tokenize(sentence: &str) -> Vec<&str> {
    sentence.split_whitespace().collect()
}

/// Typing choices in depth-first lexicon order, as flattened sequences.
fn typing_candidates<'a, T: Semiring, S: AsRef<str>>(
    tokens: &[S],
    lexicon: &'a Lexicon<T>,
) -> Result<Vec<&'a [LexiconEntry<T>]>, EngineError> {
    if tokens.is_empty() {
        return Err(EngineError::EmptySentence);
    }
    tokens
        .iter()
        .map(|t| {
            lexicon
                .lookup(t.as_ref())
                .filter(|entries| !entries.is_empty())
                .ok_or_else(|| EngineError::UnknownWord(t.as_ref().to_string()))
        })
        .collect()
}

fn for_each_choice(counts: &[usize], mut visit: impl FnMut(&[usize]) -> bool) {
    let mut choice = vec![0; counts.len()];
    loop {
        if !visit(&choice) {
            return;
        }
        let mut axis = counts.len();
        loop {
            if axis == 0 {
                return;
            }
            axis -= 1;
            choice[axis] += 1;
            if choice[axis] < counts[axis] {
                break;
            }
            choice[axis] = 0;
        }
    }
}

fn flatten<T>(options: &[&[LexiconEntry<T>]], choice: &[usize]) -> (Vec<SimpleType>, Vec<usize>) {
    let mut flat = Vec::new();
    let mut offsets = Vec::with_capacity(choice.len());
    for (entries, &k) in options.iter().zip(choice) {
        offsets.push(flat.len());
        flat.extend_from_slice(&entries[k].typing.simples);
    }
    (flat, offsets)
}

/// Returns the first typing combination, in lexicon order, whose flattened
/// type reduces to `target`.
pub fn analyze<T: Semiring, S: AsRef<str>>(
    tokens: &[S],
    lexicon: &Lexicon<T>,
    target: &PregroupType,
) -> Result<Analysis, EngineError> {
    analyze_all(tokens, lexicon, target, 1)?
        .pop()
        .ok_or_else(|| no_reduction(tokens, target))
}

/// Up to `limit` analyses: every typing combination, and within each every
/// reduction diagram, leftmost first.
pub fn analyze_all<T: Semiring, S: AsRef<str>>(
    tokens: &[S],
    lexicon: &Lexicon<T>,
    target: &PregroupType,
    limit: usize,
) -> Result<Vec<Analysis>, EngineError> {
    let options = typing_candidates(tokens, lexicon)?;
    let counts: Vec<usize> = options.iter().map(|e| e.len()).collect();
    let mut found = Vec::new();
    for_each_choice(&counts, |choice| {
        let (flat, offsets) = flatten(&options, choice);
        let diagrams = if limit == 1 {
            reduce_to(&flat, target, lexicon.poset()).into_iter().collect()
        } else {
            all_reductions(&flat, target, lexicon.poset(), limit - found.len())
        };
        for diagram in diagrams {
            found.push(Analysis {
                tokens: tokens.iter().map(|t| t.as_ref().to_string()).collect(),
                chosen: choice.to_vec(),
                offsets: offsets.clone(),
                flat_types: flat.clone(),
                diagram,
                target: target.clone(),
            });
        }
        found.len() < limit
    });
    if found.is_empty() {
        return Err(no_reduction(tokens, target));
    }
    Ok(found)
}

fn no_reduction<S: AsRef<str>>(tokens: &[S], target: &PregroupType) -> EngineError {
    EngineError::NoReduction {
        sentence: tokens.iter().map(AsRef::as_ref).collect::<Vec<_>>().join(" "),
        target: target.to_string(),
    }
}

/// Checks the analysis against the lexicon and returns the chosen entries.
fn checked_entries<'a, T: Semiring>(
    analysis: &Analysis,
    lexicon: &'a Lexicon<T>,
) -> Result<Vec<&'a LexiconEntry<T>>, EngineError> {
    let entries = analysis.entries(lexicon)?;
    let mut flat = Vec::new();
    for (entry, &offset) in entries.iter().zip(&analysis.offsets) {
        if offset != flat.len() {
            return Err(EngineError::InvalidAnalysis("offsets do not match typings".into()));
        }
        flat.extend_from_slice(&entry.typing.simples);
    }
    if flat != analysis.flat_types || analysis.offsets.len() != entries.len() {
        return Err(EngineError::InvalidAnalysis("flattened types do not match typings".into()));
    }
    analysis
        .diagram
        .validate(&flat, lexicon.poset())
        .map_err(|e| EngineError::InvalidAnalysis(e.to_string()))?;

    let spaces = lexicon.spaces();
    let dim = |t: &SimpleType| {
        spaces
            .dim_of(t)
            .ok_or_else(|| LexiconError::MissingDimension(t.base.name().to_string()))
    };
    for &(a, b) in analysis.diagram.links() {
        let (dim_a, dim_b) = (dim(&flat[a])?, dim(&flat[b])?);
        if dim_a != dim_b {
            return Err(EngineError::DimMismatch { a, b, dim_a, dim_b });
        }
    }
    let survivors = analysis.diagram.survivors();
    if survivors.len() != analysis.target.len() {
        return Err(EngineError::InvalidAnalysis("survivors do not match the target".into()));
    }
    for (&s, x) in survivors.iter().zip(&analysis.target.simples) {
        let (dim_s, dim_x) = (dim(&flat[s])?, dim(x)?);
        if dim_s != dim_x {
            return Err(EngineError::DimMismatch {
                a: s,
                b: s,
                dim_a: dim_s,
                dim_b: dim_x,
            });
        }
    }
    Ok(entries)
}

/// Evaluates the contraction network by a left-to-right fold: each word
/// tensor is multiplied onto a boundary tensor, and every link whose two
/// endpoints are then present is contracted at once.
pub fn compute_meaning<T: Semiring>(analysis: &Analysis, lexicon: &Lexicon<T>) -> Result<MeaningResult<T>, EngineError> {
    let entries = checked_entries(analysis, lexicon)?;
    let partner = analysis.diagram.partners();
    let mut boundary = Tensor::scalar(T::one());
    // global position of each axis of `boundary`
    let mut open: Vec<usize> = Vec::new();
    for (entry, &offset) in entries.iter().zip(&analysis.offsets) {
        boundary = boundary.tensor_product(&entry.tensor);
        let first_new = open.len();
        open.extend(offset..offset + entry.typing.len());

        let mut pairs = Vec::new();
        for axis in first_new..open.len() {
            if let Some(q) = partner[open[axis]] {
                if let Some(other) = open.iter().position(|&p| p == q) {
                    if other < axis {
                        pairs.push((other, axis));
                    }
                }
            }
        }
        if !pairs.is_empty() {
            boundary = boundary.contract(&pairs)?;
            let closed: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [open[a], open[b]]).collect();
            open.retain(|p| !closed.contains(p));
        }
    }
    debug_assert_eq!(open, analysis.diagram.survivors());
    Ok(MeaningResult {
        vector: boundary,
        analysis: analysis.clone(),
    })
}

/// Reference evaluation: the tensor product of all word tensors, then one
/// contraction over every link. Exponential in sentence length.
pub fn materialize_meaning<T: Semiring>(analysis: &Analysis, lexicon: &Lexicon<T>) -> Result<Tensor<T>, EngineError> {
    let entries = checked_entries(analysis, lexicon)?;
    let full = entries
        .iter()
        .fold(Tensor::scalar(T::one()), |acc, e| acc.tensor_product(&e.tensor));
    Ok(full.contract(analysis.diagram.links())?)
}

/// Tokenizes, analyzes and evaluates `sentence`.
pub fn sentence_meaning<T: Semiring>(
    sentence: &str,
    lexicon: &Lexicon<T>,
    target: &PregroupType,
) -> Result<MeaningResult<T>, EngineError> {
    let analysis = analyze(&tokenize(sentence), lexicon, target)?;
    compute_meaning(&analysis, lexicon)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SimilarityMode {
    /// `⟨f(s1) | f(s2)⟩`.
    Raw,
    /// The inner product divided by both norms.
    Cosine,
}

impl fmt::Display for SimilarityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SimilarityMode::Raw => "raw",
            SimilarityMode::Cosine => "cosine",
        })
    }
}

pub fn raw_similarity<T: Semiring>(
    s1: &str,
    s2: &str,
    lexicon: &Lexicon<T>,
    target: &PregroupType,
) -> Result<T, EngineError> {
    let a = sentence_meaning(s1, lexicon, target)?;
    let b = sentence_meaning(s2, lexicon, target)?;
    Ok(a.vector.inner_product(&b.vector)?)
}

pub fn cosine_similarity<T: RealScalar>(
    s1: &str,
    s2: &str,
    lexicon: &Lexicon<T>,
    target: &PregroupType,
) -> Result<T, EngineError> {
    let a = sentence_meaning(s1, lexicon, target)?.vector;
    let b = sentence_meaning(s2, lexicon, target)?.vector;
    // one square root of the product keeps exact cases exact
    let (na2, nb2) = (a.inner_product(&a)?, b.inner_product(&b)?);
    if na2 == <T as Semiring>::zero() || nb2 == <T as Semiring>::zero() {
        return Err(EngineError::ZeroVector);
    }
    Ok(a.inner_product(&b)? / (na2 * nb2).sqrt())
}

/// A scalar from a lexicon of any carrier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarValue {
    Real(f64),
    Boolean(bool),
    Natural(u64),
}

impl ScalarValue {
    pub fn to_f64(self) -> f64 {
        match self {
            ScalarValue::Real(v) => v,
            ScalarValue::Boolean(b) => f64::from(u8::from(b)),
            ScalarValue::Natural(n) => n as f64,
        }
    }
}

impl fmt::Display for ScalarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarValue::Real(v) => write!(f, "{v}"),
            ScalarValue::Boolean(b) => write!(f, "{}", u8::from(*b)),
            ScalarValue::Natural(n) => write!(f, "{n}"),
        }
    }
}

/// Degree of similarity over a lexicon of any carrier. Cosine needs real
/// scalars.
pub fn similarity(
    lexicon: &AnyLexicon,
    s1: &str,
    s2: &str,
    target: &str,
    mode: SimilarityMode,
) -> Result<ScalarValue, EngineError> {
    match (lexicon, mode) {
        (AnyLexicon::Real(l), SimilarityMode::Raw) => {
            raw_similarity(s1, s2, l, &l.parse_type(target)?).map(ScalarValue::Real)
        }
        (AnyLexicon::Real(l), SimilarityMode::Cosine) => {
            cosine_similarity(s1, s2, l, &l.parse_type(target)?).map(ScalarValue::Real)
        }
        (AnyLexicon::Boolean(l), SimilarityMode::Raw) => {
            raw_similarity(s1, s2, l, &l.parse_type(target)?).map(ScalarValue::Boolean)
        }
        (AnyLexicon::Natural(l), SimilarityMode::Raw) => {
            raw_similarity(s1, s2, l, &l.parse_type(target)?).map(ScalarValue::Natural)
        }
        (other, SimilarityMode::Cosine) => Err(EngineError::ModeUnsupported {
            mode,
            semiring: other.semiring(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::build_relation_verb;

    /// Four men and four women; John is m3, Mary is f4. `likes` is the
    /// 3/4 loves + 1/4 hates superposition.
    fn graded() -> Lexicon<f64> {
        let mut lex = Lexicon::new(&[("n", 4), ("s", 2), ("j", 2), ("sigma", 4)]).unwrap();
        lex.add_basis_word("John", "n", 2).unwrap();
        lex.add_basis_word("Mary", "n", 3).unwrap();
        let t = |b: bool| Tensor::basis_vector(2, usize::from(b)).unwrap();
        let rel = |pairs: &[(usize, usize)]| {
            let truth = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).map(|(i, j)| ((i, j), t(pairs.contains(&(i, j)))));
            build_relation_verb(4, 2, 4, truth).unwrap()
        };
        let loves = rel(&[(2, 3), (0, 1)]);
        let hates = rel(&[(1, 3)]);
        let likes = loves.scale(0.75).add(&hates.scale(0.25)).unwrap();
        for (word, tensor) in [("loves", &loves), ("hates", &hates), ("likes", &likes)] {
            lex.add(word, "n^r s n^l", tensor.clone()).unwrap();
        }
        for (word, tensor) in [("love", &loves), ("hate", &hates), ("like", &likes)] {
            lex.add(word, "sigma^r j n^l", tensor.clone()).unwrap();
        }
        lex.add_does("does", "n^r s j^l sigma").unwrap();
        lex.add_not("not", "sigma^r j j^l sigma", None).unwrap();
        lex
    }

    fn s(lex: &Lexicon<f64>) -> PregroupType {
        lex.parse_type("s").unwrap()
    }

    #[test]
    fn positive_analysis() {
        let lex = graded();
        let a = analyze(&["John", "likes", "Mary"], &lex, &s(&lex)).unwrap();
        assert_eq!(a.flat_type().to_string(), "n n^r s n^l n");
        assert_eq!(a.diagram.links(), &[(0, 1), (3, 4)]);
        assert_eq!(a.offsets, vec![0, 1, 4]);
    }

    #[test]
    fn negative_analysis() {
        let lex = graded();
        let a = analyze(&tokenize("John does not like Mary"), &lex, &s(&lex)).unwrap();
        assert_eq!(a.flat_types.len(), 13);
        assert_eq!(a.diagram.links(), &[(0, 1), (3, 6), (4, 5), (7, 10), (8, 9), (11, 12)]);
    }

    #[test]
    fn analysis_errors() {
        let lex = graded();
        assert!(matches!(
            analyze(&["John", "John"], &lex, &s(&lex)),
            Err(EngineError::NoReduction { .. })
        ));
        assert_eq!(
            analyze(&["John", "adores", "Mary"], &lex, &s(&lex)),
            Err(EngineError::UnknownWord("adores".into()))
        );
        assert_eq!(analyze::<f64, &str>(&[], &lex, &s(&lex)), Err(EngineError::EmptySentence));
    }

    #[test]
    fn graded_meanings() {
        let lex = graded();
        let m = sentence_meaning("John likes Mary", &lex, &s(&lex)).unwrap();
        assert_eq!(m.vector.data(), &[0.25, 0.75]);
        let m = sentence_meaning("John does not like Mary", &lex, &s(&lex)).unwrap();
        assert_eq!(m.vector.data(), &[0.75, 0.25]);
    }

    #[test]
    fn fold_equals_materialization() {
        let lex = graded();
        for sentence in ["John likes Mary", "John does not hate Mary", "Mary loves John"] {
            let a = analyze(&tokenize(sentence), &lex, &s(&lex)).unwrap();
            assert_eq!(compute_meaning(&a, &lex).unwrap().vector, materialize_meaning(&a, &lex).unwrap());
        }
    }

    #[test]
    fn raw_and_cosine() {
        let lex = graded();
        let t = s(&lex);
        assert_eq!(raw_similarity("John loves Mary", "John likes Mary", &lex, &t).unwrap(), 0.75);
        let c = cosine_similarity("John loves Mary", "John likes Mary", &lex, &t).unwrap();
        assert!((c - 3.0 / 10f64.sqrt()).abs() < 1e-12);
        let c = cosine_similarity("John likes Mary", "John likes Mary", &lex, &t).unwrap();
        assert!((c - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cosine_rejects_zero_meaning() {
        let mut lex = Lexicon::<f64>::new(&[("n", 2), ("s", 1)]).unwrap();
        lex.add_basis_word("a", "n", 0).unwrap();
        lex.add("x", "n^r s", Tensor::zeros(vec![2, 1]).unwrap()).unwrap();
        let t = lex.parse_type("s").unwrap();
        assert_eq!(cosine_similarity("a x", "a x", &lex, &t), Err(EngineError::ZeroVector));
        assert_eq!(raw_similarity("a x", "a x", &lex, &t).unwrap(), 0.0);
    }

    #[test]
    fn homograph_resolution() {
        let mut lex = graded();
        // a second typing for `likes` that never reduces in this position
        lex.add("John", "s", Tensor::zeros(vec![2]).unwrap()).unwrap();
        let a = analyze(&["John", "likes", "Mary"], &lex, &s(&lex)).unwrap();
        assert_eq!(a.chosen, vec![0, 0, 0]);
        let alone = analyze(&["John"], &lex, &s(&lex)).unwrap();
        assert_eq!(alone.chosen, vec![1]);
        let all = analyze_all(&["John", "likes", "Mary"], &lex, &s(&lex), 10).unwrap();
        assert_eq!(all.len(), 1);
    }

    #[test]
    fn dim_mismatch_on_ordered_link() {
        let mut lex = Lexicon::<f64>::new(&[("a", 2), ("b", 3), ("s", 1)])
            .unwrap()
            .with_order(&[("a", "b")])
            .unwrap();
        lex.add_basis_word("x", "a", 0).unwrap();
        lex.add("y", "b^r s", Tensor::zeros(vec![3, 1]).unwrap()).unwrap();
        let t = lex.parse_type("s").unwrap();
        let a = analyze(&["x", "y"], &lex, &t).unwrap();
        assert!(matches!(compute_meaning(&a, &lex), Err(EngineError::DimMismatch { .. })));
    }

    #[test]
    fn tampered_analysis_is_rejected() {
        let lex = graded();
        let mut a = analyze(&["John", "likes", "Mary"], &lex, &s(&lex)).unwrap();
        a.chosen[1] = 5;
        assert!(matches!(compute_meaning(&a, &lex), Err(EngineError::InvalidAnalysis(_))));
    }

    #[test]
    fn any_lexicon_modes() {
        let mut lex = Lexicon::<bool>::new(&[("n", 2), ("s", 1)]).unwrap();
        lex.add_basis_word("a", "n", 0).unwrap();
        lex.add("x", "n^r s", Tensor::from_vec(vec![2, 1], vec![true, false]).unwrap()).unwrap();
        let any = AnyLexicon::Boolean(lex);
        assert_eq!(
            similarity(&any, "a x", "a x", "s", SimilarityMode::Raw).unwrap(),
            ScalarValue::Boolean(true)
        );
        assert!(matches!(
            similarity(&any, "a x", "a x", "s", SimilarityMode::Cosine),
            Err(EngineError::ModeUnsupported { .. })
        ));
    }
}
