//! The worked examples, recomputed from the bundled lexicons.
//!
//! `paper.json` has four men `m1..m4` and four women `f1..f4` sharing the
//! noun space, with John = m3 and Mary = f4. `loves` and `hates` are crisp
//! relations valued in `|0⟩`/`|1⟩` with loves(John, Mary) true and
//! hates(John, Mary) false; `likes` is `3/4 loves + 1/4 hates`. The
//! relational `paper_bool.json` uses a one-point sentence space.
//!
//! The truth-theoretic examples with a one- or two-dimensional sentence space
//! are rebuilt from the crisp `loves` relation of the real lexicon, read as
//! "likes".

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::engine::{raw_similarity, sentence_meaning, EngineError};
use crate::lexicon::{build_relation_verb, Lexicon, LexiconError};
use crate::pregroup::PregroupType;
use crate::tensor::{Tensor, TensorError};

pub const BUNDLED_LEXICON: &str = include_str!("../assets/paper.json");
pub const BUNDLED_BOOL_LEXICON: &str = include_str!("../assets/paper_bool.json");

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DemoError {
    #[error("lexicon: {0}")]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("{0}")]
    Data(String),
}

/// One expected-versus-computed comparison. Passing means exact equality.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DemoCheck {
    pub name: String,
    pub expected: Vec<f64>,
    pub computed: Vec<f64>,
    pub passed: bool,
}

impl DemoCheck {
    fn new(name: impl Into<String>, expected: Vec<f64>, computed: Vec<f64>) -> Self {
        let passed = expected == computed;
        DemoCheck {
            name: name.into(),
            expected,
            computed,
            passed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DemoReport {
    pub checks: Vec<DemoCheck>,
    pub passed: usize,
    pub total: usize,
    pub all_passed: bool,
}

impl DemoReport {
    fn from_checks(checks: Vec<DemoCheck>) -> Self {
        let passed = checks.iter().filter(|c| c.passed).count();
        DemoReport {
            total: checks.len(),
            all_passed: passed == checks.len(),
            passed,
            checks,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs the examples on the bundled lexicons.
pub fn run_demo(seed: Option<u64>) -> Result<DemoReport, DemoError> {
    run_demo_with(BUNDLED_LEXICON, BUNDLED_BOOL_LEXICON, seed)
}

/// Runs the examples on the given lexicon texts. With a seed, randomized
/// graded-verb checks are appended.
pub fn run_demo_with(real_text: &str, bool_text: &str, seed: Option<u64>) -> Result<DemoReport, DemoError> {
    let real = Lexicon::<f64>::from_json(real_text)?;
    let boolean = Lexicon::<bool>::from_json(bool_text)?;
    let mut checks = truth_checks(&real)?;
    checks.extend(graded_checks(&real)?);
    checks.push(boolean_check(&boolean)?);
    if let Some(seed) = seed {
        checks.extend(seeded_checks(seed, 8)?);
    }
    Ok(DemoReport::from_checks(checks))
}

fn s_of<T: crate::scalar::Semiring>(lex: &Lexicon<T>) -> Result<PregroupType, DemoError> {
    Ok(lex.parse_type("s")?)
}

fn meaning(sentence: &str, lex: &Lexicon<f64>) -> Result<Vec<f64>, DemoError> {
    Ok(sentence_meaning(sentence, lex, &s_of(lex)?)?.vector.into_data())
}

fn basis_index(lex: &Lexicon<f64>, word: &str) -> Result<usize, DemoError> {
    let entry = lex
        .lookup(word)
        .and_then(|e| e.first())
        .ok_or_else(|| DemoError::Data(format!("lexicon has no `{word}`")))?;
    let nz: Vec<_> = entry.tensor.nonzeros().collect();
    match nz.as_slice() {
        [(idx, v)] if *v == 1.0 && idx.len() == 1 => Ok(idx[0]),
        _ => Err(DemoError::Data(format!("`{word}` is not a basis vector"))),
    }
}

/// Pairs related by the crisp verb: those whose sentence value is `|1⟩`.
fn crisp_relation(lex: &Lexicon<f64>, verb: &str) -> Result<(usize, Vec<(usize, usize)>), DemoError> {
    let entry = lex
        .lookup(verb)
        .and_then(|e| e.first())
        .ok_or_else(|| DemoError::Data(format!("lexicon has no `{verb}`")))?;
    let dims = entry.tensor.dims();
    if dims.len() != 3 || dims[1] != 2 || dims[0] != dims[2] {
        return Err(DemoError::Data(format!("`{verb}` is not a two-valued relation")));
    }
    let mut pairs = Vec::new();
    for i in 0..dims[0] {
        for j in 0..dims[2] {
            let value = (entry.tensor.get(&[i, 0, j])?, entry.tensor.get(&[i, 1, j])?);
            match value {
                (0.0, 1.0) => pairs.push((i, j)),
                (1.0, 0.0) => {}
                _ => return Err(DemoError::Data(format!("`{verb}` is not crisp at ({i}, {j})"))),
            }
        }
    }
    Ok((dims[0], pairs))
}

/// A crisp verb over an `s_dim`-dimensional sentence space, valued
/// `value(related)` on every pair.
fn truth_lexicon(
    dim: usize,
    s_dim: usize,
    john: usize,
    mary: usize,
    relation: &[(usize, usize)],
    value: impl Fn(bool) -> Tensor<f64>,
    negative: bool,
) -> Result<Lexicon<f64>, DemoError> {
    let mut lex = Lexicon::new(&[("n", dim), ("s", s_dim), ("j", s_dim), ("sigma", dim)])?;
    lex.add_basis_word("John", "n", john)?;
    lex.add_basis_word("Mary", "n", mary)?;
    let truth = (0..dim)
        .flat_map(|i| (0..dim).map(move |j| (i, j)))
        .map(|(i, j)| ((i, j), value(relation.contains(&(i, j)))));
    let verb = build_relation_verb(dim, s_dim, dim, truth)?;
    if negative {
        lex.add("like", "sigma^r j n^l", verb)?;
        lex.add_does("does", "n^r s j^l sigma")?;
        lex.add_not("not", "sigma^r j j^l sigma", None)?;
    } else {
        lex.add("likes", "n^r s n^l", verb)?;
    }
    Ok(lex)
}

fn truth_checks(real: &Lexicon<f64>) -> Result<Vec<DemoCheck>, DemoError> {
    let john = basis_index(real, "John")?;
    let mary = basis_index(real, "Mary")?;
    let (dim, relation) = crisp_relation(real, "loves")?;
    let holds = relation.contains(&(john, mary));
    let ket = |b: bool| Tensor::basis_vector(2, usize::from(b)).expect("two-dimensional basis");
    let origin_or_one = |b: bool| Tensor::from_vec(vec![1], vec![if b { 1.0 } else { 0.0 }]).expect("one entry");

    let ex1 = truth_lexicon(dim, 1, john, mary, &relation, origin_or_one, false)?;
    let ex1b = truth_lexicon(dim, 2, john, mary, &relation, ket, false)?;
    let ex2 = truth_lexicon(dim, 2, john, mary, &relation, ket, true)?;
    Ok(vec![
        DemoCheck::new(
            "truth value, one-dimensional S: John likes Mary",
            origin_or_one(holds).into_data(),
            meaning("John likes Mary", &ex1)?,
        ),
        DemoCheck::new(
            "truth value, S spanned by |0>, |1>: John likes Mary",
            ket(holds).into_data(),
            meaning("John likes Mary", &ex1b)?,
        ),
        DemoCheck::new(
            "negated truth value: John does not like Mary",
            ket(!holds).into_data(),
            meaning("John does not like Mary", &ex2)?,
        ),
    ])
}

fn graded_checks(real: &Lexicon<f64>) -> Result<Vec<DemoCheck>, DemoError> {
    let s = s_of(real)?;
    let raw = |a: &str, b: &str| -> Result<Vec<f64>, DemoError> { Ok(vec![raw_similarity(a, b, real, &s)?]) };
    // loves_34 = |1>, hates_34 = |0>; basis order is (|0>, |1>)
    Ok(vec![
        DemoCheck::new(
            "graded: John likes Mary = 3/4 loves_34 + 1/4 hates_34",
            vec![0.25, 0.75],
            meaning("John likes Mary", real)?,
        ),
        DemoCheck::new(
            "graded negation: John does not like Mary = 1/4 loves_34 + 3/4 hates_34",
            vec![0.75, 0.25],
            meaning("John does not like Mary", real)?,
        ),
        DemoCheck::new(
            "similarity: <John loves Mary | John likes Mary>",
            vec![0.75],
            raw("John loves Mary", "John likes Mary")?,
        ),
        DemoCheck::new(
            "similarity: <John hates Mary | John likes Mary>",
            vec![0.25],
            raw("John hates Mary", "John likes Mary")?,
        ),
        DemoCheck::new(
            "similarity: <John loves Mary | John hates Mary>",
            vec![0.0],
            raw("John loves Mary", "John hates Mary")?,
        ),
        DemoCheck::new(
            "similarity: <John does not love Mary | John does not like Mary>",
            vec![0.75],
            raw("John does not love Mary", "John does not like Mary")?,
        ),
        DemoCheck::new(
            "similarity: <John does not like Mary | John loves Mary>",
            vec![0.25],
            raw("John does not like Mary", "John loves Mary")?,
        ),
        DemoCheck::new(
            "similarity: <John does not like Mary | John hates Mary>",
            vec![0.75],
            raw("John does not like Mary", "John hates Mary")?,
        ),
        DemoCheck::new(
            "similarity: <John does not like Mary | John likes Mary>",
            vec![0.375],
            raw("John does not like Mary", "John likes Mary")?,
        ),
    ])
}

fn boolean_check(boolean: &Lexicon<bool>) -> Result<DemoCheck, DemoError> {
    let john = bool_index(boolean, "John")?;
    let mary = bool_index(boolean, "Mary")?;
    let likes = boolean
        .lookup("likes")
        .and_then(|e| e.first())
        .ok_or_else(|| DemoError::Data("lexicon has no `likes`".into()))?;
    // *_34: the sentence slice of the relation at (John, Mary)
    let star: Vec<f64> = (0..likes.tensor.dims()[1])
        .map(|k| likes.tensor.get(&[john, k, mary]).map(|b| f64::from(u8::from(b))))
        .collect::<Result<_, _>>()?;
    let computed = sentence_meaning("John likes Mary", boolean, &boolean.parse_type("s")?)?
        .vector
        .data()
        .iter()
        .map(|&b| f64::from(u8::from(b)))
        .collect();
    Ok(DemoCheck::new("relational: John likes Mary = *_34", star, computed))
}

fn bool_index(lex: &Lexicon<bool>, word: &str) -> Result<usize, DemoError> {
    let entry = lex
        .lookup(word)
        .and_then(|e| e.first())
        .ok_or_else(|| DemoError::Data(format!("lexicon has no `{word}`")))?;
    let nz: Vec<_> = entry.tensor.nonzeros().collect();
    match nz.as_slice() {
        [(idx, _)] if idx.len() == 1 => Ok(idx[0]),
        _ => Err(DemoError::Data(format!("`{word}` is not a singleton"))),
    }
}

/// Random crisp `loves`/`hates` relations and a dyadic weight `a`; the
/// graded verb `a loves + (1 - a) hates` must give `a loves_xy + (1 - a)
/// hates_xy`, and its negation the swapped vector.
fn seeded_checks(seed: u64, rounds: usize) -> Result<Vec<DemoCheck>, DemoError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = 4;
    let ket = |b: bool| Tensor::<f64>::basis_vector(2, usize::from(b)).expect("two-dimensional basis");
    let mut checks = Vec::new();
    for round in 0..rounds {
        let love: Vec<Vec<bool>> = (0..dim).map(|_| (0..dim).map(|_| rng.gen()).collect()).collect();
        let hate: Vec<Vec<bool>> = (0..dim).map(|_| (0..dim).map(|_| rng.gen()).collect()).collect();
        let a = f64::from(rng.gen_range(0..=8u8)) / 8.0;
        let (x, y) = (rng.gen_range(0..dim), rng.gen_range(0..dim));

        let graded = |i: usize, j: usize| ket(love[i][j]).scale(a).add(&ket(hate[i][j]).scale(1.0 - a));
        let truth = (0..dim)
            .flat_map(|i| (0..dim).map(move |j| (i, j)))
            .map(|(i, j)| graded(i, j).map(|t| ((i, j), t)))
            .collect::<Result<Vec<_>, _>>()?;
        let verb = build_relation_verb(dim, 2, dim, truth)?;
        let mut lex = Lexicon::new(&[("n", dim), ("s", 2), ("j", 2), ("sigma", dim)])?;
        lex.add_basis_word("x", "n", x)?;
        lex.add_basis_word("y", "n", y)?;
        lex.add("likes", "n^r s n^l", verb.clone())?;
        lex.add("like", "sigma^r j n^l", verb)?;
        lex.add_does("does", "n^r s j^l sigma")?;
        lex.add_not("not", "sigma^r j j^l sigma", None)?;

        let expected = graded(x, y)?.into_data();
        let swapped = vec![expected[1], expected[0]];
        checks.push(DemoCheck::new(
            format!("seed {seed} round {round}: x likes y, a = {a}"),
            expected,
            meaning("x likes y", &lex)?,
        ));
        checks.push(DemoCheck::new(
            format!("seed {seed} round {round}: x does not like y, a = {a}"),
            swapped,
            meaning("x does not like y", &lex)?,
        ));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_demo_passes() {
        let report = run_demo(None).unwrap();
        for c in &report.checks {
            assert!(c.passed, "{}: expected {:?}, computed {:?}", c.name, c.expected, c.computed);
        }
        assert_eq!(report.total, 13);
        assert!(report.all_passed);
    }

    #[test]
    fn seeded_demo_is_deterministic() {
        let a = run_demo(Some(7)).unwrap();
        let b = run_demo(Some(7)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.total, 13 + 16);
        assert!(a.all_passed);
    }

    #[test]
    fn bundled_lexicons_load() {
        assert_eq!(Lexicon::<f64>::from_json(BUNDLED_LEXICON).unwrap().len(), 18);
        assert!(Lexicon::<bool>::from_json(BUNDLED_BOOL_LEXICON).is_ok());
    }

    #[test]
    fn corrupted_lexicon_is_an_error() {
        let broken = BUNDLED_LEXICON.replacen("\"dim\": 4", "\"dim\": 3", 1);
        assert!(matches!(
            run_demo_with(&broken, BUNDLED_BOOL_LEXICON, None),
            Err(DemoError::Lexicon(_))
        ));
        assert!(run_demo_with("{", BUNDLED_BOOL_LEXICON, None).is_err());
    }

    #[test]
    fn altered_data_is_a_mismatch() {
        // swap the 3/4 and 1/4 weights of likes at (John, Mary)
        let altered = BUNDLED_LEXICON.replace(
            "{\"idx\": [2, 0, 3], \"val\": 0.25}, {\"idx\": [2, 1, 3], \"val\": 0.75}",
            "{\"idx\": [2, 0, 3], \"val\": 0.75}, {\"idx\": [2, 1, 3], \"val\": 0.25}",
        );
        assert_ne!(altered, BUNDLED_LEXICON);
        let report = run_demo_with(&altered, BUNDLED_BOOL_LEXICON, None).unwrap();
        assert!(!report.all_passed);
        assert!(report.checks[0].passed);
    }
}
