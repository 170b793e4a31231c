use pgsem::demo::{BUNDLED_BOOL_LEXICON, BUNDLED_LEXICON};
use pgsem::pregroup::greedy_reduce;
use pgsem::{
    cosine_similarity, load_lexicon, raw_similarity, reduce_to, sentence_meaning, similarity, AnyLexicon, BasicType,
    BoolLexicon, EngineError, Lexicon, PregroupType, RealLexicon, RealTensor, ScalarValue, SimilarityMode, SimpleType,
    Tensor, TypePoset, TypeRegistry,
};
use proptest::prelude::*;

fn bundled() -> RealLexicon {
    Lexicon::from_json(BUNDLED_LEXICON).unwrap()
}

fn sentences() -> Vec<String> {
    let mut out = Vec::new();
    for subj in ["John", "m1", "m2"] {
        for obj in ["Mary", "f1", "f3"] {
            for verb in ["loves", "hates", "likes"] {
                out.push(format!("{subj} {verb} {obj}"));
            }
            for verb in ["love", "hate", "like"] {
                out.push(format!("{subj} does not {verb} {obj}"));
            }
        }
    }
    out
}

#[test]
fn self_similarity_is_the_squared_norm() {
    let lex = bundled();
    let s = lex.parse_type("s").unwrap();
    for sentence in sentences() {
        let v = sentence_meaning(&sentence, &lex, &s).unwrap().vector;
        let norm2: f64 = v.data().iter().map(|x| x * x).sum();
        assert_eq!(raw_similarity(&sentence, &sentence, &lex, &s).unwrap(), norm2);
        let cos = cosine_similarity(&sentence, &sentence, &lex, &s).unwrap();
        assert!((cos - 1.0).abs() < 1e-12, "{sentence}: {cos}");
    }
}

#[test]
fn similarity_is_symmetric() {
    let lex = bundled();
    let s = lex.parse_type("s").unwrap();
    let all = sentences();
    for a in &all {
        for b in all.iter().step_by(5) {
            assert_eq!(
                raw_similarity(a, b, &lex, &s).unwrap(),
                raw_similarity(b, a, &lex, &s).unwrap()
            );
            assert_eq!(
                cosine_similarity(a, b, &lex, &s).unwrap(),
                cosine_similarity(b, a, &lex, &s).unwrap()
            );
        }
    }
}

#[test]
fn cosine_of_loves_and_likes() {
    let lex = bundled();
    let s = lex.parse_type("s").unwrap();
    let cos = cosine_similarity("John loves Mary", "John likes Mary", &lex, &s).unwrap();
    assert!((cos - 3.0 / 10f64.sqrt()).abs() < 1e-12);
}

#[test]
fn zero_meaning_and_cosine() {
    let mut lex = RealLexicon::new(&[("n", 2), ("s", 2)]).unwrap();
    lex.add_basis_word("a", "n", 0).unwrap();
    lex.add_basis_word("b", "n", 1).unwrap();
    lex.add("meets", "n^r s n^l", RealTensor::zeros(vec![2, 2, 2]).unwrap()).unwrap();
    let s = lex.parse_type("s").unwrap();
    assert!(sentence_meaning("a meets b", &lex, &s).unwrap().vector.is_zero());
    assert_eq!(raw_similarity("a meets b", "a meets b", &lex, &s).unwrap(), 0.0);
    assert_eq!(
        cosine_similarity("a meets b", "a meets b", &lex, &s),
        Err(EngineError::ZeroVector)
    );
}

#[test]
fn relational_meanings_follow_the_relation() {
    let lex: BoolLexicon = Lexicon::from_json(BUNDLED_BOOL_LEXICON).unwrap();
    let s = lex.parse_type("s").unwrap();
    let likes = &lex.lookup("likes").unwrap()[0].tensor;
    for i in 1..=4 {
        for j in 1..=4 {
            let v = sentence_meaning(&format!("m{i} likes f{j}"), &lex, &s).unwrap().vector;
            assert_eq!(v.dims(), &[1]);
            assert_eq!(v.data()[0], likes.get(&[i - 1, 0, j - 1]).unwrap());
        }
    }
    assert_eq!(
        sentence_meaning("John likes Mary", &lex, &s).unwrap().vector.data(),
        &[true]
    );
}

#[test]
fn any_lexicon_similarity_modes() {
    let real = load_lexicon(BUNDLED_LEXICON).unwrap();
    assert_eq!(
        similarity(&real, "John loves Mary", "John likes Mary", "s", SimilarityMode::Raw).unwrap(),
        ScalarValue::Real(0.75)
    );
    let boolean = load_lexicon(BUNDLED_BOOL_LEXICON).unwrap();
    assert!(matches!(boolean, AnyLexicon::Boolean(_)));
    assert_eq!(
        similarity(&boolean, "John likes Mary", "John likes Mary", "s", SimilarityMode::Raw).unwrap(),
        ScalarValue::Boolean(true)
    );
    assert!(matches!(
        similarity(&boolean, "John likes Mary", "John likes Mary", "s", SimilarityMode::Cosine),
        Err(EngineError::ModeUnsupported { .. })
    ));
}

#[test]
fn bundled_lexicons_round_trip() {
    for text in [BUNDLED_LEXICON, BUNDLED_BOOL_LEXICON] {
        let lex = load_lexicon(text).unwrap();
        let again = load_lexicon(&lex.to_json()).unwrap();
        assert_eq!(lex, again);
    }
}

fn simple_strategy() -> impl Strategy<Value = SimpleType> {
    (0..3usize, -2..=2i32).prop_map(|(b, z)| SimpleType {
        base: BasicType::new(["a", "b", "c"][b]).unwrap(),
        z,
    })
}

fn tensor_strategy(max_rank: usize) -> impl Strategy<Value = Tensor<u64>> {
    prop::collection::vec(1..=3usize, 0..=max_rank).prop_flat_map(|dims| {
        let len: usize = dims.iter().product();
        prop::collection::vec(0..=5u64, len).prop_map(move |data| Tensor::from_vec(dims.clone(), data).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    /// Greedy stack reduction never claims more than the chart finds.
    #[test]
    fn greedy_is_sound(types in prop::collection::vec(simple_strategy(), 0..=10)) {
        let poset = TypePoset::discrete();
        let (residual, diagram) = greedy_reduce(&types, &poset);
        diagram.validate(&types, &poset).unwrap();
        let via_chart = reduce_to(&types, &residual, &poset);
        prop_assert!(via_chart.is_some());
        if residual.is_unit() {
            prop_assert!(reduce_to(&types, &PregroupType::unit(), &poset).is_some());
        }
    }

    /// The symmetry `a ⊗ b ≅ b ⊗ a` is an axis permutation.
    #[test]
    fn tensor_product_commutes_up_to_permutation(a in tensor_strategy(3), b in tensor_strategy(3)) {
        let ab = a.tensor_product(&b);
        let ba = b.tensor_product(&a);
        let (ra, rb) = (a.rank(), b.rank());
        // move b's axes in front of a's
        let perm: Vec<usize> = (ra..ra + rb).chain(0..ra).collect();
        prop_assert_eq!(ab.permute_axes(&perm).unwrap(), ba);
    }

    /// `(f ⊗ g) ∘ (x ⊗ y) = f(x) ⊗ g(y)` for matrices applied by contraction.
    #[test]
    fn tensor_product_is_bifunctorial(
        f in prop::collection::vec(0..=5u64, 6),
        g in prop::collection::vec(0..=5u64, 4),
        x in prop::collection::vec(0..=5u64, 3),
        y in prop::collection::vec(0..=5u64, 2),
    ) {
        let f = Tensor::from_vec(vec![2, 3], f).unwrap();
        let g = Tensor::from_vec(vec![2, 2], g).unwrap();
        let x = Tensor::from_vec(vec![3], x).unwrap();
        let y = Tensor::from_vec(vec![2], y).unwrap();
        // axes of f ⊗ g ⊗ x ⊗ y: f0 f1 g0 g1 x y
        let together = f.tensor_product(&g).tensor_product(&x).tensor_product(&y).contract(&[(1, 4), (3, 5)]).unwrap();
        let fx = f.tensor_product(&x).contract(&[(1, 2)]).unwrap();
        let gy = g.tensor_product(&y).contract(&[(1, 2)]).unwrap();
        prop_assert_eq!(together, fx.tensor_product(&gy));
    }

    #[test]
    fn inner_product_is_a_full_contraction(v in prop::collection::vec(0..=5u64, 1..6)) {
        let d = v.len();
        let x = Tensor::from_vec(vec![d], v.clone()).unwrap();
        let y = Tensor::from_vec(vec![d], v.iter().rev().copied().collect()).unwrap();
        let contracted = x.tensor_product(&y).contract(&[(0, 1)]).unwrap();
        prop_assert_eq!(contracted.as_scalar(), Some(x.inner_product(&y).unwrap()));
    }
}

#[test]
fn registry_and_poset_from_names() {
    let registry = TypeRegistry::from_names(["a", "b"]).unwrap();
    let a = registry.get("a").unwrap().clone();
    let b = registry.get("b").unwrap().clone();
    let poset = TypePoset::from_pairs(&registry, &[(a.clone(), b.clone())]).unwrap();
    // a ≤ b lets a · b^r contract and a survive as b
    let types = vec![SimpleType::plain(a.clone()), SimpleType::new(b.clone(), 1).unwrap()];
    assert!(reduce_to(&types, &PregroupType::unit(), &poset).is_some());
    assert!(reduce_to(&types, &PregroupType::unit(), &TypePoset::discrete()).is_none());
    let one = vec![SimpleType::plain(a)];
    assert!(reduce_to(&one, &PregroupType::new(vec![SimpleType::plain(b)]), &poset).is_some());
}
