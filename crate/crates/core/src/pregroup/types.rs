use std::collections::{BTreeSet, HashSet};
use std::fmt;

use super::PregroupError;

/// Largest admissible `|z|` for an iterated adjoint.
pub const MAX_ADJOINT_ORDER: i32 = 8;

/// A basic grammatical role such as `n`, `s`, `j` or `sigma`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasicType(String);

impl BasicType {
    pub fn new(name: impl Into<String>) -> Result<Self, PregroupError> {
        let name = name.into();
        if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '^') || name == "1" {
            return Err(PregroupError::InvalidBasicTypeName(name));
        }
        Ok(BasicType(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for BasicType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The set of basic types a grammar is built from.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TypeRegistry {
    types: Vec<BasicType>,
}

impl TypeRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_names<I, S>(names: I) -> Result<Self, PregroupError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut registry = Self::new();
        for name in names {
            registry.register(name)?;
        }
        Ok(registry)
    }

    pub fn register(&mut self, name: impl Into<String>) -> Result<BasicType, PregroupError> {
        let basic = BasicType::new(name)?;
        if self.types.contains(&basic) {
            return Err(PregroupError::DuplicateBasicType(basic.0));
        }
        self.types.push(basic.clone());
        Ok(basic)
    }

    pub fn get(&self, name: &str) -> Option<&BasicType> {
        self.types.iter().find(|t| t.name() == name)
    }

    pub fn contains(&self, basic: &BasicType) -> bool {
        self.types.contains(basic)
    }

    pub fn iter(&self) -> impl Iterator<Item = &BasicType> {
        self.types.iter()
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }
}

/// Partial order on basic types, stored as its reflexive-transitive closure
/// (reflexive pairs are implicit).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TypePoset {
    strict: HashSet<(BasicType, BasicType)>,
}

impl TypePoset {
    /// The discrete order: `p ≤ q` iff `p = q`.
    pub fn discrete() -> Self {
        Self::default()
    }

    /// Closes `pairs` (each `p ≤ q`) under transitivity. Rejects unknown
    /// types and cycles between distinct types.
    pub fn from_pairs(
        registry: &TypeRegistry,
        pairs: &[(BasicType, BasicType)],
    ) -> Result<Self, PregroupError> {
        let mut strict = HashSet::new();
        for (p, q) in pairs {
            for t in [p, q] {
                if !registry.contains(t) {
                    return Err(PregroupError::UnknownBasicType(t.0.clone()));
                }
            }
            if p != q {
                strict.insert((p.clone(), q.clone()));
            }
        }
        loop {
            let mut added = Vec::new();
            for (p, q) in &strict {
                for (q2, r) in &strict {
                    if q == q2 && !strict.contains(&(p.clone(), r.clone())) {
                        added.push((p.clone(), r.clone()));
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            strict.extend(added);
        }
        if let Some((p, _)) = strict.iter().find(|(p, q)| p == q) {
            return Err(PregroupError::OrderCycle(p.0.clone()));
        }
        Ok(TypePoset { strict })
    }

    pub fn leq(&self, p: &BasicType, q: &BasicType) -> bool {
        p == q || self.strict.contains(&(p.clone(), q.clone()))
    }

    pub fn is_discrete(&self) -> bool {
        self.strict.is_empty()
    }

    /// Non-reflexive pairs of the closure, sorted.
    pub fn pairs(&self) -> Vec<(BasicType, BasicType)> {
        let sorted: BTreeSet<_> = self.strict.iter().cloned().collect();
        sorted.into_iter().collect()
    }
}

/// A basic type under `z` iterated adjoints: `z < 0` counts left adjoints,
/// `z > 0` right adjoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleType {
    pub base: BasicType,
    pub z: i32,
}

impl SimpleType {
    pub fn new(base: BasicType, z: i32) -> Result<Self, PregroupError> {
        if z.abs() > MAX_ADJOINT_ORDER {
            return Err(PregroupError::AdjointOrderOverflow(z));
        }
        Ok(SimpleType { base, z })
    }

    pub fn plain(base: BasicType) -> Self {
        SimpleType { base, z: 0 }
    }

    pub fn is_even(&self) -> bool {
        self.z.rem_euclid(2) == 0
    }

    fn shifted(&self, dz: i32) -> Result<Self, PregroupError> {
        SimpleType::new(self.base.clone(), self.z + dz)
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        if self.z != 0 {
            let c = if self.z < 0 { "l" } else { "r" };
            write!(f, "^{}", c.repeat(self.z.unsigned_abs() as usize))?;
        }
        Ok(())
    }
}

/// A juxtaposition of simple types; the empty sequence is the unit `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PregroupType {
    pub simples: Vec<SimpleType>,
}

impl PregroupType {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn new(simples: Vec<SimpleType>) -> Self {
        PregroupType { simples }
    }

    pub fn len(&self) -> usize {
        self.simples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simples.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.simples.is_empty()
    }

    /// Juxtaposition `self · other`.
    pub fn concat(&self, other: &PregroupType) -> PregroupType {
        let mut simples = self.simples.clone();
        simples.extend_from_slice(&other.simples);
        PregroupType { simples }
    }

    /// `(p·q)ˡ = qˡ·pˡ`.
    pub fn left_adjoint(&self) -> Result<PregroupType, PregroupError> {
        let simples = self
            .simples
            .iter()
            .rev()
            .map(|t| t.shifted(-1))
            .collect::<Result<_, _>>()?;
        Ok(PregroupType { simples })
    }

    /// `(p·q)ʳ = qʳ·pʳ`.
    pub fn right_adjoint(&self) -> Result<PregroupType, PregroupError> {
        let simples = self
            .simples
            .iter()
            .rev()
            .map(|t| t.shifted(1))
            .collect::<Result<_, _>>()?;
        Ok(PregroupType { simples })
    }
}

impl From<Vec<SimpleType>> for PregroupType {
    fn from(simples: Vec<SimpleType>) -> Self {
        PregroupType { simples }
    }
}

impl fmt::Display for PregroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.simples.is_empty() {
            return f.write_str("1");
        }
        for (k, t) in self.simples.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Parses the whitespace-separated concrete syntax: `n^r s n^l`, `sigma^rr`,
/// `1` for the unit.
pub fn parse_type(text: &str, registry: &TypeRegistry) -> Result<PregroupType, PregroupError> {
    let mut simples = Vec::new();
    for token in text.split_whitespace() {
        if token == "1" {
            continue;
        }
        let (name, suffix) = match token.split_once('^') {
            Some((name, suffix)) => (name, Some(suffix)),
            None => (token, None),
        };
        if name.is_empty() {
            return Err(PregroupError::MalformedToken(token.to_string()));
        }
        let z = match suffix {
            None => 0,
            Some(s) if !s.is_empty() && s.chars().all(|c| c == 'l') => -(s.len() as i64),
            Some(s) if !s.is_empty() && s.chars().all(|c| c == 'r') => s.len() as i64,
            Some(_) => return Err(PregroupError::MalformedToken(token.to_string())),
        };
        let base = registry
            .get(name)
            .ok_or_else(|| PregroupError::UnknownBasicType(name.to_string()))?
            .clone();
        let z = i32::try_from(z).map_err(|_| PregroupError::AdjointOrderOverflow(i32::MAX))?;
        simples.push(SimpleType::new(base, z)?);
    }
    Ok(PregroupType { simples })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn registry() -> TypeRegistry {
        TypeRegistry::from_names(["n", "s", "j", "sigma"]).unwrap()
    }

    fn st(name: &str, z: i32) -> SimpleType {
        SimpleType::new(BasicType::new(name).unwrap(), z).unwrap()
    }

    #[test]
    fn parse_transitive_verb() {
        let t = parse_type("n^r s n^l", &registry()).unwrap();
        assert_eq!(t.simples, vec![st("n", 1), st("s", 0), st("n", -1)]);
        assert_eq!(t.to_string(), "n^r s n^l");
    }

    #[test]
    fn parse_unit_and_iterated() {
        assert!(parse_type("1", &registry()).unwrap().is_unit());
        assert!(parse_type("", &registry()).unwrap().is_unit());
        assert_eq!(parse_type("sigma^rr", &registry()).unwrap().simples, vec![st("sigma", 2)]);
        assert_eq!(parse_type("j^ll 1 n", &registry()).unwrap().simples, vec![st("j", -2), st("n", 0)]);
    }

    #[test]
    fn parse_errors() {
        let r = registry();
        assert_eq!(parse_type("x", &r), Err(PregroupError::UnknownBasicType("x".into())));
        assert!(matches!(parse_type("n^lr", &r), Err(PregroupError::MalformedToken(_))));
        assert!(matches!(parse_type("n^", &r), Err(PregroupError::MalformedToken(_))));
        assert!(matches!(parse_type("^l", &r), Err(PregroupError::MalformedToken(_))));
        assert!(matches!(
            parse_type("n^rrrrrrrrr", &r),
            Err(PregroupError::AdjointOrderOverflow(9))
        ));
    }

    #[test]
    fn adjoints() {
        let ns = PregroupType::new(vec![st("n", 0), st("s", 0)]);
        assert_eq!(ns.left_adjoint().unwrap().simples, vec![st("s", -1), st("n", -1)]);
        assert_eq!(ns.right_adjoint().unwrap().simples, vec![st("s", 1), st("n", 1)]);
        assert!(PregroupType::unit().left_adjoint().unwrap().is_unit());
        assert!(PregroupType::unit().right_adjoint().unwrap().is_unit());
        let nr = PregroupType::new(vec![st("n", 1)]);
        assert_eq!(nr.left_adjoint().unwrap().simples, vec![st("n", 0)]);
        let nl = PregroupType::new(vec![st("n", -1)]);
        assert_eq!(nl.right_adjoint().unwrap().simples, vec![st("n", 0)]);
        let deep = PregroupType::new(vec![st("n", -8)]);
        assert_eq!(deep.left_adjoint(), Err(PregroupError::AdjointOrderOverflow(-9)));
    }

    #[test]
    fn basic_type_names() {
        assert!(BasicType::new("").is_err());
        assert!(BasicType::new("a b").is_err());
        assert!(BasicType::new("n^").is_err());
        let mut r = registry();
        assert_eq!(r.register("n"), Err(PregroupError::DuplicateBasicType("n".into())));
    }

    #[test]
    fn poset_closure() {
        let r = TypeRegistry::from_names(["a", "b", "c"]).unwrap();
        let b = |s: &str| BasicType::new(s).unwrap();
        let poset = TypePoset::from_pairs(&r, &[(b("a"), b("b")), (b("b"), b("c"))]).unwrap();
        assert!(poset.leq(&b("a"), &b("c")));
        assert!(poset.leq(&b("b"), &b("b")));
        assert!(!poset.leq(&b("c"), &b("a")));
        assert_eq!(poset.pairs().len(), 3);
        assert!(matches!(
            TypePoset::from_pairs(&r, &[(b("a"), b("b")), (b("b"), b("a"))]),
            Err(PregroupError::OrderCycle(_))
        ));
        assert!(matches!(
            TypePoset::from_pairs(&r, &[(b("a"), b("z"))]),
            Err(PregroupError::UnknownBasicType(_))
        ));
    }
}
