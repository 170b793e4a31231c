use super::diagram::ReductionDiagram;
use super::types::{PregroupType, SimpleType, TypePoset};

/// Whether `a · b ≤ 1` by a single generalized contraction: `b` must be
/// the next adjoint up from `a`, and the bases must be ordered in the
/// direction fixed by the parity of `a.z`.
pub fn contracts(a: &SimpleType, b: &SimpleType, poset: &TypePoset) -> bool {
    if b.z != a.z + 1 {
        return false;
    }
    if a.is_even() {
        poset.leq(&a.base, &b.base)
    } else {
        poset.leq(&b.base, &a.base)
    }
}

/// Whether an uncontracted `t` may stand in for target element `x`.
pub fn survives_as(t: &SimpleType, x: &SimpleType, poset: &TypePoset) -> bool {
    if t.z != x.z {
        return false;
    }
    if t.is_even() {
        poset.leq(&t.base, &x.base)
    } else {
        poset.leq(&x.base, &t.base)
    }
}

/// Left-to-right stack reduction contracting at the earliest opportunity.
/// Fast, but not complete: some sequences that do reduce to `1` keep a
/// residual here (see `n^l n n^r n`).
pub fn greedy_reduce(types: &[SimpleType], poset: &TypePoset) -> (PregroupType, ReductionDiagram) {
    let mut stack: Vec<usize> = Vec::new();
    let mut links = Vec::new();
    for (pos, t) in types.iter().enumerate() {
        match stack.last() {
            Some(&top) if contracts(&types[top], t, poset) => {
                stack.pop();
                links.push((top, pos));
            }
            _ => stack.push(pos),
        }
    }
    let residual = PregroupType::new(stack.iter().map(|&p| types[p].clone()).collect());
    (residual, ReductionDiagram::from_parts(types.len(), links, stack))
}

/// Interval tables for the contraction-only search.
struct Chart<'a> {
    types: &'a [SimpleType],
    target: &'a [SimpleType],
    poset: &'a TypePoset,
    n: usize,
    /// `nullable[i][j]`: the half-open segment `[i, j)` contracts to `1`.
    nullable: Vec<Vec<bool>>,
    /// `placeable[p][q]`: positions `[p, n)` reduce to `target[q..]`.
    placeable: Vec<Vec<bool>>,
}

impl<'a> Chart<'a> {
    fn build(types: &'a [SimpleType], target: &'a [SimpleType], poset: &'a TypePoset) -> Self {
        let n = types.len();
        let m = target.len();
        let mut nullable = vec![vec![false; n + 1]; n + 1];
        for (i, row) in nullable.iter_mut().enumerate() {
            row[i] = true;
        }
        for len in (2..=n).step_by(2) {
            for i in 0..=n - len {
                let j = i + len;
                nullable[i][j] = (i + 1..j).step_by(2).any(|k| {
                    contracts(&types[i], &types[k], poset) && nullable[i + 1][k] && nullable[k + 1][j]
                });
            }
        }

        let mut placeable = vec![vec![false; m + 1]; n + 1];
        for p in (0..=n).rev() {
            placeable[p][m] = nullable[p][n];
            for q in (0..m).rev() {
                placeable[p][q] = (p..n).any(|r| {
                    nullable[p][r] && survives_as(&types[r], &target[q], poset) && placeable[r + 1][q + 1]
                });
            }
        }

        Chart {
            types,
            target,
            poset,
            n,
            nullable,
            placeable,
        }
    }

    fn partners(&self, i: usize, j: usize) -> impl Iterator<Item = usize> + '_ {
        (i + 1..j).step_by(2).filter(move |&k| {
            contracts(&self.types[i], &self.types[k], self.poset)
                && self.nullable[i + 1][k]
                && self.nullable[k + 1][j]
        })
    }

    fn survivor_slots(&self, p: usize, q: usize) -> impl Iterator<Item = usize> + '_ {
        (p..self.n).filter(move |&r| {
            self.nullable[p][r]
                && survives_as(&self.types[r], &self.target[q], self.poset)
                && self.placeable[r + 1][q + 1]
        })
    }
}

enum Task {
    Nullify(usize, usize),
    Place(usize, usize),
}

/// Depth-first enumeration in leftmost order; every branch taken is
/// feasible, so each leaf is a complete diagram.
fn enumerate(
    chart: &Chart<'_>,
    tasks: &mut Vec<Task>,
    links: &mut Vec<(usize, usize)>,
    survivors: &mut Vec<usize>,
    out: &mut Vec<ReductionDiagram>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    let Some(task) = tasks.pop() else {
        out.push(ReductionDiagram::from_parts(chart.n, links.clone(), survivors.clone()));
        return;
    };
    match task {
        Task::Nullify(i, j) if i == j => {
            enumerate(chart, tasks, links, survivors, out, limit);
            tasks.push(Task::Nullify(i, j));
        }
        Task::Nullify(i, j) => {
            let ks: Vec<usize> = chart.partners(i, j).collect();
            for k in ks {
                links.push((i, k));
                tasks.push(Task::Nullify(k + 1, j));
                tasks.push(Task::Nullify(i + 1, k));
                enumerate(chart, tasks, links, survivors, out, limit);
                tasks.pop();
                tasks.pop();
                links.pop();
            }
            tasks.push(Task::Nullify(i, j));
        }
        Task::Place(p, q) if q == chart.target.len() => {
            tasks.push(Task::Nullify(p, chart.n));
            enumerate(chart, tasks, links, survivors, out, limit);
            tasks.pop();
            tasks.push(Task::Place(p, q));
        }
        Task::Place(p, q) => {
            let rs: Vec<usize> = chart.survivor_slots(p, q).collect();
            for r in rs {
                survivors.push(r);
                tasks.push(Task::Place(r + 1, q + 1));
                tasks.push(Task::Nullify(p, r));
                enumerate(chart, tasks, links, survivors, out, limit);
                tasks.pop();
                tasks.pop();
                survivors.pop();
            }
            tasks.push(Task::Place(p, q));
        }
    }
}

/// Up to `limit` diagrams reducing `types` to `target`, leftmost first.
pub fn all_reductions(
    types: &[SimpleType],
    target: &PregroupType,
    poset: &TypePoset,
    limit: usize,
) -> Vec<ReductionDiagram> {
    let chart = Chart::build(types, &target.simples, poset);
    let mut out = Vec::new();
    if limit == 0 || !chart.placeable[0][0] {
        return out;
    }
    let mut tasks = vec![Task::Place(0, 0)];
    enumerate(&chart, &mut tasks, &mut Vec::new(), &mut Vec::new(), &mut out, limit);
    for d in &mut out {
        d.normalize();
    }
    out
}

/// Finds a contraction-only reduction of `types` to `target` with an
/// `O(n³)` interval chart. Among several diagrams the leftmost derivation
/// (smallest partner or survivor slot at each choice) wins.
pub fn reduce_to(types: &[SimpleType], target: &PregroupType, poset: &TypePoset) -> Option<ReductionDiagram> {
    let chart = Chart::build(types, &target.simples, poset);
    if !chart.placeable[0][0] {
        return None;
    }
    let mut links = Vec::new();
    let mut survivors = Vec::new();
    let mut p = 0;
    for q in 0..target.len() {
        let r = chart.survivor_slots(p, q).next()?;
        backtrack(&chart, p, r, &mut links);
        survivors.push(r);
        p = r + 1;
    }
    backtrack(&chart, p, chart.n, &mut links);
    let mut diagram = ReductionDiagram::from_parts(chart.n, links, survivors);
    diagram.normalize();
    Some(diagram)
}

fn backtrack(chart: &Chart<'_>, mut i: usize, j: usize, links: &mut Vec<(usize, usize)>) {
    while i < j {
        let k = chart
            .partners(i, j)
            .next()
            .expect("nullable segment has a partner");
        links.push((i, k));
        backtrack(chart, i + 1, k, links);
        i = k + 1;
    }
}

#[cfg(test)]
mod tests {
    use super::super::types::{parse_type, BasicType, TypeRegistry};
    use super::*;

    fn registry() -> TypeRegistry {
        TypeRegistry::from_names(["n", "s", "j", "sigma"]).unwrap()
    }

    fn seq(text: &str) -> Vec<SimpleType> {
        parse_type(text, &registry()).unwrap().simples
    }

    fn st(name: &str, z: i32) -> SimpleType {
        SimpleType::new(BasicType::new(name).unwrap(), z).unwrap()
    }

    const NEGATIVE: &str = "n n^r s j^l sigma sigma^r j j^l sigma sigma^r j n^l n";

    #[test]
    fn contraction_rule() {
        let d = TypePoset::discrete();
        assert!(contracts(&st("n", 0), &st("n", 1), &d));
        assert!(contracts(&st("n", -1), &st("n", 0), &d));
        assert!(!contracts(&st("n", 0), &st("n", 0), &d));
        assert!(!contracts(&st("n", 1), &st("n", 0), &d));
        assert!(contracts(&st("n", -2), &st("n", -1), &d));
        assert!(!contracts(&st("n", 0), &st("s", 1), &d));
    }

    #[test]
    fn contraction_with_order() {
        let r = TypeRegistry::from_names(["a", "b"]).unwrap();
        let b = |s: &str| BasicType::new(s).unwrap();
        let poset = TypePoset::from_pairs(&r, &[(b("a"), b("b"))]).unwrap();
        let t = |s: &str, z| SimpleType::new(b(s), z).unwrap();
        assert!(contracts(&t("a", 0), &t("b", 1), &poset));
        assert!(contracts(&t("b", -1), &t("a", 0), &poset));
        assert!(!contracts(&t("b", 0), &t("a", 1), &poset));
        assert!(!contracts(&t("a", -1), &t("b", 0), &poset));
    }

    #[test]
    fn greedy_positive_sentence() {
        let (residual, diagram) = greedy_reduce(&seq("n n^r s n^l n"), &TypePoset::discrete());
        assert_eq!(residual.simples, vec![st("s", 0)]);
        assert_eq!(diagram.links(), &[(0, 1), (3, 4)]);
        assert_eq!(diagram.survivors(), &[2]);
    }

    #[test]
    fn greedy_edge_cases() {
        let (residual, diagram) = greedy_reduce(&[], &TypePoset::discrete());
        assert!(residual.is_unit());
        assert_eq!(diagram.len(), 0);
        let (residual, diagram) = greedy_reduce(&seq("n n^r n"), &TypePoset::discrete());
        assert_eq!(residual.simples, vec![st("n", 0)]);
        assert_eq!(diagram.links(), &[(0, 1)]);
        assert_eq!(diagram.survivors(), &[2]);
    }

    #[test]
    fn greedy_misses_nested_reduction() {
        let types = seq("n^l n n^r n");
        let (residual, _) = greedy_reduce(&types, &TypePoset::discrete());
        assert_eq!(residual.len(), 2);
        let d = reduce_to(&types, &PregroupType::unit(), &TypePoset::discrete()).unwrap();
        assert_eq!(d.links(), &[(0, 3), (1, 2)]);
    }

    #[test]
    fn reduce_positive_sentence() {
        let s = parse_type("s", &registry()).unwrap();
        let d = reduce_to(&seq("n n^r s n^l n"), &s, &TypePoset::discrete()).unwrap();
        assert_eq!(d.links(), &[(0, 1), (3, 4)]);
        assert_eq!(d.survivors(), &[2]);
    }

    #[test]
    fn reduce_negative_sentence() {
        let s = parse_type("s", &registry()).unwrap();
        let types = seq(NEGATIVE);
        let d = reduce_to(&types, &s, &TypePoset::discrete()).unwrap();
        assert_eq!(d.links(), &[(0, 1), (3, 6), (4, 5), (7, 10), (8, 9), (11, 12)]);
        assert_eq!(d.survivors(), &[2]);
        assert!(d.validate(&types, &TypePoset::discrete()).is_ok());
    }

    #[test]
    fn reduce_failures() {
        let s = parse_type("s", &registry()).unwrap();
        assert!(reduce_to(&seq("n n"), &s, &TypePoset::discrete()).is_none());
        assert!(reduce_to(&[], &s, &TypePoset::discrete()).is_none());
        assert!(reduce_to(&[], &PregroupType::unit(), &TypePoset::discrete()).is_some());
    }

    #[test]
    fn multi_element_target() {
        let target = parse_type("s n^l", &registry()).unwrap();
        let d = reduce_to(&seq("n n^r s n^l"), &target, &TypePoset::discrete()).unwrap();
        assert_eq!(d.links(), &[(0, 1)]);
        assert_eq!(d.survivors(), &[2, 3]);
    }

    #[test]
    fn enumeration_is_leftmost_first() {
        // n n^l n n^r n: keep the first n or the last one
        let types = seq("n n^l n n^r n");
        let target = parse_type("n", &registry()).unwrap();
        let all = all_reductions(&types, &target, &TypePoset::discrete(), 10);
        assert_eq!(all.len(), 2);
        let first = reduce_to(&types, &target, &TypePoset::discrete()).unwrap();
        assert_eq!(all[0], first);
        for d in &all {
            d.validate(&types, &TypePoset::discrete()).unwrap();
        }
        assert_eq!(all[0].survivors(), &[0]);
        assert_eq!(all[0].links(), &[(1, 4), (2, 3)]);
        assert_eq!(all[1].survivors(), &[4]);
        assert_eq!(all[1].links(), &[(0, 3), (1, 2)]);
        assert_eq!(all_reductions(&types, &target, &TypePoset::discrete(), 1).len(), 1);
    }

    #[test]
    fn survivor_weakening() {
        let r = TypeRegistry::from_names(["a", "b"]).unwrap();
        let b = |s: &str| BasicType::new(s).unwrap();
        let poset = TypePoset::from_pairs(&r, &[(b("a"), b("b"))]).unwrap();
        let t = |s: &str, z| SimpleType::new(b(s), z).unwrap();
        assert!(survives_as(&t("a", 0), &t("b", 0), &poset));
        assert!(!survives_as(&t("b", 0), &t("a", 0), &poset));
        assert!(survives_as(&t("b", 1), &t("a", 1), &poset));
        let target = PregroupType::new(vec![t("b", 0)]);
        assert!(reduce_to(&[t("a", 0)], &target, &poset).is_some());
    }
}
