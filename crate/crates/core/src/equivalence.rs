//! Non-erasing equivalence for single-kind patterns whose relation is an
//! equivalence that is antisymmetric on letters: normalize both sides, then
//! compare the patterns and the closures of their constraint sets.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::pattern::{Constraint, Pattern, PatternSymbol, RelationalPattern, Var};
use crate::relations::{is_letter_antisymmetric_equivalence, RelationKind};

/// Disjoint blocks of variables covering every variable of a pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariablePartition {
    blocks: BTreeSet<BTreeSet<Var>>,
}

impl VariablePartition {
    pub fn blocks(&self) -> impl Iterator<Item = &BTreeSet<Var>> {
        self.blocks.iter()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, v: Var) -> Option<&BTreeSet<Var>> {
        self.blocks.iter().find(|b| b.contains(&v))
    }

    pub fn from_blocks(blocks: impl IntoIterator<Item = Vec<u32>>) -> Self {
        VariablePartition {
            blocks: blocks
                .into_iter()
                .map(|b| b.into_iter().map(Var).collect())
                .collect(),
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// The single relation kind of `rp`, or `None` without constraints.
pub fn single_kind(rp: &RelationalPattern) -> Result<Option<RelationKind>> {
    let kinds = rp.relation_kinds();
    match kinds.len() {
        0 => Ok(None),
        1 => Ok(kinds.into_iter().next()),
        _ => Err(Error::MixedKinds(kinds.into_iter().collect())),
    }
}

/// Reflexive, symmetric and transitive closure of the constraints as a partition.
pub fn closure(rp: &RelationalPattern) -> Result<VariablePartition> {
    single_kind(rp)?;
    Ok(closure_unchecked(rp))
}

fn closure_unchecked(rp: &RelationalPattern) -> VariablePartition {
    let vars = rp.variables();
    let index: BTreeMap<Var, usize> = vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut uf = UnionFind::new(vars.len());
    for c in rp.constraints() {
        uf.union(index[&c.left], index[&c.right]);
    }
    let mut blocks: BTreeMap<usize, BTreeSet<Var>> = BTreeMap::new();
    for (i, v) in vars.iter().enumerate() {
        let root = uf.find(i);
        blocks.entry(root).or_default().insert(*v);
    }
    VariablePartition {
        blocks: blocks.into_values().collect(),
    }
}

/// `rp` with every pair inside a closure block related in both directions.
pub fn saturate(rp: &RelationalPattern) -> Result<RelationalPattern> {
    let Some(kind) = single_kind(rp)? else {
        return Ok(rp.clone());
    };
    let partition = closure_unchecked(rp);
    let mut constraints = Vec::new();
    for block in partition.blocks() {
        for &a in block {
            for &b in block {
                constraints.push(Constraint::new(kind, a, b));
            }
        }
    }
    Ok(rp.with_constraints(constraints)?)
}

/// Renumbers variables by first occurrence, starting at `x1`.
pub fn normalize(rp: &RelationalPattern) -> RelationalPattern {
    let map: BTreeMap<Var, Var> = rp
        .variables()
        .iter()
        .enumerate()
        .map(|(i, v)| (*v, Var(i as u32 + 1)))
        .collect();
    let symbols = rp
        .pattern()
        .symbols()
        .iter()
        .map(|s| match s {
            PatternSymbol::Variable(v) => PatternSymbol::Variable(map[v]),
            t => *t,
        })
        .collect();
    let constraints = rp
        .constraints()
        .iter()
        .map(|c| Constraint::new(c.kind, map[&c.left], map[&c.right]));
    RelationalPattern::new(
        rp.alphabet().clone(),
        Pattern::new(symbols).expect("renaming keeps a pattern regular"),
        constraints,
    )
    .expect("renaming keeps constraints bound")
}

/// Decides `L_NE(a) = L_NE(b)`.
///
/// Both sides must use one shared kind among `eq`, `ab`, `composplus` (patterns
/// without constraints are compatible with any of them) over the same alphabet of
/// at least two letters.
pub fn ne_equivalent(a: &RelationalPattern, b: &RelationalPattern) -> Result<bool> {
    let ka = single_kind(a)?;
    let kb = single_kind(b)?;
    for k in [ka, kb].into_iter().flatten() {
        if !is_letter_antisymmetric_equivalence(k) {
            return Err(Error::UnsupportedKind(k));
        }
    }
    if let (Some(x), Some(y)) = (ka, kb) {
        if x != y {
            return Err(Error::MixedKinds(vec![x, y]));
        }
    }
    if !a.alphabet().same_letters(b.alphabet()) {
        return Err(Error::AlphabetMismatch);
    }
    if a.alphabet().len() < 2 {
        return Err(Error::Precondition(
            "equivalence needs an alphabet with at least two letters".into(),
        ));
    }
    let (na, nb) = (normalize(a), normalize(b));
    if na.pattern() != nb.pattern() {
        return Ok(false);
    }
    Ok(closure_unchecked(&na) == closure_unchecked(&nb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_relational_pattern;

    fn rp(text: &str) -> RelationalPattern {
        parse_relational_pattern(text).unwrap()
    }

    #[test]
    fn closure_examples() {
        let p = rp("alphabet:ab; pattern: x1 x2 x3; rel: eq(x1,x2), eq(x2,x3)");
        assert_eq!(
            closure(&p).unwrap(),
            VariablePartition::from_blocks([vec![1, 2, 3]])
        );
        let p = rp("alphabet:ab; pattern: x1 x2");
        assert_eq!(
            closure(&p).unwrap(),
            VariablePartition::from_blocks([vec![1], vec![2]])
        );
        let p = rp("alphabet:ab; pattern: x1 x2; rel: ab(x2,x1)");
        assert_eq!(
            closure(&p).unwrap(),
            VariablePartition::from_blocks([vec![1, 2]])
        );
        let p = rp("alphabet:ab; pattern: x1 x2; rel: ab(x2,x1), eq(x1,x2)");
        assert!(matches!(closure(&p), Err(Error::MixedKinds(_))));
    }

    #[test]
    fn normalization() {
        let sigma = crate::pattern::Alphabet::from_letters("ab");
        let pat = Pattern::new(vec![
            PatternSymbol::var(7),
            PatternSymbol::Terminal('a'),
            PatternSymbol::var(2),
        ])
        .unwrap();
        let p = RelationalPattern::new(
            sigma,
            pat,
            [Constraint::new(RelationKind::Eq, Var(2), Var(7))],
        )
        .unwrap();
        let n = normalize(&p);
        assert_eq!(
            n.to_string(),
            "alphabet:ab; pattern: x1 a x2; rel: eq(x2,x1)"
        );
        assert_eq!(normalize(&n), n);
    }

    #[test]
    fn decider_examples() {
        let a = rp("alphabet:ab; pattern: x1 a x2; rel: ab(x1,x2)");
        let b = rp("alphabet:ab; pattern: x1 a x2");
        assert!(ne_equivalent(&a, &a).unwrap());
        assert!(!ne_equivalent(&a, &b).unwrap());
        let c = rp("alphabet:ab; pattern: x1 a x2; rel: ab(x2,x1)");
        assert!(ne_equivalent(&a, &c).unwrap());
    }

    #[test]
    fn decider_preconditions() {
        let rev = rp("alphabet:ab; pattern: x1 x2; rel: rev(x1,x2)");
        assert_eq!(
            ne_equivalent(&rev, &rev),
            Err(Error::UnsupportedKind(RelationKind::Reversal))
        );
        let len = rp("alphabet:ab; pattern: x1 x2; rel: len(x1,x2)");
        assert!(ne_equivalent(&len, &len).is_err());
        let unary = rp("alphabet:a; pattern: x1 x2");
        assert!(matches!(
            ne_equivalent(&unary, &unary),
            Err(Error::Precondition(_))
        ));
        let e = rp("alphabet:ab; pattern: x1 x2; rel: eq(x1,x2)");
        let ab = rp("alphabet:ab; pattern: x1 x2; rel: ab(x1,x2)");
        assert!(matches!(ne_equivalent(&e, &ab), Err(Error::MixedKinds(_))));
    }

    #[test]
    fn saturation_adds_block_pairs() {
        let p = rp("alphabet:ab; pattern: x1 x2 x3; rel: eq(x1,x2), eq(x3,x2)");
        let s = saturate(&p).unwrap();
        assert_eq!(s.constraints().len(), 9);
        assert_eq!(closure(&s).unwrap(), closure(&p).unwrap());
    }
}
