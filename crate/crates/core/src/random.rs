//! Seeded generators for patterns, words and formulas used by the report driver
//! and the test suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::pattern::{Alphabet, Constraint, Pattern, PatternSymbol, RelationalPattern, Var, Word};
use crate::relations::RelationKind;

/// Shape limits for [`relational_pattern`].
#[derive(Debug, Clone, Copy)]
pub struct PatternShape {
    pub max_vars: usize,
    pub max_terminals: usize,
    pub max_constraints: usize,
}

impl Default for PatternShape {
    fn default() -> Self {
        PatternShape {
            max_vars: 3,
            max_terminals: 2,
            max_constraints: 2,
        }
    }
}

pub fn word<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, len: usize) -> Word {
    let letters = alphabet.letters();
    Word(
        (0..len)
            .map(|_| letters[rng.gen_range(0..letters.len())])
            .collect(),
    )
}

/// Normal pattern with at least one variable and constraints of the given kinds.
pub fn relational_pattern<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: &Alphabet,
    kinds: &[RelationKind],
    shape: PatternShape,
) -> RelationalPattern {
    let n_vars = rng.gen_range(1..=shape.max_vars.max(1));
    let n_terms = rng.gen_range(0..=shape.max_terminals);
    let mut slots: Vec<Option<char>> = vec![None; n_vars];
    for _ in 0..n_terms {
        let c = *alphabet.letters().choose(rng).expect("non-empty alphabet");
        let at = rng.gen_range(0..=slots.len());
        slots.insert(at, Some(c));
    }
    let mut next = 0;
    let symbols: Vec<PatternSymbol> = slots
        .into_iter()
        .map(|s| match s {
            Some(c) => PatternSymbol::Terminal(c),
            None => {
                next += 1;
                PatternSymbol::var(next)
            }
        })
        .collect();
    let mut constraints = Vec::new();
    if n_vars > 1 && !kinds.is_empty() {
        for _ in 0..rng.gen_range(0..=shape.max_constraints) {
            let a = rng.gen_range(1..=n_vars as u32);
            let mut b = rng.gen_range(1..n_vars as u32);
            if b >= a {
                b += 1;
            }
            let kind = *kinds.choose(rng).expect("non-empty kinds");
            constraints.push(Constraint::new(kind, Var(a), Var(b)));
        }
    }
    RelationalPattern::new(
        alphabet.clone(),
        Pattern::new(symbols).expect("fresh variables"),
        constraints,
    )
    .expect("constraints over pattern variables")
}

/// Same pattern, constraints redrawn to give the same closure blocks (spanning
/// chains in random order and direction) or, with probability one half, random
/// constraints that may change the closure.
pub fn closure_variant<R: Rng + ?Sized>(
    rng: &mut R,
    rp: &RelationalPattern,
    kind: RelationKind,
) -> RelationalPattern {
    let vars = rp.variables();
    let mut constraints = Vec::new();
    if rng.gen_bool(0.5) {
        let partition = crate::equivalence::closure(rp).expect("single kind");
        for block in partition.blocks() {
            let mut members: Vec<Var> = block.iter().copied().collect();
            members.shuffle(rng);
            for pair in members.windows(2) {
                let (a, b) = if rng.gen_bool(0.5) {
                    (pair[0], pair[1])
                } else {
                    (pair[1], pair[0])
                };
                constraints.push(Constraint::new(kind, a, b));
            }
        }
    } else if vars.len() > 1 {
        for _ in 0..rng.gen_range(0..=vars.len()) {
            let a = *vars.choose(rng).unwrap();
            let b = *vars.choose(rng).unwrap();
            if a != b {
                constraints.push(Constraint::new(kind, a, b));
            }
        }
    }
    rp.with_constraints(constraints).expect("same variables")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_patterns_are_normal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let sigma = Alphabet::from_letters("ab");
        for _ in 0..200 {
            let rp = relational_pattern(
                &mut rng,
                &sigma,
                &RelationKind::ALL,
                PatternShape::default(),
            );
            assert!(rp.pattern().is_normal());
            assert!((1..=3).contains(&rp.variables().len()));
            assert!(rp.relation_kinds().len() <= 2);
        }
    }

    #[test]
    fn same_seed_same_patterns() {
        let sigma = Alphabet::from_letters("ab");
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20)
                .map(|_| {
                    relational_pattern(
                        &mut rng,
                        &sigma,
                        &[RelationKind::Eq],
                        PatternShape::default(),
                    )
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(9), draw(9));
    }
}
