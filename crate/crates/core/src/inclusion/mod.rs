//! Pattern pairs that encode machine computations into inclusion questions.
//!
//! [`erasing`] builds the reversal-based construction for erasing languages over
//! two-counter automata; [`nonerasing`] builds the abelian construction for
//! non-erasing languages over the universal Turing machine. Both reduce the
//! question "is `h(α)` in `L(β)`" to a list of small predicates, each of which
//! is a word-equation system solved by the matcher.

pub mod erasing;
pub mod nonerasing;

use std::collections::BTreeSet;
use std::fmt;

use crate::pattern::{Constraint, PatternSymbol, Var, Word};
use crate::relations::RelationKind;

pub use erasing::{
    build_alpha_a, build_beta_a, build_predicates, predicate_satisfied, satisfied_predicates,
    simple_to_triple, ErasingConstruction, PredicateTriple,
};
pub use nonerasing::{
    build_alpha_prop6, build_beta_prop6, build_prop6, ne_simple_to_pair, prop6_base_predicates,
    PredicatePair, Prop6Construction,
};

/// Images of the two variables `x` and `y` of the left pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SigmaAssignment {
    pub x_image: Word,
    pub y_image: Word,
}

impl SigmaAssignment {
    pub fn new(x: impl Into<Word>, y: impl Into<Word>) -> Self {
        SigmaAssignment {
            x_image: x.into(),
            y_image: y.into(),
        }
    }

    /// `σ(x) = w` with `σ(y) = 0^{|w|+1}`, long enough to defeat the length predicate.
    pub fn with_long_y(x: impl Into<Word>) -> Self {
        let x = x.into();
        let y = Word::repeat('0', x.len() + 1);
        SigmaAssignment {
            x_image: x,
            y_image: y,
        }
    }
}

/// `σ(x) ∈ {0,#}*` without `###`, and `σ(y) ∈ 0*`.
pub fn good_form(sigma: &SigmaAssignment) -> bool {
    sigma
        .x_image
        .as_slice()
        .iter()
        .all(|&c| c == '0' || c == '#')
        && !sigma.x_image.contains_factor("###")
        && sigma.y_image.as_slice().iter().all(|&c| c == '0')
}

/// `w ∈ (##0+#0+#0+)+##`.
pub fn good_structure(w: &Word) -> bool {
    let s = w.as_slice();
    if s.len() < 4 || s[..2] != ['#', '#'] || s[s.len() - 2..] != ['#', '#'] {
        return false;
    }
    let body = &s[2..s.len() - 2];
    if body.is_empty() {
        return false;
    }
    let text: String = body.iter().collect();
    text.split("##").all(|block| {
        let fields: Vec<&str> = block.split('#').collect();
        fields.len() == 3
            && fields
                .iter()
                .all(|f| !f.is_empty() && f.chars().all(|c| c == '0'))
    })
}

/// Context allowed on one side of a simple predicate's skeleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    AnyWord,
    EmptyOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SkeletonItem {
    Letter(char),
    /// A unary parameter `x̂_{class,·}`; all parameters of one class take the same value.
    Param(u8),
}

/// `σ(x) ∈ L1 · S(skeleton) · L2`, where parameters range over `0*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplePredicate {
    pub name: String,
    pub l1: Boundary,
    pub skeleton: Vec<SkeletonItem>,
    pub l2: Boundary,
}

impl SimplePredicate {
    /// Skeleton text uses the digits `1`–`3` for parameter classes; every other
    /// character is a letter.
    pub fn new(name: impl Into<String>, l1: Boundary, skeleton: &str, l2: Boundary) -> Self {
        let skeleton = skeleton
            .chars()
            .map(|c| match c {
                '1'..='3' => SkeletonItem::Param(c as u8 - b'0'),
                _ => SkeletonItem::Letter(c),
            })
            .collect();
        SimplePredicate {
            name: name.into(),
            l1,
            skeleton,
            l2,
        }
    }

    /// Infix predicate: both sides free.
    pub fn factor(name: impl Into<String>, skeleton: &str) -> Self {
        SimplePredicate::new(name, Boundary::AnyWord, skeleton, Boundary::AnyWord)
    }

    pub fn prefix(name: impl Into<String>, skeleton: &str) -> Self {
        SimplePredicate::new(name, Boundary::EmptyOnly, skeleton, Boundary::AnyWord)
    }

    pub fn suffix(name: impl Into<String>, skeleton: &str) -> Self {
        SimplePredicate::new(name, Boundary::AnyWord, skeleton, Boundary::EmptyOnly)
    }

    pub fn whole(name: impl Into<String>, skeleton: &str) -> Self {
        SimplePredicate::new(name, Boundary::EmptyOnly, skeleton, Boundary::EmptyOnly)
    }

    pub fn classes(&self) -> BTreeSet<u8> {
        self.skeleton
            .iter()
            .filter_map(|s| match s {
                SkeletonItem::Param(c) => Some(*c),
                SkeletonItem::Letter(_) => None,
            })
            .collect()
    }
}

impl fmt::Display for SimplePredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.l1 == Boundary::AnyWord {
            f.write_str("Σ*·")?;
        }
        f.write_str("[")?;
        for s in &self.skeleton {
            match s {
                SkeletonItem::Letter(c) => write!(f, "{c}")?,
                SkeletonItem::Param(k) => write!(f, "<{k}>")?,
            }
        }
        f.write_str("]")?;
        if self.l2 == Boundary::AnyWord {
            f.write_str("·Σ*")?;
        }
        Ok(())
    }
}

/// Sequential variable allocator that records constraints as it goes.
#[derive(Debug, Default)]
pub(crate) struct VarPool {
    next: u32,
    pub(crate) constraints: BTreeSet<Constraint>,
}

impl VarPool {
    pub(crate) fn new() -> Self {
        VarPool {
            next: 1,
            constraints: BTreeSet::new(),
        }
    }

    pub(crate) fn fresh(&mut self) -> Var {
        let v = Var(self.next);
        self.next += 1;
        v
    }

    pub(crate) fn fresh_n(&mut self, n: usize) -> Vec<Var> {
        (0..n).map(|_| self.fresh()).collect()
    }

    pub(crate) fn relate(&mut self, kind: RelationKind, a: Var, b: Var) {
        self.constraints.insert(Constraint::new(kind, a, b));
    }
}

pub(crate) fn vars_to_symbols(vars: &[Var]) -> Vec<PatternSymbol> {
    vars.iter().map(|&v| PatternSymbol::Variable(v)).collect()
}

pub(crate) fn terminals(s: &str) -> impl Iterator<Item = PatternSymbol> + '_ {
    s.chars().map(PatternSymbol::Terminal)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_classifier() {
        assert!(good_structure(&Word::from("##0#0#0##")));
        assert!(good_structure(&Word::from("##0#00#0##000#0#0##")));
        assert!(!good_structure(&Word::from("####")));
        assert!(!good_structure(&Word::from("##")));
        assert!(!good_structure(&Word::from("##0#0##")));
        assert!(!good_structure(&Word::from("##0##0#0##")));
        assert!(!good_structure(&Word::from("##0#0#0#0##")));
        assert!(!good_structure(&Word::from("##0#0#0###")));
        assert!(!good_structure(&Word::from("#0#0#0##")));
    }

    #[test]
    fn form_classifier() {
        assert!(good_form(&SigmaAssignment::new("##0#0#0##", "000")));
        assert!(good_form(&SigmaAssignment::new("", "")));
        assert!(!good_form(&SigmaAssignment::new("##0", "0#0")));
        assert!(!good_form(&SigmaAssignment::new("0###0", "0")));
    }

    #[test]
    fn skeleton_text() {
        let p = SimplePredicate::factor("t", "##1#2##");
        assert_eq!(p.classes(), BTreeSet::from([1, 2]));
        assert_eq!(p.to_string(), "Σ*·[##<1>#<2>##]·Σ*");
        assert_eq!(SimplePredicate::whole("e", "").to_string(), "[]");
    }
}
