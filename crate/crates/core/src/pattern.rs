//! Alphabets, words, patterns, constraints and substitutions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::PatternError;
use crate::relations::RelationKind;

/// Ordered finite set of letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = char>) -> Result<Self, PatternError> {
        let letters: Vec<char> = letters.into_iter().collect();
        if letters.is_empty() {
            return Err(PatternError::EmptyAlphabet);
        }
        let mut seen = BTreeSet::new();
        for &c in &letters {
            if c == 'x' || c == ';' || c == ',' || c == '(' || c == ')' || c.is_whitespace() {
                return Err(PatternError::ReservedLetter(c));
            }
            if !seen.insert(c) {
                return Err(PatternError::DuplicateLetter(c));
            }
        }
        Ok(Alphabet { letters })
    }

    /// Shorthand for alphabets in tests and generators; panics on invalid input.
    pub fn from_letters(letters: &str) -> Self {
        Alphabet::new(letters.chars()).expect("valid alphabet")
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn contains(&self, c: char) -> bool {
        self.letters.contains(&c)
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.letters.iter().position(|&d| d == c)
    }

    /// Same letters, ignoring declaration order.
    pub fn same_letters(&self, other: &Alphabet) -> bool {
        let a: BTreeSet<char> = self.letters.iter().copied().collect();
        let b: BTreeSet<char> = other.letters.iter().copied().collect();
        a == b
    }

    pub fn admits(&self, word: &Word) -> bool {
        word.0.iter().all(|&c| self.contains(c))
    }

    /// All words of exactly length `n`, in lexicographic order of the alphabet.
    pub fn words_of_len(&self, n: usize) -> WordsOfLen<'_> {
        WordsOfLen {
            alphabet: self,
            digits: vec![0; n],
            done: false,
        }
    }

    /// All words of length at most `max_len`, in shortlex order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        (0..=max_len).flat_map(|n| self.words_of_len(n)).collect()
    }

    /// Shortlex comparison with respect to the declaration order.
    pub fn shortlex_cmp(&self, a: &Word, b: &Word) -> std::cmp::Ordering {
        let key = |w: &Word| -> Vec<usize> {
            w.0.iter()
                .map(|&c| self.index_of(c).unwrap_or(usize::MAX))
                .collect()
        };
        a.len().cmp(&b.len()).then_with(|| key(a).cmp(&key(b)))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.letters {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

pub struct WordsOfLen<'a> {
    alphabet: &'a Alphabet,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for WordsOfLen<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        let letters = self.alphabet.letters();
        let word = Word(self.digits.iter().map(|&d| letters[d]).collect());
        // odometer increment from the right
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < letters.len() {
                break;
            }
            self.digits[i] = 0;
        }
        Some(word)
    }
}

/// A finite sequence of letters.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<char>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn as_slice(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `c` repeated `n` times.
    pub fn repeat(c: char, n: usize) -> Word {
        Word(vec![c; n])
    }

    pub fn contains_factor(&self, factor: &str) -> bool {
        let f: Vec<char> = factor.chars().collect();
        if f.is_empty() {
            return true;
        }
        self.0.windows(f.len()).any(|w| w == f.as_slice())
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Self {
        Word(s.chars().collect())
    }
}

impl From<String> for Word {
    fn from(s: String) -> Self {
        Word(s.chars().collect())
    }
}

impl From<Vec<char>> for Word {
    fn from(v: Vec<char>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A pattern variable `x<n>`, `n ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u32);

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternSymbol {
    Terminal(char),
    Variable(Var),
}

impl PatternSymbol {
    pub fn var(n: u32) -> Self {
        PatternSymbol::Variable(Var(n))
    }

    pub fn as_var(&self) -> Option<Var> {
        match self {
            PatternSymbol::Variable(v) => Some(*v),
            PatternSymbol::Terminal(_) => None,
        }
    }
}

impl fmt::Display for PatternSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternSymbol::Terminal(c) => write!(f, "{c}"),
            PatternSymbol::Variable(v) => write!(f, "{v}"),
        }
    }
}

/// A non-empty regular pattern: every variable occurs at most once.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    symbols: Vec<PatternSymbol>,
}

impl Pattern {
    pub fn new(symbols: Vec<PatternSymbol>) -> Result<Self, PatternError> {
        if symbols.is_empty() {
            return Err(PatternError::EmptyPattern);
        }
        let mut seen = BTreeSet::new();
        for s in &symbols {
            if let PatternSymbol::Variable(v) = s {
                if v.0 == 0 {
                    return Err(PatternError::ZeroVariable);
                }
                if !seen.insert(*v) {
                    return Err(PatternError::RepeatedVariable(*v));
                }
            }
        }
        Ok(Pattern { symbols })
    }

    pub fn symbols(&self) -> &[PatternSymbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Variables in order of occurrence.
    pub fn variables(&self) -> Vec<Var> {
        self.symbols.iter().filter_map(|s| s.as_var()).collect()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.symbols.iter().any(|s| s.as_var() == Some(v))
    }

    pub fn terminal_count(&self) -> usize {
        self.symbols.len() - self.variables().len()
    }

    /// Variables read left to right are `x1, x2, …` with no gaps.
    pub fn is_normal(&self) -> bool {
        self.variables()
            .iter()
            .enumerate()
            .all(|(i, v)| v.0 as usize == i + 1)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A directed binary constraint `kind(left, right)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constraint {
    pub kind: RelationKind,
    pub left: Var,
    pub right: Var,
}

impl Constraint {
    pub fn new(kind: RelationKind, left: Var, right: Var) -> Self {
        Constraint { kind, left, right }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.kind, self.left, self.right)
    }
}

/// A regular pattern together with binary constraints over its variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelationalPattern {
    alphabet: Alphabet,
    pattern: Pattern,
    constraints: BTreeSet<Constraint>,
}

impl RelationalPattern {
    pub fn new(
        alphabet: Alphabet,
        pattern: Pattern,
        constraints: impl IntoIterator<Item = Constraint>,
    ) -> Result<Self, PatternError> {
        for s in pattern.symbols() {
            if let PatternSymbol::Terminal(c) = s {
                if !alphabet.contains(*c) {
                    return Err(PatternError::UnknownLetter(*c));
                }
            }
        }
        let constraints: BTreeSet<Constraint> = constraints.into_iter().collect();
        let vars: BTreeSet<Var> = pattern.variables().into_iter().collect();
        for c in &constraints {
            for v in [c.left, c.right] {
                if !vars.contains(&v) {
                    return Err(PatternError::UnboundConstraintVariable(v));
                }
            }
        }
        Ok(RelationalPattern {
            alphabet,
            pattern,
            constraints,
        })
    }

    /// Pattern without constraints.
    pub fn unconstrained(alphabet: Alphabet, pattern: Pattern) -> Result<Self, PatternError> {
        RelationalPattern::new(alphabet, pattern, [])
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn constraints(&self) -> &BTreeSet<Constraint> {
        &self.constraints
    }

    pub fn variables(&self) -> Vec<Var> {
        self.pattern.variables()
    }

    /// The single relation kind used by all constraints, if there is exactly one.
    pub fn relation_kinds(&self) -> BTreeSet<RelationKind> {
        self.constraints.iter().map(|c| c.kind).collect()
    }

    pub fn with_constraints(
        &self,
        constraints: impl IntoIterator<Item = Constraint>,
    ) -> Result<Self, PatternError> {
        RelationalPattern::new(self.alphabet.clone(), self.pattern.clone(), constraints)
    }
}

impl fmt::Display for RelationalPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_relational_pattern(self))
    }
}

/// Erasing or non-erasing substitutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Erasing,
    NonErasing,
}

impl Mode {
    /// Shortest admissible image of a variable.
    pub fn min_len(self) -> usize {
        match self {
            Mode::Erasing => 0,
            Mode::NonErasing => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Erasing => "E",
            Mode::NonErasing => "NE",
        }
    }

    pub fn parse(s: &str) -> Option<Mode> {
        match s.trim().to_ascii_uppercase().as_str() {
            "E" => Some(Mode::Erasing),
            "NE" => Some(Mode::NonErasing),
            _ => None,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Assignment of words to variables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Substitution {
    map: BTreeMap<Var, Word>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn from_pairs<W: Into<Word>>(pairs: impl IntoIterator<Item = (u32, W)>) -> Self {
        Substitution {
            map: pairs.into_iter().map(|(i, w)| (Var(i), w.into())).collect(),
        }
    }

    pub fn insert(&mut self, var: Var, word: Word) -> Option<Word> {
        self.map.insert(var, word)
    }

    pub fn get(&self, var: Var) -> Option<&Word> {
        self.map.get(&var)
    }

    pub fn remove(&mut self, var: Var) -> Option<Word> {
        self.map.remove(&var)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, &Word)> {
        self.map.iter().map(|(v, w)| (*v, w))
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, w)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}={w}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_rejects_reserved_and_duplicates() {
        assert!(Alphabet::new("ab".chars()).is_ok());
        assert!(Alphabet::new("01#".chars()).is_ok());
        assert_eq!(
            Alphabet::new("aa".chars()),
            Err(PatternError::DuplicateLetter('a'))
        );
        assert_eq!(
            Alphabet::new("ax".chars()),
            Err(PatternError::ReservedLetter('x'))
        );
        assert_eq!(Alphabet::new("".chars()), Err(PatternError::EmptyAlphabet));
    }

    #[test]
    fn words_in_shortlex_order() {
        let sigma = Alphabet::from_letters("ba");
        let words: Vec<String> = sigma.words_up_to(2).iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["", "b", "a", "bb", "ba", "ab", "aa"]);
        assert_eq!(sigma.words_of_len(3).count(), 8);
    }

    #[test]
    fn pattern_regularity() {
        let p = Pattern::new(vec![PatternSymbol::var(1), PatternSymbol::var(1)]);
        assert_eq!(p, Err(PatternError::RepeatedVariable(Var(1))));
        assert_eq!(Pattern::new(vec![]), Err(PatternError::EmptyPattern));
        let p = Pattern::new(vec![PatternSymbol::var(2), PatternSymbol::Terminal('a')]).unwrap();
        assert!(!p.is_normal());
    }

    #[test]
    fn constraint_variables_must_occur() {
        let sigma = Alphabet::from_letters("ab");
        let p = Pattern::new(vec![PatternSymbol::var(1)]).unwrap();
        let c = Constraint::new(RelationKind::Eq, Var(1), Var(2));
        assert_eq!(
            RelationalPattern::new(sigma, p, [c]),
            Err(PatternError::UnboundConstraintVariable(Var(2)))
        );
    }

    #[test]
    fn duplicate_constraints_collapse_but_direction_is_kept() {
        let sigma = Alphabet::from_letters("ab");
        let p = Pattern::new(vec![PatternSymbol::var(1), PatternSymbol::var(2)]).unwrap();
        let c = Constraint::new(RelationKind::Eq, Var(2), Var(1));
        let rp = RelationalPattern::new(sigma, p, [c, c]).unwrap();
        assert_eq!(rp.constraints().len(), 1);
        assert_eq!(rp.constraints().iter().next().unwrap().left, Var(2));
    }

    #[test]
    fn substitution_display() {
        let h = Substitution::from_pairs([(1, "ab"), (2, "ba")]);
        assert_eq!(h.to_string(), "x1=ab x2=ba");
    }
}
