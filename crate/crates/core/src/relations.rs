//! The nine binary word relations and the metadata the matcher uses for pruning.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::pattern::Word;

/// One of the nine binary relations a constraint may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    /// `u = v`
    Eq,
    /// `|u| = |v|`
    LenEq,
    /// `u` is a scattered subsequence of `v`
    Subseq,
    /// `u` and `v` have the same Parikh vector
    AbelianEq,
    /// `u` is the image of `v` under an injective letter map
    AlphaPerm,
    /// `u` is `v` reversed
    Reversal,
    /// `u, v ∈ {z}*` for some `z`
    ComStar,
    /// `u, v ∈ {z}+` for some `z`, never satisfied by the empty word
    ComPlus,
    /// `u ∈ {v}*`
    Star,
}

impl RelationKind {
    pub const ALL: [RelationKind; 9] = [
        RelationKind::Eq,
        RelationKind::LenEq,
        RelationKind::Subseq,
        RelationKind::AbelianEq,
        RelationKind::AlphaPerm,
        RelationKind::Reversal,
        RelationKind::ComStar,
        RelationKind::ComPlus,
        RelationKind::Star,
    ];

    /// Stable name used by the text format and the CLI.
    pub fn name(self) -> &'static str {
        match self {
            RelationKind::Eq => "eq",
            RelationKind::LenEq => "len",
            RelationKind::Subseq => "ssq",
            RelationKind::AbelianEq => "ab",
            RelationKind::AlphaPerm => "perm",
            RelationKind::Reversal => "rev",
            RelationKind::ComStar => "comstar",
            RelationKind::ComPlus => "composplus",
            RelationKind::Star => "star",
        }
    }

    pub fn from_name(name: &str) -> Option<RelationKind> {
        RelationKind::ALL.iter().copied().find(|k| k.name() == name)
    }

    pub fn holds(self, u: &Word, v: &Word) -> bool {
        relation_holds(self, u.as_slice(), v.as_slice())
    }

    pub fn length_profile(self) -> LengthProfile {
        length_profile(self)
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown relation name `{0}`")]
pub struct UnknownRelation(pub String);

impl FromStr for RelationKind {
    type Err = UnknownRelation;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RelationKind::from_name(s).ok_or_else(|| UnknownRelation(s.to_string()))
    }
}

/// A length condition implied by membership in a relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthProfile {
    EqualLengths,
    LeftAtMostRight,
    /// `|u|` is a multiple of `|v|` (and `u` is empty when `v` is).
    LeftMultipleOfRight,
    Unconstrained,
}

impl LengthProfile {
    /// Checks the length condition for a pair of lengths.
    pub fn admits(self, left: usize, right: usize) -> bool {
        match self {
            LengthProfile::EqualLengths => left == right,
            LengthProfile::LeftAtMostRight => left <= right,
            LengthProfile::LeftMultipleOfRight => {
                if right == 0 {
                    left == 0
                } else {
                    left.is_multiple_of(right)
                }
            }
            LengthProfile::Unconstrained => true,
        }
    }
}

pub fn length_profile(kind: RelationKind) -> LengthProfile {
    match kind {
        RelationKind::Eq
        | RelationKind::LenEq
        | RelationKind::AbelianEq
        | RelationKind::AlphaPerm
        | RelationKind::Reversal => LengthProfile::EqualLengths,
        RelationKind::Subseq => LengthProfile::LeftAtMostRight,
        RelationKind::Star => LengthProfile::LeftMultipleOfRight,
        RelationKind::ComStar | RelationKind::ComPlus => LengthProfile::Unconstrained,
    }
}

/// True for the relations that are equivalence relations which coincide with
/// equality on single letters. These are the kinds the NE-equivalence decider accepts.
pub fn is_letter_antisymmetric_equivalence(kind: RelationKind) -> bool {
    matches!(
        kind,
        RelationKind::Eq | RelationKind::AbelianEq | RelationKind::ComPlus
    )
}

/// Letter counts of a word.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParikhVector {
    counts: BTreeMap<char, usize>,
}

impl ParikhVector {
    pub fn of(word: &[char]) -> Self {
        let mut counts = BTreeMap::new();
        for &c in word {
            *counts.entry(c).or_insert(0) += 1;
        }
        ParikhVector { counts }
    }

    pub fn count(&self, letter: char) -> usize {
        self.counts.get(&letter).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }
}

/// Decides `(u, v) ∈ kind`.
pub fn relation_holds(kind: RelationKind, u: &[char], v: &[char]) -> bool {
    match kind {
        RelationKind::Eq => u == v,
        RelationKind::LenEq => u.len() == v.len(),
        RelationKind::Subseq => is_subsequence(u, v),
        RelationKind::AbelianEq => u.len() == v.len() && ParikhVector::of(u) == ParikhVector::of(v),
        RelationKind::AlphaPerm => is_letter_image(u, v),
        RelationKind::Reversal => u.len() == v.len() && u.iter().eq(v.iter().rev()),
        RelationKind::ComStar => u.is_empty() || v.is_empty() || commute(u, v),
        RelationKind::ComPlus => !u.is_empty() && !v.is_empty() && commute(u, v),
        RelationKind::Star => is_power_of(u, v),
    }
}

fn is_subsequence(u: &[char], v: &[char]) -> bool {
    let mut rest = v.iter();
    u.iter().all(|c| rest.any(|d| d == c))
}

// Some injective map on alph(v) sends v letterwise onto u.
fn is_letter_image(u: &[char], v: &[char]) -> bool {
    if u.len() != v.len() {
        return false;
    }
    let mut forward: BTreeMap<char, char> = BTreeMap::new();
    let mut backward: BTreeMap<char, char> = BTreeMap::new();
    for (&a, &b) in v.iter().zip(u) {
        match (forward.get(&a), backward.get(&b)) {
            (Some(&x), _) if x != b => return false,
            (_, Some(&y)) if y != a => return false,
            _ => {
                forward.insert(a, b);
                backward.insert(b, a);
            }
        }
    }
    true
}

fn commute(u: &[char], v: &[char]) -> bool {
    u.len() + v.len() == v.len() + u.len() && u.iter().chain(v).eq(v.iter().chain(u))
}

// u ∈ {v}*
fn is_power_of(u: &[char], v: &[char]) -> bool {
    if v.is_empty() {
        return u.is_empty();
    }
    u.len().is_multiple_of(v.len()) && u.chunks(v.len()).all(|chunk| chunk == v)
}

/// Shortest `z` with `w ∈ {z}+`. The empty word has no primitive root.
pub fn primitive_root(w: &[char]) -> Option<&[char]> {
    if w.is_empty() {
        return None;
    }
    let n = w.len();
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .find(|&d| is_power_of(w, &w[..d]))
        .map(|d| &w[..d])
}
