//! Substitution application, validity, bounded enumeration and bounded
//! inclusion/equality checks.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::matcher;
use crate::pattern::{Alphabet, Mode, PatternSymbol, RelationalPattern, Substitution, Word};
use crate::relations::relation_holds;

pub const DEFAULT_ENUM_BUDGET: u64 = 10_000_000;

/// `L ∩ Σ^{≤max_len}` for some relational pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedLanguage {
    pub alphabet: Alphabet,
    pub max_len: usize,
    pub words: BTreeSet<Word>,
}

impl BoundedLanguage {
    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Words in shortlex order with respect to the alphabet's declaration order.
    pub fn shortlex(&self) -> Vec<Word> {
        let mut out: Vec<Word> = self.words.iter().cloned().collect();
        out.sort_by(|a, b| self.alphabet.shortlex_cmp(a, b));
        out
    }
}

pub fn apply(h: &Substitution, rp: &RelationalPattern) -> Result<Word> {
    let mut out = Vec::new();
    for s in rp.pattern().symbols() {
        match s {
            PatternSymbol::Terminal(c) => out.push(*c),
            PatternSymbol::Variable(v) => {
                let w = h.get(*v).ok_or(Error::Unassigned(*v))?;
                out.extend_from_slice(w.as_slice());
            }
        }
    }
    Ok(Word(out))
}

/// Non-erasing where required and every constraint satisfied. Unassigned
/// variables make the substitution invalid.
pub fn is_valid(h: &Substitution, rp: &RelationalPattern, mode: Mode) -> bool {
    let images: Option<Vec<&Word>> = rp.variables().iter().map(|v| h.get(*v)).collect();
    let Some(images) = images else {
        return false;
    };
    if mode == Mode::NonErasing && images.iter().any(|w| w.is_empty()) {
        return false;
    }
    rp.constraints().iter().all(|c| {
        let (u, v) = (h.get(c.left).unwrap(), h.get(c.right).unwrap());
        relation_holds(c.kind, u.as_slice(), v.as_slice())
    })
}

// Number of ways to distribute `total` among `k` ordered parts, each at least `min`.
fn compositions_count(total: usize, k: usize, min: usize) -> u128 {
    if k == 0 {
        return u128::from(total == 0);
    }
    let Some(free) = total.checked_sub(k * min) else {
        return 0;
    };
    // C(free + k - 1, k - 1)
    let mut c: u128 = 1;
    for i in 0..(k - 1) as u128 {
        c = c * (free as u128 + 1 + i) / (i + 1);
    }
    c
}

/// Number of candidate substitutions `enumerate_language` would inspect.
pub fn enumeration_size(rp: &RelationalPattern, mode: Mode, max_len: usize) -> u128 {
    let k = rp.variables().len();
    let t = rp.pattern().terminal_count();
    let sigma = rp.alphabet().len() as u128;
    let mut total: u128 = 0;
    for len in t..=max_len {
        let var_len = len - t;
        let ways = compositions_count(var_len, k, mode.min_len());
        total = total.saturating_add(ways.saturating_mul(sigma.saturating_pow(var_len as u32)));
    }
    total
}

pub fn enumerate_language(
    rp: &RelationalPattern,
    mode: Mode,
    max_len: usize,
) -> Result<BoundedLanguage> {
    enumerate_language_with(rp, mode, max_len, DEFAULT_ENUM_BUDGET)
}

/// Exhausts total image length, then length compositions, then concrete words.
pub fn enumerate_language_with(
    rp: &RelationalPattern,
    mode: Mode,
    max_len: usize,
    budget: u64,
) -> Result<BoundedLanguage> {
    if enumeration_size(rp, mode, max_len) > budget as u128 {
        return Err(Error::BudgetExceeded { budget });
    }
    let vars = rp.variables();
    let k = vars.len();
    let t = rp.pattern().terminal_count();
    let alphabet = rp.alphabet();
    let mut words = BTreeSet::new();
    let mut h = Substitution::new();
    for len in t..=max_len {
        let mut parts = vec![0usize; k];
        for_each_composition(len - t, mode.min_len(), &mut parts, 0, &mut |parts| {
            assign_words(rp, mode, alphabet, &vars, parts, 0, &mut h, &mut words);
        });
    }
    Ok(BoundedLanguage {
        alphabet: alphabet.clone(),
        max_len,
        words,
    })
}

fn for_each_composition(
    total: usize,
    min: usize,
    parts: &mut [usize],
    i: usize,
    f: &mut dyn FnMut(&[usize]),
) {
    if i == parts.len() {
        if total == 0 {
            f(parts);
        }
        return;
    }
    if i + 1 == parts.len() {
        if total >= min {
            parts[i] = total;
            f(parts);
        }
        return;
    }
    let mut len = min;
    while len <= total {
        parts[i] = len;
        for_each_composition(total - len, min, parts, i + 1, f);
        len += 1;
    }
}

#[allow(clippy::too_many_arguments)]
fn assign_words(
    rp: &RelationalPattern,
    mode: Mode,
    alphabet: &Alphabet,
    vars: &[crate::pattern::Var],
    parts: &[usize],
    i: usize,
    h: &mut Substitution,
    out: &mut BTreeSet<Word>,
) {
    if i == vars.len() {
        if is_valid(h, rp, mode) {
            out.insert(apply(h, rp).expect("total substitution"));
        }
        return;
    }
    for w in alphabet.words_of_len(parts[i]) {
        h.insert(vars[i], w);
        assign_words(rp, mode, alphabet, vars, parts, i + 1, h, out);
    }
    h.remove(vars[i]);
}

/// A shortest word of `a`'s bounded slice outside `L(b)`, if any.
pub fn inclusion_counterexample(
    a: &RelationalPattern,
    b: &RelationalPattern,
    mode: Mode,
    max_len: usize,
) -> Result<Option<Word>> {
    if !a.alphabet().same_letters(b.alphabet()) {
        return Err(Error::AlphabetMismatch);
    }
    for w in enumerate_language(a, mode, max_len)?.shortlex() {
        if !matcher::is_member(&w, b, mode)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

pub fn bounded_included(
    a: &RelationalPattern,
    b: &RelationalPattern,
    mode: Mode,
    max_len: usize,
) -> Result<bool> {
    Ok(inclusion_counterexample(a, b, mode, max_len)?.is_none())
}

/// Counterexample to bounded equality: a word in one side's slice but not in the other language.
pub fn equality_counterexample(
    a: &RelationalPattern,
    b: &RelationalPattern,
    mode: Mode,
    max_len: usize,
) -> Result<Option<Word>> {
    if let Some(w) = inclusion_counterexample(a, b, mode, max_len)? {
        return Ok(Some(w));
    }
    inclusion_counterexample(b, a, mode, max_len)
}

pub fn bounded_equal(
    a: &RelationalPattern,
    b: &RelationalPattern,
    mode: Mode,
    max_len: usize,
) -> Result<bool> {
    Ok(equality_counterexample(a, b, mode, max_len)?.is_none())
}
