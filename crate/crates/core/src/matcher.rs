//! Exact membership: depth-first search over segment assignments, shortest
//! segments first, with static length bounds and a failure memo.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::pattern::{Constraint, Mode, PatternSymbol, RelationalPattern, Substitution, Var, Word};
use crate::relations::{relation_holds, LengthProfile, RelationKind};

/// `lhs = target`. The left side may be empty and may share variables with other equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchEquation {
    pub lhs: Vec<PatternSymbol>,
    pub target: Word,
}

impl MatchEquation {
    pub fn new(lhs: Vec<PatternSymbol>, target: impl Into<Word>) -> Self {
        MatchEquation {
            lhs,
            target: target.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchProblem {
    pub equations: Vec<MatchEquation>,
    pub constraints: BTreeSet<Constraint>,
    pub mode: Mode,
}

impl MatchProblem {
    pub fn new(
        equations: Vec<MatchEquation>,
        constraints: impl IntoIterator<Item = Constraint>,
        mode: Mode,
    ) -> Self {
        MatchProblem {
            equations,
            constraints: constraints.into_iter().collect(),
            mode,
        }
    }

    pub fn single(w: &Word, rp: &RelationalPattern, mode: Mode) -> Self {
        MatchProblem::new(
            vec![MatchEquation::new(
                rp.pattern().symbols().to_vec(),
                w.clone(),
            )],
            rp.constraints().iter().copied(),
            mode,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchOptions {
    /// Use relation length profiles to bound segment lengths.
    pub length_pruning: bool,
    /// Maximum number of segment bindings tried before giving up.
    pub node_budget: u64,
}

impl Default for MatchOptions {
    fn default() -> Self {
        MatchOptions {
            length_pruning: true,
            node_budget: 50_000_000,
        }
    }
}

/// Some valid `h` with `h(rp) = w`, or `None`.
pub fn match_word(w: &Word, rp: &RelationalPattern, mode: Mode) -> Result<Option<Substitution>> {
    match_word_with(w, rp, mode, MatchOptions::default())
}

pub fn match_word_with(
    w: &Word,
    rp: &RelationalPattern,
    mode: Mode,
    opts: MatchOptions,
) -> Result<Option<Substitution>> {
    if let Some(&c) = w.as_slice().iter().find(|&&c| !rp.alphabet().contains(c)) {
        return Err(Error::ForeignLetter(c));
    }
    solve_system_with(&MatchProblem::single(w, rp, mode), opts)
}

pub fn is_member(w: &Word, rp: &RelationalPattern, mode: Mode) -> Result<bool> {
    Ok(match_word(w, rp, mode)?.is_some())
}

pub fn solve_system(p: &MatchProblem) -> Result<Option<Substitution>> {
    solve_system_with(p, MatchOptions::default())
}

pub fn solve_system_with(p: &MatchProblem, opts: MatchOptions) -> Result<Option<Substitution>> {
    let mut solver = Solver::new(p, opts, 1)?;
    solver.run()?;
    Ok(solver.first)
}

/// Number of distinct valid witnesses, stopping at `cap`.
pub fn count_witnesses(w: &Word, rp: &RelationalPattern, mode: Mode, cap: usize) -> Result<usize> {
    if cap == 0 {
        return Ok(0);
    }
    let problem = MatchProblem::single(w, rp, mode);
    let mut solver = Solver::new(&problem, MatchOptions::default(), cap)?;
    solver.run()?;
    Ok(solver.found)
}

#[derive(Clone, Copy)]
struct Edge {
    kind: RelationKind,
    other: usize,
    // this variable is the left component
    is_left: bool,
}

#[derive(Clone, Copy, Default)]
struct Binding {
    eq: usize,
    start: usize,
    len: usize,
}

enum Sym {
    Term(char),
    Var(usize),
}

struct Solver<'p> {
    targets: Vec<&'p [char]>,
    eqs: Vec<Vec<Sym>>,
    vars: Vec<Var>,
    edges: Vec<Vec<Edge>>,
    lo: Vec<usize>,
    hi: Vec<usize>,
    // letters each variable may use, sorted
    letters: Vec<Vec<char>>,
    // other variables forced to the same length through equal-length relations
    same_len: Vec<Vec<usize>>,
    // indexed by global position
    pos_base: Vec<usize>,
    suffix_min: Vec<Vec<usize>>,
    suffix_max: Vec<Vec<usize>>,
    live: Vec<Vec<usize>>,
    bound: Vec<Option<Binding>>,
    memo: HashSet<Vec<u32>>,
    use_memo: bool,
    infeasible: bool,
    pruning: bool,
    nodes: u64,
    budget: u64,
    cap: usize,
    found: usize,
    first: Option<Substitution>,
}

const MEMO_LIMIT: usize = 4_000_000;

impl<'p> Solver<'p> {
    fn new(p: &'p MatchProblem, opts: MatchOptions, cap: usize) -> Result<Self> {
        if p.equations.is_empty() {
            return Err(Error::Precondition(
                "a match problem needs an equation".into(),
            ));
        }
        let mut index: BTreeMap<Var, usize> = BTreeMap::new();
        let mut vars = Vec::new();
        let mut eqs = Vec::new();
        for eq in &p.equations {
            let mut syms = Vec::new();
            for s in &eq.lhs {
                syms.push(match *s {
                    PatternSymbol::Terminal(c) => Sym::Term(c),
                    PatternSymbol::Variable(v) => Sym::Var(*index.entry(v).or_insert_with(|| {
                        vars.push(v);
                        vars.len() - 1
                    })),
                });
            }
            eqs.push(syms);
        }
        let n = vars.len();
        let mut edges = vec![Vec::new(); n];
        for c in &p.constraints {
            let (Some(&l), Some(&r)) = (index.get(&c.left), index.get(&c.right)) else {
                return Err(Error::Precondition(format!(
                    "constraint {c} mentions a variable outside the equations"
                )));
            };
            edges[l].push(Edge {
                kind: c.kind,
                other: r,
                is_left: true,
            });
            edges[r].push(Edge {
                kind: c.kind,
                other: l,
                is_left: false,
            });
        }
        let targets: Vec<&[char]> = p.equations.iter().map(|e| e.target.as_slice()).collect();

        let mut solver = Solver {
            targets,
            eqs,
            vars,
            edges,
            lo: vec![p.mode.min_len(); n],
            hi: vec![usize::MAX; n],
            letters: Vec::new(),
            same_len: vec![Vec::new(); n],
            pos_base: Vec::new(),
            suffix_min: Vec::new(),
            suffix_max: Vec::new(),
            live: Vec::new(),
            bound: vec![None; n],
            memo: HashSet::new(),
            use_memo: true,
            infeasible: false,
            pruning: opts.length_pruning,
            nodes: 0,
            budget: opts.node_budget,
            cap,
            found: 0,
            first: None,
        };
        solver.init_bounds(&p.constraints);
        solver.init_letters();
        solver.init_same_len();
        solver.init_positions();
        Ok(solver)
    }

    fn init_bounds(&mut self, constraints: &BTreeSet<Constraint>) {
        let n = self.vars.len();
        // every variable is bounded by the free room of each equation it occurs in
        for (e, syms) in self.eqs.iter().enumerate() {
            let terminals = syms.iter().filter(|s| matches!(s, Sym::Term(_))).count();
            let room = self.targets[e].len().saturating_sub(terminals);
            for s in syms {
                if let Sym::Var(v) = s {
                    self.hi[*v] = self.hi[*v].min(room);
                }
            }
        }
        if !self.pruning {
            return;
        }
        for c in constraints {
            if c.kind == RelationKind::ComPlus {
                for v in [c.left, c.right] {
                    let i = self.vars.iter().position(|&w| w == v).unwrap();
                    self.lo[i] = self.lo[i].max(1);
                }
            }
        }
        let mut changed = true;
        while changed && !self.infeasible {
            changed = false;
            for u in 0..n {
                for k in 0..self.edges[u].len() {
                    let e = self.edges[u][k];
                    if !e.is_left {
                        continue;
                    }
                    let v = e.other;
                    let (lu, hu, lv, hv) = (self.lo[u], self.hi[u], self.lo[v], self.hi[v]);
                    match e.kind.length_profile() {
                        LengthProfile::EqualLengths => {
                            let (l, h) = (lu.max(lv), hu.min(hv));
                            self.lo[u] = l;
                            self.lo[v] = l;
                            self.hi[u] = h;
                            self.hi[v] = h;
                        }
                        LengthProfile::LeftAtMostRight => {
                            self.hi[u] = hu.min(hv);
                            self.lo[v] = lv.max(lu);
                        }
                        LengthProfile::LeftMultipleOfRight => {
                            if hv == 0 {
                                self.hi[u] = 0;
                            }
                            if lu > 0 {
                                self.lo[v] = lv.max(1);
                                self.hi[v] = hv.min(hu);
                            }
                        }
                        LengthProfile::Unconstrained => {}
                    }
                    changed |= (lu, hu, lv, hv) != (self.lo[u], self.hi[u], self.lo[v], self.hi[v]);
                }
            }
            // per-equation sums
            for (e, syms) in self.eqs.iter().enumerate() {
                let mut seen = BTreeSet::new();
                let mut terminals = 0usize;
                for s in syms {
                    match s {
                        Sym::Term(_) => terminals += 1,
                        Sym::Var(v) => {
                            seen.insert(*v);
                        }
                    }
                }
                let len = self.targets[e].len();
                let sum_lo: usize = syms
                    .iter()
                    .filter_map(|s| {
                        if let Sym::Var(v) = s {
                            Some(self.lo[*v])
                        } else {
                            None
                        }
                    })
                    .sum();
                let sum_hi: usize = syms
                    .iter()
                    .filter_map(|s| {
                        if let Sym::Var(v) = s {
                            Some(self.hi[*v])
                        } else {
                            None
                        }
                    })
                    .fold(0usize, |a, b| a.saturating_add(b));
                if terminals + sum_lo > len {
                    self.infeasible = true;
                    break;
                }
                for &v in &seen {
                    let occ = syms
                        .iter()
                        .filter(|s| matches!(s, Sym::Var(w) if *w == v))
                        .count();
                    let others_lo = sum_lo - occ * self.lo[v];
                    let new_hi = (len - terminals - others_lo) / occ;
                    if new_hi < self.hi[v] {
                        self.hi[v] = new_hi;
                        changed = true;
                    }
                    let others_hi = sum_hi.saturating_sub(occ * self.hi[v]);
                    if sum_hi != usize::MAX && len - terminals > others_hi {
                        let need = (len - terminals - others_hi).div_ceil(occ);
                        if need > self.lo[v] {
                            self.lo[v] = need;
                            changed = true;
                        }
                    }
                }
            }
            if (0..n).any(|v| self.lo[v] > self.hi[v]) {
                self.infeasible = true;
            }
        }
        if (0..n).any(|v| self.lo[v] > self.hi[v]) {
            self.infeasible = true;
        }
    }

    // Letter domains: a variable only uses letters of every target it occurs in,
    // and relations that keep letter sets pass domains along their edges.
    fn init_letters(&mut self) {
        let n = self.vars.len();
        let mut dom: Vec<Option<BTreeSet<char>>> = vec![None; n];
        for (e, syms) in self.eqs.iter().enumerate() {
            let here: BTreeSet<char> = self.targets[e].iter().copied().collect();
            for s in syms {
                if let Sym::Var(v) = s {
                    let d = dom[*v].get_or_insert_with(|| here.clone());
                    d.retain(|c| here.contains(c));
                }
            }
        }
        let mut dom: Vec<BTreeSet<char>> = dom.into_iter().map(Option::unwrap_or_default).collect();
        if self.pruning {
            let mut changed = true;
            while changed {
                changed = false;
                for u in 0..n {
                    for k in 0..self.edges[u].len() {
                        let e = self.edges[u][k];
                        if !e.is_left || e.other == u {
                            continue;
                        }
                        let v = e.other;
                        let (left_in_right, right_in_left) = match e.kind {
                            RelationKind::Eq
                            | RelationKind::AbelianEq
                            | RelationKind::Reversal
                            | RelationKind::ComPlus => (true, true),
                            RelationKind::Subseq | RelationKind::Star => (true, false),
                            _ => (false, false),
                        };
                        if left_in_right && !dom[u].is_subset(&dom[v]) {
                            let keep = dom[v].clone();
                            dom[u].retain(|c| keep.contains(c));
                            changed = true;
                        }
                        if right_in_left && !dom[v].is_subset(&dom[u]) {
                            let keep = dom[u].clone();
                            dom[v].retain(|c| keep.contains(c));
                            changed = true;
                        }
                    }
                }
            }
        }
        self.letters = dom.into_iter().map(|d| d.into_iter().collect()).collect();
    }

    fn init_same_len(&mut self) {
        if !self.pruning {
            return;
        }
        let n = self.vars.len();
        let mut class: Vec<usize> = (0..n).collect();
        fn find(class: &mut [usize], mut v: usize) -> usize {
            while class[v] != v {
                class[v] = class[class[v]];
                v = class[v];
            }
            v
        }
        for u in 0..n {
            for e in &self.edges[u] {
                if e.kind.length_profile() == LengthProfile::EqualLengths {
                    let (a, b) = (find(&mut class, u), find(&mut class, e.other));
                    class[a] = b;
                }
            }
        }
        let roots: Vec<usize> = (0..n).map(|v| find(&mut class, v)).collect();
        for u in 0..n {
            self.same_len[u] = (0..n).filter(|&w| w != u && roots[w] == roots[u]).collect();
        }
    }

    fn init_positions(&mut self) {
        let n = self.vars.len();
        let mut base = 0;
        let mut first_pos = vec![usize::MAX; n];
        let mut last_pos = vec![0usize; n];
        for syms in &self.eqs {
            self.pos_base.push(base);
            for (s, sym) in syms.iter().enumerate() {
                if let Sym::Var(v) = sym {
                    first_pos[*v] = first_pos[*v].min(base + s);
                    last_pos[*v] = base + s;
                }
            }
            base += syms.len() + 1;
        }
        // a variable bound before position p matters after p if it occurs again
        // or is related to a variable first seen at or after p
        let mut horizon = last_pos.clone();
        for (h, edges) in horizon.iter_mut().zip(&self.edges) {
            for e in edges {
                *h = (*h).max(first_pos[e.other]);
            }
        }
        for (e, syms) in self.eqs.iter().enumerate() {
            let mut mins = vec![0usize; syms.len() + 1];
            let mut maxs = vec![0usize; syms.len() + 1];
            let mut lives = Vec::new();
            for s in (0..syms.len()).rev() {
                let (a, b) = match syms[s] {
                    Sym::Term(_) => (1, 1),
                    Sym::Var(v) => (self.lo[v], self.hi[v]),
                };
                mins[s] = mins[s + 1] + a;
                maxs[s] = maxs[s + 1].saturating_add(b);
            }
            for s in 0..=syms.len() {
                let p = self.pos_base[e] + s;
                lives.push(
                    (0..n)
                        .filter(|&v| first_pos[v] < p && horizon[v] >= p)
                        .collect::<Vec<_>>(),
                );
            }
            self.suffix_min.push(mins);
            self.suffix_max.push(maxs);
            self.live.extend(lives);
        }
    }

    fn run(&mut self) -> Result<()> {
        if self.infeasible {
            return Ok(());
        }
        self.search(0, 0, 0)?;
        Ok(())
    }

    fn value(&self, b: Binding) -> &[char] {
        &self.targets[b.eq][b.start..b.start + b.len]
    }

    fn memo_key(&self, e: usize, s: usize, off: usize) -> Vec<u32> {
        let p = self.pos_base[e] + s;
        let mut key = vec![p as u32, off as u32];
        for &v in &self.live[p] {
            let b = self.bound[v].expect("live variables are bound");
            key.push(b.len as u32);
            key.extend(self.value(b).iter().map(|&c| c as u32));
        }
        key
    }

    // Returns true when the search should stop (enough witnesses found).
    fn search(&mut self, e: usize, s: usize, off: usize) -> Result<bool> {
        if e == self.eqs.len() {
            self.record();
            return Ok(self.found >= self.cap);
        }
        let syms_len = self.eqs[e].len();
        let target_len = self.targets[e].len();
        if s == syms_len {
            if off != target_len {
                return Ok(false);
            }
            return self.search(e + 1, 0, 0);
        }
        let remaining = target_len - off;
        if remaining < self.suffix_min[e][s] || remaining > self.suffix_max[e][s] {
            return Ok(false);
        }

        let key = if self.use_memo {
            let key = self.memo_key(e, s, off);
            if self.memo.contains(&key) {
                return Ok(false);
            }
            Some(key)
        } else {
            None
        };
        let before = self.found;
        let stop = self.expand(e, s, off, remaining)?;
        if let Some(key) = key {
            if !stop && self.found == before && self.memo.len() < MEMO_LIMIT {
                self.memo.insert(key);
            }
        }
        Ok(stop)
    }

    fn expand(&mut self, e: usize, s: usize, off: usize, remaining: usize) -> Result<bool> {
        match self.eqs[e][s] {
            Sym::Term(c) => {
                if self.targets[e][off] == c {
                    self.search(e, s + 1, off + 1)
                } else {
                    Ok(false)
                }
            }
            Sym::Var(v) => {
                if let Some(b) = self.bound[v] {
                    if b.len <= remaining && self.value(b) == &self.targets[e][off..off + b.len] {
                        return self.search(e, s + 1, off + b.len);
                    }
                    return Ok(false);
                }
                let after_min = self.suffix_min[e][s + 1];
                let after_max = self.suffix_max[e][s + 1];
                let lo = self.lo[v].max(remaining.saturating_sub(after_max));
                let hi = self.hi[v].min(remaining - after_min.min(remaining));
                let target = self.targets[e];
                let mut clean = off;
                for len in lo..=hi {
                    // the value grows with len, so one foreign letter ends the loop
                    if clean < off + len {
                        let allowed = &self.letters[v];
                        match target[clean..off + len]
                            .iter()
                            .position(|c| allowed.binary_search(c).is_err())
                        {
                            Some(_) => break,
                            None => clean = off + len,
                        }
                    }
                    if !self.length_compatible(v, len) {
                        continue;
                    }
                    self.nodes += 1;
                    if self.nodes > self.budget {
                        return Err(Error::BudgetExceeded {
                            budget: self.budget,
                        });
                    }
                    self.bound[v] = Some(Binding {
                        eq: e,
                        start: off,
                        len,
                    });
                    let stop = if self.constraints_hold(v) {
                        self.search(e, s + 1, off + len)?
                    } else {
                        false
                    };
                    self.bound[v] = None;
                    if stop {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    fn length_compatible(&self, v: usize, len: usize) -> bool {
        if !self.pruning {
            return true;
        }
        let class_ok = self.same_len[v]
            .iter()
            .all(|&w| self.bound[w].is_none_or(|b| b.len == len));
        class_ok
            && self.edges[v]
                .iter()
                .all(|edge| match self.bound[edge.other] {
                    None => true,
                    Some(b) => {
                        let profile = edge.kind.length_profile();
                        let ok = if edge.is_left {
                            profile.admits(len, b.len)
                        } else {
                            profile.admits(b.len, len)
                        };
                        ok && !(edge.kind == RelationKind::ComPlus && (len == 0 || b.len == 0))
                    }
                })
    }

    fn constraints_hold(&self, v: usize) -> bool {
        let mine = self.value(self.bound[v].unwrap());
        self.edges[v].iter().all(|edge| {
            if edge.other == v {
                return relation_holds(edge.kind, mine, mine);
            }
            match self.bound[edge.other] {
                None => true,
                Some(b) => {
                    let theirs = self.value(b);
                    if edge.is_left {
                        relation_holds(edge.kind, mine, theirs)
                    } else {
                        relation_holds(edge.kind, theirs, mine)
                    }
                }
            }
        })
    }

    fn record(&mut self) {
        self.found += 1;
        if self.first.is_none() {
            let mut h = Substitution::new();
            for (i, &var) in self.vars.iter().enumerate() {
                let b = self.bound[i].expect("all variables bound at a solution");
                h.insert(var, Word(self.value(b).to_vec()));
            }
            self.first = Some(h);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_relational_pattern;

    fn rp(text: &str) -> RelationalPattern {
        parse_relational_pattern(text).unwrap()
    }

    const BETA: &str = "alphabet:abc; pattern: x1 c c x2; rel: rev(x1,x2)";
    const ALPHA: &str = "alphabet:ab; pattern: x1 a a x2 b x3; rel: eq(x1,x2)";

    #[test]
    fn reversal_witness() {
        let h = match_word(&"abccba".into(), &rp(BETA), Mode::NonErasing)
            .unwrap()
            .unwrap();
        assert_eq!(h, Substitution::from_pairs([(1, "ab"), (2, "ba")]));
        assert!(match_word(&"abccab".into(), &rp(BETA), Mode::NonErasing)
            .unwrap()
            .is_none());
    }

    #[test]
    fn erasing_versus_non_erasing() {
        let a = rp(ALPHA);
        let h = match_word(&"aab".into(), &a, Mode::Erasing)
            .unwrap()
            .unwrap();
        assert!(h.iter().all(|(_, w)| w.is_empty()));
        assert!(!is_member(&"aab".into(), &a, Mode::NonErasing).unwrap());
        assert!(is_member(&"bbaabbba".into(), &a, Mode::NonErasing).unwrap());
    }

    #[test]
    fn system_of_two_equations() {
        let p = MatchProblem::new(
            vec![
                MatchEquation::new(vec![PatternSymbol::var(1), PatternSymbol::var(2)], "ab"),
                MatchEquation::new(vec![PatternSymbol::var(2), PatternSymbol::var(1)], "ba"),
            ],
            [],
            Mode::NonErasing,
        );
        let h = solve_system(&p).unwrap().unwrap();
        assert_eq!(h, Substitution::from_pairs([(1, "a"), (2, "b")]));
    }

    #[test]
    fn contradictory_system() {
        let p = MatchProblem::new(
            vec![
                MatchEquation::new(vec![PatternSymbol::var(1)], "a"),
                MatchEquation::new(vec![PatternSymbol::var(2)], "b"),
            ],
            [Constraint::new(RelationKind::Eq, Var(1), Var(2))],
            Mode::Erasing,
        );
        assert_eq!(solve_system(&p).unwrap(), None);
    }

    #[test]
    fn witness_counts() {
        assert_eq!(
            count_witnesses(&"abccba".into(), &rp(BETA), Mode::NonErasing, 10).unwrap(),
            1
        );
        let ab = rp("alphabet:ab; pattern: a b");
        assert_eq!(
            count_witnesses(&"ab".into(), &ab, Mode::Erasing, 10).unwrap(),
            1
        );
        let free = rp("alphabet:a; pattern: x1 x2");
        assert_eq!(
            count_witnesses(&"aa".into(), &free, Mode::Erasing, 10).unwrap(),
            3
        );
        assert_eq!(
            count_witnesses(&"aa".into(), &free, Mode::Erasing, 2).unwrap(),
            2
        );
    }

    #[test]
    fn budget_is_reported() {
        let p = rp("alphabet:ab; pattern: x1 x2 x3 x4; rel: eq(x1,x4)");
        let opts = MatchOptions {
            length_pruning: false,
            node_budget: 3,
        };
        let res = match_word_with(&Word::from("abababababbb"), &p, Mode::NonErasing, opts);
        assert_eq!(res, Err(Error::BudgetExceeded { budget: 3 }));
    }

    #[test]
    fn foreign_letters_are_errors() {
        assert_eq!(
            match_word(&"abz".into(), &rp(BETA), Mode::Erasing),
            Err(Error::ForeignLetter('z'))
        );
    }
    fn system(
        eqs: &[(&[u32], &str)],
        rels: &[(RelationKind, u32, u32)],
        mode: Mode,
    ) -> MatchProblem {
        MatchProblem::new(
            eqs.iter()
                .map(|(vs, t)| {
                    MatchEquation::new(vs.iter().map(|&v| PatternSymbol::var(v)).collect(), *t)
                })
                .collect(),
            rels.iter()
                .map(|&(k, a, b)| Constraint::new(k, Var(a), Var(b))),
            mode,
        )
    }

    fn both_ways(p: &MatchProblem) -> (bool, bool) {
        let on = solve_system(p).unwrap();
        let off = solve_system_with(
            p,
            MatchOptions {
                length_pruning: false,
                ..MatchOptions::default()
            },
        )
        .unwrap();
        if let Some(h) = &on {
            for eq in &p.equations {
                let image: Vec<char> = eq
                    .lhs
                    .iter()
                    .flat_map(|s| match s {
                        PatternSymbol::Variable(v) => h.get(*v).unwrap().as_slice().to_vec(),
                        PatternSymbol::Terminal(c) => vec![*c],
                    })
                    .collect();
                assert_eq!(image.as_slice(), eq.target.as_slice());
            }
        }
        (on.is_some(), off.is_some())
    }

    #[test]
    fn letter_domains_cross_equations() {
        // x2 lives in a+ only, so its reversed copy x1 cannot take the `#`
        let p = system(
            &[(&[3, 1, 4], "ab#ba"), (&[2, 5], "aaaa")],
            &[(RelationKind::Reversal, 1, 2)],
            Mode::NonErasing,
        );
        assert_eq!(both_ways(&p), (false, false));
        let p = system(
            &[(&[3, 1, 4], "b#aa#b"), (&[2, 5], "aaaa")],
            &[(RelationKind::Reversal, 1, 2)],
            Mode::NonErasing,
        );
        assert_eq!(both_ways(&p), (true, true));
    }

    #[test]
    fn equal_length_classes_reach_through_roots() {
        // 1 and 3 only meet through 2, bound later in another equation
        let p = system(
            &[(&[1, 4, 3], "0###0"), (&[5, 2, 6], "#0#")],
            &[
                (RelationKind::Reversal, 2, 1),
                (RelationKind::Reversal, 2, 3),
                (RelationKind::Eq, 4, 4),
            ],
            Mode::Erasing,
        );
        assert_eq!(both_ways(&p), (true, true));
    }

    #[test]
    fn pruned_systems_agree_with_plain_search() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..600 {
            let mode = if rng.gen_bool(0.5) {
                Mode::Erasing
            } else {
                Mode::NonErasing
            };
            let targets = ["0#0", "00", "#0##", "ab0", "a", ""];
            let mut eqs: Vec<(Vec<u32>, String)> = Vec::new();
            for _ in 0..rng.gen_range(1..=3) {
                let vars = (0..rng.gen_range(1..=3))
                    .map(|_| rng.gen_range(1..=5))
                    .collect();
                eqs.push((vars, targets[rng.gen_range(0..targets.len())].to_string()));
            }
            let used: Vec<u32> = eqs.iter().flat_map(|(v, _)| v.clone()).collect();
            let rels: Vec<(RelationKind, u32, u32)> = (0..rng.gen_range(0..=3))
                .map(|_| {
                    let k = RelationKind::ALL[rng.gen_range(0..9)];
                    (
                        k,
                        used[rng.gen_range(0..used.len())],
                        used[rng.gen_range(0..used.len())],
                    )
                })
                .collect();
            let eq_refs: Vec<(&[u32], &str)> = eqs
                .iter()
                .map(|(v, t)| (v.as_slice(), t.as_str()))
                .collect();
            let p = system(&eq_refs, &rels, mode);
            let (on, off) = both_ways(&p);
            assert_eq!(on, off, "{eqs:?} {rels:?} {mode:?}");
        }
    }
}
