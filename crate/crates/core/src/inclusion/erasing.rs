//! Erasing construction over a symmetric relation (reversal by default) that
//! encodes the accepting computations of a two-counter automaton.
//!
//! `α_A = v v #⁶ v x v y v #⁶ v u v` with `v = 0###0` and `u = 0#⁵0`; `β_A`
//! stacks one `(γ_i, δ_i, η_i)` triple per predicate behind selector variables.
//! Counter configurations use the default encoding `0^{i+1} # 0^{m1+1} # 0^{m2+1}`.

use std::collections::{BTreeMap, BTreeSet};

use super::{
    terminals, vars_to_symbols, Boundary, SigmaAssignment, SimplePredicate, SkeletonItem, VarPool,
};
use crate::error::Result;
use crate::machines::{Transition, TwoCounterAutomaton};
use crate::matcher::{solve_system, MatchEquation, MatchProblem};
use crate::pattern::{
    Alphabet, Constraint, Mode, Pattern, PatternSymbol, RelationalPattern, Var, Word,
};
use crate::relations::RelationKind;

const V: &str = "0###0";
const DELIMITER: &str = "######";

/// Terminal-free patterns `γ`, `δ`, `η` over one variable pool. `σ` satisfies the
/// triple when some `τ` has `τ(γ) = σ(x)`, `τ(δ) = σ(y)` and `τ(η) = target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredicateTriple {
    pub name: String,
    pub gamma: Vec<Var>,
    pub delta: Vec<Var>,
    pub eta: Vec<Var>,
    pub constraints: BTreeSet<Constraint>,
    pub target: Word,
    /// Solve `δ` before `γ`; cheaper when `δ` pins the lengths of `γ`'s variables.
    delta_first: bool,
}

impl PredicateTriple {
    pub fn variables(&self) -> BTreeSet<Var> {
        self.gamma
            .iter()
            .chain(&self.delta)
            .chain(&self.eta)
            .copied()
            .collect()
    }

    /// The same triple with every variable index raised by `offset`.
    pub fn shifted(&self, offset: u32) -> Self {
        let s = |v: &Var| Var(v.0 + offset);
        PredicateTriple {
            name: self.name.clone(),
            gamma: self.gamma.iter().map(s).collect(),
            delta: self.delta.iter().map(s).collect(),
            eta: self.eta.iter().map(s).collect(),
            constraints: self
                .constraints
                .iter()
                .map(|c| Constraint::new(c.kind, s(&c.left), s(&c.right)))
                .collect(),
            target: self.target.clone(),
            delta_first: self.delta_first,
        }
    }

    /// The three equations as one erasing system.
    pub fn problem(&self, sigma: &SigmaAssignment) -> MatchProblem {
        let eta = MatchEquation::new(vars_to_symbols(&self.eta), self.target.clone());
        let gamma = MatchEquation::new(vars_to_symbols(&self.gamma), sigma.x_image.clone());
        let delta = MatchEquation::new(vars_to_symbols(&self.delta), sigma.y_image.clone());
        let equations = if self.delta_first {
            vec![eta, delta, gamma]
        } else {
            vec![eta, gamma, delta]
        };
        MatchProblem::new(equations, self.constraints.iter().copied(), Mode::Erasing)
    }
}

pub fn predicate_satisfied(sigma: &SigmaAssignment, t: &PredicateTriple) -> Result<bool> {
    Ok(solve_system(&t.problem(sigma))?.is_some())
}

/// 1-based indices of all satisfied predicates; predicates are checked in parallel.
pub fn satisfied_predicates(
    sigma: &SigmaAssignment,
    preds: &[PredicateTriple],
) -> Result<Vec<usize>> {
    let threads = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(preds.len().max(1));
    let chunk = preds.len().div_ceil(threads).max(1);
    let results: Vec<Result<Vec<bool>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = preds
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || part.iter().map(|t| predicate_satisfied(sigma, t)).collect())
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("predicate worker panicked"))
            .collect()
    });
    let mut out = Vec::new();
    let mut i = 0;
    for r in results {
        for hit in r? {
            i += 1;
            if hit {
                out.push(i);
            }
        }
    }
    Ok(out)
}

/// True iff some predicate holds; stops at the first hit.
pub fn any_satisfied(sigma: &SigmaAssignment, preds: &[PredicateTriple]) -> Result<bool> {
    for t in preds {
        if predicate_satisfied(sigma, t)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Parameters of the construction: the relation tying copies together and the
/// letters beyond `0` and `#`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErasingConstruction {
    pub kind: RelationKind,
    pub extra_letters: Vec<char>,
}

impl Default for ErasingConstruction {
    fn default() -> Self {
        ErasingConstruction {
            kind: RelationKind::Reversal,
            extra_letters: Vec::new(),
        }
    }
}

struct Eta {
    vars: Vec<Var>,
    hash: Vec<Var>,
    extra: Vec<[Var; 2]>,
}

impl ErasingConstruction {
    pub fn new(kind: RelationKind, extra_letters: Vec<char>) -> Result<Self> {
        let c = ErasingConstruction {
            kind,
            extra_letters,
        };
        Alphabet::new(c.letters())?;
        Ok(c)
    }

    fn letters(&self) -> Vec<char> {
        let mut l = vec!['0', '#'];
        l.extend(&self.extra_letters);
        l
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.letters()).expect("checked on construction")
    }

    /// `0 #⁵ a₁² … aₙ² 0`.
    pub fn u(&self) -> Word {
        let mut s = String::from("0#####");
        for &a in &self.extra_letters {
            s.push(a);
            s.push(a);
        }
        s.push('0');
        Word::from(s)
    }

    pub fn alpha(&self) -> RelationalPattern {
        let u: String = self.u().as_slice().iter().collect();
        let mut syms: Vec<PatternSymbol> = Vec::new();
        syms.extend(terminals(V));
        syms.extend(terminals(V));
        syms.extend(terminals(DELIMITER));
        syms.extend(terminals(V));
        syms.push(PatternSymbol::var(1));
        syms.extend(terminals(V));
        syms.push(PatternSymbol::var(2));
        syms.extend(terminals(V));
        syms.extend(terminals(DELIMITER));
        syms.extend(terminals(V));
        syms.extend(terminals(&u));
        syms.extend(terminals(V));
        RelationalPattern::unconstrained(self.alphabet(), Pattern::new(syms).expect("regular"))
            .expect("letters in alphabet")
    }

    /// `σ(α_A)`.
    pub fn apply_alpha(&self, sigma: &SigmaAssignment) -> Word {
        let u: String = self.u().as_slice().iter().collect();
        let x: String = sigma.x_image.as_slice().iter().collect();
        let y: String = sigma.y_image.as_slice().iter().collect();
        Word::from(format!(
            "{V}{V}{DELIMITER}{V}{x}{V}{y}{V}{DELIMITER}{V}{u}{V}"
        ))
    }

    /// `z ẑ₁…ẑ₅ ż₁₁ ż₁₂ … z'`. The `0` copies hang off `zero_root` (else `z`),
    /// the `#` copies off `hash_root` (else `ẑ₁`).
    fn eta(&self, pool: &mut VarPool, zero_root: Option<Var>, hash_root: Option<Var>) -> Eta {
        let z = pool.fresh();
        let hash = pool.fresh_n(5);
        let extra: Vec<[Var; 2]> = self
            .extra_letters
            .iter()
            .map(|_| [pool.fresh(), pool.fresh()])
            .collect();
        let z2 = pool.fresh();
        match zero_root {
            Some(r) => {
                pool.relate(self.kind, r, z);
                pool.relate(self.kind, r, z2);
            }
            None => pool.relate(self.kind, z, z2),
        }
        let hroot = hash_root.unwrap_or(hash[0]);
        for &h in &hash {
            if h != hroot {
                pool.relate(self.kind, hroot, h);
            }
        }
        for &[a, b] in &extra {
            pool.relate(self.kind, a, b);
        }
        let mut vars = vec![z];
        vars.extend(&hash);
        for pair in &extra {
            vars.extend(pair);
        }
        vars.push(z2);
        Eta { vars, hash, extra }
    }

    fn triple(
        &self,
        name: &str,
        pool: VarPool,
        gamma: Vec<Var>,
        delta: Vec<Var>,
        eta: Eta,
    ) -> PredicateTriple {
        PredicateTriple {
            name: name.to_string(),
            gamma,
            delta,
            eta: eta.vars,
            constraints: pool.constraints,
            target: self.u(),
            delta_first: false,
        }
    }

    /// `σ(x)` contains `###`.
    fn pi1(&self) -> PredicateTriple {
        let mut pool = VarPool::new();
        let gamma = pool.fresh_n(5);
        let delta = pool.fresh_n(1);
        let eta = self.eta(&mut pool, None, None);
        for &h in &gamma[1..4] {
            pool.relate(self.kind, eta.hash[0], h);
        }
        self.triple("bad-form-x", pool, gamma, delta, eta)
    }

    /// `σ(y)` contains `#`.
    fn pi2(&self) -> PredicateTriple {
        let mut pool = VarPool::new();
        let gamma = pool.fresh_n(1);
        let delta = pool.fresh_n(3);
        let eta = self.eta(&mut pool, None, None);
        pool.relate(self.kind, eta.hash[0], delta[1]);
        self.triple("bad-form-y", pool, gamma, delta, eta)
    }

    /// `σ(y)` is a concatenation of three related copies of factors of `σ(x)`.
    fn pi3(&self) -> PredicateTriple {
        let mut pool = VarPool::new();
        let gamma = pool.fresh_n(7);
        let delta = pool.fresh_n(3);
        for k in 0..3 {
            pool.relate(self.kind, gamma[2 * k + 1], delta[k]);
        }
        let eta = self.eta(&mut pool, None, None);
        let mut t = self.triple("short-y", pool, gamma, delta, eta);
        t.delta_first = true;
        t
    }

    /// `σ(x)` contains the letter `extra_letters[k]` (`in_y = false`) or `σ(y)` does.
    fn letter_predicate(&self, k: usize, in_y: bool) -> PredicateTriple {
        let mut pool = VarPool::new();
        let (gamma, delta, marker) = if in_y {
            let gamma = pool.fresh_n(1);
            let delta = pool.fresh_n(3);
            let m = delta[1];
            (gamma, delta, m)
        } else {
            let gamma = pool.fresh_n(3);
            let delta = pool.fresh_n(1);
            let m = gamma[1];
            (gamma, delta, m)
        };
        let eta = self.eta(&mut pool, None, None);
        pool.relate(self.kind, eta.extra[k][0], marker);
        let side = if in_y { "y" } else { "x" };
        self.triple(
            &format!("letter-{}-in-{side}", self.extra_letters[k]),
            pool,
            gamma,
            delta,
            eta,
        )
    }

    /// Terminal-free triple equivalent to `sp` on good-form `σ` with long `σ(y)`.
    ///
    /// # Panics
    /// If the skeleton uses a letter outside the alphabet.
    pub fn simple_to_triple(&self, sp: &SimplePredicate) -> PredicateTriple {
        let mut pool = VarPool::new();
        let mut gamma = Vec::new();
        if sp.l1 == Boundary::AnyWord {
            gamma.push(pool.fresh());
        }
        let mut families: BTreeMap<char, Vec<Var>> = BTreeMap::new();
        let mut class_root: BTreeMap<u8, Var> = BTreeMap::new();
        for item in &sp.skeleton {
            let v = pool.fresh();
            gamma.push(v);
            match *item {
                SkeletonItem::Letter(c) => {
                    assert!(
                        self.letters().contains(&c),
                        "skeleton letter `{c}` not in alphabet"
                    );
                    families.entry(c).or_default().push(v);
                }
                SkeletonItem::Param(k) => match class_root.get(&k) {
                    Some(&r) => pool.relate(self.kind, r, v),
                    None => {
                        class_root.insert(k, v);
                    }
                },
            }
        }
        if sp.l2 == Boundary::AnyWord {
            gamma.push(pool.fresh());
        }
        let mut delta = Vec::new();
        for &r in class_root.values() {
            let d = pool.fresh();
            pool.relate(self.kind, r, d);
            delta.push(d);
        }
        delta.push(pool.fresh());
        for members in families.values() {
            for &m in &members[1..] {
                pool.relate(self.kind, members[0], m);
            }
        }
        let root = |c: char| families.get(&c).map(|m| m[0]);
        let eta = self.eta(&mut pool, root('0'), root('#'));
        for (k, &a) in self.extra_letters.iter().enumerate() {
            if let Some(r) = root(a) {
                pool.relate(self.kind, eta.extra[k][0], r);
            }
        }
        self.triple(&sp.name, pool, gamma, delta, eta)
    }

    /// The simple predicates describing invalid computations of `a`, in order.
    pub fn simple_predicates(&self, a: &TwoCounterAutomaton) -> Vec<SimplePredicate> {
        let n = a.num_states();
        let mut out = vec![
            SimplePredicate::whole("empty", ""),
            SimplePredicate::whole("single-hash", "#"),
            SimplePredicate::whole("double-hash", "##"),
            SimplePredicate::prefix("starts-0", "0"),
            SimplePredicate::prefix("starts-#0", "#0"),
            SimplePredicate::suffix("ends-0", "0"),
            SimplePredicate::suffix("ends-0#", "0#"),
            SimplePredicate::factor("one-field", "##1##"),
            SimplePredicate::factor("two-fields", "##1#2##"),
            SimplePredicate::factor("four-fields", "##1#2#3#0"),
            SimplePredicate::factor("state-too-large", &format!("##{}", "0".repeat(n + 1))),
            SimplePredicate::prefix("initial-state", "##00"),
            SimplePredicate::prefix("initial-counter1", "##1#00"),
            SimplePredicate::prefix("initial-counter2", "##1#2#00"),
        ];
        for q in (0..n).filter(|&q| !a.is_accepting(q)) {
            out.push(SimplePredicate::suffix(
                format!("final-q{q}"),
                &format!("##{}#1#2##", "0".repeat(q + 1)),
            ));
        }
        out.extend([
            SimplePredicate::factor("counter1-jump-up", "#1#2##3#001"),
            SimplePredicate::factor("counter1-jump-down", "100#2##3#1#"),
            SimplePredicate::factor("counter2-jump-up", "#1##2#3#001"),
            SimplePredicate::factor("counter2-jump-down", "100##2#3#1#"),
        ]);
        for t in invalid_steps(a) {
            out.push(SimplePredicate::factor(
                format!(
                    "no-step q{} {} {} -> q{} {:+} {:+}",
                    t.from, t.c1, t.c2, t.to, t.r1, t.r2
                ),
                &step_factor(&t),
            ));
        }
        out
    }

    /// All predicates `π_1 … π_μ` for `a`.
    pub fn predicates(&self, a: &TwoCounterAutomaton) -> Vec<PredicateTriple> {
        let mut local = vec![self.pi1(), self.pi2(), self.pi3()];
        local.extend(
            self.simple_predicates(a)
                .iter()
                .map(|sp| self.simple_to_triple(sp)),
        );
        for k in 0..self.extra_letters.len() {
            local.push(self.letter_predicate(k, false));
            local.push(self.letter_predicate(k, true));
        }
        let mut offset = 0;
        local
            .into_iter()
            .map(|t| {
                let shifted = t.shifted(offset);
                offset += t.variables().len() as u32;
                shifted
            })
            .collect()
    }

    /// `x₁x₁' … x_μx_μ' #⁶ β̂₁ … β̂_μ #⁶ β̈₁ … β̈_μ`.
    pub fn beta(&self, preds: &[PredicateTriple]) -> RelationalPattern {
        let mut pool = VarPool::new();
        let mut syms: Vec<PatternSymbol> = Vec::new();
        let mut sel = Vec::new();
        for _ in preds {
            let (a, b) = (pool.fresh(), pool.fresh());
            syms.push(PatternSymbol::Variable(a));
            syms.push(PatternSymbol::Variable(b));
            pool.relate(self.kind, a, b);
            sel.push(a);
        }
        let mut maps: Vec<BTreeMap<Var, Var>> = vec![BTreeMap::new(); preds.len()];
        let marker = |pool: &mut VarPool, syms: &mut Vec<PatternSymbol>, i: usize| {
            let m = pool.fresh();
            syms.push(PatternSymbol::Variable(m));
            pool.relate(self.kind, sel[i], m);
        };
        syms.extend(terminals(DELIMITER));
        for (i, t) in preds.iter().enumerate() {
            marker(&mut pool, &mut syms, i);
            splice(&mut pool, &mut maps[i], &t.gamma, &mut syms);
            marker(&mut pool, &mut syms, i);
            splice(&mut pool, &mut maps[i], &t.delta, &mut syms);
            marker(&mut pool, &mut syms, i);
        }
        syms.extend(terminals(DELIMITER));
        for (i, t) in preds.iter().enumerate() {
            marker(&mut pool, &mut syms, i);
            splice(&mut pool, &mut maps[i], &t.eta, &mut syms);
            marker(&mut pool, &mut syms, i);
        }
        for (t, map) in preds.iter().zip(&maps) {
            for c in &t.constraints {
                pool.relate(c.kind, map[&c.left], map[&c.right]);
            }
        }
        RelationalPattern::new(
            self.alphabet(),
            Pattern::new(syms).expect("fresh variables"),
            pool.constraints,
        )
        .expect("constraints over spliced variables")
    }
}

fn splice(
    pool: &mut VarPool,
    map: &mut BTreeMap<Var, Var>,
    vars: &[Var],
    syms: &mut Vec<PatternSymbol>,
) {
    for v in vars {
        let w = *map.entry(*v).or_insert_with(|| pool.fresh());
        syms.push(PatternSymbol::Variable(w));
    }
}

/// Every step `(q_i, c1, c2) → (q_j, r1, r2)` that `a` lacks, skipping decrements
/// of a zero counter (no encoded pair of configurations shows one).
pub fn invalid_steps(a: &TwoCounterAutomaton) -> Vec<Transition> {
    let n = a.num_states();
    let mut out = Vec::new();
    for from in 0..n {
        for c1 in 0..=1u8 {
            for c2 in 0..=1u8 {
                for to in 0..n {
                    for r1 in -1..=1i8 {
                        for r2 in -1..=1i8 {
                            if (c1 == 0 && r1 < 0) || (c2 == 0 && r2 < 0) {
                                continue;
                            }
                            let t = Transition::new(from, c1, c2, to, r1, r2);
                            if !a.has_transition(t) {
                                out.push(t);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Counter field before and after a step: a zero counter is `0`, a positive one
/// `00` followed by the class parameter.
fn counter_fields(flag: u8, change: i8, class: char) -> (String, String) {
    if flag == 0 {
        (
            "0".into(),
            if change > 0 { "00".into() } else { "0".into() },
        )
    } else {
        let after = match change {
            -1 => "0",
            0 => "00",
            _ => "000",
        };
        (format!("00{class}"), format!("{after}{class}"))
    }
}

/// `##0^{i+1}#F1#F2##0^{j+1}#F1'#F2'##`.
fn step_factor(t: &Transition) -> String {
    let (f1, g1) = counter_fields(t.c1, t.r1, '1');
    let (f2, g2) = counter_fields(t.c2, t.r2, '2');
    format!(
        "##{}#{f1}#{f2}##{}#{g1}#{g2}##",
        "0".repeat(t.from + 1),
        "0".repeat(t.to + 1)
    )
}

pub fn build_alpha_a() -> RelationalPattern {
    ErasingConstruction::default().alpha()
}

pub fn build_predicates(a: &TwoCounterAutomaton) -> Vec<PredicateTriple> {
    ErasingConstruction::default().predicates(a)
}

pub fn build_beta_a(a: &TwoCounterAutomaton) -> RelationalPattern {
    let c = ErasingConstruction::default();
    c.beta(&c.predicates(a))
}

pub fn simple_to_triple(sp: &SimplePredicate) -> PredicateTriple {
    ErasingConstruction::default().simple_to_triple(sp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcher::{count_witnesses, is_member};

    fn toy() -> TwoCounterAutomaton {
        TwoCounterAutomaton::parse("states: 2\naccept: q1\nq0 0 0 -> q1 1 0\n").unwrap()
    }

    fn terminal_text(rp: &RelationalPattern) -> String {
        rp.pattern()
            .symbols()
            .iter()
            .map(|s| match s {
                PatternSymbol::Terminal(c) => *c,
                PatternSymbol::Variable(_) => '|',
            })
            .collect()
    }

    #[test]
    fn alpha_shape() {
        let a = build_alpha_a();
        let t = terminal_text(&a);
        assert_eq!(t.matches("######").count(), 2);
        assert_eq!(a.variables(), vec![Var(1), Var(2)]);
        assert_eq!(a.pattern().terminal_count(), 5 * 7 + 7 + 12);
        assert!(a.constraints().is_empty());
        let sigma = SigmaAssignment::new("##0", "00");
        let rp_image = crate::semantics::apply(
            &crate::Substitution::from_pairs([(1, "##0"), (2, "00")]),
            &a,
        )
        .unwrap();
        assert_eq!(ErasingConstruction::default().apply_alpha(&sigma), rp_image);
    }

    #[test]
    fn eta_has_a_single_solution() {
        let c = ErasingConstruction::default();
        for t in [c.pi1(), c.pi2(), c.pi3()] {
            let eta_vars: BTreeSet<Var> = t.eta.iter().copied().collect();
            let cons: Vec<Constraint> = t
                .constraints
                .iter()
                .filter(|k| eta_vars.contains(&k.left) && eta_vars.contains(&k.right))
                .copied()
                .collect();
            let rp = RelationalPattern::new(
                c.alphabet(),
                Pattern::new(vars_to_symbols(&t.eta)).unwrap(),
                cons,
            )
            .unwrap();
            assert_eq!(count_witnesses(&c.u(), &rp, Mode::Erasing, 5).unwrap(), 1);
        }
    }

    #[test]
    fn bad_form_predicates() {
        let preds = build_predicates(&toy());
        let yes = SigmaAssignment::new("0###0", "00");
        assert!(predicate_satisfied(&yes, &preds[0]).unwrap());
        assert!(!predicate_satisfied(&SigmaAssignment::new("0##0", "00"), &preds[0]).unwrap());
        assert!(predicate_satisfied(&SigmaAssignment::new("0", "0#0"), &preds[1]).unwrap());
        assert!(!predicate_satisfied(&SigmaAssignment::new("#", "000"), &preds[1]).unwrap());
    }

    #[test]
    fn short_y_predicate() {
        let preds = build_predicates(&toy());
        assert!(
            predicate_satisfied(&SigmaAssignment::new("##00#0#0##", "000"), &preds[2]).unwrap()
        );
        assert!(
            !predicate_satisfied(&SigmaAssignment::with_long_y("##00#0#0##"), &preds[2]).unwrap()
        );
    }

    #[test]
    fn empty_skeleton_triple() {
        let t = simple_to_triple(&SimplePredicate::whole("empty", ""));
        assert!(t.gamma.is_empty());
        for w in Alphabet::from_letters("0#").words_up_to(3) {
            let hit = predicate_satisfied(&SigmaAssignment::with_long_y(w.clone()), &t).unwrap();
            assert_eq!(hit, w.is_empty(), "{w}");
        }
        let free = simple_to_triple(&SimplePredicate::factor("any", ""));
        assert_eq!(free.gamma.len(), 2);
        assert!(predicate_satisfied(&SigmaAssignment::with_long_y("0#0"), &free).unwrap());
    }

    #[test]
    fn witnesses_fix_eta() {
        let preds = build_predicates(&toy());
        let sigma = SigmaAssignment::with_long_y("##0#0#0##00");
        let mut hits = 0;
        for t in &preds {
            if let Some(tau) = solve_system(&t.problem(&sigma)).unwrap() {
                hits += 1;
                let img: String = t
                    .eta
                    .iter()
                    .map(|v| tau.get(*v).unwrap().to_string())
                    .collect();
                assert_eq!(img, "0#####0");
                assert_eq!(tau.get(t.eta[0]).unwrap().to_string(), "0");
            }
        }
        assert!(hits > 0);
    }

    #[test]
    fn good_structure_word_escapes_structure_predicates() {
        let preds = build_predicates(&toy());
        let sigma = SigmaAssignment::with_long_y("##0#0#0##");
        for t in &preds[..13] {
            assert!(!predicate_satisfied(&sigma, t).unwrap(), "{}", t.name);
        }
    }

    #[test]
    fn transition_predicates() {
        let a = toy();
        let steps = invalid_steps(&a);
        // 2 states, 4 flag pairs, 2 targets; feasible changes: 4 (zero,zero), 6, 6, 9
        assert_eq!(steps.len(), 2 * 2 * (4 + 6 + 6 + 9) - 1);
        assert!(steps.iter().all(|t| !a.has_transition(*t)));
        let t = Transition::new(0, 0, 1, 1, 1, 0);
        assert_eq!(step_factor(&t), "##0#0#002##00#00#002##");
        let sp = ErasingConstruction::default().simple_predicates(&a);
        let names: Vec<&str> = sp.iter().map(|p| p.name.as_str()).collect();
        assert_eq!(names[0], "empty");
        assert_eq!(
            names.iter().filter(|n| n.starts_with("no-step")).count(),
            steps.len()
        );
        assert_eq!(names.iter().filter(|n| n.starts_with("final-")).count(), 1);
    }

    #[test]
    fn pools_are_disjoint() {
        let preds = build_predicates(&toy());
        let mut seen = BTreeSet::new();
        for t in &preds {
            for v in t.variables() {
                assert!(seen.insert(v));
            }
            for c in &t.constraints {
                assert!(t.variables().contains(&c.left) && t.variables().contains(&c.right));
            }
        }
    }

    #[test]
    fn beta_shape() {
        let c = ErasingConstruction::default();
        let preds = c.predicates(&toy());
        let beta = c.beta(&preds);
        assert_eq!(terminal_text(&beta).matches("######").count(), 2);
        assert_eq!(beta.pattern().terminal_count(), 12);
        assert!(beta.pattern().is_normal());
        let inner: usize = preds.iter().map(|t| t.variables().len()).sum();
        assert_eq!(beta.variables().len(), inner + 7 * preds.len());
        assert_eq!(
            beta.relation_kinds(),
            BTreeSet::from([RelationKind::Reversal])
        );
    }

    #[test]
    fn membership_follows_predicates_on_a_small_beta() {
        let c = ErasingConstruction::default();
        let all = c.predicates(&toy());
        let preds = vec![all[0].clone(), all[1].clone()];
        let beta = c.beta(&preds);
        for (x, y) in [("0###", ""), ("", "#"), ("0#0", "00")] {
            let sigma = SigmaAssignment::new(x, y);
            let expected = preds
                .iter()
                .any(|t| predicate_satisfied(&sigma, t).unwrap());
            let w = c.apply_alpha(&sigma);
            assert_eq!(
                is_member(&w, &beta, Mode::Erasing).unwrap(),
                expected,
                "{x} {y}"
            );
        }
    }

    #[test]
    fn extra_letters() {
        let c = ErasingConstruction::new(RelationKind::Reversal, vec!['a']).unwrap();
        assert_eq!(c.u(), Word::from("0#####aa0"));
        let preds = c.predicates(&toy());
        let n = preds.len();
        assert!(predicate_satisfied(&SigmaAssignment::new("0a", ""), &preds[n - 2]).unwrap());
        assert!(!predicate_satisfied(&SigmaAssignment::new("0#", ""), &preds[n - 2]).unwrap());
        assert!(predicate_satisfied(&SigmaAssignment::new("", "a"), &preds[n - 1]).unwrap());
        assert!(ErasingConstruction::new(RelationKind::Reversal, vec!['#']).is_err());
    }
}
