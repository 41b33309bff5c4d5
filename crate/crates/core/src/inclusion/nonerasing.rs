//! Non-erasing construction over abelian equivalence for the universal Turing
//! machine `U₁₅,₂`.
//!
//! `α = 0^{μ+1} #⁵ 0^μ # 0^μ #⁵ t v 0α₁0 v 0α₂0 v t` with `v = 0####0`,
//! `α₁ = ## enc(I) ## x # 0⁸ ##` and `α₂ = y 0 0`; `β` selects one
//! `(γ_i, δ_i)` pair through the blocks of related variables `x_{i,1..13}`.
//! The stock predicates handle bad form and short `y`; further predicates are
//! supplied by the caller, typically through [`ne_simple_to_pair`].

use std::collections::{BTreeMap, BTreeSet};

use super::{terminals, Boundary, SigmaAssignment, SimplePredicate, SkeletonItem, VarPool};
use crate::error::Result;
use crate::machines::{utm_encode_config, UtmConfiguration};
use crate::matcher::{solve_system, MatchEquation, MatchProblem};
use crate::pattern::{
    Alphabet, Constraint, Mode, Pattern, PatternSymbol, RelationalPattern, Var, Word,
};
use crate::relations::RelationKind;

const V: &str = "0####0";
const DELIMITER: &str = "#####";
const KIND: RelationKind = RelationKind::AbelianEq;

/// Patterns `γ`, `δ` (terminals allowed) over one variable pool. `h` satisfies the
/// pair when some non-erasing `τ` has `τ(γ) = h(0α₁0)` and `τ(δ) = h(0α₂0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredicatePair {
    pub name: String,
    pub gamma: Vec<PatternSymbol>,
    pub delta: Vec<PatternSymbol>,
    pub constraints: BTreeSet<Constraint>,
    delta_first: bool,
}

impl PredicatePair {
    pub fn variables(&self) -> BTreeSet<Var> {
        self.gamma
            .iter()
            .chain(&self.delta)
            .filter_map(|s| s.as_var())
            .collect()
    }

    pub fn problem(&self, gamma_target: &Word, delta_target: &Word) -> MatchProblem {
        let g = MatchEquation::new(self.gamma.clone(), gamma_target.clone());
        let d = MatchEquation::new(self.delta.clone(), delta_target.clone());
        let equations = if self.delta_first {
            vec![d, g]
        } else {
            vec![g, d]
        };
        MatchProblem::new(
            equations,
            self.constraints.iter().copied(),
            Mode::NonErasing,
        )
    }
}

fn var(v: Var) -> PatternSymbol {
    PatternSymbol::Variable(v)
}

/// `π₁`: `h(0α₁0)` contains `###`; `π₂`: `h(0α₂0)` contains `#`;
/// `π₃`: `h(α₂)` is short compared to the `0`-runs of `h(α₁)`.
pub fn prop6_base_predicates() -> Vec<PredicatePair> {
    let mut out = Vec::new();

    let mut pool = VarPool::new();
    let (y1, y2, yh) = (pool.fresh(), pool.fresh(), pool.fresh());
    let mut gamma = vec![var(y1)];
    gamma.extend(terminals("###"));
    gamma.push(var(y2));
    let delta: Vec<PatternSymbol> = terminals("0")
        .chain([var(yh)])
        .chain(terminals("0"))
        .collect();
    out.push(PredicatePair {
        name: "bad-form-x".into(),
        gamma,
        delta,
        constraints: pool.constraints,
        delta_first: false,
    });

    let mut pool = VarPool::new();
    let (y, d1, d2) = (pool.fresh(), pool.fresh(), pool.fresh());
    out.push(PredicatePair {
        name: "bad-form-y".into(),
        gamma: terminals("0")
            .chain([var(y)])
            .chain(terminals("0"))
            .collect(),
        delta: vec![var(d1), PatternSymbol::Terminal('#'), var(d2)],
        constraints: pool.constraints,
        delta_first: false,
    });

    let mut pool = VarPool::new();
    let g = pool.fresh_n(7);
    let d = pool.fresh_n(3);
    for k in 0..3 {
        pool.relate(KIND, g[2 * k + 1], d[k]);
    }
    let mut delta = vec![PatternSymbol::Terminal('0')];
    delta.extend(d.iter().map(|&v| var(v)));
    out.push(PredicatePair {
        name: "short-y".into(),
        gamma: g.iter().map(|&v| var(v)).collect(),
        delta,
        constraints: pool.constraints,
        delta_first: true,
    });
    out
}

/// Pair equivalent to `sp` read on `h(0α₁0)`: an `AnyWord` side becomes a fresh
/// variable, an `EmptyOnly` side the framing `0`; parameters become related
/// variables, one copy of each class goes into `δ = 0 θ ŷ 0`.
pub fn ne_simple_to_pair(sp: &SimplePredicate) -> PredicatePair {
    let mut pool = VarPool::new();
    let mut gamma = Vec::new();
    let side = |pool: &mut VarPool, b: Boundary| match b {
        Boundary::AnyWord => var(pool.fresh()),
        Boundary::EmptyOnly => PatternSymbol::Terminal('0'),
    };
    gamma.push(side(&mut pool, sp.l1));
    let mut class_root: BTreeMap<u8, Var> = BTreeMap::new();
    for item in &sp.skeleton {
        match *item {
            SkeletonItem::Letter(c) => gamma.push(PatternSymbol::Terminal(c)),
            SkeletonItem::Param(k) => {
                let v = pool.fresh();
                gamma.push(var(v));
                match class_root.get(&k) {
                    Some(&r) => pool.relate(KIND, r, v),
                    None => {
                        class_root.insert(k, v);
                    }
                }
            }
        }
    }
    gamma.push(side(&mut pool, sp.l2));
    let mut delta = vec![PatternSymbol::Terminal('0')];
    for &r in class_root.values() {
        let d = pool.fresh();
        pool.relate(KIND, r, d);
        delta.push(var(d));
    }
    delta.push(var(pool.fresh()));
    delta.push(PatternSymbol::Terminal('0'));
    PredicatePair {
        name: sp.name.clone(),
        gamma,
        delta,
        constraints: pool.constraints,
        delta_first: false,
    }
}

#[derive(Debug, Clone)]
pub struct Prop6Construction {
    pub start: UtmConfiguration,
    pub predicates: Vec<PredicatePair>,
    pub alpha: RelationalPattern,
    pub beta: RelationalPattern,
    /// `ψ(r₁β̂₁ … r_μβ̂_μ r_{μ+1})` with every variable mapped to `0`.
    pub t: Word,
    /// `ψ(β̂_i)` for each `i`.
    pub psi_blocks: Vec<Word>,
}

fn alphabet() -> Alphabet {
    Alphabet::from_letters("0#")
}

fn psi(syms: &[PatternSymbol]) -> String {
    syms.iter()
        .map(|s| match s {
            PatternSymbol::Terminal(c) => *c,
            PatternSymbol::Variable(_) => '0',
        })
        .collect()
}

pub fn build_prop6(start: UtmConfiguration, predicates: &[PredicatePair]) -> Prop6Construction {
    let mu = predicates.len();
    let mut pool = VarPool::new();
    let mut syms: Vec<PatternSymbol> = Vec::new();
    let (a1, b1) = (pool.fresh(), pool.fresh());
    syms.extend([var(a1), var(b1)]);
    syms.extend(terminals(DELIMITER));
    let a2 = pool.fresh();
    syms.push(var(a2));
    let mut blocks: Vec<Vec<Var>> = Vec::new();
    for _ in 0..mu {
        let x = pool.fresh();
        syms.push(var(x));
        blocks.push(vec![x]);
    }
    let b2 = pool.fresh();
    syms.push(var(b2));
    syms.extend(terminals(DELIMITER));
    pool.relate(KIND, a1, a2);
    pool.relate(KIND, b1, b2);

    let mut psi_blocks = Vec::new();
    let mut t = String::new();
    let mut renamed: Vec<Constraint> = Vec::new();
    for (i, p) in predicates.iter().enumerate() {
        let r = pool.fresh();
        syms.push(var(r));
        t.push('0');
        let mut hat: Vec<PatternSymbol> = Vec::new();
        let mut map: BTreeMap<Var, Var> = BTreeMap::new();
        let mut frame = |pool: &mut VarPool, hat: &mut Vec<PatternSymbol>| {
            hat.push(PatternSymbol::Terminal('0'));
            for _ in 0..4 {
                let x = pool.fresh();
                hat.push(var(x));
                blocks[i].push(x);
            }
            hat.push(PatternSymbol::Terminal('0'));
        };
        let mut splice =
            |pool: &mut VarPool, hat: &mut Vec<PatternSymbol>, part: &[PatternSymbol]| {
                for s in part {
                    hat.push(match s {
                        PatternSymbol::Variable(v) => {
                            var(*map.entry(*v).or_insert_with(|| pool.fresh()))
                        }
                        t => *t,
                    });
                }
            };
        frame(&mut pool, &mut hat);
        splice(&mut pool, &mut hat, &p.gamma);
        frame(&mut pool, &mut hat);
        splice(&mut pool, &mut hat, &p.delta);
        frame(&mut pool, &mut hat);
        for c in &p.constraints {
            renamed.push(Constraint::new(c.kind, map[&c.left], map[&c.right]));
        }
        let image = psi(&hat);
        t.push_str(&image);
        psi_blocks.push(Word::from(image));
        syms.extend(hat);
    }
    let last = pool.fresh();
    syms.push(var(last));
    t.push('0');
    for block in &blocks {
        for &a in block {
            for &b in block {
                if a != b {
                    pool.relate(KIND, a, b);
                }
            }
        }
    }
    pool.constraints.extend(renamed);
    let beta = RelationalPattern::new(
        alphabet(),
        Pattern::new(syms).expect("fresh variables"),
        pool.constraints,
    )
    .expect("constraints over placed variables");

    let mut a: Vec<PatternSymbol> = Vec::new();
    a.extend(terminals(&"0".repeat(mu + 1)));
    a.extend(terminals(DELIMITER));
    a.extend(terminals(&format!("{0}#{0}", "0".repeat(mu))));
    a.extend(terminals(DELIMITER));
    a.extend(terminals(&t));
    a.extend(terminals(V));
    a.extend(terminals(&format!("0##{}##", utm_encode_config(start))));
    a.push(PatternSymbol::var(1));
    a.extend(terminals(&format!("#{}##0", "0".repeat(8))));
    a.extend(terminals(V));
    a.extend(terminals("0"));
    a.push(PatternSymbol::var(2));
    a.extend(terminals("000"));
    a.extend(terminals(V));
    a.extend(terminals(&t));
    let alpha =
        RelationalPattern::unconstrained(alphabet(), Pattern::new(a).expect("two variables"))
            .expect("letters in alphabet");

    Prop6Construction {
        start,
        predicates: predicates.to_vec(),
        alpha,
        beta,
        t: Word::from(t),
        psi_blocks,
    }
}

impl Prop6Construction {
    /// `h(0α₁0)`.
    pub fn alpha1_image(&self, h: &SigmaAssignment) -> Word {
        let x: String = h.x_image.as_slice().iter().collect();
        Word::from(format!(
            "0##{}##{x}#{}##0",
            utm_encode_config(self.start),
            "0".repeat(8)
        ))
    }

    /// `h(0α₂0)`.
    pub fn alpha2_image(&self, h: &SigmaAssignment) -> Word {
        let y: String = h.y_image.as_slice().iter().collect();
        Word::from(format!("0{y}000"))
    }

    /// `h(α)`.
    pub fn apply_alpha(&self, h: &SigmaAssignment) -> Word {
        let mu = self.predicates.len();
        let t: String = self.t.as_slice().iter().collect();
        let a1: String = self.alpha1_image(h).as_slice().iter().collect();
        let a2: String = self.alpha2_image(h).as_slice().iter().collect();
        let z = "0".repeat(mu);
        Word::from(format!(
            "0{z}{DELIMITER}{z}#{z}{DELIMITER}{t}{V}{a1}{V}{a2}{V}{t}"
        ))
    }

    /// `h(0α₁0)` contains `###` or `h(0α₂0)` contains `#`.
    pub fn bad_form(&self, h: &SigmaAssignment) -> bool {
        self.alpha1_image(h).contains_factor("###") || self.alpha2_image(h).contains_factor("#")
    }

    pub fn predicate_satisfied(&self, h: &SigmaAssignment, p: &PredicatePair) -> Result<bool> {
        let problem = p.problem(&self.alpha1_image(h), &self.alpha2_image(h));
        Ok(solve_system(&problem)?.is_some())
    }

    /// Every `ψ(β̂_i)` and `t` begin and end with `0` and avoid `####`.
    pub fn block_shape_holds(&self) -> bool {
        self.psi_blocks.iter().chain([&self.t]).all(|w| {
            let s = w.as_slice();
            s.first() == Some(&'0') && s.last() == Some(&'0') && !w.contains_factor("####")
        })
    }
}

pub fn build_alpha_prop6(start: UtmConfiguration) -> RelationalPattern {
    build_prop6(start, &prop6_base_predicates()).alpha
}

pub fn build_beta_prop6(start: UtmConfiguration) -> RelationalPattern {
    build_prop6(start, &prop6_base_predicates()).beta
}
