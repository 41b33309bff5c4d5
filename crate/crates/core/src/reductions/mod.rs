//! 3-SAT to membership reductions over the alphabet `{1, #}`.
//!
//! Classical constructions repeat variables. Here every repeated occurrence is a
//! fresh variable constrained towards the first one (its base).

pub mod cnf;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use cnf::{sat_brute_force, CnfFormula, Literal};

use crate::error::Error;
use crate::matcher;
use crate::pattern::{
    Alphabet, Constraint, Mode, Pattern, PatternSymbol, RelationalPattern, Var, Word,
};
use crate::relations::RelationKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("malformed formula: {0}")]
    MalformedClause(String),
    #[error("clause {0} repeats a literal, which this variant does not accept")]
    RepeatedLiteral(usize),
    #[error("variant {variant} does not accept relation {kind}")]
    KindMismatch {
        variant: ReductionVariant,
        kind: RelationKind,
    },
    #[error("brute force is limited to {max} variables, got {0}", max = cnf::BRUTE_FORCE_MAX_VARS)]
    TooManyVariables(u32),
    #[error("DIMACS line {0}: {1}")]
    Dimacs(usize, String),
    #[error(transparent)]
    Match(#[from] Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReductionVariant {
    /// Non-erasing, blocks `1^3`, `1^7`, `1^4`.
    AngluinNE,
    /// Erasing, blocks `1`, `1^7`, `1^2`.
    JiangE,
    /// Non-erasing commutation, clause blocks `1^10#1^10#1^10`.
    CommuteNE,
    ComPlusE,
    /// Erasing `comstar`, clause blocks `1` and no filler variables.
    ComStarE,
    OneSidedStarE,
    OneSidedSubseqE,
    OneSidedStarNE,
    OneSidedSubseqNE,
}

impl ReductionVariant {
    pub const ALL: [ReductionVariant; 9] = [
        ReductionVariant::AngluinNE,
        ReductionVariant::JiangE,
        ReductionVariant::CommuteNE,
        ReductionVariant::ComPlusE,
        ReductionVariant::ComStarE,
        ReductionVariant::OneSidedStarE,
        ReductionVariant::OneSidedSubseqE,
        ReductionVariant::OneSidedStarNE,
        ReductionVariant::OneSidedSubseqNE,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReductionVariant::AngluinNE => "angluin-ne",
            ReductionVariant::JiangE => "jiang-e",
            ReductionVariant::CommuteNE => "commute-ne",
            ReductionVariant::ComPlusE => "complus-e",
            ReductionVariant::ComStarE => "comstar-e",
            ReductionVariant::OneSidedStarE => "onesided-star-e",
            ReductionVariant::OneSidedSubseqE => "onesided-ssq-e",
            ReductionVariant::OneSidedStarNE => "onesided-star-ne",
            ReductionVariant::OneSidedSubseqNE => "onesided-ssq-ne",
        }
    }

    pub fn mode(self) -> Mode {
        match self {
            ReductionVariant::AngluinNE
            | ReductionVariant::CommuteNE
            | ReductionVariant::OneSidedStarNE
            | ReductionVariant::OneSidedSubseqNE => Mode::NonErasing,
            _ => Mode::Erasing,
        }
    }

    /// Relation kinds the variant can be instantiated with; the first is the default.
    pub fn kinds(self) -> &'static [RelationKind] {
        use RelationKind::*;
        match self {
            ReductionVariant::AngluinNE | ReductionVariant::JiangE => {
                &[Eq, LenEq, Subseq, AbelianEq, AlphaPerm, Reversal, Star]
            }
            ReductionVariant::CommuteNE => &[ComPlus, ComStar],
            ReductionVariant::ComPlusE => &[ComPlus],
            ReductionVariant::ComStarE => &[ComStar],
            ReductionVariant::OneSidedStarE | ReductionVariant::OneSidedStarNE => &[Star],
            ReductionVariant::OneSidedSubseqE | ReductionVariant::OneSidedSubseqNE => &[Subseq],
        }
    }

    /// Whether clauses must consist of three distinct literals.
    pub fn needs_distinct_literals(self) -> bool {
        matches!(
            self,
            ReductionVariant::CommuteNE | ReductionVariant::ComPlusE | ReductionVariant::ComStarE
        )
    }
}

impl fmt::Display for ReductionVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReductionVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ReductionVariant::ALL
            .iter()
            .copied()
            .find(|v| v.name() == s)
            .ok_or_else(|| format!("unknown reduction variant `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionInstance {
    pub variant: ReductionVariant,
    pub kind: RelationKind,
    pub word: Word,
    pub pattern: RelationalPattern,
    pub mode: Mode,
}

// Allocates variables in order of appearance, so the result is in normal form.
struct Builder {
    symbols: Vec<PatternSymbol>,
    constraints: Vec<Constraint>,
    next: u32,
}

impl Builder {
    fn new() -> Self {
        Builder {
            symbols: Vec::new(),
            constraints: Vec::new(),
            next: 1,
        }
    }

    fn lit(&mut self, s: &str) {
        self.symbols.extend(s.chars().map(PatternSymbol::Terminal));
    }

    fn var(&mut self) -> Var {
        let v = Var(self.next);
        self.next += 1;
        self.symbols.push(PatternSymbol::Variable(v));
        v
    }

    // A fresh occurrence related to `base`, in both directions when asked.
    fn copy(&mut self, kind: RelationKind, base: Var, both: bool) -> Var {
        let v = self.var();
        self.constraints.push(Constraint::new(kind, v, base));
        if both {
            self.constraints.push(Constraint::new(kind, base, v));
        }
        v
    }

    fn finish(self) -> RelationalPattern {
        RelationalPattern::new(
            Alphabet::from_letters("1#"),
            Pattern::new(self.symbols).expect("generated patterns are regular"),
            self.constraints,
        )
        .expect("generated constraints are bound")
    }
}

fn ones(n: usize) -> String {
    "1".repeat(n)
}

// u_i and v_i for each variable, in the order the first part of the pattern introduces them.
struct Selectors {
    u: Vec<Var>,
    v: Vec<Var>,
}

impl Selectors {
    fn of(&self, lit: Literal, lemma_style: bool) -> Var {
        let i = lit.var as usize - 1;
        // The classical construction maps X_i to v_i and ¬X_i to u_i; the
        // commutation constructions map X_i to u_i.
        match (lemma_style, lit.negated) {
            (true, false) | (false, true) => self.v[i],
            (true, true) | (false, false) => self.u[i],
        }
    }
}

fn selector_blocks(b: &mut Builder, m: u32, sep: &str) -> Selectors {
    let mut sel = Selectors {
        u: Vec::new(),
        v: Vec::new(),
    };
    for i in 0..m {
        if i > 0 {
            b.lit(sep);
        }
        sel.u.push(b.var());
        sel.v.push(b.var());
    }
    sel
}

pub fn generate(
    variant: ReductionVariant,
    kind: Option<RelationKind>,
    phi: &CnfFormula,
) -> Result<ReductionInstance, ReductionError> {
    let kind = match kind {
        None => variant.kinds()[0],
        Some(k) if variant.kinds().contains(&k) => k,
        Some(k) => return Err(ReductionError::KindMismatch { variant, kind: k }),
    };
    if variant.needs_distinct_literals() {
        if let Some(j) = phi
            .clauses()
            .iter()
            .position(|c| c[0] == c[1] || c[0] == c[2] || c[1] == c[2])
        {
            return Err(ReductionError::RepeatedLiteral(j + 1));
        }
    }
    let m = phi.num_vars();
    let n = phi.clauses().len();
    let both = matches!(kind, RelationKind::Subseq | RelationKind::Star);
    let mut b = Builder::new();
    let mut word = String::new();

    match variant {
        ReductionVariant::AngluinNE | ReductionVariant::JiangE => {
            let (s, t, w, pad) = if variant == ReductionVariant::AngluinNE {
                (3, 7, 4, 0)
            } else {
                (1, 7, 2, 4)
            };
            word.push('#');
            for _ in 0..m {
                word.push_str(&ones(s));
                word.push('#');
            }
            for _ in 0..n {
                word.push_str(&ones(t));
                word.push('#');
            }
            for _ in 0..n {
                word.push_str(&ones(w));
                word.push('#');
            }

            b.lit("#");
            let sel = selector_blocks(&mut b, m, "#");
            b.lit("#");
            let mut zs = Vec::new();
            for clause in phi.clauses() {
                b.lit(&ones(pad));
                for &lit in clause {
                    b.copy(kind, sel.of(lit, true), both);
                }
                zs.push(b.var());
                b.lit("#");
            }
            for z in zs {
                b.copy(kind, z, both);
                b.var();
                b.lit("#");
            }
        }
        ReductionVariant::CommuteNE | ReductionVariant::ComPlusE | ReductionVariant::ComStarE => {
            let filler = variant != ReductionVariant::ComStarE;
            let t = if filler {
                format!("{0}#{0}#{0}", ones(10))
            } else {
                "1".to_string()
            };
            word.push_str("##");
            for _ in 0..m {
                word.push_str("1#1##");
            }
            for _ in 0..n {
                word.push_str(&t);
                word.push_str("##");
            }

            b.lit("##");
            let sel = selector_blocks(&mut b, m, "##");
            b.lit("##");
            for clause in phi.clauses() {
                for &lit in clause {
                    if filler {
                        b.var();
                    }
                    b.copy(kind, sel.of(lit, false), false);
                }
                if filler {
                    b.var();
                }
                b.lit("##");
            }
        }
        ReductionVariant::OneSidedStarE
        | ReductionVariant::OneSidedSubseqE
        | ReductionVariant::OneSidedStarNE
        | ReductionVariant::OneSidedSubseqNE => {
            let (s, t, filler, lemma_style) = match variant {
                ReductionVariant::OneSidedStarE | ReductionVariant::OneSidedSubseqE => {
                    (1, 1, false, false)
                }
                ReductionVariant::OneSidedStarNE => (3, 6, true, true),
                _ => (3, 4, false, true),
            };
            let blocks = |count: usize, len: usize| vec![ones(len); count].join("#");
            word = format!("##{}##{}##", blocks(m as usize, s), blocks(n, t));

            b.lit("##");
            let sel = selector_blocks(&mut b, m, "#");
            b.lit("##");
            for (j, clause) in phi.clauses().iter().enumerate() {
                if j > 0 {
                    b.lit("#");
                }
                for &lit in clause {
                    b.copy(kind, sel.of(lit, lemma_style), false);
                }
                if filler {
                    b.var();
                }
            }
            b.lit("##");
        }
    }

    Ok(ReductionInstance {
        variant,
        kind,
        word: Word::from(word),
        pattern: b.finish(),
        mode: variant.mode(),
    })
}

/// Membership of the generated word agrees with satisfiability.
pub fn verify_reduction(
    variant: ReductionVariant,
    kind: Option<RelationKind>,
    phi: &CnfFormula,
) -> Result<bool, ReductionError> {
    let inst = generate(variant, kind, phi)?;
    let member = matcher::is_member(&inst.word, &inst.pattern, inst.mode)?;
    Ok(member == sat_brute_force(phi)?)
}
