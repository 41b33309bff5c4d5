//! Seeded self-check suites behind `relpat report`.
//!
//! Every suite draws from its own ChaCha stream of the run seed, so the case
//! lists and outcomes are a pure function of the seed. Wall time is only
//! recorded on request because it would break byte-identical output.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::equivalence::ne_equivalent;
use crate::inclusion::{
    build_predicates, build_prop6, good_structure, predicate_satisfied, prop6_base_predicates,
    SigmaAssignment,
};
use crate::machines::{
    ca_encode, ca_find_accepting_run, ca_validate, utm_encode_computation, utm_run, utm_step,
    utm_validate, EncodingParams, ExplicitTape, TwoCounterAutomaton, UtmConfiguration,
};
use crate::matcher::is_member;
use crate::pattern::{Alphabet, Mode, Word};
use crate::random::{self, PatternShape};
use crate::reductions::{verify_reduction, CnfFormula, ReductionVariant};
use crate::relations::{length_profile, relation_holds, RelationKind};
use crate::semantics::{bounded_equal, enumerate_language};
use crate::syntax::parse_relational_pattern;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: u64,
    pub passed: u64,
    pub failed: u64,
    pub seconds: Option<f64>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0 && self.cases == self.passed + self.failed
    }
}

#[derive(Debug, Default)]
struct Tally {
    passed: u64,
    failed: u64,
}

impl Tally {
    fn check(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

type Suite = fn(&mut ChaCha8Rng) -> Tally;

const SUITES: [(&str, Suite); 8] = [
    ("running-examples", running_examples),
    ("matcher-oracle", matcher_oracle),
    ("relation-laws", relation_laws),
    ("reductions", reductions),
    ("equivalence", equivalence),
    ("counter-machines", counter_machines),
    ("universal-machine", universal_machine),
    ("inclusion", inclusion),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

/// Runs every suite; `timings` fills in `seconds`.
pub fn run_report(seed: u64, timings: bool) -> Vec<SuiteReport> {
    SUITES
        .iter()
        .enumerate()
        .map(|(i, (name, suite))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64 + 1);
            let start = Instant::now();
            let t = suite(&mut rng);
            let elapsed = start.elapsed().as_secs_f64();
            log::info!("suite {name}: {} passed, {} failed", t.passed, t.failed);
            SuiteReport {
                suite: name.to_string(),
                cases: t.passed + t.failed,
                passed: t.passed,
                failed: t.failed,
                seconds: timings.then_some(elapsed),
            }
        })
        .collect()
}

pub fn to_json(reports: &[SuiteReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("plain data");
    s.push('\n');
    s
}

pub fn to_text(reports: &[SuiteReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!(
            "{:<18} cases={} passed={} failed={}",
            r.suite, r.cases, r.passed, r.failed
        ));
        if let Some(s) = r.seconds {
            out.push_str(&format!(" seconds={s:.3}"));
        }
        out.push('\n');
    }
    out
}

fn running_examples(_: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    let alpha =
        parse_relational_pattern("alphabet:ab; pattern: x1 a a x2 b x3; rel: eq(x1,x2)").unwrap();
    let beta =
        parse_relational_pattern("alphabet:abc; pattern: x1 c c x2; rel: rev(x1,x2)").unwrap();
    let cases = [
        (&alpha, "bbaabbba", Mode::NonErasing, true),
        (&alpha, "aab", Mode::Erasing, true),
        (&alpha, "aab", Mode::NonErasing, false),
        (&beta, "abccba", Mode::NonErasing, true),
        (&beta, "abccab", Mode::NonErasing, false),
    ];
    for (rp, w, mode, expected) in cases {
        t.check(is_member(&Word::from(w), rp, mode).ok() == Some(expected));
    }
    t
}

fn matcher_oracle(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    let sigma = Alphabet::from_letters("ab");
    let words = sigma.words_up_to(7);
    for kind in RelationKind::ALL {
        for _ in 0..8 {
            let rp = random::relational_pattern(rng, &sigma, &[kind], PatternShape::default());
            for mode in [Mode::Erasing, Mode::NonErasing] {
                let Ok(lang) = enumerate_language(&rp, mode, 7) else {
                    t.check(false);
                    continue;
                };
                for w in &words {
                    t.check(is_member(w, &rp, mode).ok() == Some(lang.contains(w)));
                }
            }
        }
    }
    t
}

fn relation_laws(_: &mut ChaCha8Rng) -> Tally {
    use RelationKind::*;
    let mut t = Tally::default();
    let words: Vec<Vec<char>> = Alphabet::from_letters("ab")
        .words_up_to(4)
        .into_iter()
        .map(|w| w.0)
        .collect();
    let r = relation_holds;
    for kind in [Eq, LenEq, AbelianEq, AlphaPerm, ComPlus] {
        let dom: Vec<&Vec<char>> = words
            .iter()
            .filter(|w| kind != ComPlus || !w.is_empty())
            .collect();
        for u in &dom {
            t.check(r(kind, u, u));
            for v in &dom {
                t.check(r(kind, u, v) == r(kind, v, u));
                if r(kind, u, v) {
                    for w in &dom {
                        if r(kind, v, w) {
                            t.check(r(kind, u, w));
                        }
                    }
                }
            }
        }
    }
    for u in &words {
        let rev: Vec<char> = u.iter().rev().copied().collect();
        t.check(r(Reversal, u, &rev) && r(Reversal, &rev, u));
        t.check(r(Subseq, u, u));
        for v in &words {
            if r(Subseq, u, v) && r(Subseq, v, u) {
                t.check(u == v);
            }
            for kind in [Subseq, Star] {
                if r(kind, u, v) && r(kind, v, u) {
                    t.check(u == v);
                }
            }
            for kind in RelationKind::ALL {
                if r(kind, u, v) {
                    t.check(length_profile(kind).admits(u.len(), v.len()));
                }
            }
        }
    }
    t
}

fn reductions(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    for variant in ReductionVariant::ALL {
        let distinct = variant.needs_distinct_literals();
        let mut formulas = CnfFormula::all_formulas(2, 1, distinct);
        formulas.retain(|_| rng.gen_bool(0.5));
        for _ in 0..4 {
            formulas.push(CnfFormula::random(rng, 3, 3, distinct));
        }
        for phi in &formulas {
            t.check(matches!(verify_reduction(variant, None, phi), Ok(true)));
        }
    }
    t
}

fn equivalence(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    let sigma = Alphabet::from_letters("ab");
    let shape = PatternShape {
        max_vars: 3,
        max_terminals: 2,
        max_constraints: 3,
    };
    for kind in [
        RelationKind::Eq,
        RelationKind::AbelianEq,
        RelationKind::ComPlus,
    ] {
        for _ in 0..100 {
            let a = random::relational_pattern(rng, &sigma, &[kind], shape);
            let b = if rng.gen_bool(0.7) {
                random::closure_variant(rng, &a, kind)
            } else {
                random::relational_pattern(rng, &sigma, &[kind], shape)
            };
            let bound = a.pattern().len().max(b.pattern().len()) + 3;
            let fast = ne_equivalent(&a, &b);
            let slow = bounded_equal(&a, &b, Mode::NonErasing, bound);
            t.check(matches!((fast, slow), (Ok(x), Ok(y)) if x == y));
        }
    }
    t
}

const AUTOMATA: [&str; 3] = [
    "states: 3\naccept: q2\nq0 0 0 -> q1 1 0\nq1 1 0 -> q2 0 1\n",
    "states: 3\naccept: q2\nq0 0 0 -> q0 1 0\nq0 1 0 -> q0 1 0\nq0 1 0 -> q1 0 1\nq1 1 1 -> q1 -1 0\nq1 0 1 -> q2 0 0\n",
    "states: 2\naccept: q1\nq0 0 0 -> q0 0 1\nq0 0 1 -> q1 0 -1\n",
];

fn counter_machines(_: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    let p = EncodingParams::default();
    for text in AUTOMATA {
        let a = TwoCounterAutomaton::parse(text).unwrap();
        let Some(run) = ca_find_accepting_run(&a, 12) else {
            t.check(false);
            continue;
        };
        let w = ca_encode(&run, p);
        t.check(ca_validate(&w, &a, p));
        let s = w.to_string();
        let mut bad = vec![format!("{s}#"), format!("0{s}"), s.replacen("##", "###", 1)];
        if run.len() > 1 {
            bad.push(ca_encode(&run[1..], p).to_string());
            bad.push(ca_encode(&run[..run.len() - 1], p).to_string());
        }
        for b in bad {
            t.check(!ca_validate(&Word::from(b.as_str()), &a, p));
        }
    }
    t
}

fn universal_machine(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    for _ in 0..200 {
        let c = UtmConfiguration::new(
            rng.gen_range(1..=15),
            rng.gen_range(0..64),
            rng.gen_range(0..64),
        );
        let by_tape = ExplicitTape::from_config(c)
            .step()
            .and_then(|x| x.to_config());
        t.check(utm_step(c) == by_tape);
    }
    let mut runs = 0;
    while runs < 10 {
        let start = UtmConfiguration::new(
            rng.gen_range(1..=15),
            rng.gen_range(0..8),
            rng.gen_range(0..8),
        );
        let Some(run) = utm_run(start, 20) else {
            continue;
        };
        runs += 1;
        let w = utm_encode_computation(&run);
        t.check(utm_validate(&w, start));
        let s = w.to_string();
        t.check(!utm_validate(&Word::from(format!("0{s}").as_str()), start));
    }
    t
}

fn inclusion(rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    for start in [
        UtmConfiguration::new(1, 0, 0),
        UtmConfiguration::new(10, 1, 0),
    ] {
        t.check(build_prop6(start, &prop6_base_predicates()).block_shape_holds());
    }
    let a = TwoCounterAutomaton::parse(AUTOMATA[0]).unwrap();
    let preds = build_predicates(&a);
    let zero_hash = Alphabet::from_letters("0#");
    for _ in 0..10 {
        let len = rng.gen_range(0..8);
        let sigma = SigmaAssignment::new(random::word(rng, &zero_hash, len), Word::repeat('0', 2));
        let hit = predicate_satisfied(&sigma, &preds[0]).ok();
        t.check(hit == Some(sigma.x_image.contains_factor("###")));
    }
    let p = EncodingParams::default();
    let run = ca_find_accepting_run(&a, 8).unwrap();
    let good = ca_encode(&run, p).to_string();
    for _ in 0..6 {
        let mut w: Vec<char> = good.chars().collect();
        if rng.gen_bool(0.6) {
            let i = rng.gen_range(0..w.len());
            w[i] = if w[i] == '0' { '#' } else { '0' };
        }
        let w = Word(w);
        if w.contains_factor("###") {
            continue;
        }
        let sigma = SigmaAssignment::with_long_y(w.clone());
        let mut any = Some(false);
        for pr in &preds[..13] {
            match predicate_satisfied(&sigma, pr) {
                Ok(true) => {
                    any = Some(true);
                    break;
                }
                Ok(false) => {}
                Err(_) => any = None,
            }
        }
        t.check(any == Some(!good_structure(&w)));
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_have_unique_names() {
        let mut names = suite_names();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), SUITES.len());
    }

    #[test]
    fn fixed_suites_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let t = running_examples(&mut rng);
        assert_eq!((t.passed, t.failed), (5, 0));
        let t = counter_machines(&mut rng);
        assert!(t.passed > 10 && t.failed == 0);
    }

    #[test]
    fn text_rendering() {
        let r = SuiteReport {
            suite: "x".into(),
            cases: 2,
            passed: 2,
            failed: 0,
            seconds: None,
        };
        assert!(r.ok());
        assert_eq!(
            to_text(std::slice::from_ref(&r)),
            "x                  cases=2 passed=2 failed=0\n"
        );
        assert!(to_json(&[r]).contains("\"seconds\": null"));
    }
}
