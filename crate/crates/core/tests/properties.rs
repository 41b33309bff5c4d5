//! Property tests for the invariants of each module.

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use relpat::equivalence::{ne_equivalent, saturate};
use relpat::machines::{
    ca_decode, ca_encode, ca_step, ca_succeeds, ca_validate, utm_step, CaConfiguration,
    EncodingParams, ExplicitTape, Transition, TwoCounterAutomaton, UtmConfiguration,
};
use relpat::matcher::{match_word, match_word_with, MatchOptions};
use relpat::random::{self, PatternShape};
use relpat::reductions::{generate, CnfFormula, ReductionVariant};
use relpat::relations::{length_profile, relation_holds};
use relpat::semantics::{apply, enumerate_language, is_valid};
use relpat::syntax::{parse_pattern_file, parse_relational_pattern, print_pattern_file};
use relpat::{Alphabet, Error, Mode, PatternSymbol, RelationKind, RelationalPattern, Word};

fn sigma() -> Alphabet {
    Alphabet::from_letters("ab")
}

fn pattern_from_seed(seed: u64, kinds: &[RelationKind]) -> RelationalPattern {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random::relational_pattern(&mut rng, &sigma(), kinds, PatternShape::default())
}

fn ab_word(max: usize) -> impl Strategy<Value = Vec<char>> {
    prop::collection::vec(prop::sample::select(vec!['a', 'b']), 0..=max)
}

fn mode() -> impl Strategy<Value = Mode> {
    prop::sample::select(vec![Mode::Erasing, Mode::NonErasing])
}

fn kind() -> impl Strategy<Value = RelationKind> {
    prop::sample::select(RelationKind::ALL.to_vec())
}

/// Textbook matcher for patterns without constraints: try every split.
fn classical_member(symbols: &[PatternSymbol], w: &[char], min: usize) -> bool {
    match symbols.split_first() {
        None => w.is_empty(),
        Some((PatternSymbol::Terminal(c), rest)) => {
            w.first() == Some(c) && classical_member(rest, &w[1..], min)
        }
        Some((PatternSymbol::Variable(_), rest)) => {
            (min..=w.len()).any(|k| classical_member(rest, &w[k..], min))
        }
    }
}

/// `u, v ∈ z*` for some `z`, by trying every prefix of the shorter non-empty word.
fn exists_common_base(u: &[char], v: &[char]) -> bool {
    let power_of = |w: &[char], z: &[char]| {
        w.len().is_multiple_of(z.len()) && w.chunks(z.len()).all(|c| c == z)
    };
    let longest = u.len().max(v.len());
    (1..=longest).any(|k| {
        let src = if u.len() >= k { u } else { v };
        let z = &src[..k];
        power_of(u, z) && power_of(v, z)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>(), m in mode()) {
        let rp = pattern_from_seed(seed, &RelationKind::ALL);
        prop_assert_eq!(parse_relational_pattern(&rp.to_string()).unwrap(), rp.clone());
        let file = parse_pattern_file(&print_pattern_file(&rp, m)).unwrap();
        prop_assert_eq!(file.pattern, rp);
        prop_assert_eq!(file.mode, Some(m));
    }

    #[test]
    fn generated_patterns_are_normal_and_bound(seed in any::<u64>()) {
        let rp = pattern_from_seed(seed, &RelationKind::ALL);
        prop_assert!(rp.pattern().is_normal());
        for c in rp.constraints() {
            prop_assert!(rp.pattern().contains_var(c.left) && rp.pattern().contains_var(c.right));
        }
    }

    #[test]
    fn equivalence_kinds(u in ab_word(7), v in ab_word(7), w in ab_word(7)) {
        for kind in [RelationKind::Eq, RelationKind::LenEq, RelationKind::AbelianEq, RelationKind::AlphaPerm] {
            prop_assert!(relation_holds(kind, &u, &u));
            prop_assert_eq!(relation_holds(kind, &u, &v), relation_holds(kind, &v, &u));
            if relation_holds(kind, &u, &v) && relation_holds(kind, &v, &w) {
                prop_assert!(relation_holds(kind, &u, &w));
            }
        }
    }

    #[test]
    fn subsequence_is_transitive(u in ab_word(6), v in ab_word(6), w in ab_word(6)) {
        if relation_holds(RelationKind::Subseq, &u, &v) && relation_holds(RelationKind::Subseq, &v, &w) {
            prop_assert!(relation_holds(RelationKind::Subseq, &u, &w));
        }
    }

    #[test]
    fn reversal_is_symmetric(u in ab_word(8), v in ab_word(8)) {
        prop_assert_eq!(
            relation_holds(RelationKind::Reversal, &u, &v),
            relation_holds(RelationKind::Reversal, &v, &u)
        );
        let r: Vec<char> = u.iter().rev().copied().collect();
        prop_assert!(relation_holds(RelationKind::Reversal, &u, &r));
    }

    #[test]
    fn length_profiles_are_sound(k in kind(), u in ab_word(6), v in ab_word(6)) {
        if relation_holds(k, &u, &v) {
            prop_assert!(length_profile(k).admits(u.len(), v.len()));
        }
    }

    #[test]
    fn commutation_star_is_uv_eq_vu(u in ab_word(6), v in ab_word(6)) {
        let uv: Vec<char> = u.iter().chain(&v).copied().collect();
        let vu: Vec<char> = v.iter().chain(&u).copied().collect();
        let held = relation_holds(RelationKind::ComStar, &u, &v);
        prop_assert_eq!(held, exists_common_base(&u, &v) || (u.is_empty() && v.is_empty()));
        if !u.is_empty() && !v.is_empty() {
            prop_assert_eq!(held, uv == vu);
        }
    }

    #[test]
    fn non_erasing_inside_erasing(seed in any::<u64>()) {
        let rp = pattern_from_seed(seed, &RelationKind::ALL);
        let ne = enumerate_language(&rp, Mode::NonErasing, 6).unwrap();
        let e = enumerate_language(&rp, Mode::Erasing, 6).unwrap();
        prop_assert!(ne.words.is_subset(&e.words));
    }

    #[test]
    fn witnesses_are_sound_and_stable(seed in any::<u64>(), w in ab_word(8), m in mode()) {
        let rp = pattern_from_seed(seed, &RelationKind::ALL);
        let w = Word(w);
        let first = match_word(&w, &rp, m).unwrap();
        if let Some(h) = &first {
            prop_assert_eq!(apply(h, &rp).unwrap(), w.clone());
            prop_assert!(is_valid(h, &rp, m));
        }
        prop_assert_eq!(match_word(&w, &rp, m).unwrap(), first);
    }

    #[test]
    fn membership_matches_enumeration(seed in any::<u64>(), w in ab_word(7), m in mode()) {
        let rp = pattern_from_seed(seed, &RelationKind::ALL);
        let w = Word(w);
        let lang = enumerate_language(&rp, m, w.len()).unwrap();
        prop_assert_eq!(match_word(&w, &rp, m).unwrap().is_some(), lang.contains(&w));
    }

    #[test]
    fn pruning_never_changes_the_verdict(seed in any::<u64>(), w in ab_word(8), m in mode()) {
        let rp = pattern_from_seed(seed, &RelationKind::ALL);
        let w = Word(w);
        let off = MatchOptions { length_pruning: false, ..MatchOptions::default() };
        prop_assert_eq!(
            match_word(&w, &rp, m).unwrap().is_some(),
            match_word_with(&w, &rp, m, off).unwrap().is_some()
        );
    }

    #[test]
    fn unconstrained_languages_are_classical(seed in any::<u64>(), m in mode()) {
        let rp = pattern_from_seed(seed, &[]);
        let lang = enumerate_language(&rp, m, 6).unwrap();
        for w in sigma().words_up_to(6) {
            prop_assert_eq!(
                lang.contains(&w),
                classical_member(rp.pattern().symbols(), w.as_slice(), m.min_len())
            );
        }
    }

    #[test]
    fn saturation_keeps_the_language(
        seed in any::<u64>(),
        k in prop::sample::select(vec![RelationKind::Eq, RelationKind::AbelianEq, RelationKind::ComPlus]),
    ) {
        let rp = pattern_from_seed(seed, &[k]);
        let n = rp.pattern().len() + 3;
        let full = saturate(&rp).unwrap();
        prop_assert_eq!(
            enumerate_language(&rp, Mode::NonErasing, n).unwrap().words,
            enumerate_language(&full, Mode::NonErasing, n).unwrap().words
        );
    }

    #[test]
    fn decider_is_an_equivalence(
        s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>(),
        k in prop::sample::select(vec![RelationKind::Eq, RelationKind::AbelianEq, RelationKind::ComPlus]),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(s1);
        let a = pattern_from_seed(s1, &[k]);
        let b = if s2 % 2 == 0 { random::closure_variant(&mut rng, &a, k) } else { pattern_from_seed(s2, &[k]) };
        let c = if s3 % 2 == 0 { random::closure_variant(&mut rng, &b, k) } else { pattern_from_seed(s3, &[k]) };
        prop_assert!(ne_equivalent(&a, &a).unwrap());
        prop_assert_eq!(ne_equivalent(&a, &b).unwrap(), ne_equivalent(&b, &a).unwrap());
        if ne_equivalent(&a, &b).unwrap() && ne_equivalent(&b, &c).unwrap() {
            prop_assert!(ne_equivalent(&a, &c).unwrap());
        }
    }

    #[test]
    fn decider_rejects_other_kinds(seed in any::<u64>()) {
        for k in [RelationKind::Reversal, RelationKind::LenEq] {
            let rp = pattern_from_seed(seed, &[k]);
            if rp.constraints().is_empty() {
                continue;
            }
            prop_assert!(matches!(ne_equivalent(&rp, &rp), Err(Error::UnsupportedKind(_))));
        }
    }

    #[test]
    fn reduction_outputs_are_well_formed(
        seed in any::<u64>(),
        n in 2u32..=4,
        m in 1usize..=4,
        v in prop::sample::select(ReductionVariant::ALL.to_vec()),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = CnfFormula::random(&mut rng, n, m, v.needs_distinct_literals());
        for &k in v.kinds() {
            let inst = generate(v, Some(k), &phi).unwrap();
            prop_assert!(inst.pattern.pattern().is_normal());
            prop_assert!(inst.pattern.alphabet().admits(&inst.word));
            let text = inst.pattern.to_string();
            prop_assert_eq!(parse_relational_pattern(&text).unwrap(), inst.pattern.clone());
        }
    }

    #[test]
    fn reduction_block_counts(seed in any::<u64>(), vars in 2u32..=4, clauses in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = CnfFormula::random(&mut rng, vars, clauses, true);
        let angluin = generate(ReductionVariant::AngluinNE, None, &phi).unwrap();
        let hashes = angluin.word.as_slice().iter().filter(|&&c| c == '#').count();
        prop_assert_eq!(hashes, vars as usize + 2 * clauses + 1);

        let commute = generate(ReductionVariant::CommuteNE, None, &phi).unwrap();
        let w = commute.word.to_string();
        prop_assert_eq!(w.matches("##").count(), vars as usize + clauses + 1);
        let syms = commute.pattern.pattern().symbols();
        let pairs = syms
            .windows(2)
            .filter(|p| p[0] == PatternSymbol::Terminal('#') && p[1] == PatternSymbol::Terminal('#'))
            .count();
        prop_assert_eq!(pairs, vars as usize + clauses + 1);
    }

    #[test]
    fn successors_follow_the_table(seed in any::<u64>(), q in 0usize..3, m1 in 0u64..3, m2 in 0u64..3) {
        let a = random_automaton(seed);
        let c = CaConfiguration::new(q, m1, m2);
        let (f1, f2) = (u8::from(m1 > 0), u8::from(m2 > 0));
        let expected: BTreeSet<CaConfiguration> = a
            .transitions()
            .filter(|t| t.from == q && t.c1 == f1 && t.c2 == f2)
            .map(|t| CaConfiguration::new(t.to, (m1 as i64 + t.r1 as i64) as u64, (m2 as i64 + t.r2 as i64) as u64))
            .collect();
        let got = ca_step(&a, c);
        prop_assert_eq!(&got, &expected);
        for d in got {
            prop_assert!(ca_succeeds(&a, c, d));
            prop_assert!(m1 > 0 || d.counter1 >= m1);
            prop_assert!(m2 > 0 || d.counter2 >= m2);
        }
    }

    #[test]
    fn decode_inverts_encode(
        run in prop::collection::vec((0usize..5, 0u64..5, 0u64..5), 1..6),
        x in 1u64..3, c1 in 1u64..3, c2 in 1u64..3, y2 in 1u64..3,
    ) {
        let p = EncodingParams::new(x, c1, c2, y2).unwrap();
        let run: Vec<CaConfiguration> = run.into_iter().map(|(q, a, b)| CaConfiguration::new(q, a, b)).collect();
        prop_assert_eq!(ca_decode(&ca_encode(&run, p), p), Some(run));
    }

    #[test]
    fn only_accepting_runs_validate(seed in any::<u64>(), steps in 0usize..6) {
        let a = random_automaton(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let mut run = vec![CaConfiguration::initial()];
        for _ in 0..steps {
            let next: Vec<CaConfiguration> = ca_step(&a, *run.last().unwrap()).into_iter().collect();
            if next.is_empty() {
                break;
            }
            run.push(next[rand::Rng::gen_range(&mut rng, 0..next.len())]);
        }
        let p = EncodingParams::default();
        let accepting = a.is_accepting(run.last().unwrap().state);
        prop_assert_eq!(ca_validate(&ca_encode(&run, p), &a, p), accepting);
    }

    #[test]
    fn code_arithmetic_matches_the_tape(q in 1u8..=15, left in 0u64..1 << 20, right in 0u64..1 << 20) {
        let c = UtmConfiguration::new(q, left, right);
        let by_tape = ExplicitTape::from_config(c).step().and_then(|t| t.to_config());
        prop_assert_eq!(utm_step(c), by_tape);
    }
}

fn random_automaton(seed: u64) -> TwoCounterAutomaton {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ts = Vec::new();
    for _ in 0..rng.gen_range(1..8) {
        let (c1, c2) = (rng.gen_range(0..2u8), rng.gen_range(0..2u8));
        let r = |rng: &mut ChaCha8Rng, c: u8| {
            if c == 0 {
                rng.gen_range(0..2)
            } else {
                rng.gen_range(-1..2)
            }
        };
        let r1 = r(&mut rng, c1);
        let r2 = r(&mut rng, c2);
        ts.push(Transition::new(
            rng.gen_range(0..3),
            c1,
            c2,
            rng.gen_range(0..3),
            r1,
            r2,
        ));
    }
    TwoCounterAutomaton::new(3, ts, [rng.gen_range(0..3)]).unwrap()
}
