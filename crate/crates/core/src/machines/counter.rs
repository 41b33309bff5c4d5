//! Nondeterministic 2-counter automata without input.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use super::MachineError;
use crate::pattern::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub from: usize,
    /// Zero flags: 0 when the counter is zero, 1 otherwise.
    pub c1: u8,
    pub c2: u8,
    pub to: usize,
    pub r1: i8,
    pub r2: i8,
}

impl Transition {
    pub fn new(from: usize, c1: u8, c2: u8, to: usize, r1: i8, r2: i8) -> Self {
        Transition {
            from,
            c1,
            c2,
            to,
            r1,
            r2,
        }
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q{} {} {} -> q{} {} {}",
            self.from, self.c1, self.c2, self.to, self.r1, self.r2
        )
    }
}

type Delta = BTreeMap<(usize, u8, u8), BTreeSet<(usize, i8, i8)>>;

/// States are `q0..q{n-1}`; `q0` is initial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCounterAutomaton {
    num_states: usize,
    delta: Delta,
    accepting: BTreeSet<usize>,
}

impl TwoCounterAutomaton {
    pub fn new(
        num_states: usize,
        transitions: impl IntoIterator<Item = Transition>,
        accepting: impl IntoIterator<Item = usize>,
    ) -> Result<Self, MachineError> {
        if num_states == 0 {
            return Err(MachineError::Invalid("an automaton needs a state".into()));
        }
        let mut delta = Delta::new();
        for t in transitions {
            if t.from >= num_states || t.to >= num_states {
                return Err(MachineError::Invalid(format!(
                    "transition `{t}` leaves the state set"
                )));
            }
            if t.c1 > 1 || t.c2 > 1 || !(-1..=1).contains(&t.r1) || !(-1..=1).contains(&t.r2) {
                return Err(MachineError::Invalid(format!(
                    "transition `{t}` has bad flags"
                )));
            }
            if (t.c1 == 0 && t.r1 == -1) || (t.c2 == 0 && t.r2 == -1) {
                return Err(MachineError::Invalid(format!(
                    "transition `{t}` decrements a zero counter"
                )));
            }
            delta
                .entry((t.from, t.c1, t.c2))
                .or_default()
                .insert((t.to, t.r1, t.r2));
        }
        let accepting: BTreeSet<usize> = accepting.into_iter().collect();
        if let Some(q) = accepting.iter().find(|&&q| q >= num_states) {
            return Err(MachineError::Invalid(format!(
                "accepting state q{q} does not exist"
            )));
        }
        Ok(TwoCounterAutomaton {
            num_states,
            delta,
            accepting,
        })
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting.contains(&q)
    }

    pub fn transitions(&self) -> impl Iterator<Item = Transition> + '_ {
        self.delta.iter().flat_map(|(&(from, c1, c2), targets)| {
            targets.iter().map(move |&(to, r1, r2)| Transition {
                from,
                c1,
                c2,
                to,
                r1,
                r2,
            })
        })
    }

    pub fn has_transition(&self, t: Transition) -> bool {
        self.delta
            .get(&(t.from, t.c1, t.c2))
            .is_some_and(|s| s.contains(&(t.to, t.r1, t.r2)))
    }

    /// Text form: `states: n`, `accept: q..`, and one `q<i> c1 c2 -> q<j> r1 r2` per line.
    pub fn parse(text: &str) -> Result<Self, MachineError> {
        let mut states = None;
        let mut accepting = Vec::new();
        let mut transitions = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split("//").next().unwrap_or("").trim();
            let err = |msg: &str| MachineError::Parse(i + 1, msg.to_string());
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("states:") {
                states = Some(rest.trim().parse().map_err(|_| err("bad state count"))?);
            } else if let Some(rest) = line.strip_prefix("accept:") {
                for tok in rest.split_whitespace() {
                    accepting.push(parse_state(tok).ok_or_else(|| err("bad accepting state"))?);
                }
            } else {
                let (lhs, rhs) = line.split_once("->").ok_or_else(|| err("expected `->`"))?;
                let l: Vec<&str> = lhs.split_whitespace().collect();
                let r: Vec<&str> = rhs.split_whitespace().collect();
                if l.len() != 3 || r.len() != 3 {
                    return Err(err("expected `q<i> c1 c2 -> q<j> r1 r2`"));
                }
                let num = |s: &str| {
                    s.trim_start_matches('+')
                        .parse::<i8>()
                        .map_err(|_| err("bad number"))
                };
                transitions.push(Transition {
                    from: parse_state(l[0]).ok_or_else(|| err("bad state"))?,
                    c1: num(l[1])? as u8,
                    c2: num(l[2])? as u8,
                    to: parse_state(r[0]).ok_or_else(|| err("bad state"))?,
                    r1: num(r[1])?,
                    r2: num(r[2])?,
                });
            }
        }
        let num_states = states.unwrap_or_else(|| {
            transitions
                .iter()
                .flat_map(|t| [t.from, t.to])
                .chain(accepting.iter().copied())
                .max()
                .map_or(1, |q| q + 1)
        });
        TwoCounterAutomaton::new(num_states, transitions, accepting)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("states: {}\naccept:", self.num_states);
        for q in &self.accepting {
            out.push_str(&format!(" q{q}"));
        }
        out.push('\n');
        for t in self.transitions() {
            out.push_str(&format!("{t}\n"));
        }
        out
    }
}

fn parse_state(tok: &str) -> Option<usize> {
    tok.strip_prefix('q')?.parse().ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CaConfiguration {
    pub state: usize,
    pub counter1: u64,
    pub counter2: u64,
}

impl CaConfiguration {
    pub fn new(state: usize, counter1: u64, counter2: u64) -> Self {
        CaConfiguration {
            state,
            counter1,
            counter2,
        }
    }

    pub fn initial() -> Self {
        CaConfiguration::new(0, 0, 0)
    }

    pub fn flags(&self) -> (u8, u8) {
        (u8::from(self.counter1 > 0), u8::from(self.counter2 > 0))
    }
}

impl fmt::Display for CaConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(q{}, {}, {})", self.state, self.counter1, self.counter2)
    }
}

/// `enc(q_i, m1, m2) = 0^{x+i} # 0^{c1 + y2·m1} # 0^{c2 + y2·m2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncodingParams {
    pub x: u64,
    pub c1: u64,
    pub c2: u64,
    pub y2: u64,
}

impl Default for EncodingParams {
    fn default() -> Self {
        EncodingParams {
            x: 1,
            c1: 1,
            c2: 1,
            y2: 1,
        }
    }
}

impl EncodingParams {
    pub fn new(x: u64, c1: u64, c2: u64, y2: u64) -> Result<Self, MachineError> {
        if [x, c1, c2, y2].contains(&0) {
            return Err(MachineError::Invalid(
                "encoding parameters must be positive".into(),
            ));
        }
        Ok(EncodingParams { x, c1, c2, y2 })
    }
}

fn apply_delta(m: u64, r: i8) -> Option<u64> {
    match r {
        -1 => m.checked_sub(1),
        0 => Some(m),
        _ => m.checked_add(1),
    }
}

/// All successors of `c`.
pub fn ca_step(a: &TwoCounterAutomaton, c: CaConfiguration) -> BTreeSet<CaConfiguration> {
    let (c1, c2) = c.flags();
    let mut out = BTreeSet::new();
    if let Some(targets) = a.delta.get(&(c.state, c1, c2)) {
        for &(to, r1, r2) in targets {
            if let (Some(n1), Some(n2)) = (apply_delta(c.counter1, r1), apply_delta(c.counter2, r2))
            {
                out.insert(CaConfiguration::new(to, n1, n2));
            }
        }
    }
    out
}

/// `c ⊢ d`.
pub fn ca_succeeds(a: &TwoCounterAutomaton, c: CaConfiguration, d: CaConfiguration) -> bool {
    let (c1, c2) = c.flags();
    let r1 = d.counter1 as i128 - c.counter1 as i128;
    let r2 = d.counter2 as i128 - c.counter2 as i128;
    if r1.abs() > 1 || r2.abs() > 1 {
        return false;
    }
    a.has_transition(Transition::new(
        c.state, c1, c2, d.state, r1 as i8, r2 as i8,
    ))
}

/// Shortest accepting run from `(q0, 0, 0)` with at most `max_steps` configurations.
pub fn ca_find_accepting_run(
    a: &TwoCounterAutomaton,
    max_steps: usize,
) -> Option<Vec<CaConfiguration>> {
    if max_steps == 0 {
        return None;
    }
    let start = CaConfiguration::initial();
    let mut parent: HashMap<CaConfiguration, Option<CaConfiguration>> = HashMap::new();
    parent.insert(start, None);
    let mut queue = VecDeque::from([(start, 1usize)]);
    while let Some((c, len)) = queue.pop_front() {
        if a.is_accepting(c.state) {
            let mut run = vec![c];
            let mut cur = c;
            while let Some(Some(p)) = parent.get(&cur) {
                run.push(*p);
                cur = *p;
            }
            run.reverse();
            return Some(run);
        }
        if len == max_steps {
            continue;
        }
        for d in ca_step(a, c) {
            if d.counter1 > max_steps as u64 || d.counter2 > max_steps as u64 {
                continue;
            }
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(d) {
                e.insert(Some(c));
                queue.push_back((d, len + 1));
            }
        }
    }
    None
}

pub fn ca_encode_config(c: CaConfiguration, params: EncodingParams) -> String {
    format!(
        "{}#{}#{}",
        "0".repeat((params.x + c.state as u64) as usize),
        "0".repeat((params.c1 + params.y2 * c.counter1) as usize),
        "0".repeat((params.c2 + params.y2 * c.counter2) as usize)
    )
}

/// `## enc(C1) ## … ## enc(Cn) ##`.
pub fn ca_encode(run: &[CaConfiguration], params: EncodingParams) -> Word {
    let mut out = String::from("##");
    for c in run {
        out.push_str(&ca_encode_config(*c, params));
        out.push_str("##");
    }
    Word::from(out)
}

fn zeros_then(block: &[char]) -> Option<usize> {
    block.iter().all(|&c| c == '0').then_some(block.len())
}

/// Inverse of [`ca_encode`]; `None` when `w` is not an encoding.
pub fn ca_decode(w: &Word, params: EncodingParams) -> Option<Vec<CaConfiguration>> {
    let s = w.as_slice();
    if s.len() < 4 || s[..2] != ['#', '#'] || s[s.len() - 2..] != ['#', '#'] {
        return None;
    }
    let body = &s[2..s.len() - 2];
    let mut run = Vec::new();
    let mut blocks: Vec<&[char]> = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < body.len() {
        if body[i] == '#' && i + 1 < body.len() && body[i + 1] == '#' {
            blocks.push(&body[start..i]);
            i += 2;
            start = i;
        } else {
            i += 1;
        }
    }
    blocks.push(&body[start..]);
    for block in blocks {
        let fields: Vec<&[char]> = block.split(|&c| c == '#').collect();
        if fields.len() != 3 {
            return None;
        }
        let a = zeros_then(fields[0])? as u64;
        let b = zeros_then(fields[1])? as u64;
        let c = zeros_then(fields[2])? as u64;
        if a < params.x || b < params.c1 || c < params.c2 {
            return None;
        }
        if !(b - params.c1).is_multiple_of(params.y2) || !(c - params.c2).is_multiple_of(params.y2)
        {
            return None;
        }
        run.push(CaConfiguration::new(
            (a - params.x) as usize,
            (b - params.c1) / params.y2,
            (c - params.c2) / params.y2,
        ));
    }
    Some(run)
}

/// Membership in the set of encodings of accepting computations.
pub fn ca_validate(w: &Word, a: &TwoCounterAutomaton, params: EncodingParams) -> bool {
    let Some(run) = ca_decode(w, params) else {
        return false;
    };
    run.first() == Some(&CaConfiguration::initial())
        && run.iter().all(|c| c.state < a.num_states())
        && run.windows(2).all(|p| ca_succeeds(a, p[0], p[1]))
        && run.last().is_some_and(|c| a.is_accepting(c.state))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn incrementer() -> TwoCounterAutomaton {
        TwoCounterAutomaton::parse("states: 3\naccept: q2\nq0 0 0 -> q1 1 0\nq1 1 0 -> q2 0 1\n")
            .unwrap()
    }

    #[test]
    fn rejects_decrement_of_zero_counter() {
        assert!(TwoCounterAutomaton::new(1, [Transition::new(0, 0, 0, 0, -1, 0)], []).is_err());
    }

    #[test]
    fn step_rules() {
        let a = incrementer();
        let s = ca_step(&a, CaConfiguration::initial());
        assert_eq!(
            s.into_iter().collect::<Vec<_>>(),
            vec![CaConfiguration::new(1, 1, 0)]
        );
        let empty = TwoCounterAutomaton::new(1, [], []).unwrap();
        assert!(ca_step(&empty, CaConfiguration::initial()).is_empty());
        // flags (0,0) select only the zero-test transitions
        assert!(ca_step(&a, CaConfiguration::new(1, 0, 0)).is_empty());
    }

    #[test]
    fn bfs_runs() {
        let a = incrementer();
        let run = ca_find_accepting_run(&a, 5).unwrap();
        assert_eq!(
            run,
            vec![
                CaConfiguration::new(0, 0, 0),
                CaConfiguration::new(1, 1, 0),
                CaConfiguration::new(2, 1, 1)
            ]
        );
        assert!(ca_find_accepting_run(&a, 2).is_none());
        let trivial = TwoCounterAutomaton::new(1, [], [0]).unwrap();
        assert_eq!(ca_find_accepting_run(&trivial, 1).unwrap().len(), 1);
    }

    #[test]
    fn encodings() {
        let p = EncodingParams::default();
        assert_eq!(
            ca_encode(&[CaConfiguration::initial()], p).to_string(),
            "##0#0#0##"
        );
        assert_eq!(
            ca_encode_config(CaConfiguration::new(1, 2, 0), p),
            "00#000#0"
        );
        let w = ca_encode(
            &[CaConfiguration::initial(), CaConfiguration::new(1, 1, 0)],
            p,
        );
        assert_eq!(w.to_string(), "##0#0#0##00#00#0##");
        assert_eq!(ca_decode(&w, p).unwrap().len(), 2);
    }

    #[test]
    fn validation() {
        let a = incrementer();
        let p = EncodingParams::default();
        let run = ca_find_accepting_run(&a, 5).unwrap();
        assert!(ca_validate(&ca_encode(&run, p), &a, p));
        assert!(!ca_validate(&"##0#0#0##".into(), &a, p));
        assert!(!ca_validate(&"0#0#0".into(), &a, p));
        let trivial = TwoCounterAutomaton::new(1, [], [0]).unwrap();
        assert!(ca_validate(&"##0#0#0##".into(), &trivial, p));
    }

    #[test]
    fn text_round_trip() {
        let a = incrementer();
        assert_eq!(TwoCounterAutomaton::parse(&a.to_text()).unwrap(), a);
    }
}
