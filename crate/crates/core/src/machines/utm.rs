//! The 2-symbol, 15-state universal Turing machine and its configuration encoding.
//!
//! A tape side is stored as a binary number: bit `i` of the left code is the
//! cell `i` positions left of the head (bit 0 is the head cell), bit `i` of
//! the right code is the cell `i + 1` positions right of the head.

use std::collections::BTreeMap;
use std::fmt;

use crate::pattern::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    L,
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UtmAction {
    Halt,
    Step { write: u8, mv: Move, next: u8 },
}

pub const UTM_STATES: u8 = 15;

// (write, move, next) for symbol 0 and symbol 1, states q1..q15
const TABLE: [[Option<(u8, Move, u8)>; 2]; 15] = {
    use Move::{L, R};
    [
        [Some((0, R, 2)), Some((1, R, 1))],
        [Some((1, R, 3)), Some((1, R, 1))],
        [Some((0, L, 7)), Some((0, L, 5))],
        [Some((0, L, 6)), Some((1, L, 5))],
        [Some((1, R, 1)), Some((1, L, 4))],
        [Some((1, L, 4)), Some((1, L, 4))],
        [Some((0, L, 8)), Some((1, L, 7))],
        [Some((1, L, 9)), Some((1, L, 7))],
        [Some((0, R, 1)), Some((1, L, 10))],
        [Some((1, L, 11)), None],
        [Some((0, R, 12)), Some((1, R, 14))],
        [Some((0, R, 13)), Some((1, R, 12))],
        [Some((0, L, 2)), Some((1, R, 12))],
        [Some((0, L, 3)), Some((0, R, 15))],
        [Some((0, R, 14)), Some((1, R, 14))],
    ]
};

/// The transition table; `state` is 1-based.
pub fn utm_delta(symbol: u8, state: u8) -> UtmAction {
    assert!(
        (1..=UTM_STATES).contains(&state) && symbol <= 1,
        "invalid state or symbol"
    );
    match TABLE[state as usize - 1][symbol as usize] {
        None => UtmAction::Halt,
        Some((write, mv, next)) => UtmAction::Step { write, mv, next },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UtmConfiguration {
    pub state: u8,
    pub left: u64,
    pub right: u64,
}

impl UtmConfiguration {
    pub fn new(state: u8, left: u64, right: u64) -> Self {
        assert!(
            (1..=UTM_STATES).contains(&state),
            "state q{state} out of range"
        );
        UtmConfiguration { state, left, right }
    }

    pub fn head_symbol(&self) -> u8 {
        (self.left % 2) as u8
    }

    pub fn is_halting(&self) -> bool {
        utm_delta(self.head_symbol(), self.state) == UtmAction::Halt
    }
}

impl fmt::Display for UtmConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(q{}, {}, {})", self.state, self.left, self.right)
    }
}

/// One step by code arithmetic; `None` on halt or when a code would overflow.
pub fn utm_step(c: UtmConfiguration) -> Option<UtmConfiguration> {
    let UtmAction::Step { write, mv, next } = utm_delta(c.head_symbol(), c.state) else {
        return None;
    };
    let written = c.left - c.left % 2 + write as u64;
    let (left, right) = match mv {
        Move::R => (written.checked_mul(2)? + c.right % 2, c.right / 2),
        Move::L => (written / 2, c.right.checked_mul(2)? + write as u64),
    };
    Some(UtmConfiguration {
        state: next,
        left,
        right,
    })
}

/// Runs from `start` until halting, keeping at most `max_configs` configurations.
pub fn utm_run(start: UtmConfiguration, max_configs: usize) -> Option<Vec<UtmConfiguration>> {
    let mut run = vec![start];
    while run.len() <= max_configs {
        let last = *run.last().unwrap();
        if last.is_halting() {
            return Some(run);
        }
        run.push(utm_step(last)?);
    }
    None
}

/// A tape with explicit cells, used as a reference for the code arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitTape {
    pub state: u8,
    pub head: i64,
    cells: BTreeMap<i64, u8>,
}

impl ExplicitTape {
    pub fn from_config(c: UtmConfiguration) -> Self {
        let mut cells = BTreeMap::new();
        for i in 0..64 {
            if c.left >> i & 1 == 1 {
                cells.insert(-i, 1);
            }
            if c.right >> i & 1 == 1 {
                cells.insert(i + 1, 1);
            }
        }
        ExplicitTape {
            state: c.state,
            head: 0,
            cells,
        }
    }

    pub fn read(&self, pos: i64) -> u8 {
        self.cells.get(&pos).copied().unwrap_or(0)
    }

    /// `None` on halt.
    pub fn step(&self) -> Option<ExplicitTape> {
        let UtmAction::Step { write, mv, next } = utm_delta(self.read(self.head), self.state)
        else {
            return None;
        };
        let mut cells = self.cells.clone();
        if write == 1 {
            cells.insert(self.head, 1);
        } else {
            cells.remove(&self.head);
        }
        let head = match mv {
            Move::L => self.head - 1,
            Move::R => self.head + 1,
        };
        Some(ExplicitTape {
            state: next,
            head,
            cells,
        })
    }

    /// Side codes; `None` if a side does not fit in 64 bits.
    pub fn to_config(&self) -> Option<UtmConfiguration> {
        let (mut left, mut right) = (0u64, 0u64);
        for (&pos, _) in self.cells.iter().filter(|(_, &v)| v == 1) {
            if pos <= self.head {
                let i = self.head - pos;
                if i >= 64 {
                    return None;
                }
                left |= 1 << i;
            } else {
                let i = pos - self.head - 1;
                if i >= 64 {
                    return None;
                }
                right |= 1 << i;
            }
        }
        Some(UtmConfiguration::new(self.state, left, right))
    }
}

/// `0^{7+e(t_R)} # 0^{7+e(t_L)} # 0^{i+6}`.
pub fn utm_encode_config(c: UtmConfiguration) -> String {
    format!(
        "{}#{}#{}",
        "0".repeat(7 + c.right as usize),
        "0".repeat(7 + c.left as usize),
        "0".repeat(c.state as usize + 6)
    )
}

/// `## enc(C1) ## … ## enc(Cn) ##`.
pub fn utm_encode_computation(run: &[UtmConfiguration]) -> Word {
    let mut out = String::from("##");
    for c in run {
        out.push_str(&utm_encode_config(*c));
        out.push_str("##");
    }
    Word::from(out)
}

fn zeros(block: &[char]) -> Option<usize> {
    block.iter().all(|&c| c == '0').then_some(block.len())
}

pub fn utm_decode_config(block: &[char]) -> Option<UtmConfiguration> {
    let fields: Vec<&[char]> = block.split(|&c| c == '#').collect();
    if fields.len() != 3 {
        return None;
    }
    let right = zeros(fields[0])?.checked_sub(7)?;
    let left = zeros(fields[1])?.checked_sub(7)?;
    let state = zeros(fields[2])?.checked_sub(6)?;
    if !(1..=UTM_STATES as usize).contains(&state) {
        return None;
    }
    Some(UtmConfiguration::new(
        state as u8,
        left as u64,
        right as u64,
    ))
}

pub fn utm_decode_computation(w: &Word) -> Option<Vec<UtmConfiguration>> {
    let s = w.as_slice();
    if s.len() < 4 || s[..2] != ['#', '#'] || s[s.len() - 2..] != ['#', '#'] {
        return None;
    }
    let body = &s[2..s.len() - 2];
    let mut run = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i <= body.len() {
        let at_sep = i + 1 < body.len() && body[i] == '#' && body[i + 1] == '#';
        if at_sep || i == body.len() {
            run.push(utm_decode_config(&body[start..i])?);
            if i == body.len() {
                break;
            }
            i += 2;
            start = i;
        } else {
            i += 1;
        }
    }
    Some(run)
}

/// Encodes a valid computation from `start`: each step follows the machine
/// (any configuration may follow a halting one) and the last configuration halts.
pub fn utm_validate(w: &Word, start: UtmConfiguration) -> bool {
    let Some(run) = utm_decode_computation(w) else {
        return false;
    };
    run.first() == Some(&start)
        && run
            .windows(2)
            .all(|p| p[0].is_halting() || utm_step(p[0]) == Some(p[1]))
        && run.last().is_some_and(|c| c.is_halting())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_entries() {
        assert_eq!(
            utm_delta(0, 1),
            UtmAction::Step {
                write: 0,
                mv: Move::R,
                next: 2
            }
        );
        assert_eq!(utm_delta(1, 10), UtmAction::Halt);
        assert_eq!(
            utm_delta(0, 15),
            UtmAction::Step {
                write: 0,
                mv: Move::R,
                next: 14
            }
        );
        assert_eq!(
            utm_delta(1, 14),
            UtmAction::Step {
                write: 0,
                mv: Move::R,
                next: 15
            }
        );
        let halts = (1..=15)
            .flat_map(|q| [(0, q), (1, q)])
            .filter(|&(s, q)| utm_delta(s, q) == UtmAction::Halt)
            .count();
        assert_eq!(halts, 1);
    }

    #[test]
    fn halting_configuration_has_no_successor() {
        assert_eq!(utm_step(UtmConfiguration::new(10, 1, 0)), None);
    }

    #[test]
    fn blank_step_from_q1() {
        let c = utm_step(UtmConfiguration::new(1, 0, 0)).unwrap();
        assert_eq!(c, UtmConfiguration::new(2, 0, 0));
    }

    #[test]
    fn arithmetic_matches_explicit_tape() {
        for state in 1..=15 {
            for left in 0..16 {
                for right in 0..16 {
                    let c = UtmConfiguration::new(state, left, right);
                    let by_tape = ExplicitTape::from_config(c)
                        .step()
                        .and_then(|t| t.to_config());
                    assert_eq!(utm_step(c), by_tape, "{c}");
                }
            }
        }
    }

    #[test]
    fn encoding_of_blank_configurations() {
        assert_eq!(
            utm_encode_config(UtmConfiguration::new(1, 0, 0)),
            "0000000#0000000#0000000"
        );
        let q15 = utm_encode_config(UtmConfiguration::new(15, 0, 0));
        assert!(q15.ends_with(&format!("#{}", "0".repeat(21))));
        for left in 0..=64 {
            let c = UtmConfiguration::new(3, left, 64 - left);
            let enc: Vec<char> = utm_encode_config(c).chars().collect();
            assert_eq!(utm_decode_config(&enc), Some(c));
        }
    }

    #[test]
    fn validation() {
        let start = UtmConfiguration::new(10, 1, 0);
        let w = utm_encode_computation(&[start]);
        assert!(utm_validate(&w, start));
        // anything may follow a halting configuration
        let w = utm_encode_computation(&[start, UtmConfiguration::new(4, 2, 9)]);
        assert!(!utm_validate(&w, start));
        let w = utm_encode_computation(&[start, UtmConfiguration::new(10, 3, 9)]);
        assert!(utm_validate(&w, start));
        assert!(!utm_validate(&Word::from("0000000#0000000#0000000"), start));
    }
}
