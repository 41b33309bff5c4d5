//! Text format for relational patterns.
//!
//! ```text
//! alphabet:abc; pattern: x1 c c x2; rel: rev(x1,x2)
//! ```
//!
//! Clauses are separated by `;` or newlines. `mode: E|NE` is accepted and
//! returned separately by [`parse_pattern_file`].

use std::collections::BTreeMap;

use crate::error::{ParseError, ParseErrorKind, PatternError};
use crate::pattern::{Alphabet, Constraint, Mode, Pattern, PatternSymbol, RelationalPattern, Var};
use crate::relations::RelationKind;

/// A parsed pattern file: the pattern plus the optional `mode:` clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternFile {
    pub pattern: RelationalPattern,
    pub mode: Option<Mode>,
}

pub fn parse_relational_pattern(text: &str) -> Result<RelationalPattern, ParseError> {
    parse_pattern_file(text).map(|f| f.pattern)
}

struct Clause<'a> {
    name: &'a str,
    body: &'a str,
    // byte offset of `body` in the input
    offset: usize,
}

fn split_clauses(text: &str) -> Result<Vec<Clause<'_>>, ParseError> {
    let mut clauses = Vec::new();
    let mut start = 0;
    for (i, c) in text
        .char_indices()
        .chain(std::iter::once((text.len(), ';')))
    {
        if c != ';' && c != '\n' {
            continue;
        }
        let raw = &text[start..i];
        if !raw.trim().is_empty() {
            let Some(colon) = raw.find(':') else {
                let lead = raw.len() - raw.trim_start().len();
                return Err(ParseError::new(
                    start + lead,
                    ParseErrorKind::BadToken(raw.trim().to_string()),
                ));
            };
            clauses.push(Clause {
                name: raw[..colon].trim(),
                body: &raw[colon + 1..],
                offset: start + colon + 1,
            });
        }
        start = i + c.len_utf8();
    }
    Ok(clauses)
}

// Whitespace-separated tokens with their byte offsets.
fn tokens(body: &str, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in body.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((base + s, &body[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((base + s, &body[s..]));
    }
    out
}

fn parse_var(token: &str) -> Option<Var> {
    let digits = token.strip_prefix('x')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    match digits.parse::<u32>() {
        Ok(n) if n > 0 => Some(Var(n)),
        _ => None,
    }
}

fn parse_constraints(body: &str, base: usize) -> Result<Vec<(usize, Constraint)>, ParseError> {
    let mut out = Vec::new();
    let bytes = body.as_bytes();
    let mut i = 0;
    loop {
        while i < bytes.len() && (bytes[i] as char == ',' || (bytes[i] as char).is_whitespace()) {
            i += 1;
        }
        if i >= bytes.len() {
            break;
        }
        let start = i;
        let Some(open) = body[i..].find('(').map(|k| k + i) else {
            return Err(ParseError::new(
                base + start,
                ParseErrorKind::MalformedConstraint(body[start..].trim().to_string()),
            ));
        };
        let Some(close) = body[open..].find(')').map(|k| k + open) else {
            return Err(ParseError::new(
                base + start,
                ParseErrorKind::MalformedConstraint(body[start..].trim().to_string()),
            ));
        };
        let name = body[start..open].trim();
        let kind = RelationKind::from_name(name).ok_or_else(|| {
            ParseError::new(
                base + start,
                ParseErrorKind::UnknownRelation(name.to_string()),
            )
        })?;
        let args: Vec<&str> = body[open + 1..close].split(',').map(str::trim).collect();
        let malformed = || {
            ParseError::new(
                base + start,
                ParseErrorKind::MalformedConstraint(body[start..=close].to_string()),
            )
        };
        if args.len() != 2 {
            return Err(malformed());
        }
        let left = parse_var(args[0]).ok_or_else(malformed)?;
        let right = parse_var(args[1]).ok_or_else(malformed)?;
        out.push((base + start, Constraint::new(kind, left, right)));
        i = close + 1;
    }
    Ok(out)
}

pub fn parse_pattern_file(text: &str) -> Result<PatternFile, ParseError> {
    let mut alphabet: Option<(usize, &str)> = None;
    let mut pattern: Option<(usize, &str)> = None;
    let mut rel: Option<(usize, &str)> = None;
    let mut mode: Option<(usize, &str)> = None;

    for clause in split_clauses(text)? {
        let slot = match clause.name {
            "alphabet" => &mut alphabet,
            "pattern" => &mut pattern,
            "rel" => &mut rel,
            "mode" => &mut mode,
            other => {
                return Err(ParseError::new(
                    clause.offset,
                    ParseErrorKind::UnknownClause(other.to_string()),
                ))
            }
        };
        if slot.is_some() {
            return Err(ParseError::new(
                clause.offset,
                ParseErrorKind::DuplicateClause(clause.name.to_string()),
            ));
        }
        *slot = Some((clause.offset, clause.body));
    }

    let (alpha_off, alpha_body) = alphabet.ok_or(ParseError::new(
        text.len(),
        ParseErrorKind::MissingClause("alphabet"),
    ))?;
    let lead = alpha_body.len() - alpha_body.trim_start().len();
    let alphabet = Alphabet::new(alpha_body.trim().chars())
        .map_err(|e| ParseError::new(alpha_off + lead, e.into()))?;

    let (pat_off, pat_body) = pattern.ok_or(ParseError::new(
        text.len(),
        ParseErrorKind::MissingClause("pattern"),
    ))?;
    let mut symbols = Vec::new();
    let mut first_seen: BTreeMap<Var, usize> = BTreeMap::new();
    for (off, tok) in tokens(pat_body, pat_off) {
        if let Some(v) = parse_var(tok) {
            if first_seen.insert(v, off).is_some() {
                return Err(ParseError::new(
                    off,
                    PatternError::RepeatedVariable(v).into(),
                ));
            }
            symbols.push(PatternSymbol::Variable(v));
            continue;
        }
        let mut chars = tok.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) if alphabet.contains(c) => symbols.push(PatternSymbol::Terminal(c)),
            (Some(c), None) => {
                return Err(ParseError::new(off, PatternError::UnknownLetter(c).into()))
            }
            _ => {
                return Err(ParseError::new(
                    off,
                    ParseErrorKind::BadToken(tok.to_string()),
                ))
            }
        }
    }
    let pattern = Pattern::new(symbols).map_err(|e| ParseError::new(pat_off, e.into()))?;

    let constraints = match rel {
        Some((off, body)) => parse_constraints(body, off)?,
        None => Vec::new(),
    };
    for (off, c) in &constraints {
        for v in [c.left, c.right] {
            if !first_seen.contains_key(&v) {
                return Err(ParseError::new(
                    *off,
                    PatternError::UnboundConstraintVariable(v).into(),
                ));
            }
        }
    }

    let mode = match mode {
        Some((off, body)) => Some(Mode::parse(body).ok_or_else(|| {
            ParseError::new(off, ParseErrorKind::BadMode(body.trim().to_string()))
        })?),
        None => None,
    };

    let rp = RelationalPattern::new(alphabet, pattern, constraints.into_iter().map(|(_, c)| c))
        .map_err(|e| ParseError::new(pat_off, e.into()))?;
    let rp = if rp.pattern().is_normal() {
        rp
    } else {
        log::warn!(
            "renumbering variables of `{}` by first occurrence",
            pat_body.trim()
        );
        crate::equivalence::normalize(&rp)
    };
    Ok(PatternFile { pattern: rp, mode })
}

/// Canonical text: constraints sorted, single spacing, no `rel:` clause when empty.
pub fn print_relational_pattern(rp: &RelationalPattern) -> String {
    let mut out = format!("alphabet:{}; pattern: {}", rp.alphabet(), rp.pattern());
    if !rp.constraints().is_empty() {
        let rels: Vec<String> = rp.constraints().iter().map(|c| c.to_string()).collect();
        out.push_str("; rel: ");
        out.push_str(&rels.join(", "));
    }
    out
}

/// Pattern text with a `mode:` clause appended.
pub fn print_pattern_file(rp: &RelationalPattern, mode: Mode) -> String {
    format!("{}; mode: {}", print_relational_pattern(rp), mode)
}
