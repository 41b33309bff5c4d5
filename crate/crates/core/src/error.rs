use thiserror::Error;

use crate::pattern::Var;
use crate::relations::RelationKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("letter `{0}` is reserved")]
    ReservedLetter(char),
    #[error("letter `{0}` declared twice")]
    DuplicateLetter(char),
    #[error("pattern is empty")]
    EmptyPattern,
    #[error("variable index 0 is not allowed")]
    ZeroVariable,
    #[error("variable {0} occurs more than once")]
    RepeatedVariable(Var),
    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(char),
    #[error("constraint mentions {0}, which does not occur in the pattern")]
    UnboundConstraintVariable(Var),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown clause `{0}`")]
    UnknownClause(String),
    #[error("clause `{0}` given twice")]
    DuplicateClause(String),
    #[error("missing `{0}:` clause")]
    MissingClause(&'static str),
    #[error("unexpected token `{0}`")]
    BadToken(String),
    #[error("unknown relation name `{0}`")]
    UnknownRelation(String),
    #[error("malformed constraint `{0}`")]
    MalformedConstraint(String),
    #[error("unknown mode `{0}`, expected E or NE")]
    BadMode(String),
    #[error("{0}")]
    Pattern(#[from] PatternError),
}

impl ParseError {
    pub fn new(offset: usize, kind: ParseErrorKind) -> Self {
        ParseError { offset, kind }
    }
}

/// Errors of the search-based operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("variable {0} has no assigned word")]
    Unassigned(Var),
    #[error("alphabets differ")]
    AlphabetMismatch,
    #[error("letter `{0}` is not in the alphabet")]
    ForeignLetter(char),
    #[error("constraints mix relation kinds {0:?}")]
    MixedKinds(Vec<RelationKind>),
    #[error("relation kind {0} is not supported here")]
    UnsupportedKind(RelationKind),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
