//! Relational pattern languages: patterns whose variables are tied together by
//! binary word relations such as reversal, abelian equivalence or commutation.
//!
//! The crate provides exact membership, bounded enumeration, a polynomial
//! non-erasing equivalence test, 3-SAT reduction generators, two machine models
//! with their word encodings, and builders for the predicate systems used to
//! encode machine computations into inclusion questions.

pub mod equivalence;
pub mod error;
pub mod inclusion;
pub mod machines;
pub mod matcher;
pub mod pattern;
pub mod random;
pub mod reductions;
pub mod relations;
pub mod report;
pub mod semantics;
pub mod syntax;

pub use error::{Error, ParseError, PatternError, Result};
pub use pattern::{
    Alphabet, Constraint, Mode, Pattern, PatternSymbol, RelationalPattern, Substitution, Var, Word,
};
pub use relations::RelationKind;
