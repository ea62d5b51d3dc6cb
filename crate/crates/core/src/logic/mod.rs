//! Formula syntax, lasso-trace semantics and the textual front/back ends.
//!
//! The plain formula grammar accepted by [`parse_formula`] (and produced by
//! [`emit`] with [`Syntax::Plain`]), from lowest to highest precedence:
//!
//! ```text
//! iff     := implies ("<->" implies)*
//! implies := or ("->" implies)?                 right associative
//! or      := and (("|" | "||") and)*
//! and     := binary (("&" | "&&") binary)*
//! binary  := unary (("U" | "W" | "R" | "V") binary)?   right associative
//! unary   := ("!" | "~" | "X" | "F" | "G" | "[]" | "<>") unary
//!          | ("AX" | "AF" | "AG" | "EX" | "EF" | "EG") unary
//!          | ("A" | "E") "[" iff ("U" | "W") iff "]"
//!          | ("A" | "E") unary            the operand must be X/F/G/U/W
//!          | primary
//! primary := "true" | "TRUE" | "false" | "FALSE" | ident | "(" iff ")"
//! ident   := [A-Za-z_][A-Za-z0-9_]*   (excluding the operator keywords)
//! ```
//!
//! `#` starts a comment that runs to the end of the line.

mod emit;
mod formula;
mod lasso;
mod parse;
mod transform;

pub use emit::{emit, Syntax};
pub use formula::{Atom, Formula, Logic, Prop, PropKind};
pub use lasso::{eval_lasso, LassoTrace, Letter};
pub use parse::{is_identifier, parse_formula, ParseError};
pub use transform::{expand_derived, nnf};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("expected an LTL formula, found a path quantifier")]
    NotLtl,
    #[error("ill-formed CTL formula: {0}")]
    IllFormedCtl(String),
    #[error("operator `{op}` is not supported by the {syntax} syntax")]
    Unsupported { op: &'static str, syntax: Syntax },
    #[error("`{0}` is not a valid proposition name")]
    InvalidAtom(String),
    #[error("unknown logic `{0}` (expected ltl or ctl)")]
    UnknownLogic(String),
    #[error("unknown output format `{0}`")]
    UnknownSyntax(String),
    #[error("invalid trace: {0}")]
    InvalidTrace(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
