//! Text syntax for groups, elements and algebras, and the command runner
//! behind the `lexmv` binary.
//!
//! ```text
//! group   := "Z" | "Q" | "O" | "Aff" | "lex" "(" group ("," group)+ ")"
//! elem    := rat | "(" elem ("," elem)+ ")" | "aff" "(" rat "," rat ")"
//! algebra := "gamma" "(" group "," elem ")" | "chain" "(" int ")"
//!          | "prod" "(" algebra ("," algebra)+ ")" | "table"
//! input   := algebra (";" algebra)*
//! rat     := int ["/" int]
//! ```
//!
//! Lists of more than two components nest to the right, so `lex(Z,Z,Z)` is
//! `lex(Z,lex(Z,Z))` and `(1,0,0)` is `(1,(0,0))`.

pub mod ast;
mod eval;
mod parse;
mod run;

pub use eval::{raw_elem, realize_algebra, realize_elem, realize_group, realize_member, Realized};
pub use parse::{parse_algebra, parse_elem, parse_group, parse_input, DslError, DslErrorKind};
pub use run::{canonical_json, run, Outcome, RunError, RunOptions, Verdict, COMMANDS};
