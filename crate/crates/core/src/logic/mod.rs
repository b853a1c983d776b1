//! LTLf formulas over a partitioned atom set: parsing, printing, NNF and
//! finite-trace evaluation.

mod atoms;
mod eval;
mod formula;
mod parser;

pub use atoms::{is_identifier, AgentMove, AtomPartition, EnvMove, Letter, MAX_ATOMS};
pub use eval::{evaluate, Evaluator, FiniteTrace};
pub use formula::Formula;
pub use parser::{collect_identifiers, parse, parse_unchecked};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("undeclared atom `{0}`")]
    UndeclaredAtom(String),
    #[error("atom `{0}` declared twice")]
    DuplicateAtom(String),
    #[error("`{0}` is not a valid atom name")]
    InvalidAtom(String),
    #[error("{0} atoms declared, at most {max} supported", max = MAX_ATOMS)]
    TooManyAtoms(usize),
    #[error("a trace must contain at least one letter")]
    EmptyTrace,
    #[error("letter {letter:#x} at position {position} uses undeclared atoms")]
    LetterOutOfRange { position: usize, letter: Letter },
    #[error("position {index} out of range for a trace of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
}
