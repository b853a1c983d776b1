//! LTLf synthesis under reachability and safety environment specifications.
//!
//! The pipeline runs formula → DFA → deterministic automaton with a
//! reachability or safety objective → game arena → positional strategies →
//! finite-state transducer. [`verify`] re-checks synthesized strategies
//! against their specification independently of the solvers.

pub mod automata;
pub mod error;
pub mod games;
pub mod logic;
pub mod random;
pub mod synthesis;
pub mod transducer;
pub mod verify;

pub use error::{Error, Result};
