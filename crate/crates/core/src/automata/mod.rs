//! Explicit-alphabet transition systems, DFAs and the deterministic
//! reachability/safety automata used as game arenas.

mod construct;
mod dot;
mod minimize;
mod ops;
mod system;

pub use construct::{convert_da, ltlf_to_dfa, Quantifier};
pub use dot::{dfa_to_dot, to_dot};
pub use minimize::minimize;
pub use ops::{flagged, product, restrict, restrict_with_sinks, Coord, ProductMap};
pub use system::{
    make_initial_nonreentrant, set_from, DetAutomaton, Dfa, Limits, Objective, StateSet,
    TransitionSystem, DEFAULT_STATE_CAP, STATE_CAP_VAR,
};
