//! Regular-language engine: regex compilation, boolean and rational
//! operations, closures, quotients and decisions.
//!
//! Every [`RegularLanguage`] is kept as a minimal complete DFA in canonical
//! numbering, so language equality is structural equality. Constructions
//! that determinize are bounded by a process-wide state cap
//! (see [`set_state_cap`]) and fail with [`crate::Error::StateCap`] rather
//! than exhausting memory.

use std::cell::Cell;

mod dfa;
mod lang;
mod nfa;
pub mod regex;

pub use dfa::Dfa;
pub use lang::{combine, decide, transform, BinaryOp, Query, RegularLanguage, Transform};
pub use nfa::Nfa;
pub use regex::RegexAst;

pub const DEFAULT_STATE_CAP: usize = 1_000_000;

thread_local! {
    static STATE_CAP: Cell<usize> = const { Cell::new(DEFAULT_STATE_CAP) };
}

/// Current bound on the number of states a single construction may create.
pub fn state_cap() -> usize {
    STATE_CAP.with(Cell::get)
}

/// Sets the cap for the calling thread.
pub fn set_state_cap(cap: usize) {
    STATE_CAP.with(|c| c.set(cap.max(1)));
}
