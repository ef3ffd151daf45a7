//! Current-state opacity enforcement by extended insertion functions.
//!
//! A defender sits between a system modeled as a finite automaton and an
//! intruder that watches the system's output. The defender may insert
//! fictitious events before and after every real output so that the
//! intruder never becomes certain the system is in a secret state, and never
//! sees an output that the system could not have produced.
//!
//! This crate decides whether such a defender exists:
//!
//! * [`ei`] handles unconstrained insertion. It builds the insertion and
//!   indicator automata, prunes trapping SCCs into a verifier, and checks the
//!   admissible-state condition.
//! * [`eic`] handles insertion under event insertion constraints. Only some
//!   symbols may be inserted before a real output, and only some after it.
//! * [`observer`] covers powerset observers and current-state opacity for
//!   partially observed nondeterministic systems.
//! * [`oracle`] holds naive, independent implementations of the same
//!   questions. They are used to cross-check the verifier pipelines.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

mod error;
mod product;

pub mod automaton;
pub mod ei;
pub mod eic;
pub mod fixtures;
pub mod observer;
pub mod oracle;
pub mod random;
pub mod scc;

pub use automaton::{Automaton, AutomatonBuilder, EventLabel, StateId, Tag};
pub use error::Error;
pub use product::IndicatorState;

/// Result alias used across the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;
