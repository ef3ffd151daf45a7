use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown event `{0}`")]
    UnknownEvent(String),
    #[error("symbol `{0}` is not in the system alphabet")]
    UnknownSymbol(String),
    #[error("automaton must be deterministic")]
    NotDeterministic,
    #[error("automaton must be fully observable with actual events only")]
    NotFullyObservable,
    #[error("malformed automaton: {0}")]
    Malformed(String),
    #[error("automata do not match: {0}")]
    Mismatch(String),
    #[error("string `{0}` is not generated by the system")]
    NotInLanguage(String),
    #[error("invalid insertion sequence: {0}")]
    InvalidInsertion(String),
    #[error("system has {states} states, the oracle accepts at most {limit}")]
    TooLarge { states: usize, limit: usize },
}
