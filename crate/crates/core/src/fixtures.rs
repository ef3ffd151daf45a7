//! The running example system used throughout the tests and documentation.

use crate::automaton::Automaton;
use crate::eic::InsertionConstraints;

/// Six-state DFA over `{a, b, c}` with initial state `0` and secret states
/// `{2, 3}`.
///
/// ```text
/// 0 -a-> 1   0 -b-> 3   0 -c-> 2   1 -a-> 1
/// 2 -a-> 4   3 -a-> 5   4 -b-> 2   5 -c-> 3
/// ```
///
/// It is not current-state opaque (`b` and `c` reveal the secret), cannot be
/// protected by insertion before outputs only, but can be protected once
/// insertion after outputs is allowed.
pub fn g1() -> Automaton {
    Automaton::system(
        ["0", "1", "2", "3", "4", "5"],
        ["a", "b", "c"],
        [
            ("0", "a", "1"),
            ("0", "b", "3"),
            ("0", "c", "2"),
            ("1", "a", "1"),
            ("2", "a", "4"),
            ("3", "a", "5"),
            ("4", "b", "2"),
            ("5", "c", "3"),
        ],
        "0",
        ["2", "3"],
    )
    .expect("fixture is well formed")
}

/// `b`, `c` may be inserted before an output and `a` after one.
pub fn g1_constraints() -> InsertionConstraints {
    InsertionConstraints::new(["b", "c"], ["a"])
}
