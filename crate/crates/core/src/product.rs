use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::ToString;
use core::fmt;

use crate::automaton::{Automaton, AutomatonBuilder, StateId};
use crate::{Error, Result};

/// A state of an indicator automaton: the state the intruder believes the
/// system is in (`dummy`) and the state of the insertion automaton tracking
/// the real system (`actual`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndicatorState<F = StateId> {
    pub dummy: StateId,
    pub actual: F,
}

impl<F> IndicatorState<F> {
    pub fn new(dummy: impl Into<StateId>, actual: F) -> Self {
        IndicatorState { dummy: dummy.into(), actual }
    }
}

impl<F: fmt::Display> fmt::Display for IndicatorState<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.dummy, self.actual)
    }
}

/// Dashed product of a system `g` with one of its insertion automata.
///
/// Every label of `ins` moves the dummy component by the label's symbol in
/// `g` and the actual component by the label itself in `ins`; the move exists
/// iff both are defined. Only the accessible part is built. States whose
/// dummy is secret are marked secret.
pub(crate) fn dashed_product<F>(
    g: &Automaton,
    ins: &Automaton<F>,
) -> Result<Automaton<IndicatorState<F>>>
where
    F: Ord + Clone + fmt::Display,
{
    let x0 = g.require_system()?;
    let f0 = ins
        .initial_state()
        .filter(|_| ins.is_deterministic())
        .ok_or(Error::NotDeterministic)?;
    for l in ins.events() {
        if !g.events().contains(&l.masked()) {
            return Err(Error::Mismatch(alloc::format!(
                "insertion automaton label `{l}` has no counterpart in the system"
            )));
        }
    }

    let start = IndicatorState { dummy: x0.clone(), actual: f0.clone() };
    let mut b = AutomatonBuilder::new().events(ins.events().iter().cloned());
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    b.add_initial(start);
    while let Some(p) = queue.pop_front() {
        for (label, f_next) in ins.outgoing(&p.actual) {
            let Some(d_next) = g.successor(&p.dummy, &label.masked()) else {
                continue;
            };
            let q = IndicatorState { dummy: d_next.clone(), actual: f_next.clone() };
            if seen.insert(q.clone()) {
                queue.push_back(q.clone());
            }
            b.add_transition(p.clone(), label.clone(), q);
        }
        if g.is_secret(&p.dummy) {
            b.add_secret(p.clone());
        }
        b.add_state(p);
    }
    b.build().map_err(|e| Error::Mismatch(e.to_string()))
}
