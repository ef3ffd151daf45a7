//! Powerset observers and current-state opacity.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::automaton::{display_set, Automaton, AutomatonBuilder, EventLabel};
use crate::{Error, Result};

/// Erases every label outside `observable`, keeping order.
pub fn project(word: &[EventLabel], observable: &BTreeSet<EventLabel>) -> Vec<EventLabel> {
    word.iter().filter(|l| observable.contains(l)).cloned().collect()
}

/// A current state estimate: the set of source states consistent with an
/// observation. Displayed as `{0,1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Estimate<S>(pub BTreeSet<S>);

impl<S> Estimate<S> {
    pub fn states(&self) -> &BTreeSet<S> {
        &self.0
    }
}

impl<S: fmt::Display> fmt::Display for Estimate<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&display_set(&self.0))
    }
}

fn unobservable_reach<S: Ord + Clone + fmt::Display>(
    n: &Automaton<S>,
    from: impl IntoIterator<Item = S>,
    unobservable: &[&EventLabel],
) -> BTreeSet<S> {
    let mut seen: BTreeSet<S> = BTreeSet::new();
    let mut stack: Vec<S> = Vec::new();
    for s in from {
        if seen.insert(s.clone()) {
            stack.push(s);
        }
    }
    while let Some(s) = stack.pop() {
        for l in unobservable {
            for d in n.successors(&s, l) {
                if seen.insert(d.clone()) {
                    stack.push(d.clone());
                }
            }
        }
    }
    seen
}

/// Observer of `n` with respect to `observable`.
///
/// Only estimates reachable from the initial estimate are built. An estimate
/// is secret iff all of its states are secret in `n`.
pub fn build_observer<S>(
    n: &Automaton<S>,
    observable: &BTreeSet<EventLabel>,
) -> Result<Automaton<Estimate<S>>>
where
    S: Ord + Clone + fmt::Display,
{
    if let Some(l) = observable.iter().find(|l| !n.events().contains(l)) {
        return Err(Error::UnknownEvent(l.to_string()));
    }
    let unobservable: Vec<&EventLabel> = n.events().iter().filter(|l| !observable.contains(l)).collect();
    let start = Estimate(unobservable_reach(n, n.initial().iter().cloned(), &unobservable));

    let mut b = AutomatonBuilder::new().events(observable.iter().cloned());
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    b.add_initial(start);
    while let Some(est) = queue.pop_front() {
        for l in observable {
            let step = est.0.iter().flat_map(|s| n.successors(s, l).cloned());
            let next = unobservable_reach(n, step, &unobservable);
            if next.is_empty() {
                continue;
            }
            let next = Estimate(next);
            if seen.insert(next.clone()) {
                queue.push_back(next.clone());
            }
            b.add_transition(est.clone(), l.clone(), next);
        }
        if !est.0.is_empty() && est.0.iter().all(|s| n.is_secret(s)) {
            b.add_secret(est.clone());
        }
        b.add_state(est);
    }
    b.build()
}

/// Outcome of a current-state opacity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpacityVerdict<S> {
    pub opaque: bool,
    /// Reachable estimates made only of secret states.
    pub violating_estimates: BTreeSet<Estimate<S>>,
    /// Shortest, then lexicographically least, observation reaching a
    /// violating estimate.
    pub witness: Option<Vec<EventLabel>>,
    /// The violating estimate that `witness` leads to.
    pub witness_estimate: Option<Estimate<S>>,
}

/// Current-state opacity of `n` under observation `observable`.
pub fn check_current_state_opacity<S>(
    n: &Automaton<S>,
    observable: &BTreeSet<EventLabel>,
) -> Result<OpacityVerdict<S>>
where
    S: Ord + Clone + fmt::Display,
{
    let obs = build_observer(n, observable)?;
    let violating_estimates: BTreeSet<Estimate<S>> = obs.secret().clone();
    let mut witness = None;
    let mut witness_estimate = None;
    if !violating_estimates.is_empty() {
        // BFS with ordered expansion reaches every estimate first by its
        // shortest, lexicographically least observation.
        let start = obs.initial_state().expect("observer has one initial estimate").clone();
        let mut parent: BTreeMap<Estimate<S>, (Estimate<S>, EventLabel)> = BTreeMap::new();
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(est) = queue.pop_front() {
            if obs.is_secret(&est) {
                let mut word = Vec::new();
                let mut cur = &est;
                while let Some((p, l)) = parent.get(cur) {
                    word.push(l.clone());
                    cur = p;
                }
                word.reverse();
                witness = Some(word);
                witness_estimate = Some(est);
                break;
            }
            for (l, next) in obs.outgoing(&est) {
                if seen.insert(next.clone()) {
                    parent.insert(next.clone(), (est.clone(), l.clone()));
                    queue.push_back(next.clone());
                }
            }
        }
    }
    Ok(OpacityVerdict { opaque: violating_estimates.is_empty(), violating_estimates, witness, witness_estimate })
}

/// Whether an observation ends in a safe state, a secret state, or is not
/// generated at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Safe,
    Unsafe,
    NotInLanguage,
}

/// Classifies `word` against `g`. For a nondeterministic `g` the word is
/// safe when some reached state is not secret.
pub fn classify_observation<S>(g: &Automaton<S>, word: &[EventLabel]) -> Classification
where
    S: Ord + Clone + fmt::Display,
{
    let reached = g.run_initial(word);
    if reached.is_empty() {
        Classification::NotInLanguage
    } else if reached.iter().all(|s| g.is_secret(s)) {
        Classification::Unsafe
    } else {
        Classification::Safe
    }
}
