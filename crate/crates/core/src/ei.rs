//! Enforceability by unconstrained extended insertion.
//!
//! Pipeline: system `G` → insertion automaton `G^f` (inserted self-loops) →
//! indicator `G × G^f` tracking (dummy, actual) pairs → verifier (trapping
//! SCCs pruned to a fixpoint) → staying-nonblocking states → admissible
//! states → verdict.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::automaton::{Automaton, AutomatonBuilder, EventLabel, StateId, Tag};
use crate::product::{dashed_product, IndicatorState};
use crate::scc::strongly_connected_components;
use crate::{Error, Result};

/// Re-tags every label as actual: what the intruder sees.
pub fn mask(word: &[EventLabel]) -> Vec<EventLabel> {
    word.iter().map(EventLabel::masked).collect()
}

/// Keeps only actual labels: what the system really did.
pub fn erase_inserted(word: &[EventLabel]) -> Vec<EventLabel> {
    word.iter().filter(|l| l.is_actual()).cloned().collect()
}

/// Keeps only inserted labels.
pub fn erase_actual(word: &[EventLabel]) -> Vec<EventLabel> {
    word.iter().filter(|l| l.is_inserted()).cloned().collect()
}

/// `g` plus an inserted self-loop `e_i` at every state for every symbol `e`.
pub fn build_insertion_automaton(g: &Automaton) -> Result<Automaton> {
    let x0 = g.require_system()?;
    let inserted: Vec<EventLabel> = g.events().iter().map(|e| e.with_tag(Tag::Inserted)).collect();
    let mut b = AutomatonBuilder::new()
        .states(g.states().iter().cloned())
        .events(g.events().iter().cloned())
        .events(inserted.iter().cloned())
        .initial(x0.clone())
        .secrets(g.secret().iter().cloned());
    for (s, l, d) in g.edges() {
        b.add_transition(s.clone(), l.clone(), d.clone());
    }
    for s in g.states() {
        for l in &inserted {
            b.add_transition(s.clone(), l.clone(), s.clone());
        }
    }
    b.build()
}

/// Dashed product of `g` and its insertion automaton `gf`, accessible part.
pub fn build_indicator(g: &Automaton, gf: &Automaton) -> Result<Automaton<IndicatorState>> {
    if *gf != build_insertion_automaton(g)? {
        return Err(Error::Mismatch("second automaton is not the insertion automaton of the first".into()));
    }
    dashed_product(g, gf)
}

/// First- and second-level subspaces of an indicator or verifier.
///
/// `first_level[x]` holds the states whose actual component is `x`;
/// `second_level[x]` lists the SCCs of the inserted-edge subgraph on
/// `first_level[x]`, indexed by position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspacePartition {
    pub first_level: BTreeMap<StateId, BTreeSet<IndicatorState>>,
    pub second_level: BTreeMap<StateId, Vec<BTreeSet<IndicatorState>>>,
}

impl SubspacePartition {
    pub fn scc(&self, actual: &StateId, index: usize) -> Option<&BTreeSet<IndicatorState>> {
        self.second_level.get(actual).and_then(|v| v.get(index))
    }
}

pub fn partition_subspaces(ia: &Automaton<IndicatorState>) -> SubspacePartition {
    let mut first_level: BTreeMap<StateId, BTreeSet<IndicatorState>> = BTreeMap::new();
    for p in ia.states() {
        first_level.entry(p.actual.clone()).or_default().insert(p.clone());
    }
    let mut second_level = BTreeMap::new();
    for (x, members) in &first_level {
        let edges: BTreeSet<(IndicatorState, IndicatorState)> = members
            .iter()
            .flat_map(|p| {
                ia.outgoing(p)
                    .filter(|(l, q)| l.is_inserted() && members.contains(*q))
                    .map(move |(_, q)| (p.clone(), q.clone()))
            })
            .collect();
        let sccs = strongly_connected_components(members, &edges).expect("edges stay inside the subspace");
        second_level.insert(x.clone(), sccs.components().to_vec());
    }
    SubspacePartition { first_level, second_level }
}

fn enabled(g: &Automaton, x: &StateId) -> BTreeSet<EventLabel> {
    g.enabled_events(x).unwrap_or_default()
}

/// Second-level subspaces `(x_k, index)` that are trapping: no member has a
/// solid transition for any `e ∈ T(x_k)`, and every inserted transition
/// either stays in the SCC or is undefined. Subspaces of states with
/// `T(x_k) = ∅` are never trapping since no further output has to be
/// matched there.
pub fn find_trapping_sccs(
    g: &Automaton,
    ia: &Automaton<IndicatorState>,
    p: &SubspacePartition,
) -> BTreeSet<(StateId, usize)> {
    let mut out = BTreeSet::new();
    for (x, sccs) in &p.second_level {
        let t = enabled(g, x);
        if t.is_empty() {
            continue;
        }
        for (i, scc) in sccs.iter().enumerate() {
            let no_solid = scc.iter().all(|s| t.iter().all(|e| ia.successor(s, e).is_none()));
            let closed = scc.iter().all(|s| {
                ia.outgoing(s).filter(|(l, _)| l.is_inserted()).all(|(_, q)| scc.contains(q))
            });
            if no_solid && closed {
                out.insert((x.clone(), i));
            }
        }
    }
    out
}

/// Result of pruning an indicator into a verifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pruning<S> {
    pub verifier: Automaton<S>,
    /// Indicator states absent from the verifier.
    pub pruned: BTreeSet<S>,
    /// Pruning rounds that removed something.
    pub rounds: usize,
}

/// One pruning round: removes every currently trapping SCC.
pub fn prune_trapping_once(
    g: &Automaton,
    ia: &Automaton<IndicatorState>,
) -> (Automaton<IndicatorState>, BTreeSet<IndicatorState>) {
    let p = partition_subspaces(ia);
    let removed: BTreeSet<IndicatorState> = find_trapping_sccs(g, ia, &p)
        .iter()
        .flat_map(|(x, i)| p.scc(x, *i).into_iter().flatten().cloned())
        .collect();
    let keep: BTreeSet<IndicatorState> = ia.states().difference(&removed).cloned().collect();
    (ia.restrict(&keep), removed)
}

/// Iteratively prunes trapping SCCs, then keeps the accessible part.
pub fn prune_to_verifier(g: &Automaton, ia: &Automaton<IndicatorState>) -> Pruning<IndicatorState> {
    let mut current = ia.clone();
    let mut rounds = 0;
    loop {
        let (next, removed) = prune_trapping_once(g, &current);
        if removed.is_empty() {
            break;
        }
        current = next;
        rounds += 1;
    }
    let verifier = current.accessible_part();
    let pruned = ia.states().difference(verifier.states()).cloned().collect();
    Pruning { verifier, pruned, rounds }
}

/// The verifier of an indicator. Empty when the initial state is pruned.
pub fn build_verifier(g: &Automaton, ia: &Automaton<IndicatorState>) -> Automaton<IndicatorState> {
    prune_to_verifier(g, ia).verifier
}

/// States reachable from `from` by inserted labels only.
fn inserted_reach<F: Ord + Clone + core::fmt::Display>(
    v: &Automaton<IndicatorState<F>>,
    from: impl IntoIterator<Item = IndicatorState<F>>,
    allow: impl Fn(&EventLabel) -> bool,
) -> BTreeSet<IndicatorState<F>> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    for s in from {
        if seen.insert(s.clone()) {
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        for (l, q) in v.outgoing(&s) {
            if allow(l) && seen.insert(q.clone()) {
                queue.push_back(q.clone());
            }
        }
    }
    seen
}

pub(crate) fn bfs_reach<F: Ord + Clone + core::fmt::Display>(
    v: &Automaton<IndicatorState<F>>,
    from: IndicatorState<F>,
    allow: impl Fn(&EventLabel) -> bool,
) -> BTreeSet<IndicatorState<F>> {
    inserted_reach(v, [from], allow)
}

/// Union of the second-level SCCs of `v` that are staying nonblocking:
/// every `e ∈ T(x_k)` is solidly defined somewhere in the SCC or in a state
/// reachable from it by inserted events.
pub fn find_staying_nonblocking(g: &Automaton, v: &Automaton<IndicatorState>) -> BTreeSet<IndicatorState> {
    let p = partition_subspaces(v);
    let mut out = BTreeSet::new();
    for (x, sccs) in &p.second_level {
        let t = enabled(g, x);
        for scc in sccs {
            let reach = inserted_reach(v, scc.iter().cloned(), EventLabel::is_inserted);
            if t.iter().all(|e| reach.iter().any(|q| v.successor(q, e).is_some())) {
                out.extend(scc.iter().cloned());
            }
        }
    }
    out
}

/// Greatest subset of `candidates` in which every state can still answer
/// every `e ∈ T(x_k)` with a solid transition whose target is again in the
/// subset, after inserted events.
///
/// On systems where every solid target of a staying-nonblocking SCC is
/// itself staying nonblocking this returns `candidates` unchanged.
pub fn refine_staying_nonblocking(
    g: &Automaton,
    v: &Automaton<IndicatorState>,
    candidates: &BTreeSet<IndicatorState>,
) -> BTreeSet<IndicatorState> {
    let reach: BTreeMap<&IndicatorState, BTreeSet<IndicatorState>> = candidates
        .iter()
        .map(|p| (p, bfs_reach(v, p.clone(), EventLabel::is_inserted)))
        .collect();
    let mut current = candidates.clone();
    loop {
        let next: BTreeSet<IndicatorState> = current
            .iter()
            .filter(|p| {
                enabled(g, &p.actual).iter().all(|e| {
                    reach[p].iter().any(|q| v.successor(q, e).is_some_and(|t| current.contains(t)))
                })
            })
            .cloned()
            .collect();
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Staying-nonblocking states whose dummy is not secret.
pub fn admissible_states<F: Clone + Ord>(
    nonblocking: &BTreeSet<IndicatorState<F>>,
    secret: &BTreeSet<StateId>,
) -> BTreeSet<IndicatorState<F>> {
    nonblocking.iter().filter(|p| !secret.contains(&p.dummy)).cloned().collect()
}

/// A verifier state certifying an actual state, with the shortest modified
/// observation reaching it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness<S> {
    pub state: S,
    pub modified_observation: Vec<EventLabel>,
}

/// For each actual state, the admissible state reached first by a BFS of the
/// verifier (shortest, then lexicographically least modified observation).
pub(crate) fn witnesses<F>(
    v: &Automaton<IndicatorState<F>>,
    admissible: &BTreeSet<IndicatorState<F>>,
    base: impl Fn(&F) -> StateId,
) -> BTreeMap<StateId, Witness<IndicatorState<F>>>
where
    F: Ord + Clone + core::fmt::Display,
{
    let mut out = BTreeMap::new();
    let Some(start) = v.initial_state() else {
        return out;
    };
    let mut parent: BTreeMap<IndicatorState<F>, (IndicatorState<F>, EventLabel)> = BTreeMap::new();
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(p) = queue.pop_front() {
        let x = base(&p.actual);
        if admissible.contains(&p) && !out.contains_key(&x) {
            let mut word = Vec::new();
            let mut cur = &p;
            while let Some((prev, l)) = parent.get(cur) {
                word.push(l.clone());
                cur = prev;
            }
            word.reverse();
            out.insert(x, Witness { state: p.clone(), modified_observation: word });
        }
        for (l, q) in v.outgoing(&p) {
            if seen.insert(q.clone()) {
                parent.insert(q.clone(), (p.clone(), l.clone()));
                queue.push_back(q.clone());
            }
        }
    }
    out
}

/// Everything computed while deciding EI-enforceability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EiReport {
    pub enforceable: bool,
    pub indicator: Automaton<IndicatorState>,
    pub verifier: Automaton<IndicatorState>,
    pub pruned: BTreeSet<IndicatorState>,
    pub pruning_rounds: usize,
    /// States of staying-nonblocking SCCs, one pass over the verifier.
    pub single_pass_nonblocking: BTreeSet<IndicatorState>,
    /// `single_pass_nonblocking` refined to a fixpoint; the verdict uses this.
    pub staying_nonblocking: BTreeSet<IndicatorState>,
    pub admissible: BTreeSet<IndicatorState>,
    /// Actual states without an admissible verifier state.
    pub uncovered_actual_states: BTreeSet<StateId>,
    /// The uncovered states that the system cannot reach at all.
    pub unreachable_actual_states: BTreeSet<StateId>,
    pub witnesses: BTreeMap<StateId, Witness<IndicatorState>>,
}

/// Decides whether opacity of `g` can be enforced by extended insertion:
/// every actual state must have an admissible verifier state.
pub fn check_ei_enforceable(g: &Automaton) -> Result<EiReport> {
    let gf = build_insertion_automaton(g)?;
    let indicator = dashed_product(g, &gf)?;
    let Pruning { verifier, pruned, rounds } = prune_to_verifier(g, &indicator);
    let single_pass_nonblocking = find_staying_nonblocking(g, &verifier);
    let staying_nonblocking = refine_staying_nonblocking(g, &verifier, &single_pass_nonblocking);
    let admissible = admissible_states(&staying_nonblocking, g.secret());
    let covered: BTreeSet<&StateId> = admissible.iter().map(|p| &p.actual).collect();
    let uncovered_actual_states: BTreeSet<StateId> =
        g.states().iter().filter(|x| !covered.contains(x)).cloned().collect();
    let reachable = g.reachable_states();
    let unreachable_actual_states =
        uncovered_actual_states.iter().filter(|x| !reachable.contains(*x)).cloned().collect();
    let witnesses = witnesses(&verifier, &admissible, Clone::clone);
    Ok(EiReport {
        enforceable: uncovered_actual_states.is_empty(),
        indicator,
        verifier,
        pruned,
        pruning_rounds: rounds,
        single_pass_nonblocking,
        staying_nonblocking,
        admissible,
        uncovered_actual_states,
        unreachable_actual_states,
        witnesses,
    })
}
