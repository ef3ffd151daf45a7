//! Enforceability under event insertion constraints.
//!
//! Only symbols in `before` may be inserted ahead of a real output and only
//! symbols in `after` may follow one. The insertion automaton records where
//! in that grammar the defender currently is through a decoration on each
//! state, and the verifier prunes dead ends state by state.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use core::fmt;

use crate::automaton::{Automaton, AutomatonBuilder, EventLabel, StateId, Tag};
use crate::ei::{admissible_states, bfs_reach, witnesses, Pruning, Witness};
use crate::product::{dashed_product, IndicatorState};
use crate::{Error, Result};

/// Symbols insertable before (`before`) and after (`after`) a real output.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct InsertionConstraints {
    pub before: BTreeSet<String>,
    pub after: BTreeSet<String>,
}

impl InsertionConstraints {
    pub fn new<B, A>(before: B, after: A) -> Self
    where
        B: IntoIterator,
        B::Item: Into<String>,
        A: IntoIterator,
        A::Item: Into<String>,
    {
        InsertionConstraints {
            before: before.into_iter().map(Into::into).collect(),
            after: after.into_iter().map(Into::into).collect(),
        }
    }

    /// Every symbol of `g` insertable on both sides.
    pub fn unrestricted(g: &Automaton) -> Self {
        let syms: BTreeSet<String> = g.symbols().into_iter().map(String::from).collect();
        InsertionConstraints { before: syms.clone(), after: syms }
    }

    /// Fails with [`Error::UnknownSymbol`] if a symbol is not in `g`'s alphabet.
    pub fn validate(&self, g: &Automaton) -> Result<()> {
        let syms = g.symbols();
        match self.before.iter().chain(&self.after).find(|s| !syms.contains(s.as_str())) {
            Some(s) => Err(Error::UnknownSymbol(s.clone())),
            None => Ok(()),
        }
    }

    fn before_labels(&self) -> impl Iterator<Item = EventLabel> + '_ {
        self.before.iter().map(EventLabel::before)
    }

    fn after_labels(&self) -> impl Iterator<Item = EventLabel> + '_ {
        self.after.iter().map(EventLabel::after)
    }
}

/// Position in the `before* e after*` insertion grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Decoration {
    /// Right after a real output (or at the start), nothing inserted yet.
    Plain,
    /// After-insertions have been made.
    After,
    /// Before-insertions have been made, no after-insertions.
    Before,
    /// After-insertions followed by before-insertions.
    AfterBefore,
    /// The start state when it can be re-entered later: only
    /// before-insertions are possible since no output has happened yet.
    Initial,
}

impl Decoration {
    pub fn suffix(self) -> &'static str {
        match self {
            Decoration::Plain => "",
            Decoration::After => "_a",
            Decoration::Before => "_b",
            Decoration::AfterBefore => "_ab",
            Decoration::Initial => "_init",
        }
    }

    /// Where an inserted label of tag `tag` leads, if allowed.
    fn next(self, tag: Tag) -> Option<Decoration> {
        use Decoration::*;
        match (self, tag) {
            (Plain, Tag::InsertedAfter) | (After, Tag::InsertedAfter) => Some(After),
            (Plain, Tag::InsertedBefore) | (Before, Tag::InsertedBefore) | (Initial, Tag::InsertedBefore) => {
                Some(Before)
            }
            (After, Tag::InsertedBefore) | (AfterBefore, Tag::InsertedBefore) => Some(AfterBefore),
            _ => None,
        }
    }
}

/// A state of the constrained insertion automaton.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecoratedState {
    pub base: StateId,
    pub decoration: Decoration,
}

impl DecoratedState {
    pub fn new(base: impl Into<StateId>, decoration: Decoration) -> Self {
        DecoratedState { base: base.into(), decoration }
    }

    pub fn plain(base: impl Into<StateId>) -> Self {
        Self::new(base, Decoration::Plain)
    }
}

impl fmt::Display for DecoratedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.base, self.decoration.suffix())
    }
}

pub type EicIndicatorState = IndicatorState<DecoratedState>;

/// Builds the constrained insertion automaton of `g`.
///
/// Decorated copies exist only where the constraints allow reaching them.
/// When `F(x0) = ∅` the copies `x0_a` and `x0_ab` are dropped, since the
/// start state is then never re-entered after an output. When `F(x0) ≠ ∅`
/// and after-insertion is allowed, the automaton starts in `x0_init`, a copy
/// of `x0` without after-insertions.
pub fn build_eic_insertion_automaton(g: &Automaton, c: &InsertionConstraints) -> Result<Automaton<DecoratedState>> {
    let x0 = g.require_system()?.clone();
    c.validate(g)?;
    let reenterable = !g.incoming_events(&x0)?.is_empty();
    let use_initial = reenterable && !c.after.is_empty();

    let mut decorations = alloc::vec![Decoration::Plain];
    if !c.after.is_empty() {
        decorations.push(Decoration::After);
    }
    if !c.before.is_empty() {
        decorations.push(Decoration::Before);
    }
    if !c.after.is_empty() && !c.before.is_empty() {
        decorations.push(Decoration::AfterBefore);
    }
    let exists = |x: &StateId, d: Decoration| match d {
        Decoration::After | Decoration::AfterBefore => *x != x0 || reenterable,
        Decoration::Initial => *x == x0 && use_initial,
        _ => true,
    };

    let start = DecoratedState::new(x0.clone(), if use_initial { Decoration::Initial } else { Decoration::Plain });
    let mut b = AutomatonBuilder::new()
        .events(g.events().iter().cloned())
        .events(c.before_labels())
        .events(c.after_labels())
        .initial(start);
    let inserted: alloc::vec::Vec<EventLabel> = c.before_labels().chain(c.after_labels()).collect();
    let all_decorations = decorations.iter().copied().chain(use_initial.then_some(Decoration::Initial));
    let all_decorations: alloc::vec::Vec<Decoration> = all_decorations.collect();
    for x in g.states() {
        for &d in &all_decorations {
            if !exists(x, d) {
                continue;
            }
            let here = DecoratedState::new(x.clone(), d);
            b.add_state(here.clone());
            if g.is_secret(x) {
                b.add_secret(here.clone());
            }
            for (e, y) in g.outgoing(x) {
                b.add_transition(here.clone(), e.clone(), DecoratedState::plain(y.clone()));
            }
            for l in &inserted {
                if let Some(nd) = d.next(l.tag()).filter(|nd| exists(x, *nd)) {
                    b.add_transition(here.clone(), l.clone(), DecoratedState::new(x.clone(), nd));
                }
            }
        }
    }
    b.build()
}

/// Constraints implied by the inserted labels in `geic`'s alphabet.
fn constraints_of(geic: &Automaton<DecoratedState>) -> InsertionConstraints {
    let pick = |tag| geic.events().iter().filter(|l| l.tag() == tag).map(|l| String::from(l.symbol())).collect();
    InsertionConstraints { before: pick(Tag::InsertedBefore), after: pick(Tag::InsertedAfter) }
}

/// Dashed product of `g` and its constrained insertion automaton.
pub fn build_eic_indicator(g: &Automaton, geic: &Automaton<DecoratedState>) -> Result<Automaton<EicIndicatorState>> {
    if *geic != build_eic_insertion_automaton(g, &constraints_of(geic))? {
        return Err(Error::Mismatch("second automaton is not a constrained insertion automaton of the first".into()));
    }
    dashed_product(g, geic)
}

fn enabled(g: &Automaton, x: &StateId) -> BTreeSet<EventLabel> {
    g.enabled_events(x).unwrap_or_default()
}

/// States with no outgoing transition at all whose actual base still has
/// outputs to match. A dead end at a base with `T(x) = ∅` is not trapping:
/// nothing further has to be matched there.
pub fn find_eic_trapping_states(g: &Automaton, eia: &Automaton<EicIndicatorState>) -> BTreeSet<EicIndicatorState> {
    eia.states()
        .iter()
        .filter(|p| eia.outgoing(p).next().is_none() && !enabled(g, &p.actual.base).is_empty())
        .cloned()
        .collect()
}

/// Prunes trapping states to a fixpoint, then keeps the accessible part.
pub fn prune_eic_verifier(g: &Automaton, eia: &Automaton<EicIndicatorState>) -> Pruning<EicIndicatorState> {
    let mut current = eia.clone();
    let mut rounds = 0;
    loop {
        let trapping = find_eic_trapping_states(g, &current);
        if trapping.is_empty() {
            break;
        }
        let keep = current.states().difference(&trapping).cloned().collect();
        current = current.restrict(&keep);
        rounds += 1;
    }
    let verifier = current.accessible_part();
    let pruned = eia.states().difference(verifier.states()).cloned().collect();
    Pruning { verifier, pruned, rounds }
}

pub fn build_eic_verifier(g: &Automaton, eia: &Automaton<EicIndicatorState>) -> Automaton<EicIndicatorState> {
    prune_eic_verifier(g, eia).verifier
}

/// Which clause makes a state staying nonblocking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NonblockingType {
    /// Plain actual component, follow-ons in the before-decorated copy.
    Type1,
    /// After-decorated actual component, follow-ons in the after-before copy.
    Type2,
}

fn candidate_type(p: &EicIndicatorState) -> Option<NonblockingType> {
    match p.actual.decoration {
        Decoration::Plain | Decoration::Initial => Some(NonblockingType::Type1),
        Decoration::After => Some(NonblockingType::Type2),
        _ => None,
    }
}

fn is_before(l: &EventLabel) -> bool {
    l.tag() == Tag::InsertedBefore
}

fn is_after(l: &EventLabel) -> bool {
    l.tag() == Tag::InsertedAfter
}

/// Plain and after-decorated states where every `e ∈ T(x_k)` is solidly
/// defined at the state or at one of its follow-on states (reached by
/// before-insertions).
pub fn find_staying_eic_nonblocking(
    g: &Automaton,
    ev: &Automaton<EicIndicatorState>,
) -> BTreeMap<EicIndicatorState, NonblockingType> {
    ev.states()
        .iter()
        .filter_map(|p| {
            let kind = candidate_type(p)?;
            let reach = bfs_reach(ev, p.clone(), is_before);
            enabled(g, &p.actual.base)
                .iter()
                .all(|e| reach.iter().any(|q| ev.successor(q, e).is_some()))
                .then(|| (p.clone(), kind))
        })
        .collect()
}

/// Greatest subset of `candidates` whose members can answer every
/// `e ∈ T(x_k)` by before-insertions and `e`, then reach the subset again by
/// after-insertions.
pub fn refine_staying_eic_nonblocking(
    g: &Automaton,
    ev: &Automaton<EicIndicatorState>,
    candidates: &BTreeMap<EicIndicatorState, NonblockingType>,
) -> BTreeMap<EicIndicatorState, NonblockingType> {
    let before: BTreeMap<&EicIndicatorState, BTreeSet<EicIndicatorState>> =
        candidates.keys().map(|p| (p, bfs_reach(ev, p.clone(), is_before))).collect();
    let mut after_cache: BTreeMap<EicIndicatorState, BTreeSet<EicIndicatorState>> = BTreeMap::new();
    let mut current = candidates.clone();
    loop {
        let mut next = BTreeMap::new();
        for (p, kind) in &current {
            let ok = enabled(g, &p.actual.base).iter().all(|e| {
                before[p].iter().filter_map(|q| ev.successor(q, e)).any(|t| {
                    after_cache
                        .entry(t.clone())
                        .or_insert_with(|| bfs_reach(ev, t.clone(), is_after))
                        .iter()
                        .any(|r| current.contains_key(r))
                })
            });
            if ok {
                next.insert(p.clone(), *kind);
            }
        }
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Staying nonblocking states whose dummy is not secret.
pub fn eic_admissible_states(
    nonblocking: &BTreeMap<EicIndicatorState, NonblockingType>,
    secret: &BTreeSet<StateId>,
) -> BTreeSet<EicIndicatorState> {
    admissible_states(&nonblocking.keys().cloned().collect(), secret)
}

/// Everything computed while deciding EIC-enforceability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EicReport {
    pub enforceable: bool,
    pub constraints: InsertionConstraints,
    pub indicator: Automaton<EicIndicatorState>,
    /// Trapping states of the unpruned indicator.
    pub trapping: BTreeSet<EicIndicatorState>,
    pub verifier: Automaton<EicIndicatorState>,
    pub pruned: BTreeSet<EicIndicatorState>,
    pub pruning_rounds: usize,
    pub single_pass_nonblocking: BTreeMap<EicIndicatorState, NonblockingType>,
    /// Refined to a fixpoint; the verdict uses this.
    pub staying_nonblocking: BTreeMap<EicIndicatorState, NonblockingType>,
    pub admissible: BTreeSet<EicIndicatorState>,
    pub uncovered_actual_states: BTreeSet<StateId>,
    pub unreachable_actual_states: BTreeSet<StateId>,
    pub witnesses: BTreeMap<StateId, Witness<EicIndicatorState>>,
}

/// Decides whether opacity of `g` can be enforced by insertions respecting
/// `c`: every actual state needs an admissible state in its subspace.
pub fn check_eic_enforceable(g: &Automaton, c: &InsertionConstraints) -> Result<EicReport> {
    let geic = build_eic_insertion_automaton(g, c)?;
    let indicator = dashed_product(g, &geic)?;
    let trapping = find_eic_trapping_states(g, &indicator);
    let Pruning { verifier, pruned, rounds } = prune_eic_verifier(g, &indicator);
    let single_pass_nonblocking = find_staying_eic_nonblocking(g, &verifier);
    let staying_nonblocking = refine_staying_eic_nonblocking(g, &verifier, &single_pass_nonblocking);
    let admissible = eic_admissible_states(&staying_nonblocking, g.secret());
    let covered: BTreeSet<&StateId> = admissible.iter().map(|p| &p.actual.base).collect();
    let uncovered_actual_states: BTreeSet<StateId> =
        g.states().iter().filter(|x| !covered.contains(x)).cloned().collect();
    let reachable = g.reachable_states();
    let unreachable_actual_states =
        uncovered_actual_states.iter().filter(|x| !reachable.contains(*x)).cloned().collect();
    let witnesses = witnesses(&verifier, &admissible, |d: &DecoratedState| d.base.clone());
    Ok(EicReport {
        enforceable: uncovered_actual_states.is_empty(),
        constraints: c.clone(),
        indicator,
        trapping,
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::labels;
    use crate::ei::check_ei_enforceable;
    use crate::fixtures::{g1, g1_constraints};
    use alloc::string::ToString;
    use alloc::vec::Vec;

    fn dec(s: &str) -> DecoratedState {
        let (base, d) = match s.split_once('_') {
            None => (s, Decoration::Plain),
            Some((b, "a")) => (b, Decoration::After),
            Some((b, "b")) => (b, Decoration::Before),
            Some((b, "ab")) => (b, Decoration::AfterBefore),
            Some((b, "init")) => (b, Decoration::Initial),
            _ => panic!("bad decorated state {s}"),
        };
        DecoratedState::new(base, d)
    }

    fn st(d: &str, a: &str) -> EicIndicatorState {
        IndicatorState::new(d, dec(a))
    }

    fn sts(list: &[(&str, &str)]) -> BTreeSet<EicIndicatorState> {
        list.iter().map(|(d, a)| st(d, a)).collect()
    }

    fn g1_indicator() -> Automaton<EicIndicatorState> {
        let g = g1();
        build_eic_indicator(&g, &build_eic_insertion_automaton(&g, &g1_constraints()).unwrap()).unwrap()
    }

    #[test]
    fn constraints_validate_against_alphabet() {
        let g = g1();
        assert!(g1_constraints().validate(&g).is_ok());
        let bad = InsertionConstraints::new(["z"], Vec::<String>::new());
        assert_eq!(bad.validate(&g), Err(Error::UnknownSymbol("z".into())));
        assert_eq!(build_eic_insertion_automaton(&g, &bad), Err(Error::UnknownSymbol("z".into())));
        assert_eq!(InsertionConstraints::unrestricted(&g).before.len(), 3);
    }

    #[test]
    fn decorated_display() {
        assert_eq!(dec("4_ab").to_string(), "4_ab");
        assert_eq!(st("4", "2_a").to_string(), "(4,2_a)");
        assert_eq!(dec("0_init").to_string(), "0_init");
    }

    #[test]
    fn insertion_automaton_of_g1() {
        let g = g1();
        let geic = build_eic_insertion_automaton(&g, &g1_constraints()).unwrap();
        assert_eq!(geic.initial_state(), Some(&dec("0")));
        assert!(!geic.states().contains(&dec("0_a")) && !geic.states().contains(&dec("0_ab")));
        assert_eq!(geic.states().len(), 6 * 4 - 2);
        assert_eq!(geic.successor(&dec("0"), &EventLabel::actual("a")), Some(&dec("1")));
        assert_eq!(geic.successor(&dec("0_b"), &EventLabel::actual("a")), Some(&dec("1")));
        assert_eq!(geic.successor(&dec("0"), &EventLabel::after("a")), None);
        assert_eq!(geic.successor(&dec("0"), &EventLabel::before("b")), Some(&dec("0_b")));
        assert_eq!(geic.successor(&dec("2"), &EventLabel::after("a")), Some(&dec("2_a")));
        assert_eq!(geic.successor(&dec("2_a"), &EventLabel::before("c")), Some(&dec("2_ab")));
        assert_eq!(geic.successor(&dec("2_b"), &EventLabel::after("a")), None);
        assert_eq!(geic.successor(&dec("2_ab"), &EventLabel::after("a")), None);
        assert!(geic.is_deterministic());
    }

    #[test]
    fn decorations_follow_the_grammar() {
        let g = g1();
        let geic = build_eic_insertion_automaton(&g, &InsertionConstraints::unrestricted(&g)).unwrap();
        for (s, l, d) in geic.edges() {
            if l.is_actual() {
                assert_eq!(d.decoration, Decoration::Plain);
                continue;
            }
            assert_eq!(s.base, d.base);
            match s.decoration {
                Decoration::Before | Decoration::AfterBefore => assert_eq!(l.tag(), Tag::InsertedBefore),
                _ => {}
            }
        }
    }

    #[test]
    fn no_insertions_gives_the_system() {
        let g = g1();
        let geic = build_eic_insertion_automaton(&g, &InsertionConstraints::default()).unwrap();
        let back = geic.map_states(|d| d.base.clone()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn reenterable_start_keeps_after_copies() {
        let g = Automaton::system(["0", "1"], ["a", "b"], [("0", "a", "1"), ("1", "b", "0")], "0", ["1"]).unwrap();
        let c = InsertionConstraints::new(["a"], ["b"]);
        let geic = build_eic_insertion_automaton(&g, &c).unwrap();
        assert_eq!(geic.initial_state(), Some(&dec("0_init")));
        for s in ["0", "0_a", "0_b", "0_ab"] {
            assert!(geic.states().contains(&dec(s)), "{s}");
        }
        assert_eq!(geic.successor(&dec("0_init"), &EventLabel::after("b")), None);
        assert_eq!(geic.successor(&dec("0_init"), &EventLabel::before("a")), Some(&dec("0_b")));
        assert_eq!(geic.successor(&dec("0"), &EventLabel::after("b")), Some(&dec("0_a")));
        let before_only = build_eic_insertion_automaton(&g, &InsertionConstraints::new(["a"], Vec::<String>::new())).unwrap();
        assert_eq!(before_only.initial_state(), Some(&dec("0")));
    }

    #[test]
    fn indicator_of_g1() {
        let ia = g1_indicator();
        assert!(ia.states().contains(&st("2", "0_b")) && ia.states().contains(&st("3", "0_b")));
        assert!(ia.states().contains(&st("4", "2_a")));
        assert_eq!(ia.successor(&st("1", "1_a"), &EventLabel::before("b")), None);
        assert_eq!(ia.successor(&st("2", "2"), &EventLabel::after("a")), Some(&st("4", "2_a")));
    }

    #[test]
    fn indicator_rejects_other_automata() {
        let g = g1();
        let other = build_eic_insertion_automaton(&Automaton::system(["0"], ["a"], [], "0", []).unwrap(), &InsertionConstraints::default())
            .unwrap();
        assert!(matches!(build_eic_indicator(&g, &other), Err(Error::Mismatch(_))));
    }

    #[test]
    fn trapping_states_of_g1() {
        let g = g1();
        let ia = g1_indicator();
        assert_eq!(find_eic_trapping_states(&g, &ia), sts(&[("2", "4_b"), ("3", "5_b")]));
        for p in ia.states() {
            if ia.outgoing(p).any(|(l, _)| l.is_actual()) {
                assert!(!find_eic_trapping_states(&g, &ia).contains(p));
            }
        }
    }

    #[test]
    fn silent_system_has_no_trapping_state() {
        let g = Automaton::system(["0"], [], [], "0", []).unwrap();
        let geic = build_eic_insertion_automaton(&g, &InsertionConstraints::default()).unwrap();
        let ia = build_eic_indicator(&g, &geic).unwrap();
        assert!(find_eic_trapping_states(&g, &ia).is_empty());
        assert!(check_eic_enforceable(&g, &InsertionConstraints::default()).unwrap().enforceable);
    }

    #[test]
    fn g1_constrained_reproduces_the_worked_example() {
        let g = g1();
        let ia = g1_indicator();
        let pr = prune_eic_verifier(&g, &ia);
        assert!(pr.pruned.contains(&st("2", "4_b")) && pr.pruned.contains(&st("3", "5_b")));
        let nb = find_staying_eic_nonblocking(&g, &pr.verifier);
        let expected = sts(&[
            ("0", "0"), ("1", "1"), ("4", "1"), ("5", "1"), ("2", "2"), ("3", "3"), ("4", "4"),
            ("5", "5"), ("1", "1_a"), ("4", "2_a"), ("5", "3_a"),
        ]);
        assert_eq!(nb.keys().cloned().collect::<BTreeSet<_>>(), expected);
        assert_eq!(nb[&st("4", "1")], NonblockingType::Type1);
        assert_eq!(nb[&st("4", "2_a")], NonblockingType::Type2);
        assert_eq!(bfs_reach(&pr.verifier, st("4", "1"), is_before), sts(&[("4", "1"), ("2", "1_b")]));
        assert_eq!(bfs_reach(&pr.verifier, st("4", "2_a"), is_before), sts(&[("4", "2_a"), ("2", "2_ab")]));
        assert_eq!(refine_staying_eic_nonblocking(&g, &pr.verifier, &nb), nb);
        let adm = eic_admissible_states(&nb, g.secret());
        assert_eq!(
            adm,
            sts(&[("0", "0"), ("1", "1"), ("4", "1"), ("5", "1"), ("1", "1_a"), ("4", "2_a"), ("5", "3_a"), ("4", "4"), ("5", "5")])
        );
        assert_eq!(eic_admissible_states(&nb, &BTreeSet::new()), expected);
    }

    #[test]
    fn g1_verdicts() {
        let g = g1();
        let r = check_eic_enforceable(&g, &g1_constraints()).unwrap();
        assert!(r.enforceable);
        assert_eq!(r.admissible.len(), 9);
        assert_eq!(r.witnesses[&StateId::from("2")].state, st("4", "2_a"));
        assert_eq!(r.witnesses[&StateId::from("2")].modified_observation, labels("c a_ai"));

        let before_only = InsertionConstraints::new(["a", "b", "c"], Vec::<String>::new());
        let r = check_eic_enforceable(&g, &before_only).unwrap();
        assert!(!r.enforceable);
        assert!(r.uncovered_actual_states.contains(&StateId::from("2")));

        let r = check_eic_enforceable(&g, &InsertionConstraints::default()).unwrap();
        assert!(!r.enforceable);
    }

    #[test]
    fn unrestricted_agrees_with_ei_on_g1() {
        let g = g1();
        let eic = check_eic_enforceable(&g, &InsertionConstraints::unrestricted(&g)).unwrap();
        assert_eq!(eic.enforceable, check_ei_enforceable(&g).unwrap().enforceable);
    }

    #[test]
    fn dead_end_chain_needs_two_rounds() {
        // (1,0_b) only leads to (3,2), where dummy 3 cannot answer c.
        let g = Automaton::system(
            ["0", "1", "2", "3"],
            ["a", "b", "c"],
            [("0", "a", "1"), ("0", "b", "2"), ("1", "b", "3"), ("2", "c", "2")],
            "0",
            [],
        )
        .unwrap();
        let c = InsertionConstraints::new(["a"], Vec::<String>::new());
        let ia = build_eic_indicator(&g, &build_eic_insertion_automaton(&g, &c).unwrap()).unwrap();
        assert_eq!(find_eic_trapping_states(&g, &ia), sts(&[("3", "2")]));
        let pr = prune_eic_verifier(&g, &ia);
        assert_eq!(pr.rounds, 2);
        assert_eq!(pr.pruned, sts(&[("3", "2"), ("1", "0_b")]));
        let once: BTreeSet<_> = ia.states().difference(&sts(&[("3", "2")])).cloned().collect();
        assert_ne!(ia.restrict(&once).accessible_part(), pr.verifier);
        assert_eq!(build_eic_verifier(&g, &pr.verifier), pr.verifier);
    }
}
