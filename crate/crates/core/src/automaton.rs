//! Finite automata with tagged event labels.
//!
//! An [`Automaton`] is a possibly nondeterministic, possibly partial
//! transition structure over a finite alphabet of [`EventLabel`]s. Missing
//! map entries mean "undefined"; there is no explicit dead state. All sets are
//! ordered so iteration, derived automata and reports are deterministic.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Identifier of a state in a system automaton.
///
/// Ordering is by display name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(String);

impl StateId {
    pub fn new(name: impl Into<String>) -> Self {
        StateId(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl core::borrow::Borrow<str> for StateId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl From<&str> for StateId {
    fn from(name: &str) -> Self {
        StateId::new(name)
    }
}

impl From<String> for StateId {
    fn from(name: String) -> Self {
        StateId(name)
    }
}

/// How an event reached the intruder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    /// Generated by the system.
    Actual,
    /// Inserted by an unconstrained insertion function.
    Inserted,
    /// Inserted before an actual output.
    InsertedBefore,
    /// Inserted after an actual output.
    InsertedAfter,
}

impl Tag {
    pub fn is_inserted(self) -> bool {
        self != Tag::Actual
    }

    /// Display suffix: `a`, `a_i`, `a_bi`, `a_ai`.
    pub fn suffix(self) -> &'static str {
        match self {
            Tag::Actual => "",
            Tag::Inserted => "_i",
            Tag::InsertedBefore => "_bi",
            Tag::InsertedAfter => "_ai",
        }
    }
}

/// An event symbol together with its [`Tag`].
///
/// Two labels look the same to the intruder iff their symbols match.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventLabel {
    symbol: String,
    tag: Tag,
}

impl EventLabel {
    pub fn new(symbol: impl Into<String>, tag: Tag) -> Self {
        EventLabel { symbol: symbol.into(), tag }
    }

    pub fn actual(symbol: impl Into<String>) -> Self {
        Self::new(symbol, Tag::Actual)
    }

    pub fn inserted(symbol: impl Into<String>) -> Self {
        Self::new(symbol, Tag::Inserted)
    }

    pub fn before(symbol: impl Into<String>) -> Self {
        Self::new(symbol, Tag::InsertedBefore)
    }

    pub fn after(symbol: impl Into<String>) -> Self {
        Self::new(symbol, Tag::InsertedAfter)
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn tag(&self) -> Tag {
        self.tag
    }

    pub fn is_actual(&self) -> bool {
        self.tag == Tag::Actual
    }

    pub fn is_inserted(&self) -> bool {
        self.tag.is_inserted()
    }

    /// The same symbol re-tagged as an actual event.
    pub fn masked(&self) -> EventLabel {
        self.with_tag(Tag::Actual)
    }

    pub fn with_tag(&self, tag: Tag) -> EventLabel {
        EventLabel { symbol: self.symbol.clone(), tag }
    }

    pub fn looks_like(&self, other: &EventLabel) -> bool {
        self.symbol == other.symbol
    }
}

impl fmt::Display for EventLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.symbol, self.tag.suffix())
    }
}

/// Parses a whitespace-free word such as `c` or `a_i` into labels, one per
/// character of the symbol part. Only meant for single-character alphabets in
/// tests and examples: `"c_i a_i b"` becomes `[c_i, a_i, b]`.
pub fn labels(word: &str) -> Vec<EventLabel> {
    word.split_whitespace()
        .flat_map(|tok| {
            let (body, tag) = if let Some(b) = tok.strip_suffix("_bi") {
                (b, Tag::InsertedBefore)
            } else if let Some(b) = tok.strip_suffix("_ai") {
                (b, Tag::InsertedAfter)
            } else if let Some(b) = tok.strip_suffix("_i") {
                (b, Tag::Inserted)
            } else {
                (tok, Tag::Actual)
            };
            body.chars()
                .map(move |c| EventLabel::new(c.to_string(), tag))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Renders a label sequence as space separated display forms.
pub fn word_to_string(word: &[EventLabel]) -> String {
    word.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

/// A finite automaton over states of type `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton<S = StateId> {
    states: BTreeSet<S>,
    events: BTreeSet<EventLabel>,
    transitions: BTreeMap<S, BTreeMap<EventLabel, BTreeSet<S>>>,
    initial: BTreeSet<S>,
    secret: BTreeSet<S>,
    deterministic: bool,
}

/// Incremental, validating constructor for [`Automaton`].
#[derive(Debug, Clone)]
pub struct AutomatonBuilder<S> {
    states: BTreeSet<S>,
    events: BTreeSet<EventLabel>,
    transitions: Vec<(S, EventLabel, S)>,
    initial: BTreeSet<S>,
    secret: BTreeSet<S>,
}

impl<S: Ord + Clone + fmt::Display> Default for AutomatonBuilder<S> {
    fn default() -> Self {
        AutomatonBuilder {
            states: BTreeSet::new(),
            events: BTreeSet::new(),
            transitions: Vec::new(),
            initial: BTreeSet::new(),
            secret: BTreeSet::new(),
        }
    }
}

impl<S: Ord + Clone + fmt::Display> AutomatonBuilder<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn state(mut self, s: impl Into<S>) -> Self {
        self.states.insert(s.into());
        self
    }

    pub fn states<I: IntoIterator<Item = T>, T: Into<S>>(mut self, it: I) -> Self {
        self.states.extend(it.into_iter().map(Into::into));
        self
    }

    pub fn event(mut self, e: EventLabel) -> Self {
        self.events.insert(e);
        self
    }

    pub fn events<I: IntoIterator<Item = EventLabel>>(mut self, it: I) -> Self {
        self.events.extend(it);
        self
    }

    pub fn transition(mut self, src: impl Into<S>, label: EventLabel, dst: impl Into<S>) -> Self {
        self.transitions.push((src.into(), label, dst.into()));
        self
    }

    pub fn initial(mut self, s: impl Into<S>) -> Self {
        self.initial.insert(s.into());
        self
    }

    pub fn secret(mut self, s: impl Into<S>) -> Self {
        self.secret.insert(s.into());
        self
    }

    pub fn secrets<I: IntoIterator<Item = T>, T: Into<S>>(mut self, it: I) -> Self {
        self.secret.extend(it.into_iter().map(Into::into));
        self
    }

    pub fn add_state(&mut self, s: S) {
        self.states.insert(s);
    }

    pub fn add_event(&mut self, e: EventLabel) {
        self.events.insert(e);
    }

    pub fn add_transition(&mut self, src: S, label: EventLabel, dst: S) {
        self.transitions.push((src, label, dst));
    }

    pub fn add_initial(&mut self, s: S) {
        self.initial.insert(s);
    }

    pub fn add_secret(&mut self, s: S) {
        self.secret.insert(s);
    }

    /// Validates every reference and infers the determinism flag.
    pub fn build(self) -> Result<Automaton<S>> {
        for s in self.initial.iter().chain(&self.secret) {
            if !self.states.contains(s) {
                return Err(Error::UnknownState(s.to_string()));
            }
        }
        let mut transitions: BTreeMap<S, BTreeMap<EventLabel, BTreeSet<S>>> = BTreeMap::new();
        for (src, label, dst) in self.transitions {
            for s in [&src, &dst] {
                if !self.states.contains(s) {
                    return Err(Error::UnknownState(s.to_string()));
                }
            }
            if !self.events.contains(&label) {
                return Err(Error::UnknownEvent(label.to_string()));
            }
            transitions.entry(src).or_default().entry(label).or_default().insert(dst);
        }
        Ok(Automaton::from_parts(
            self.states,
            self.events,
            transitions,
            self.initial,
            self.secret,
        ))
    }
}

impl<S: Ord + Clone + fmt::Display> Automaton<S> {
    pub fn builder() -> AutomatonBuilder<S> {
        AutomatonBuilder::new()
    }

    /// The automaton with no states. Used for a verifier whose initial state
    /// was pruned.
    pub fn empty(events: BTreeSet<EventLabel>) -> Self {
        Self::from_parts(BTreeSet::new(), events, BTreeMap::new(), BTreeSet::new(), BTreeSet::new())
    }

    fn from_parts(
        states: BTreeSet<S>,
        events: BTreeSet<EventLabel>,
        transitions: BTreeMap<S, BTreeMap<EventLabel, BTreeSet<S>>>,
        initial: BTreeSet<S>,
        secret: BTreeSet<S>,
    ) -> Self {
        let deterministic = initial.len() == 1
            && transitions.values().all(|by_label| by_label.values().all(|t| t.len() <= 1));
        Automaton { states, events, transitions, initial, secret, deterministic }
    }

    pub fn states(&self) -> &BTreeSet<S> {
        &self.states
    }

    pub fn events(&self) -> &BTreeSet<EventLabel> {
        &self.events
    }

    pub fn initial(&self) -> &BTreeSet<S> {
        &self.initial
    }

    pub fn secret(&self) -> &BTreeSet<S> {
        &self.secret
    }

    pub fn is_secret(&self, s: &S) -> bool {
        self.secret.contains(s)
    }

    pub fn is_deterministic(&self) -> bool {
        self.deterministic
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// The unique initial state of a deterministic automaton.
    pub fn initial_state(&self) -> Option<&S> {
        if self.initial.len() == 1 {
            self.initial.iter().next()
        } else {
            None
        }
    }

    /// Symbols of the alphabet, tags ignored.
    pub fn symbols(&self) -> BTreeSet<&str> {
        self.events.iter().map(EventLabel::symbol).collect()
    }

    /// Checks the preconditions of the enforcement analyses: deterministic,
    /// and every event actual (fully observable system). Returns `x_0`.
    pub fn require_system(&self) -> Result<&S> {
        if !self.deterministic {
            return Err(Error::NotDeterministic);
        }
        if self.events.iter().any(EventLabel::is_inserted) {
            return Err(Error::NotFullyObservable);
        }
        self.initial_state().ok_or(Error::NotDeterministic)
    }

    fn check_state(&self, s: &S) -> Result<()> {
        if self.states.contains(s) {
            Ok(())
        } else {
            Err(Error::UnknownState(s.to_string()))
        }
    }

    pub fn successors<'a>(&'a self, s: &S, label: &EventLabel) -> impl Iterator<Item = &'a S> + 'a {
        self.transitions
            .get(s)
            .and_then(|m| m.get(label))
            .into_iter()
            .flat_map(|t| t.iter())
    }

    /// First (for a DFA: the only) successor of `s` under `label`.
    pub fn successor(&self, s: &S, label: &EventLabel) -> Option<&S> {
        self.successors(s, label).next()
    }

    /// Outgoing `(label, target)` pairs of `s` in canonical order.
    pub fn outgoing<'a>(&'a self, s: &S) -> impl Iterator<Item = (&'a EventLabel, &'a S)> + 'a {
        self.transitions
            .get(s)
            .into_iter()
            .flat_map(|m| m.iter().flat_map(|(l, t)| t.iter().map(move |d| (l, d))))
    }

    /// Every transition as `(source, label, target)`.
    pub fn edges(&self) -> impl Iterator<Item = (&S, &EventLabel, &S)> + '_ {
        self.transitions
            .iter()
            .flat_map(|(s, m)| m.iter().flat_map(move |(l, t)| t.iter().map(move |d| (s, l, d))))
    }

    pub fn transition_count(&self) -> usize {
        self.edges().count()
    }

    /// All states reachable from `from` by exactly `word`.
    pub fn run(&self, from: &S, word: &[EventLabel]) -> Result<BTreeSet<S>> {
        self.check_state(from)?;
        if let Some(l) = word.iter().find(|l| !self.events.contains(l)) {
            return Err(Error::UnknownEvent(l.to_string()));
        }
        let mut current = BTreeSet::from([from.clone()]);
        for label in word {
            current = current.iter().flat_map(|s| self.successors(s, label).cloned()).collect();
            if current.is_empty() {
                break;
            }
        }
        Ok(current)
    }

    /// States reached from the initial states by `word`. Unknown labels make
    /// the word ungenerated.
    pub fn run_initial(&self, word: &[EventLabel]) -> BTreeSet<S> {
        let mut current = self.initial.clone();
        for label in word {
            current = current.iter().flat_map(|s| self.successors(s, label).cloned()).collect();
            if current.is_empty() {
                break;
            }
        }
        current
    }

    /// Membership in the generated language.
    pub fn generates(&self, word: &[EventLabel]) -> bool {
        !self.run_initial(word).is_empty()
    }

    /// `T(x)`: labels with a transition defined at `x`.
    pub fn enabled_events(&self, x: &S) -> Result<BTreeSet<EventLabel>> {
        self.check_state(x)?;
        Ok(self.transitions.get(x).map(|m| m.keys().cloned().collect()).unwrap_or_default())
    }

    /// `F(x)`: labels of transitions entering `x`.
    pub fn incoming_events(&self, x: &S) -> Result<BTreeSet<EventLabel>> {
        self.check_state(x)?;
        Ok(self.edges().filter(|(_, _, d)| *d == x).map(|(_, l, _)| l.clone()).collect())
    }

    /// One-step successors of `x` under any label.
    pub fn postset(&self, x: &S) -> Result<BTreeSet<S>> {
        self.check_state(x)?;
        Ok(self.outgoing(x).map(|(_, d)| d.clone()).collect())
    }

    /// States reachable from the initial states.
    pub fn reachable_states(&self) -> BTreeSet<S> {
        let mut seen: BTreeSet<S> = self.initial.clone();
        let mut queue: VecDeque<S> = self.initial.iter().cloned().collect();
        while let Some(s) = queue.pop_front() {
            for (_, d) in self.outgoing(&s) {
                if seen.insert(d.clone()) {
                    queue.push_back(d.clone());
                }
            }
        }
        seen
    }

    pub fn accessible_part(&self) -> Self {
        self.restrict(&self.reachable_states())
    }

    /// Restriction to `keep`: other states and every incident transition are
    /// dropped.
    pub fn restrict(&self, keep: &BTreeSet<S>) -> Self {
        let states: BTreeSet<S> = self.states.intersection(keep).cloned().collect();
        let transitions = self
            .transitions
            .iter()
            .filter(|(s, _)| states.contains(*s))
            .filter_map(|(s, m)| {
                let m: BTreeMap<EventLabel, BTreeSet<S>> = m
                    .iter()
                    .filter_map(|(l, t)| {
                        let t: BTreeSet<S> = t.intersection(&states).cloned().collect();
                        (!t.is_empty()).then(|| (l.clone(), t))
                    })
                    .collect();
                (!m.is_empty()).then(|| (s.clone(), m))
            })
            .collect();
        let initial = self.initial.intersection(&states).cloned().collect();
        let secret = self.secret.intersection(&states).cloned().collect();
        Self::from_parts(states, self.events.clone(), transitions, initial, secret)
    }

    /// Renames states with an injective map.
    pub fn map_states<T, F>(&self, mut f: F) -> Result<Automaton<T>>
    where
        T: Ord + Clone + fmt::Display,
        F: FnMut(&S) -> T,
    {
        let names: BTreeMap<&S, T> = self.states.iter().map(|s| (s, f(s))).collect();
        let distinct: BTreeSet<&T> = names.values().collect();
        if distinct.len() != names.len() {
            return Err(Error::Malformed("state renaming is not injective".into()));
        }
        let mut b = AutomatonBuilder::new()
            .states(names.values().cloned())
            .events(self.events.iter().cloned());
        for (s, l, d) in self.edges() {
            b.add_transition(names[s].clone(), l.clone(), names[d].clone());
        }
        for s in &self.initial {
            b.add_initial(names[s].clone());
        }
        for s in &self.secret {
            b.add_secret(names[s].clone());
        }
        b.build()
    }

    /// Renames event symbols (tags kept) with an injective map.
    pub fn map_symbols<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&str) -> String,
    {
        let mut names: BTreeMap<String, String> = BTreeMap::new();
        for sym in self.symbols() {
            names.insert(sym.to_string(), f(sym));
        }
        if names.values().collect::<BTreeSet<_>>().len() != names.len() {
            return Err(Error::Malformed("symbol renaming is not injective".into()));
        }
        let rename = |l: &EventLabel| EventLabel::new(names[l.symbol()].clone(), l.tag());
        let mut b = AutomatonBuilder::new()
            .states(self.states.iter().cloned())
            .events(self.events.iter().map(rename));
        for (s, l, d) in self.edges() {
            b.add_transition(s.clone(), rename(l), d.clone());
        }
        for s in &self.initial {
            b.add_initial(s.clone());
        }
        for s in &self.secret {
            b.add_secret(s.clone());
        }
        b.build()
    }
}

impl Automaton<StateId> {
    /// Convenience constructor for system automata over actual events.
    ///
    /// `transitions` are `(source, symbol, target)` triples.
    pub fn system<'a>(
        states: impl IntoIterator<Item = &'a str>,
        symbols: impl IntoIterator<Item = &'a str>,
        transitions: impl IntoIterator<Item = (&'a str, &'a str, &'a str)>,
        initial: &'a str,
        secret: impl IntoIterator<Item = &'a str>,
    ) -> Result<Self> {
        let mut b = AutomatonBuilder::new()
            .states(states.into_iter().map(StateId::from))
            .events(symbols.into_iter().map(EventLabel::actual))
            .initial(StateId::from(initial))
            .secrets(secret.into_iter().map(StateId::from));
        for (s, e, d) in transitions {
            b.add_transition(StateId::from(s), EventLabel::actual(e), StateId::from(d));
        }
        b.build()
    }
}

pub(crate) fn display_set<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|t| format!("{t}")).collect();
    format!("{{{}}}", parts.join(","))
}
