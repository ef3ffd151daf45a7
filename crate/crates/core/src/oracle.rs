//! Naive reference implementations used to cross-check the verifiers.
//!
//! Nothing here uses the indicator, verifier or SCC machinery. Feasibility
//! and desirability are checked on strings directly, and the enforceability
//! oracles run a greatest fixpoint over plain (dummy, actual) pairs with
//! walks of bounded length. They are slow by design and refuse systems with
//! more than [`ORACLE_STATE_LIMIT`] states.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::automaton::{Automaton, EventLabel, StateId, Tag};
use crate::eic::InsertionConstraints;
use crate::{Error, Result};

pub const ORACLE_STATE_LIMIT: usize = 6;

/// One `(before, after)` pair of inserted segments per real output.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ExtendedInsertionSequence {
    pub segments: Vec<(Vec<EventLabel>, Vec<EventLabel>)>,
}

impl ExtendedInsertionSequence {
    pub fn new(segments: Vec<(Vec<EventLabel>, Vec<EventLabel>)>) -> Self {
        ExtendedInsertionSequence { segments }
    }

    /// No insertions around `n` outputs.
    pub fn empty(n: usize) -> Self {
        ExtendedInsertionSequence { segments: alloc::vec![(Vec::new(), Vec::new()); n] }
    }

    /// All inserted labels in order, without the real outputs.
    pub fn insertions(&self) -> Vec<EventLabel> {
        self.segments.iter().flat_map(|(b, a)| b.iter().chain(a)).cloned().collect()
    }

    /// Interleaves the segments with `s`: `b1 s1 a1 b2 s2 a2 ...`.
    pub fn modified_observation(&self, s: &[EventLabel]) -> Result<Vec<EventLabel>> {
        if s.len() != self.segments.len() {
            return Err(Error::InvalidInsertion(alloc::format!(
                "{} segment pairs for {} outputs",
                self.segments.len(),
                s.len()
            )));
        }
        let mut out = Vec::new();
        for (e, (b, a)) in s.iter().zip(&self.segments) {
            out.extend(b.iter().cloned());
            out.push(e.clone());
            out.extend(a.iter().cloned());
        }
        Ok(out)
    }

    /// Prefix covering the first `n` outputs.
    pub fn truncate(&self, n: usize) -> Self {
        ExtendedInsertionSequence { segments: self.segments[..n.min(self.segments.len())].to_vec() }
    }
}

/// Bounds for the naive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SearchBudget {
    /// Labels per inserted segment.
    pub max_segment_len: usize,
    /// Continuation depth checked for sustainability.
    pub horizon: usize,
}

impl SearchBudget {
    /// `|X|²` labels per segment and a horizon of `|X|·|X_f|`, where the
    /// insertion automaton has `insertion_states` states.
    pub fn for_sizes(states: usize, insertion_states: usize) -> Self {
        SearchBudget { max_segment_len: states * states, horizon: states * insertion_states }
    }

    pub fn for_system(g: &Automaton) -> Self {
        Self::for_sizes(g.states().len(), g.states().len())
    }

    pub fn for_constrained(g: &Automaton) -> Self {
        Self::for_sizes(g.states().len(), 4 * g.states().len() + 1)
    }
}

/// Symbol sets usable in each insertion position.
struct Alphabets {
    before: BTreeSet<EventLabel>,
    after: BTreeSet<EventLabel>,
}

impl Alphabets {
    fn unrestricted(g: &Automaton) -> Self {
        Alphabets { before: g.events().clone(), after: g.events().clone() }
    }

    fn constrained(c: &InsertionConstraints) -> Self {
        let actual = |s: &BTreeSet<alloc::string::String>| s.iter().map(EventLabel::actual).collect();
        Alphabets { before: actual(&c.before), after: actual(&c.after) }
    }
}

fn prepare(g: &Automaton, s: &[EventLabel], ei: &ExtendedInsertionSequence) -> Result<Vec<EventLabel>> {
    let x0 = g.require_system()?;
    if g.run(x0, s)?.is_empty() {
        return Err(Error::NotInLanguage(crate::automaton::word_to_string(s)));
    }
    ei.modified_observation(s)
}

fn check_tags(ei: &ExtendedInsertionSequence, before: Tag, after: Tag) -> Result<()> {
    for (b, a) in &ei.segments {
        let bad = b.iter().find(|l| l.tag() != before).or_else(|| a.iter().find(|l| l.tag() != after));
        if let Some(l) = bad {
            return Err(Error::InvalidInsertion(alloc::format!("unexpected label `{l}`")));
        }
    }
    Ok(())
}

fn masked_end(g: &Automaton, modified: &[EventLabel]) -> Option<StateId> {
    let masked: Vec<EventLabel> = modified.iter().map(EventLabel::masked).collect();
    g.run_initial(&masked).into_iter().next()
}

/// Whether every masked modified prefix of `s` stays in `L(g)`.
///
/// `s` must be in `L(g)` and carry one segment pair per output, with
/// labels tagged as plain insertions.
pub fn is_feasible(g: &Automaton, s: &[EventLabel], ei: &ExtendedInsertionSequence) -> Result<bool> {
    let modified = prepare(g, s, ei)?;
    check_tags(ei, Tag::Inserted, Tag::Inserted)?;
    Ok(masked_end(g, &modified).is_some())
}

/// As [`is_feasible`], with before/after tagged segments drawn from `c`.
pub fn is_eic_feasible(
    g: &Automaton,
    c: &InsertionConstraints,
    s: &[EventLabel],
    ei: &ExtendedInsertionSequence,
) -> Result<bool> {
    let modified = prepare(g, s, ei)?;
    check_tags(ei, Tag::InsertedBefore, Tag::InsertedAfter)?;
    let allowed = ei.segments.iter().all(|(b, a)| {
        b.iter().all(|l| c.before.contains(l.symbol())) && a.iter().all(|l| c.after.contains(l.symbol()))
    });
    Ok(allowed && masked_end(g, &modified).is_some())
}

/// States reachable from `from` in at most `len` moves over `symbols`.
fn walk(g: &Automaton, from: &BTreeSet<StateId>, symbols: &BTreeSet<EventLabel>, len: usize) -> BTreeSet<StateId> {
    let mut seen = from.clone();
    let mut frontier: Vec<StateId> = from.iter().cloned().collect();
    for _ in 0..len {
        let mut next = Vec::new();
        for x in &frontier {
            for e in symbols {
                if let Some(y) = g.successor(x, e) {
                    if seen.insert(y.clone()) {
                        next.push(y.clone());
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    seen
}

/// Bounded check that every continuation of `x` up to `depth` outputs can be
/// matched from some dummy in `rest` by inserting around each output.
struct Sustain<'a> {
    g: &'a Automaton,
    alpha: &'a Alphabets,
    len: usize,
    memo: BTreeMap<(StateId, BTreeSet<StateId>, usize), bool>,
}

impl Sustain<'_> {
    fn check(&mut self, x: &StateId, rest: &BTreeSet<StateId>, depth: usize) -> bool {
        if depth == 0 {
            return true;
        }
        let key = (x.clone(), rest.clone(), depth);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let ready = walk(self.g, rest, &self.alpha.before, self.len);
        let mut ok = true;
        for (e, y) in self.g.outgoing(x) {
            let moved: BTreeSet<StateId> = ready.iter().filter_map(|q| self.g.successor(q, e)).cloned().collect();
            if moved.is_empty() {
                ok = false;
                break;
            }
            let next = walk(self.g, &moved, &self.alpha.after, self.len);
            if !self.check(y, &next, depth - 1) {
                ok = false;
                break;
            }
        }
        self.memo.insert(key, ok);
        ok
    }
}

fn desirable(
    g: &Automaton,
    s: &[EventLabel],
    modified: &[EventLabel],
    alpha: &Alphabets,
    b: SearchBudget,
) -> Result<bool> {
    let end = masked_end(g, modified).ok_or_else(|| Error::InvalidInsertion("insertion is not feasible".into()))?;
    if g.is_secret(&end) {
        return Ok(false);
    }
    let x = g.run_initial(s).into_iter().next().expect("s is in the language");
    let mut sustain = Sustain { g, alpha, len: b.max_segment_len, memo: BTreeMap::new() };
    Ok(sustain.check(&x, &BTreeSet::from([end]), b.horizon))
}

/// Whether `ei` is desirable for `s`: the masked observation ends outside
/// the secret, and every continuation of at most `b.horizon` outputs can be
/// matched with segments of at most `b.max_segment_len` labels.
///
/// A `false` is definitive for the bounded question; a larger horizon can
/// only reject more, a longer segment bound can only accept more.
pub fn is_desirable_bounded(
    g: &Automaton,
    s: &[EventLabel],
    ei: &ExtendedInsertionSequence,
    b: SearchBudget,
) -> Result<bool> {
    if !is_feasible(g, s, ei)? {
        return Err(Error::InvalidInsertion("insertion is not feasible".into()));
    }
    desirable(g, s, &ei.modified_observation(s)?, &Alphabets::unrestricted(g), b)
}

/// As [`is_desirable_bounded`] for insertions constrained by `c`.
pub fn is_eic_desirable_bounded(
    g: &Automaton,
    c: &InsertionConstraints,
    s: &[EventLabel],
    ei: &ExtendedInsertionSequence,
    b: SearchBudget,
) -> Result<bool> {
    if !is_eic_feasible(g, c, s, ei)? {
        return Err(Error::InvalidInsertion("insertion is not feasible".into()));
    }
    desirable(g, s, &ei.modified_observation(s)?, &Alphabets::constrained(c), b)
}

fn gate(g: &Automaton) -> Result<()> {
    g.require_system()?;
    let n = g.states().len();
    if n > ORACLE_STATE_LIMIT {
        return Err(Error::TooLarge { states: n, limit: ORACLE_STATE_LIMIT });
    }
    Ok(())
}

type Pair = (StateId, StateId);

/// Greatest set of rest pairs `(d, x)` from which every output of `x` can be
/// answered: walk the dummy over `before`, take the output on both sides,
/// walk over `after`, and land in the set again.
fn sustainable_pairs(g: &Automaton, alpha: &Alphabets, len: usize) -> BTreeSet<Pair> {
    let one = |d: &StateId, syms| walk(g, &BTreeSet::from([d.clone()]), syms, len);
    let mut w: BTreeSet<Pair> =
        g.states().iter().flat_map(|d| g.states().iter().map(move |x| (d.clone(), x.clone()))).collect();
    loop {
        let next: BTreeSet<Pair> = w
            .iter()
            .filter(|(d, x)| {
                let ready = one(d, &alpha.before);
                g.outgoing(x).all(|(e, y)| {
                    ready.iter().filter_map(|q| g.successor(q, e)).any(|m| {
                        one(m, &alpha.after).into_iter().any(|r| w.contains(&(r, y.clone())))
                    })
                })
            })
            .cloned()
            .collect();
        if next == w {
            return w;
        }
        w = next;
    }
}

/// Rest pairs reachable from `(x0, x0)` by before-walk, output, after-walk.
fn rest_reach(g: &Automaton, alpha: &Alphabets, len: usize) -> BTreeSet<Pair> {
    let x0 = g.require_system().expect("gated").clone();
    let start = (x0.clone(), x0);
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some((d, x)) = queue.pop_front() {
        let ready = walk(g, &BTreeSet::from([d]), &alpha.before, len);
        for (e, y) in g.outgoing(&x) {
            let moved: BTreeSet<StateId> = ready.iter().filter_map(|q| g.successor(q, e)).cloned().collect();
            for r in walk(g, &moved, &alpha.after, len) {
                let p = (r, y.clone());
                if seen.insert(p.clone()) {
                    queue.push_back(p);
                }
            }
        }
    }
    seen
}

/// Every pair reachable from `(x0, x0)` by any sequence of single moves:
/// an inserted move of the dummy alone, or an output on both sides.
fn any_reach(g: &Automaton) -> BTreeSet<Pair> {
    let x0 = g.require_system().expect("gated").clone();
    let start = (x0.clone(), x0);
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some((d, x)) = queue.pop_front() {
        for (e, d2) in g.outgoing(&d) {
            let mut next = alloc::vec![(d2.clone(), x.clone())];
            if let Some(y) = g.successor(&x, e) {
                next.push((d2.clone(), y.clone()));
            }
            for p in next {
                if seen.insert(p.clone()) {
                    queue.push_back(p);
                }
            }
        }
    }
    seen
}

fn covers_all(g: &Automaton, good: impl Iterator<Item = Pair>) -> bool {
    let covered: BTreeSet<StateId> = good.filter(|(d, _)| !g.is_secret(d)).map(|(_, x)| x).collect();
    covered == *g.states()
}

/// Whether every actual state has a reachable sustainable pair with a
/// non-secret dummy, under unconstrained insertion.
pub fn oracle_ei_enforceable(g: &Automaton, b: SearchBudget) -> Result<bool> {
    gate(g)?;
    let alpha = Alphabets::unrestricted(g);
    let w = sustainable_pairs(g, &alpha, b.max_segment_len);
    let reach = any_reach(g);
    Ok(covers_all(g, w.intersection(&reach).cloned()))
}

/// As [`oracle_ei_enforceable`], with before-walks over `c.before`,
/// after-walks over `c.after`, and only rest pairs counted as reachable.
pub fn oracle_eic_enforceable(g: &Automaton, c: &InsertionConstraints, b: SearchBudget) -> Result<bool> {
    gate(g)?;
    c.validate(g)?;
    let alpha = Alphabets::constrained(c);
    let w = sustainable_pairs(g, &alpha, b.max_segment_len);
    let reach = rest_reach(g, &alpha, b.max_segment_len);
    Ok(covers_all(g, w.intersection(&reach).cloned()))
}
