//! Seeded random instances for differential and property testing.
//!
//! Every generator is a pure function of its seed and parameters.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{Automaton, AutomatonBuilder, EventLabel, StateId};
use crate::eic::InsertionConstraints;

/// Shape of a random automaton.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomSpec {
    pub states: usize,
    pub events: usize,
    /// Probability that `(state, event)` has a transition.
    pub density: f64,
    /// Probability that a state is secret.
    pub secret_density: f64,
    /// Probability of a second target for a defined `(state, event)`. Zero
    /// yields a DFA.
    pub nondeterminism: f64,
    /// Number of initial states (clamped to `1..=states`).
    pub initial_states: usize,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec {
            states: 4,
            events: 3,
            density: 0.5,
            secret_density: 0.3,
            nondeterminism: 0.0,
            initial_states: 1,
        }
    }
}

/// Symbol names `a`, `b`, ..., then `e26`, `e27`, ...
pub fn symbol_name(i: usize) -> String {
    if i < 26 {
        String::from(char::from(b'a' + i as u8))
    } else {
        format!("e{i}")
    }
}

/// Random automaton with states `0..states` and symbols from [`symbol_name`].
pub fn random_automaton(seed: u64, spec: &RandomSpec) -> Automaton {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = spec.states.max(1);
    let states: Vec<StateId> = (0..n).map(|i| StateId::new(format!("{i}"))).collect();
    let events: Vec<EventLabel> = (0..spec.events).map(|i| EventLabel::actual(symbol_name(i))).collect();
    let mut b = AutomatonBuilder::new()
        .states(states.iter().cloned())
        .events(events.iter().cloned());
    for s in &states {
        for e in &events {
            if rng.gen_bool(spec.density) {
                b.add_transition(s.clone(), e.clone(), states[rng.gen_range(0..n)].clone());
                if spec.nondeterminism > 0.0 && rng.gen_bool(spec.nondeterminism) {
                    b.add_transition(s.clone(), e.clone(), states[rng.gen_range(0..n)].clone());
                }
            }
        }
        if rng.gen_bool(spec.secret_density) {
            b.add_secret(s.clone());
        }
    }
    let k = spec.initial_states.clamp(1, n);
    let mut order: Vec<usize> = (0..n).collect();
    if k > 1 {
        order.shuffle(&mut rng);
    }
    for &i in &order[..k] {
        b.add_initial(states[i].clone());
    }
    b.build().expect("generated automaton is well formed")
}

/// Accessible random DFA over actual events.
pub fn random_system(seed: u64, spec: &RandomSpec) -> Automaton {
    let spec = RandomSpec { nondeterminism: 0.0, initial_states: 1, ..spec.clone() };
    random_automaton(seed, &spec).accessible_part()
}

/// Random insertion constraints: each symbol is insertable before (after)
/// with probability one half, independently.
pub fn random_constraints(seed: u64, g: &Automaton) -> InsertionConstraints {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut before = BTreeSet::new();
    let mut after = BTreeSet::new();
    for sym in g.symbols() {
        if rng.gen_bool(0.5) {
            before.insert(String::from(sym));
        }
        if rng.gen_bool(0.5) {
            after.insert(String::from(sym));
        }
    }
    InsertionConstraints { before, after }
}

/// Random digraph on nodes `0..nodes` with edge probability `density`.
pub fn random_digraph(seed: u64, nodes: usize, density: f64) -> (BTreeSet<usize>, BTreeSet<(usize, usize)>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vertices: BTreeSet<usize> = (0..nodes).collect();
    let mut edges = BTreeSet::new();
    for a in 0..nodes {
        for b in 0..nodes {
            if rng.gen_bool(density) {
                edges.insert((a, b));
            }
        }
    }
    (vertices, edges)
}

/// A random permutation of `0..n`, for renaming tests.
pub fn random_permutation(seed: u64, n: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut rng);
    p
}

/// Shape varied by seed: `1..=max_states` states, `1..=max_events` events,
/// transition density between 0.3 and 0.7.
pub fn varied_spec(seed: u64, max_states: usize, max_events: usize) -> RandomSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x2545_f491_4f6c_dd1d));
    RandomSpec {
        states: rng.gen_range(1..=max_states.max(1)),
        events: rng.gen_range(1..=max_events.max(1)),
        density: rng.gen_range(0.3..0.7),
        ..RandomSpec::default()
    }
}

/// Accessible random DFA with a seed-varied shape.
pub fn small_system(seed: u64, max_states: usize, max_events: usize) -> Automaton {
    random_system(seed, &varied_spec(seed, max_states, max_events))
}
