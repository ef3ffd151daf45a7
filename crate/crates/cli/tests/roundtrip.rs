use std::collections::BTreeSet;

use opacity_cli::format::{emit_document, parse_document, AutomatonDocument};
use opacity_core::{Automaton, AutomatonBuilder, EventLabel, StateId};
use proptest::prelude::*;

fn name() -> impl Strategy<Value = String> {
    "[A-Za-z0-9_.(),{}-]{1,6}"
}

prop_compose! {
    fn document()(
        states in prop::collection::btree_set(name(), 1..7),
        events in prop::collection::btree_set("[a-z][a-z0-9_]{0,3}", 0..4),
        doc_name in name(),
    )(
        trans in prop::collection::vec((0..states.len(), 0..events.len().max(1), 0..states.len()), 0..16),
        initial in prop::collection::btree_set(0..states.len(), 0..3),
        secret in prop::collection::btree_set(0..states.len(), 0..4),
        hidden in prop::collection::btree_set(0..events.len().max(1), 0..2),
        states in Just(states),
        events in Just(events),
        doc_name in Just(doc_name),
    ) -> AutomatonDocument {
        let s: Vec<StateId> = states.iter().map(|n| StateId::from(n.as_str())).collect();
        let e: Vec<EventLabel> = events.iter().map(|n| EventLabel::actual(n.as_str())).collect();
        let mut b: AutomatonBuilder<StateId> = Automaton::builder().states(s.iter().cloned()).events(e.iter().cloned());
        if !e.is_empty() {
            for (x, l, y) in trans {
                b.add_transition(s[x].clone(), e[l].clone(), s[y].clone());
            }
        }
        for i in initial { b.add_initial(s[i].clone()); }
        for i in secret { b.add_secret(s[i].clone()); }
        let unobservable: BTreeSet<EventLabel> = hidden.into_iter().filter_map(|i| e.get(i).cloned()).collect();
        AutomatonDocument { name: doc_name, automaton: b.build().unwrap(), unobservable }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn parse_inverts_emit(doc in document()) {
        let text = emit_document(&doc).unwrap();
        let back = parse_document(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(emit_document(&back).unwrap(), text);
    }
}
