//! Line-oriented text format for automata.
//!
//! ```text
//! # comments run to the end of the line
//! automaton g1
//! events a b c
//! unobservable c        # optional
//! states 0 1 2
//! initial 0
//! secret 2              # optional
//! trans 0 a 1
//! trans 0 c 2
//! end
//! ```
//!
//! Sections appear in this order. Repeating `trans` for one `(src, sym)`
//! makes the automaton nondeterministic.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use opacity_core::{Automaton, AutomatonBuilder, EventLabel, StateId};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("cannot write `{0}`: names must be non-empty and free of whitespace and `#`")]
    BadName(String),
    #[error("only automata over actual events can be written")]
    TaggedEvent,
}

/// A parsed file: the automaton plus what the text format adds to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomatonDocument {
    pub name: String,
    pub automaton: Automaton,
    pub unobservable: BTreeSet<EventLabel>,
}

impl AutomatonDocument {
    pub fn new(name: impl Into<String>, automaton: Automaton) -> Self {
        AutomatonDocument { name: name.into(), automaton, unobservable: BTreeSet::new() }
    }

    pub fn observable(&self) -> BTreeSet<EventLabel> {
        self.automaton.events().difference(&self.unobservable).cloned().collect()
    }

    pub fn is_fully_observable(&self) -> bool {
        self.unobservable.is_empty()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Section {
    Start,
    Name,
    Events,
    Unobservable,
    States,
    Initial,
    Secret,
    Trans,
    End,
}

const REQUIRED: [Section; 5] = [Section::Name, Section::Events, Section::States, Section::Initial, Section::End];

impl Section {
    fn keyword(self) -> &'static str {
        match self {
            Section::Start => "start of file",
            Section::Name => "automaton",
            Section::Events => "events",
            Section::Unobservable => "unobservable",
            Section::States => "states",
            Section::Initial => "initial",
            Section::Secret => "secret",
            Section::Trans => "trans",
            Section::End => "end",
        }
    }
}

pub fn parse_automaton(text: &str) -> Result<Automaton, FormatError> {
    parse_document(text).map(|d| d.automaton)
}

pub fn parse_document(text: &str) -> Result<AutomatonDocument, FormatError> {
    let mut section = Section::Start;
    let mut name = String::new();
    let mut events: BTreeSet<EventLabel> = BTreeSet::new();
    let mut unobservable = BTreeSet::new();
    let mut states: BTreeSet<StateId> = BTreeSet::new();
    let mut b = AutomatonBuilder::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let err = |message: String| FormatError::Parse { line, message };
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(keyword) = tokens.next() else { continue };
        let args: Vec<&str> = tokens.collect();
        if section == Section::End {
            return Err(err(format!("unexpected `{keyword}` after `end`")));
        }
        let next = match keyword {
            "automaton" => Section::Name,
            "events" => Section::Events,
            "unobservable" => Section::Unobservable,
            "states" => Section::States,
            "initial" => Section::Initial,
            "secret" => Section::Secret,
            "trans" => Section::Trans,
            "end" => Section::End,
            other => return Err(err(format!("unknown keyword `{other}`"))),
        };
        if let Some(missing) = REQUIRED.iter().find(|r| **r > section && **r < next) {
            return Err(err(format!("expected `{}` but found `{keyword}`", missing.keyword())));
        }
        if next <= section && !(next == Section::Trans && section == Section::Trans) {
            return Err(err(format!("`{keyword}` is out of order or repeated")));
        }

        let state = |s: &str| -> Result<StateId, FormatError> {
            let id = StateId::from(s);
            if states.contains(&id) {
                Ok(id)
            } else {
                Err(err(format!("undeclared state `{s}`")))
            }
        };
        let event = |s: &str| -> Result<EventLabel, FormatError> {
            let e = EventLabel::actual(s);
            if events.contains(&e) {
                Ok(e)
            } else {
                Err(err(format!("undeclared event `{s}`")))
            }
        };
        match next {
            Section::Name => {
                let [n] = args.as_slice() else {
                    return Err(err("`automaton` takes exactly one name".into()));
                };
                name = n.to_string();
            }
            Section::Events => {
                for a in &args {
                    if !events.insert(EventLabel::actual(*a)) {
                        return Err(err(format!("event `{a}` declared twice")));
                    }
                }
                b = b.events(events.iter().cloned());
            }
            Section::Unobservable => {
                for a in &args {
                    unobservable.insert(event(a)?);
                }
            }
            Section::States => {
                for a in &args {
                    if !states.insert(StateId::from(*a)) {
                        return Err(err(format!("state `{a}` declared twice")));
                    }
                }
                b = b.states(states.iter().cloned());
            }
            Section::Initial => {
                for a in &args {
                    b.add_initial(state(a)?);
                }
            }
            Section::Secret => {
                for a in &args {
                    b.add_secret(state(a)?);
                }
            }
            Section::Trans => {
                let [src, sym, dst] = args.as_slice() else {
                    return Err(err("`trans` takes a source, an event and a target".into()));
                };
                b.add_transition(state(src)?, event(sym)?, state(dst)?);
            }
            Section::End => {
                if !args.is_empty() {
                    return Err(err("`end` takes no arguments".into()));
                }
            }
            Section::Start => unreachable!(),
        }
        section = next;
    }
    if section != Section::End {
        let missing = REQUIRED.iter().find(|r| **r > section).copied().unwrap_or(Section::End);
        return Err(FormatError::Parse {
            line: last_line + 1,
            message: format!("missing `{}`", missing.keyword()),
        });
    }
    let automaton = b.build().map_err(|e| FormatError::Parse { line: last_line, message: e.to_string() })?;
    Ok(AutomatonDocument { name, automaton, unobservable })
}

fn token(s: &str) -> Result<&str, FormatError> {
    if s.is_empty() || s.contains(char::is_whitespace) || s.contains('#') {
        Err(FormatError::BadName(s.to_string()))
    } else {
        Ok(s)
    }
}

fn line<'a>(out: &mut String, keyword: &str, items: impl IntoIterator<Item = &'a str>) -> Result<(), FormatError> {
    out.push_str(keyword);
    for item in items {
        out.push(' ');
        out.push_str(token(item)?);
    }
    out.push('\n');
    Ok(())
}

/// Writes a document back out. Parsing the result gives an equal document.
pub fn emit_document(doc: &AutomatonDocument) -> Result<String, FormatError> {
    let a = &doc.automaton;
    if a.events().iter().any(|e| !e.is_actual()) {
        return Err(FormatError::TaggedEvent);
    }
    let mut out = String::new();
    line(&mut out, "automaton", [doc.name.as_str()])?;
    line(&mut out, "events", a.events().iter().map(EventLabel::symbol))?;
    if !doc.unobservable.is_empty() {
        line(&mut out, "unobservable", doc.unobservable.iter().map(EventLabel::symbol))?;
    }
    line(&mut out, "states", a.states().iter().map(StateId::name))?;
    line(&mut out, "initial", a.initial().iter().map(StateId::name))?;
    if !a.secret().is_empty() {
        line(&mut out, "secret", a.secret().iter().map(StateId::name))?;
    }
    for (s, e, d) in a.edges() {
        let _ = writeln!(out, "trans {s} {} {d}", e.symbol());
    }
    out.push_str("end\n");
    Ok(out)
}

pub fn emit_automaton(name: &str, a: &Automaton) -> Result<String, FormatError> {
    emit_document(&AutomatonDocument::new(name, a.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use opacity_core::fixtures::g1;

    pub(crate) const G1: &str = include_str!("../data/g1.aut");

    fn parse_err(text: &str) -> (usize, String) {
        match parse_document(text) {
            Err(FormatError::Parse { line, message }) => (line, message),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn g1_fixture_parses() {
        let doc = parse_document(G1).unwrap();
        assert_eq!(doc.name, "g1");
        assert_eq!(doc.automaton, g1());
        assert!(doc.is_fully_observable());
        assert_eq!(doc.automaton.transition_count(), 8);
    }

    #[test]
    fn round_trip() {
        let text = emit_automaton("g1", &g1()).unwrap();
        assert_eq!(parse_automaton(&text).unwrap(), g1());
        let mut doc = parse_document(&text).unwrap();
        doc.unobservable.insert(EventLabel::actual("c"));
        let again = parse_document(&emit_document(&doc).unwrap()).unwrap();
        assert_eq!(again, doc);
        assert_eq!(again.observable().len(), 2);
    }

    #[test]
    fn duplicate_transitions_make_an_nfa() {
        let a = parse_automaton("automaton n\nevents a\nstates 0 1 2\ninitial 0\ntrans 0 a 1\ntrans 0 a 2\nend\n").unwrap();
        assert!(!a.is_deterministic());
    }

    #[test]
    fn undeclared_state_names_the_line() {
        let (line, msg) = parse_err("automaton x\nevents a\nstates 0 1\ninitial 0\ntrans 0 a 7\nend\n");
        assert_eq!(line, 5);
        assert!(msg.contains('7'), "{msg}");
        let (line, _) = parse_err("automaton x\nevents a\nstates 0\ninitial 0\nsecret 3\nend\n");
        assert_eq!(line, 5);
        let (line, _) = parse_err("automaton x\nevents a\nstates 0\ninitial 0\ntrans 0 b 0\nend\n");
        assert_eq!(line, 5);
    }

    #[test]
    fn structure_errors() {
        let (line, msg) = parse_err("automaton x\nevents a\nstates 0\ninitial 0\n");
        assert_eq!(line, 5);
        assert!(msg.contains("end"));
        let (_, msg) = parse_err("automaton x\nstates 0\n");
        assert!(msg.contains("events"), "{msg}");
        let (line, _) = parse_err("automaton x\nevents a\nstates 0\ninitial 0\nend\ntrans 0 a 0\n");
        assert_eq!(line, 6);
        let (line, _) = parse_err("automaton x\nevents a\nstates 0\ninitial 0\ntrans 0 a 0\nsecret 0\nend\n");
        assert_eq!(line, 6);
        let (_, msg) = parse_err("");
        assert!(msg.contains("automaton"));
        let (line, _) = parse_err("automaton x\nevents a a\n");
        assert_eq!(line, 2);
        let (line, _) = parse_err("automaton x\nevents a\nfrobnicate\n");
        assert_eq!(line, 3);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let a = parse_automaton("# head\n\nautomaton x # name\nevents a\nstates 0\ninitial 0\ntrans 0 a 0 # loop\nend\n# tail\n")
            .unwrap();
        assert_eq!(a.transition_count(), 1);
    }

    #[test]
    fn optional_sections_may_be_skipped() {
        let a = parse_automaton("automaton x\nevents\nstates 0\ninitial 0\nend\n").unwrap();
        assert!(a.events().is_empty() && a.secret().is_empty());
    }

    #[test]
    fn unwritable_names_are_rejected() {
        let a = Automaton::system(["has space"], ["a"], [], "has space", []).unwrap();
        assert_eq!(emit_automaton("x", &a), Err(FormatError::BadName("has space".into())));
        assert!(emit_automaton("bad name", &g1()).is_err());
    }
}
