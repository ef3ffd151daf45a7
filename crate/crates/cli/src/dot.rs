//! Graphviz output. Real events are drawn solid and inserted events dashed.

use std::collections::BTreeSet;
use std::fmt::{Display, Write as _};

use opacity_core::Automaton;

pub const NONBLOCKING_FILL: &str = "lightcoral";
pub const PRUNED_FILL: &str = "palegreen";

/// States to fill. A state in both sets takes the pruned fill.
#[derive(Debug, Clone)]
pub struct Highlight<S> {
    pub nonblocking: BTreeSet<S>,
    pub pruned: BTreeSet<S>,
}

impl<S> Default for Highlight<S> {
    fn default() -> Self {
        Highlight { nonblocking: BTreeSet::new(), pruned: BTreeSet::new() }
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn emit_dot<S>(name: &str, a: &Automaton<S>, highlight: &Highlight<S>) -> String
where
    S: Ord + Clone + Display,
{
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(name));
    out.push_str("  rankdir=LR;\n  node [shape=circle];\n");
    for (i, s) in a.initial().iter().enumerate() {
        let _ = writeln!(out, "  \"__start{i}\" [shape=point];");
        let _ = writeln!(out, "  \"__start{i}\" -> {};", quote(&s.to_string()));
    }
    for s in a.states() {
        let mut attrs = Vec::new();
        if a.is_secret(s) {
            attrs.push("shape=doublecircle".to_string());
        }
        let fill = if highlight.pruned.contains(s) {
            Some(PRUNED_FILL)
        } else if highlight.nonblocking.contains(s) {
            Some(NONBLOCKING_FILL)
        } else {
            None
        };
        if let Some(fill) = fill {
            attrs.push(format!("style=filled, fillcolor={fill}"));
        }
        let _ = write!(out, "  {}", quote(&s.to_string()));
        if !attrs.is_empty() {
            let _ = write!(out, " [{}]", attrs.join(", "));
        }
        out.push_str(";\n");
    }
    for (s, l, d) in a.edges() {
        let style = if l.is_inserted() { ", style=dashed" } else { "" };
        let _ = writeln!(
            out,
            "  {} -> {} [label={}{style}];",
            quote(&s.to_string()),
            quote(&d.to_string()),
            quote(&l.to_string())
        );
    }
    out.push_str("}\n");
    out
}
