//! Verdict documents, rendered either as JSON or as plain text.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{Display, Write as _};

use opacity_core::ei::{EiReport, Witness};
use opacity_core::eic::{EicReport, InsertionConstraints, NonblockingType};
use opacity_core::observer::OpacityVerdict;
use opacity_core::automaton::word_to_string;
use serde::Serialize;

pub const TOOL: &str = "opacity";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstraintEcho {
    pub insert_before: Vec<String>,
    pub insert_after: Vec<String>,
}

impl From<&InsertionConstraints> for ConstraintEcho {
    fn from(c: &InsertionConstraints) -> Self {
        ConstraintEcho {
            insert_before: c.before.iter().cloned().collect(),
            insert_after: c.after.iter().cloned().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessEntry {
    pub state: String,
    /// Space separated labels; empty for the empty observation.
    pub observation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferentialEcho {
    pub verifier: bool,
    pub oracle: bool,
    pub random_instances: usize,
    pub random_disagreements: Vec<u64>,
}

/// Machine-readable result of one command. Field order is fixed and every
/// set is sorted, so equal inputs give byte-identical JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub automaton: String,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constraints: Option<ConstraintEcho>,
    pub sets: BTreeMap<&'static str, Vec<String>>,
    pub witnesses: BTreeMap<String, WitnessEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub differential: Option<DifferentialEcho>,
}

impl ReportDocument {
    fn new(command: &'static str, automaton: &str, verdict: &'static str) -> Self {
        ReportDocument {
            tool: TOOL,
            version: VERSION,
            command,
            automaton: automaton.to_string(),
            verdict,
            constraints: None,
            sets: BTreeMap::new(),
            witnesses: BTreeMap::new(),
            differential: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Human-readable rendering of the same content.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {} is {}", self.command, self.automaton, self.verdict.replace('-', " "));
        if let Some(c) = &self.constraints {
            let _ = writeln!(out, "insert before: {{{}}}", c.insert_before.join(","));
            let _ = writeln!(out, "insert after: {{{}}}", c.insert_after.join(","));
        }
        if let Some(d) = &self.differential {
            let _ = writeln!(out, "verifier: {}, oracle: {}", d.verifier, d.oracle);
            if d.random_instances > 0 {
                let _ = writeln!(
                    out,
                    "random instances: {}, disagreements: {}",
                    d.random_instances,
                    d.random_disagreements.len()
                );
                for seed in &d.random_disagreements {
                    let _ = writeln!(out, "  disagreement at seed {seed}");
                }
            }
        }
        for (name, items) in &self.sets {
            let _ = write!(out, "{} ({}):", name.replace('_', " "), items.len());
            for item in items {
                let _ = write!(out, " {item}");
            }
            out.push('\n');
        }
        for (x, w) in &self.witnesses {
            let obs = if w.observation.is_empty() { "the empty observation" } else { &w.observation };
            let _ = writeln!(out, "witness {x}: {} after {obs}", w.state);
        }
        out
    }
}

/// Display forms, sorted as strings.
fn sorted<T: Display>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    let set: BTreeSet<String> = items.into_iter().map(|t| t.to_string()).collect();
    set.into_iter().collect()
}

fn witness_map<S: Display>(w: &BTreeMap<opacity_core::StateId, Witness<S>>) -> BTreeMap<String, WitnessEntry> {
    w.iter()
        .map(|(x, w)| {
            let entry =
                WitnessEntry { state: w.state.to_string(), observation: word_to_string(&w.modified_observation) };
            (x.to_string(), entry)
        })
        .collect()
}

fn verdict(enforceable: bool) -> &'static str {
    if enforceable {
        "enforceable"
    } else {
        "not-enforceable"
    }
}

pub fn opacity_report<S: Display + Ord>(name: &str, v: &OpacityVerdict<S>) -> ReportDocument {
    let mut doc = ReportDocument::new("check-opacity", name, if v.opaque { "opaque" } else { "not-opaque" });
    doc.sets.insert("violating_estimates", sorted(&v.violating_estimates));
    if let (Some(w), Some(est)) = (&v.witness, &v.witness_estimate) {
        doc.witnesses.insert("secret".into(), WitnessEntry { state: est.to_string(), observation: word_to_string(w) });
    }
    doc
}

pub fn ei_report(name: &str, r: &EiReport) -> ReportDocument {
    let mut doc = ReportDocument::new("verify-ei", name, verdict(r.enforceable));
    doc.sets.insert("pruned", sorted(&r.pruned));
    doc.sets.insert("staying_nonblocking", sorted(&r.staying_nonblocking));
    doc.sets.insert("admissible", sorted(&r.admissible));
    doc.sets.insert("uncovered", sorted(&r.uncovered_actual_states));
    doc.sets.insert("unreachable", sorted(&r.unreachable_actual_states));
    doc.witnesses = witness_map(&r.witnesses);
    doc
}

pub fn eic_report(name: &str, r: &EicReport) -> ReportDocument {
    let mut doc = ReportDocument::new("verify-eic", name, verdict(r.enforceable));
    doc.constraints = Some((&r.constraints).into());
    doc.sets.insert("trapping", sorted(&r.trapping));
    doc.sets.insert("pruned", sorted(&r.pruned));
    let of_type = |t| sorted(r.staying_nonblocking.iter().filter(|(_, k)| **k == t).map(|(p, _)| p));
    doc.sets.insert("staying_nonblocking", sorted(r.staying_nonblocking.keys()));
    doc.sets.insert("staying_nonblocking_type1", of_type(NonblockingType::Type1));
    doc.sets.insert("staying_nonblocking_type2", of_type(NonblockingType::Type2));
    doc.sets.insert("admissible", sorted(&r.admissible));
    doc.sets.insert("uncovered", sorted(&r.uncovered_actual_states));
    doc.sets.insert("unreachable", sorted(&r.unreachable_actual_states));
    doc.witnesses = witness_map(&r.witnesses);
    doc
}

pub fn differential_report(
    name: &str,
    constraints: Option<&InsertionConstraints>,
    echo: DifferentialEcho,
) -> ReportDocument {
    let agree = echo.verifier == echo.oracle && echo.random_disagreements.is_empty();
    let mut doc = ReportDocument::new("oracle-check", name, if agree { "agree" } else { "disagree" });
    doc.constraints = constraints.map(Into::into);
    doc.differential = Some(echo);
    doc
}

#[cfg(test)]
mod tests {
    use super::*;
    use opacity_core::ei::check_ei_enforceable;
    use opacity_core::eic::check_eic_enforceable;
    use opacity_core::fixtures::{g1, g1_constraints};

    #[test]
    fn ei_report_lists_the_admissible_states() {
        let doc = ei_report("g1", &check_ei_enforceable(&g1()).unwrap());
        assert_eq!(doc.verdict, "enforceable");
        assert_eq!(doc.sets["admissible"].len(), 8);
        assert_eq!(doc.sets["staying_nonblocking"].len(), 14);
        let json = doc.to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["tool"], "opacity");
        assert_eq!(v["sets"]["admissible"][0], "(0,0)");
        assert!(v.get("constraints").is_none());
    }

    #[test]
    fn eic_report_splits_types() {
        let doc = eic_report("g1", &check_eic_enforceable(&g1(), &g1_constraints()).unwrap());
        assert_eq!(doc.sets["admissible"].len(), 9);
        assert_eq!(doc.sets["staying_nonblocking_type2"], vec!["(1,1_a)", "(4,2_a)", "(5,3_a)"]);
        assert_eq!(doc.sets["trapping"], vec!["(2,4_b)", "(3,5_b)"]);
        assert_eq!(doc.constraints.as_ref().unwrap().insert_after, vec!["a"]);
        assert!(doc.to_text().contains("admissible (9):"));
    }

    #[test]
    fn json_key_order_is_fixed() {
        let json = ei_report("g1", &check_ei_enforceable(&g1()).unwrap()).to_json();
        let keys = ["\"tool\"", "\"version\"", "\"command\"", "\"automaton\"", "\"verdict\"", "\"sets\"", "\"witnesses\""];
        let pos: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
    }
}
