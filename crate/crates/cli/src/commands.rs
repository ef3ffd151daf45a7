//! Command-line surface. Exit codes: 0 success, 1 error, 2 not opaque,
//! 3 not enforceable, 4 verifier and oracle disagree.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use opacity_core::ei::check_ei_enforceable;
use opacity_core::eic::{check_eic_enforceable, InsertionConstraints};
use opacity_core::observer::check_current_state_opacity;
use opacity_core::oracle::{oracle_eic_enforceable, oracle_ei_enforceable, SearchBudget};
use opacity_core::random::{random_system, varied_spec};
use opacity_core::Automaton;
use thiserror::Error;

use crate::dot::{emit_dot, Highlight};
use crate::format::{parse_document, AutomatonDocument, FormatError};
use crate::report::{differential_report, ei_report, eic_report, opacity_report, DifferentialEcho, ReportDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_OPAQUE: i32 = 2;
pub const EXIT_NOT_ENFORCEABLE: i32 = 3;
pub const EXIT_DISAGREE: i32 = 4;

/// Random instances checked by `oracle-check --seed`.
pub const RANDOM_INSTANCES: u64 = 100;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error(transparent)]
    Core(#[from] opacity_core::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(name = "opacity", version, about = "Decide opacity enforceability by extended insertion")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Current-state opacity under the file's observable events.
    CheckOpacity {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Enforceability by unconstrained extended insertion.
    VerifyEi {
        file: PathBuf,
        /// Write the indicator automaton as DOT to this path.
        #[arg(long, value_name = "OUT")]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Enforceability under insertion constraints.
    VerifyEic {
        file: PathBuf,
        /// Comma separated symbols insertable before an output ('' for none).
        #[arg(long, value_name = "SYMS")]
        insert_before: String,
        /// Comma separated symbols insertable after an output ('' for none).
        #[arg(long, value_name = "SYMS")]
        insert_after: String,
        #[arg(long, value_name = "OUT")]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Compare the verifier verdict against the brute-force oracle.
    OracleCheck {
        file: PathBuf,
        /// Check constrained insertion with these before and after lists.
        #[arg(long, num_args = 2, value_names = ["BEFORE", "AFTER"], allow_hyphen_values = true)]
        eic: Option<Vec<String>>,
        /// Also compare on random systems with the file's shape, seeds N, N+1, ...
        #[arg(long, value_name = "N")]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

pub fn symbol_list(s: &str) -> Vec<String> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(String::from).collect()
}

fn constraints(before: &str, after: &str) -> InsertionConstraints {
    InsertionConstraints::new(symbol_list(before), symbol_list(after))
}

pub fn load(path: &Path) -> Result<AutomatonDocument, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    parse_document(&text).map_err(|source| CliError::Format { path: path.into(), source })
}

fn require_system(doc: &AutomatonDocument) -> Result<(), CliError> {
    if !doc.is_fully_observable() {
        return Err(opacity_core::Error::NotFullyObservable.into());
    }
    doc.automaton.require_system()?;
    Ok(())
}

/// Writes through a temporary sibling file so readers never see a partial
/// file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io_err = |source| CliError::Io { path: path.into(), source };
    let file_name = path.file_name().ok_or_else(|| CliError::Usage(format!("{} is not a file path", path.display())))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(file_name);
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, contents).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io_err(e)
    })
}

fn emit(out: &mut dyn Write, doc: &ReportDocument, json: bool) -> Result<(), CliError> {
    let text = if json { doc.to_json() } else { doc.to_text() };
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
}

fn enforce_exit(enforceable: bool) -> i32 {
    if enforceable {
        EXIT_OK
    } else {
        EXIT_NOT_ENFORCEABLE
    }
}

/// Random system with `g`'s state count and alphabet.
pub fn random_like(g: &Automaton, seed: u64) -> Automaton {
    let symbols: Vec<String> = g.symbols().into_iter().map(String::from).collect();
    let spec = opacity_core::random::RandomSpec {
        states: g.states().len().max(1),
        events: symbols.len(),
        ..varied_spec(seed, 1, 1)
    };
    let r = random_system(seed, &spec);
    let names: Vec<String> = r.symbols().into_iter().map(String::from).collect();
    r.map_symbols(|s| symbols[names.iter().position(|n| n == s).expect("own symbol")].clone())
        .expect("renaming between equally sized alphabets is injective")
}

fn verdicts(g: &Automaton, c: Option<&InsertionConstraints>) -> Result<(bool, bool), CliError> {
    Ok(match c {
        Some(c) => (
            check_eic_enforceable(g, c)?.enforceable,
            oracle_eic_enforceable(g, c, SearchBudget::for_constrained(g))?,
        ),
        None => (check_ei_enforceable(g)?.enforceable, oracle_ei_enforceable(g, SearchBudget::for_system(g))?),
    })
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::CheckOpacity { file, json } => {
            let doc = load(&file)?;
            let v = check_current_state_opacity(&doc.automaton, &doc.observable())?;
            emit(out, &opacity_report(&doc.name, &v), json)?;
            Ok(if v.opaque { EXIT_OK } else { EXIT_NOT_OPAQUE })
        }
        Command::VerifyEi { file, dot, json } => {
            let doc = load(&file)?;
            require_system(&doc)?;
            let r = check_ei_enforceable(&doc.automaton)?;
            if let Some(path) = dot {
                let hl = Highlight { nonblocking: r.staying_nonblocking.clone(), pruned: r.pruned.clone() };
                write_atomic(&path, &emit_dot(&doc.name, &r.indicator, &hl))?;
            }
            emit(out, &ei_report(&doc.name, &r), json)?;
            Ok(enforce_exit(r.enforceable))
        }
        Command::VerifyEic { file, insert_before, insert_after, dot, json } => {
            let doc = load(&file)?;
            require_system(&doc)?;
            let r = check_eic_enforceable(&doc.automaton, &constraints(&insert_before, &insert_after))?;
            if let Some(path) = dot {
                let hl = Highlight { nonblocking: r.staying_nonblocking.keys().cloned().collect(), pruned: r.pruned.clone() };
                write_atomic(&path, &emit_dot(&doc.name, &r.indicator, &hl))?;
            }
            emit(out, &eic_report(&doc.name, &r), json)?;
            Ok(enforce_exit(r.enforceable))
        }
        Command::OracleCheck { file, eic, seed, json } => {
            let doc = load(&file)?;
            require_system(&doc)?;
            let c = eic.map(|v| constraints(&v[0], &v[1]));
            if let Some(c) = &c {
                c.validate(&doc.automaton)?;
            }
            let (verifier, oracle) = verdicts(&doc.automaton, c.as_ref())?;
            let mut echo = DifferentialEcho { verifier, oracle, random_instances: 0, random_disagreements: Vec::new() };
            if let Some(start) = seed {
                for s in start..start.saturating_add(RANDOM_INSTANCES) {
                    let g = random_like(&doc.automaton, s);
                    let (v, o) = verdicts(&g, c.as_ref())?;
                    echo.random_instances += 1;
                    if v != o {
                        echo.random_disagreements.push(s);
                    }
                }
            }
            let report = differential_report(&doc.name, c.as_ref(), echo);
            emit(out, &report, json)?;
            Ok(if report.verdict == "agree" { EXIT_OK } else { EXIT_DISAGREE })
        }
    }
}
