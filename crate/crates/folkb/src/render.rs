//! Rendering of semantics results (single-line text, JSON) and canonical
//! `.folkb` source emission.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Atom, KnowledgeBase, Label, LiteralSet, SemanticsResult};
use crate::parse::{parse_ground_atom, parse_ground_literal};

/// Wire schema for a [`SemanticsResult`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JsonResult {
    /// Every Herbrand-base atom mapped to `"true"`, `"false"` or
    /// `"undefined"`; empty when the fixpoint is inconsistent.
    pub atoms: BTreeMap<String, String>,
    pub inconsistent: bool,
    /// Number of operator applications (one less than the trace length).
    pub iterations: usize,
    /// One literal list per iteration state, the initial empty state first
    /// and the repeated stabilization witness last. Negative literals carry
    /// a `~` prefix.
    pub trace: Vec<Vec<String>>,
}

fn partition(result: &SemanticsResult, label: Label) -> String {
    let atoms: Vec<String> = result
        .labels
        .iter()
        .filter(|(_, l)| **l == label)
        .map(|(a, _)| a.to_string())
        .collect();
    if atoms.is_empty() {
        "(none)".to_string()
    } else {
        atoms.join(", ")
    }
}

/// One-line summary: `true: …; false: …; undefined: …`, each partition
/// sorted, `(none)` standing in for an empty partition. An inconsistent
/// result renders as `INCONSISTENT (lfp = Lit_Π)`.
pub fn render_text(result: &SemanticsResult) -> String {
    if result.inconsistent {
        return "INCONSISTENT (lfp = Lit_Π)".to_string();
    }
    format!(
        "true: {}; false: {}; undefined: {}",
        partition(result, Label::True),
        partition(result, Label::False),
        partition(result, Label::Undefined),
    )
}

/// The iteration trace, one `W[i] = {…}` line per state.
pub fn render_trace_text(result: &SemanticsResult) -> String {
    let mut out = String::new();
    for (i, s) in result.trace.iter().enumerate() {
        let _ = writeln!(out, "W[{i}] = {s}");
    }
    out
}

fn literal_strings(s: &LiteralSet) -> Vec<String> {
    s.literals()
        .into_iter()
        .map(|(a, sign)| if sign { a.to_string() } else { format!("~{a}") })
        .collect()
}

/// Compact JSON encoding of a result, per [`JsonResult`].
pub fn render_json(result: &SemanticsResult) -> String {
    let doc = JsonResult {
        atoms: result
            .labels
            .iter()
            .map(|(a, l)| (a.to_string(), l.to_string()))
            .collect(),
        inconsistent: result.inconsistent,
        iterations: result.iterations(),
        trace: result.trace.iter().map(literal_strings).collect(),
    };
    serde_json::to_string(&doc).expect("result serialization cannot fail")
}

/// Decode a result rendered by [`render_json`], reconstructing the exact
/// labels, inconsistency flag, and trace.
pub fn result_from_json(text: &str) -> Result<SemanticsResult> {
    let doc: JsonResult = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let mut labels: BTreeMap<Atom, Label> = BTreeMap::new();
    for (atom_text, label_text) in &doc.atoms {
        let atom = parse_ground_atom(atom_text)?;
        let label = match label_text.as_str() {
            "true" => Label::True,
            "false" => Label::False,
            "undefined" => Label::Undefined,
            other => return Err(Error::Json(format!("unknown label `{other}`"))),
        };
        labels.insert(atom, label);
    }
    let mut trace = Vec::with_capacity(doc.trace.len());
    for state in &doc.trace {
        let mut s = LiteralSet::new();
        for lit in state {
            let (atom, sign) = parse_ground_literal(lit)?;
            if sign {
                s.insert_pos(atom);
            } else {
                s.insert_neg(atom);
            }
        }
        trace.push(s);
    }
    if trace.is_empty() {
        return Err(Error::Json("trace must contain the initial state".into()));
    }
    if doc.iterations != trace.len() - 1 {
        return Err(Error::Json(format!(
            "iteration count {} does not match trace length {}",
            doc.iterations,
            trace.len()
        )));
    }
    Ok(SemanticsResult {
        labels,
        inconsistent: doc.inconsistent,
        trace,
    })
}

/// Emit a knowledge base as canonical `.folkb` source. The predicate
/// declaration is always written so that the rule vocabulary survives a
/// round trip even when some predicate never heads a rule.
pub fn render_source(kb: &KnowledgeBase) -> String {
    let sig = &kb.signature;
    let mut out = String::new();
    if !sig.rule_predicates().is_empty() {
        let decls = sig
            .rule_predicates()
            .iter()
            .map(|p| {
                format!(
                    "{p}/{}",
                    sig.arity(p).expect("rule predicates have arities")
                )
            })
            .join(", ");
        let _ = writeln!(out, "#predicates {decls}.");
    }
    let _ = writeln!(out, "#constants {}.", sig.constants().iter().join(", "));
    if !sig.omega().is_empty() {
        let _ = writeln!(out, "#omega {}.", sig.omega().iter().join(", "));
    }
    if !kb.theory.is_empty() {
        let _ = writeln!(out, "#theory");
        for f in &kb.theory {
            let _ = writeln!(out, "{f}.");
        }
    }
    if !kb.rules.is_empty() {
        let _ = writeln!(out, "#rules");
        for r in &kb.rules {
            let _ = writeln!(out, "{r}");
        }
    }
    out
}
