//! Core data model: signatures, terms, atoms, first-order formulas, rules,
//! knowledge bases, partial interpretations (signed literal sets), and the
//! derived notions built on them — Herbrand base, grounding, and the
//! ordinary/FOL classification of rule body elements.
//!
//! A knowledge base pairs a finite first-order theory `L` with a rule base
//! `Π`. Rules have an atomic head and a body of positive and
//! negation-as-failure elements, each of which is either an *ordinary* atom
//! (closed-world, evaluated by membership) or a *FOL formula* (open-world,
//! evaluated by classical entailment against `L`). Which of the two a body
//! element is depends only on the signature: see [`Signature::classify`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A term: constant or variable. By convention constants are lowercase
/// identifiers and variables uppercase; the parser enforces this, and
/// programmatic construction is expected to follow it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Const(String),
    Var(String),
}

impl Term {
    pub fn name(&self) -> &str {
        match self {
            Term::Const(n) | Term::Var(n) => n,
        }
    }

    pub fn is_const(&self) -> bool {
        matches!(self, Term::Const(_))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A predicate applied to terms. Ground iff every argument is a constant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub pred: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            pred: pred.into(),
            args,
        }
    }

    /// Convenience constructor for ground atoms: `Atom::ground("A", &["a"])`.
    pub fn ground(pred: &str, args: &[&str]) -> Self {
        Atom {
            pred: pred.to_string(),
            args: args.iter().map(|c| Term::Const(c.to_string())).collect(),
        }
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_const)
    }

    fn vars_into(&self, out: &mut BTreeSet<String>) {
        for t in &self.args {
            if let Term::Var(v) = t {
                out.insert(v.clone());
            }
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pred)?;
        if !self.args.is_empty() {
            write!(f, "({})", self.args.iter().join(","))?;
        }
        Ok(())
    }
}

/// First-order formulas over atoms. `And`/`Or` are n-ary (flattened by the
/// parser from `&`/`|` chains); quantifiers bind a single variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Atom),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn atom(a: Atom) -> Self {
        Formula::Atom(a)
    }

    /// Negation constructor; a plain function (not the `Not` trait) so it
    /// composes as `Formula::not` and takes ownership without a receiver.
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(v: impl Into<String>, f: Formula) -> Self {
        Formula::Forall(v.into(), Box::new(f))
    }

    pub fn exists(v: impl Into<String>, f: Formula) -> Self {
        Formula::Exists(v.into(), Box::new(f))
    }

    /// Variables occurring free in the formula.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut BTreeSet::new(), &mut out);
        out
    }

    fn free_vars_into(&self, bound: &mut BTreeSet<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(a) => {
                for t in &a.args {
                    if let Term::Var(v) = t {
                        if !bound.contains(v) {
                            out.insert(v.clone());
                        }
                    }
                }
            }
            Formula::Not(f) => f.free_vars_into(bound, out),
            Formula::And(fs) | Formula::Or(fs) => {
                for f in fs {
                    f.free_vars_into(bound, out);
                }
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.free_vars_into(bound, out);
                b.free_vars_into(bound, out);
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                let fresh = bound.insert(v.clone());
                f.free_vars_into(bound, out);
                if fresh {
                    bound.remove(v);
                }
            }
        }
    }

    /// True iff the formula has no free variables.
    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// True iff the formula contains no quantifier.
    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().all(Formula::is_quantifier_free),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }

    /// Collect every atom occurrence (at any depth) into `out`.
    pub fn atoms_into(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Not(f) => f.atoms_into(out),
            Formula::And(fs) | Formula::Or(fs) => {
                for f in fs {
                    f.atoms_into(out);
                }
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.atoms_into(out);
                b.atoms_into(out);
            }
            Formula::Forall(_, f) | Formula::Exists(_, f) => f.atoms_into(out),
        }
    }

    /// Collect every predicate name occurring in the formula.
    pub fn preds_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a.pred.clone());
            }
            Formula::Not(f) => f.preds_into(out),
            Formula::And(fs) | Formula::Or(fs) => {
                for f in fs {
                    f.preds_into(out);
                }
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.preds_into(out);
                b.preds_into(out);
            }
            Formula::Forall(_, f) | Formula::Exists(_, f) => f.preds_into(out),
        }
    }

    /// Replace free occurrences of the mapped variables by constants.
    /// Quantified occurrences shadow as usual.
    pub fn substitute(&self, map: &BTreeMap<String, String>) -> Formula {
        match self {
            Formula::Atom(a) => Formula::Atom(Atom {
                pred: a.pred.clone(),
                args: a
                    .args
                    .iter()
                    .map(|t| match t {
                        Term::Var(v) => match map.get(v) {
                            Some(c) => Term::Const(c.clone()),
                            None => t.clone(),
                        },
                        Term::Const(_) => t.clone(),
                    })
                    .collect(),
            }),
            Formula::Not(f) => Formula::not(f.substitute(map)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.substitute(map)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.substitute(map)).collect()),
            Formula::Implies(a, b) => Formula::implies(a.substitute(map), b.substitute(map)),
            Formula::Iff(a, b) => Formula::iff(a.substitute(map), b.substitute(map)),
            Formula::Forall(v, f) => {
                if map.contains_key(v) {
                    let mut inner = map.clone();
                    inner.remove(v);
                    Formula::forall(v.clone(), f.substitute(&inner))
                } else {
                    Formula::forall(v.clone(), f.substitute(map))
                }
            }
            Formula::Exists(v, f) => {
                if map.contains_key(v) {
                    let mut inner = map.clone();
                    inner.remove(v);
                    Formula::exists(v.clone(), f.substitute(&inner))
                } else {
                    Formula::exists(v.clone(), f.substitute(map))
                }
            }
        }
    }

    /// Check quantifier hygiene: no variable is bound twice along a path and
    /// no quantifier captures a name from `in_scope` (for rule bodies,
    /// the rule's own variables). Returns the offending variable on failure.
    pub fn check_quantifiers(&self, in_scope: &BTreeSet<String>) -> Result<()> {
        fn walk(f: &Formula, scope: &mut BTreeSet<String>) -> Result<()> {
            match f {
                Formula::Atom(_) => Ok(()),
                Formula::Not(g) => walk(g, scope),
                Formula::And(gs) | Formula::Or(gs) => {
                    for g in gs {
                        walk(g, scope)?;
                    }
                    Ok(())
                }
                Formula::Implies(a, b) | Formula::Iff(a, b) => {
                    walk(a, scope)?;
                    walk(b, scope)
                }
                Formula::Forall(v, g) | Formula::Exists(v, g) => {
                    if !scope.insert(v.clone()) {
                        return Err(Error::Formula(format!(
                            "variable `{v}` is bound while already in scope"
                        )));
                    }
                    walk(g, scope)?;
                    scope.remove(v);
                    Ok(())
                }
            }
        }
        walk(self, &mut in_scope.clone())
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        // Precedence levels: Iff 1, Implies 2, Or 3, And 4, Not 5, Atom 6.
        // Quantifiers render with a parenthesized body and are themselves
        // parenthesized whenever they appear as an operand.
        let prec = match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(_) => 3,
            Formula::And(_) => 4,
            Formula::Not(_) => 5,
            Formula::Forall(..) | Formula::Exists(..) => 0,
            Formula::Atom(_) => 6,
        };
        let needs_parens = prec < min;
        if needs_parens {
            f.write_str("(")?;
        }
        match self {
            Formula::Atom(a) => write!(f, "{a}")?,
            Formula::Not(g) => {
                f.write_str("~")?;
                g.fmt_prec(f, 5)?;
            }
            Formula::And(gs) => {
                for (i, g) in gs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" & ")?;
                    }
                    g.fmt_prec(f, 5)?;
                }
            }
            Formula::Or(gs) => {
                for (i, g) in gs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    g.fmt_prec(f, 4)?;
                }
            }
            Formula::Implies(a, b) => {
                a.fmt_prec(f, 3)?;
                f.write_str(" -> ")?;
                b.fmt_prec(f, 2)?;
            }
            Formula::Iff(a, b) => {
                a.fmt_prec(f, 2)?;
                f.write_str(" <-> ")?;
                b.fmt_prec(f, 2)?;
            }
            Formula::Forall(v, g) => {
                write!(f, "forall {v}. (")?;
                g.fmt_prec(f, 0)?;
                f.write_str(")")?;
            }
            Formula::Exists(v, g) => {
                write!(f, "exists {v}. (")?;
                g.fmt_prec(f, 0)?;
                f.write_str(")")?;
            }
        }
        if needs_parens {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// How a body element is evaluated.
///
/// `Ordinary`: a single positive atom whose predicate belongs to the rule
/// vocabulary but is *not* shared with the theory — closed-world, evaluated
/// by membership in the current interpretation. Everything else (shared
/// predicates, predicates of the theory's private vocabulary, compound
/// formulas) is `Fol` — open-world, evaluated by classical entailment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Classification {
    Ordinary,
    Fol,
}

/// Whether a body element appears plain or under negation as failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

/// One element of a rule body: a formula, its polarity, and its cached
/// classification (derived from the signature at construction).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BodyElem {
    pub formula: Formula,
    pub polarity: Polarity,
    pub classification: Classification,
}

/// A rule `head ← body`. The head is always an atom over the rule
/// vocabulary; the body mixes ordinary and FOL elements of both polarities.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub head: Atom,
    pub body: Vec<BodyElem>,
}

impl Rule {
    /// Positive body elements, in source order.
    pub fn pos(&self) -> impl Iterator<Item = &BodyElem> {
        self.body
            .iter()
            .filter(|e| e.polarity == Polarity::Positive)
    }

    /// Negation-as-failure body elements, in source order.
    pub fn neg(&self) -> impl Iterator<Item = &BodyElem> {
        self.body
            .iter()
            .filter(|e| e.polarity == Polarity::Negative)
    }

    /// Variables occurring free anywhere in the rule.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.head.vars_into(&mut out);
        for e in &self.body {
            out.extend(e.formula.free_vars());
        }
        out
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        if !self.body.is_empty() {
            f.write_str(" :- ")?;
            for (i, e) in self.body.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                if e.polarity == Polarity::Negative {
                    f.write_str("not ")?;
                }
                match &e.formula {
                    Formula::Atom(a) => write!(f, "{a}")?,
                    other => write!(f, "({other})")?,
                }
            }
        }
        f.write_str(".")
    }
}

/// The vocabulary of a knowledge base:
///
/// * `predicates` — every predicate name in use, with its arity;
/// * `constants` — the nonempty finite domain Φ_C;
/// * `rule_predicates` — the rule vocabulary Φ_P (head predicates plus
///   whatever was declared); only these contribute to the Herbrand base;
/// * `omega` — Ω ⊆ Φ_P, the predicates shared with the theory, along which
///   information flows in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    predicates: BTreeMap<String, usize>,
    constants: BTreeSet<String>,
    rule_predicates: BTreeSet<String>,
    omega: BTreeSet<String>,
}

impl Signature {
    pub fn new(
        predicates: BTreeMap<String, usize>,
        constants: BTreeSet<String>,
        rule_predicates: BTreeSet<String>,
        omega: BTreeSet<String>,
    ) -> Result<Self> {
        if constants.is_empty() {
            return Err(Error::Signature("the constant set must be nonempty".into()));
        }
        for p in &rule_predicates {
            if !predicates.contains_key(p) {
                return Err(Error::Signature(format!(
                    "rule predicate `{p}` has no declared arity"
                )));
            }
        }
        for p in &omega {
            if !rule_predicates.contains(p) {
                return Err(Error::Signature(format!(
                    "shared predicate `{p}` is not a rule predicate"
                )));
            }
        }
        Ok(Signature {
            predicates,
            constants,
            rule_predicates,
            omega,
        })
    }

    pub fn arity(&self, pred: &str) -> Option<usize> {
        self.predicates.get(pred).copied()
    }

    pub fn predicates(&self) -> &BTreeMap<String, usize> {
        &self.predicates
    }

    pub fn constants(&self) -> &BTreeSet<String> {
        &self.constants
    }

    pub fn rule_predicates(&self) -> &BTreeSet<String> {
        &self.rule_predicates
    }

    pub fn omega(&self) -> &BTreeSet<String> {
        &self.omega
    }

    pub fn is_omega(&self, pred: &str) -> bool {
        self.omega.contains(pred)
    }

    /// Classify a body formula: a bare atom whose predicate is in the rule
    /// vocabulary but not shared with the theory is ordinary; everything
    /// else is a FOL element. In particular atoms over shared predicates
    /// *and* atoms over theory-only predicates are FOL elements.
    pub fn classify(&self, f: &Formula) -> Classification {
        match f {
            Formula::Atom(a)
                if self.rule_predicates.contains(&a.pred) && !self.omega.contains(&a.pred) =>
            {
                Classification::Ordinary
            }
            _ => Classification::Fol,
        }
    }
}

/// A knowledge base: a finite first-order theory plus a rule base over a
/// shared signature. Construct with [`KnowledgeBase::new`], which validates
/// arities, closedness of theory sentences, quantifier hygiene, and head
/// vocabulary, and classifies every body element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnowledgeBase {
    pub theory: Vec<Formula>,
    pub rules: Vec<Rule>,
    pub signature: Signature,
}

impl KnowledgeBase {
    /// Build and validate a knowledge base. `rules` supplies each rule as
    /// `(head, positive body formulas, negative body formulas)`;
    /// classification is computed here.
    pub fn new(
        theory: Vec<Formula>,
        rules: Vec<(Atom, Vec<Formula>, Vec<Formula>)>,
        signature: Signature,
    ) -> Result<Self> {
        for f in &theory {
            check_vocab_formula(f, &signature)?;
            if let Some(v) = f.free_vars().into_iter().next() {
                return Err(Error::FreeVariable(v));
            }
            f.check_quantifiers(&BTreeSet::new())?;
        }
        let mut built = Vec::with_capacity(rules.len());
        for (head, pos, neg) in rules {
            check_vocab_atom(&head, &signature)?;
            if !signature.rule_predicates().contains(&head.pred) {
                return Err(Error::Signature(format!(
                    "head predicate `{}` is not in the rule vocabulary",
                    head.pred
                )));
            }
            let mut rule_vars = BTreeSet::new();
            head.vars_into(&mut rule_vars);
            for f in pos.iter().chain(neg.iter()) {
                check_vocab_formula(f, &signature)?;
                rule_vars.extend(f.free_vars());
            }
            let mut body = Vec::new();
            for f in pos {
                f.check_quantifiers(&rule_vars)?;
                body.push(BodyElem {
                    classification: signature.classify(&f),
                    polarity: Polarity::Positive,
                    formula: f,
                });
            }
            for f in neg {
                f.check_quantifiers(&rule_vars)?;
                body.push(BodyElem {
                    classification: signature.classify(&f),
                    polarity: Polarity::Negative,
                    formula: f,
                });
            }
            // Body order is irrelevant to the semantics; positive elements
            // are stored before negative ones.
            built.push(Rule { head, body });
        }
        Ok(KnowledgeBase {
            theory,
            rules: built,
            signature,
        })
    }

    /// Predicate names that occur anywhere in the theory or the rules.
    fn occurring_predicates(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for f in &self.theory {
            f.preds_into(&mut out);
        }
        for r in &self.rules {
            out.insert(r.head.pred.clone());
            for e in &r.body {
                e.formula.preds_into(&mut out);
            }
        }
        out
    }

    /// The Herbrand base: every ground atom over a rule predicate that
    /// actually occurs in the knowledge base, with arguments drawn from the
    /// constant set. Declared-but-unused rule predicates contribute nothing
    /// (see [`KnowledgeBase::unused_rule_predicates`]).
    pub fn herbrand_base(&self) -> BTreeSet<Atom> {
        let occurring = self.occurring_predicates();
        let consts: Vec<&String> = self.signature.constants().iter().collect();
        let mut out = BTreeSet::new();
        for p in self.signature.rule_predicates() {
            if !occurring.contains(p) {
                continue;
            }
            let arity = self.signature.arity(p).expect("validated at construction");
            if arity == 0 {
                out.insert(Atom::new(p.clone(), vec![]));
                continue;
            }
            for combo in (0..arity).map(|_| consts.iter()).multi_cartesian_product() {
                out.insert(Atom::new(
                    p.clone(),
                    combo
                        .into_iter()
                        .map(|c| Term::Const((**c).clone()))
                        .collect(),
                ));
            }
        }
        out
    }

    /// Rule predicates that never occur in the knowledge base. Callers may
    /// want to warn: such predicates are silently absent from the Herbrand
    /// base.
    pub fn unused_rule_predicates(&self) -> Vec<String> {
        let occurring = self.occurring_predicates();
        self.signature
            .rule_predicates()
            .iter()
            .filter(|p| !occurring.contains(*p))
            .cloned()
            .collect()
    }

    /// True iff no rule contains a free variable.
    pub fn is_ground(&self) -> bool {
        self.rules.iter().all(|r| r.free_vars().is_empty())
    }

    /// Replace every rule by all of its ground instances: each free
    /// variable ranges over the constant set, in lexicographic order of
    /// variable names and constants. Quantified subformulas stay intact
    /// (their bound variables are untouched). Exact duplicate instances are
    /// emitted once; grounding an already-ground base is the identity.
    pub fn ground(&self) -> KnowledgeBase {
        let consts: Vec<&String> = self.signature.constants().iter().collect();
        let mut rules = Vec::new();
        let mut seen = BTreeSet::new();
        for r in &self.rules {
            let vars: Vec<String> = r.free_vars().into_iter().collect();
            if vars.is_empty() {
                if seen.insert(r.clone()) {
                    rules.push(r.clone());
                }
                continue;
            }
            for combo in (0..vars.len())
                .map(|_| consts.iter())
                .multi_cartesian_product()
            {
                let map: BTreeMap<String, String> = vars
                    .iter()
                    .cloned()
                    .zip(combo.into_iter().map(|c| (**c).clone()))
                    .collect();
                let Atom { pred, args } = r.head.clone();
                let inst = Rule {
                    head: Atom {
                        pred,
                        args: args
                            .into_iter()
                            .map(|t| match t {
                                Term::Var(v) => Term::Const(map[&v].clone()),
                                c => c,
                            })
                            .collect(),
                    },
                    body: r
                        .body
                        .iter()
                        .map(|e| BodyElem {
                            formula: e.formula.substitute(&map),
                            polarity: e.polarity,
                            classification: e.classification,
                        })
                        .collect(),
                };
                if seen.insert(inst.clone()) {
                    rules.push(inst);
                }
            }
        }
        KnowledgeBase {
            theory: self.theory.clone(),
            rules,
            signature: self.signature.clone(),
        }
    }
}

fn check_vocab_atom(a: &Atom, sig: &Signature) -> Result<()> {
    match sig.arity(&a.pred) {
        None => Err(Error::Signature(format!(
            "undeclared predicate `{}`",
            a.pred
        ))),
        Some(n) if n != a.args.len() => Err(Error::Signature(format!(
            "predicate `{}` used with {} arguments, declared with {}",
            a.pred,
            a.args.len(),
            n
        ))),
        Some(_) => {
            for t in &a.args {
                if let Term::Const(c) = t {
                    if !sig.constants().contains(c) {
                        return Err(Error::Signature(format!("undeclared constant `{c}`")));
                    }
                }
            }
            Ok(())
        }
    }
}

fn check_vocab_formula(f: &Formula, sig: &Signature) -> Result<()> {
    match f {
        Formula::Atom(a) => check_vocab_atom(a, sig),
        Formula::Not(g) => check_vocab_formula(g, sig),
        Formula::And(gs) | Formula::Or(gs) => {
            for g in gs {
                check_vocab_formula(g, sig)?;
            }
            Ok(())
        }
        Formula::Implies(a, b) | Formula::Iff(a, b) => {
            check_vocab_formula(a, sig)?;
            check_vocab_formula(b, sig)
        }
        Formula::Forall(_, g) | Formula::Exists(_, g) => check_vocab_formula(g, sig),
    }
}

/// A partial three-valued interpretation: a set of signed ground literals.
/// Not necessarily consistent — the semantics deliberately manipulates
/// inconsistent sets when the knowledge base itself is inconsistent.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct LiteralSet {
    pos: BTreeSet<Atom>,
    neg: BTreeSet<Atom>,
}

impl LiteralSet {
    pub fn new() -> Self {
        LiteralSet::default()
    }

    /// The full literal set over `universe`: every atom both positive and
    /// negative.
    pub fn full(universe: &BTreeSet<Atom>) -> Self {
        LiteralSet {
            pos: universe.clone(),
            neg: universe.clone(),
        }
    }

    pub fn from_literals<I: IntoIterator<Item = (Atom, bool)>>(lits: I) -> Self {
        let mut s = LiteralSet::new();
        for (a, positive) in lits {
            if positive {
                s.pos.insert(a);
            } else {
                s.neg.insert(a);
            }
        }
        s
    }

    pub fn insert_pos(&mut self, a: Atom) {
        self.pos.insert(a);
    }

    pub fn insert_neg(&mut self, a: Atom) {
        self.neg.insert(a);
    }

    pub fn has_pos(&self, a: &Atom) -> bool {
        self.pos.contains(a)
    }

    pub fn has_neg(&self, a: &Atom) -> bool {
        self.neg.contains(a)
    }

    /// The atom is mentioned with either sign.
    pub fn mentions(&self, a: &Atom) -> bool {
        self.pos.contains(a) || self.neg.contains(a)
    }

    pub fn positives(&self) -> &BTreeSet<Atom> {
        &self.pos
    }

    pub fn negatives(&self) -> &BTreeSet<Atom> {
        &self.neg
    }

    pub fn len(&self) -> usize {
        self.pos.len() + self.neg.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty()
    }

    /// No atom appears with both signs.
    pub fn is_consistent(&self) -> bool {
        self.pos.is_disjoint(&self.neg)
    }

    pub fn union(&self, other: &LiteralSet) -> LiteralSet {
        LiteralSet {
            pos: self.pos.union(&other.pos).cloned().collect(),
            neg: self.neg.union(&other.neg).cloned().collect(),
        }
    }

    pub fn is_subset_of(&self, other: &LiteralSet) -> bool {
        self.pos.is_subset(&other.pos) && self.neg.is_subset(&other.neg)
    }

    /// Every mentioned atom lies in `universe`.
    pub fn within(&self, universe: &BTreeSet<Atom>) -> bool {
        self.pos.is_subset(universe) && self.neg.is_subset(universe)
    }

    /// Keep only literals whose predicate is shared with the theory.
    pub fn project_omega(&self, sig: &Signature) -> LiteralSet {
        LiteralSet {
            pos: self
                .pos
                .iter()
                .filter(|a| sig.is_omega(&a.pred))
                .cloned()
                .collect(),
            neg: self
                .neg
                .iter()
                .filter(|a| sig.is_omega(&a.pred))
                .cloned()
                .collect(),
        }
    }

    /// All literals as `(atom, sign)` pairs, sorted by atom and, for atoms
    /// carrying both signs, positive first.
    pub fn literals(&self) -> Vec<(&Atom, bool)> {
        let mut out: Vec<(&Atom, bool)> = Vec::with_capacity(self.len());
        let mut pos = self.pos.iter().peekable();
        let mut neg = self.neg.iter().peekable();
        loop {
            match (pos.peek(), neg.peek()) {
                (Some(p), Some(n)) => {
                    if p <= n {
                        out.push((pos.next().unwrap(), true));
                    } else {
                        out.push((neg.next().unwrap(), false));
                    }
                }
                (Some(_), None) => out.push((pos.next().unwrap(), true)),
                (None, Some(_)) => out.push((neg.next().unwrap(), false)),
                (None, None) => break,
            }
        }
        out
    }
}

impl fmt::Display for LiteralSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (a, sign)) in self.literals().into_iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if !sign {
                f.write_str("~")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

/// A total two-valued interpretation over the Herbrand base: the set of
/// atoms taken to be true; everything else in the base is false.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Interpretation {
    pub atoms: BTreeSet<Atom>,
}

impl Interpretation {
    pub fn new(atoms: BTreeSet<Atom>) -> Self {
        Interpretation { atoms }
    }

    pub fn contains(&self, a: &Atom) -> bool {
        self.atoms.contains(a)
    }

    /// Atoms of `universe` not in the interpretation.
    pub fn complement(&self, universe: &BTreeSet<Atom>) -> BTreeSet<Atom> {
        universe.difference(&self.atoms).cloned().collect()
    }
}

impl FromIterator<Atom> for Interpretation {
    fn from_iter<T: IntoIterator<Item = Atom>>(iter: T) -> Self {
        Interpretation {
            atoms: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.atoms.iter().join(", "))
    }
}

/// Truth value assigned to a ground atom by the three-valued semantics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Label {
    True,
    False,
    Undefined,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::True => "true",
            Label::False => "false",
            Label::Undefined => "undefined",
        })
    }
}

/// Outcome of the well-founded computation: a label for every Herbrand-base
/// atom (empty when the fixpoint is inconsistent), the inconsistency flag,
/// and the full iteration trace (initial empty state first, the repeated
/// stabilization witness last).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemanticsResult {
    pub labels: BTreeMap<Atom, Label>,
    pub inconsistent: bool,
    pub trace: Vec<LiteralSet>,
}

impl SemanticsResult {
    /// The least fixpoint reached by the iteration.
    pub fn lfp(&self) -> &LiteralSet {
        self.trace
            .last()
            .expect("trace always contains the initial state")
    }

    /// Number of operator applications performed.
    pub fn iterations(&self) -> usize {
        self.trace.len().saturating_sub(1)
    }
}
