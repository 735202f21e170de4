//! Well-supported answer sets.
//!
//! A total interpretation `I` over the Herbrand base is evaluated
//! two-valuedly: ordinary elements by membership, FOL elements by classical
//! entailment from the theory plus `I`'s shared atoms asserted and the
//! shared atoms of its complement denied. Models additionally keep that
//! premise set satisfiable with the theory.
//!
//! Well-supportedness is checked constructively: *up-to satisfaction*
//! evaluates a body element under every interpretation between a derived
//! lower bound `E` and `I`, the fixpoint of the induced consequence
//! operator collects everything derivable without circularity
//! ([`Engine::support_fixpoint`]), and an answer set is a model whose every
//! member is either in that fixpoint or classically entailed from it
//! ([`Engine::is_well_supported_answer_set`]).

use std::collections::BTreeSet;

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::model::{Atom, BodyElem, Classification, Formula, Interpretation, LiteralSet, Polarity};

impl Engine {
    /// The two-valued premise set of a total interpretation: its shared
    /// atoms positively, the shared atoms of its complement negatively.
    fn two_valued_premises(&self, i: &Interpretation) -> LiteralSet {
        let mut s = LiteralSet::new();
        for a in self.omega_atoms() {
            if i.contains(a) {
                s.insert_pos(a.clone());
            } else {
                s.insert_neg(a.clone());
            }
        }
        s
    }

    /// Two-valued satisfaction of one body element under a total
    /// interpretation.
    pub fn satisfies_two_valued(&self, i: &Interpretation, elem: &BodyElem) -> Result<bool> {
        let premises = self.two_valued_premises(i);
        self.satisfies_two_valued_at(i, &premises, elem)
    }

    fn satisfies_two_valued_at(
        &self,
        i: &Interpretation,
        premises: &LiteralSet,
        elem: &BodyElem,
    ) -> Result<bool> {
        Ok(match (elem.polarity, elem.classification) {
            (Polarity::Positive, Classification::Ordinary) => match &elem.formula {
                Formula::Atom(a) => i.contains(a),
                _ => unreachable!("ordinary elements are atoms"),
            },
            (Polarity::Negative, Classification::Ordinary) => match &elem.formula {
                Formula::Atom(a) => !i.contains(a),
                _ => unreachable!("ordinary elements are atoms"),
            },
            (Polarity::Positive, Classification::Fol) => self.entails(premises, &elem.formula)?,
            (Polarity::Negative, Classification::Fol) => !self.entails(premises, &elem.formula)?,
        })
    }

    /// Two-valued satisfaction of a head atom.
    fn head_satisfied(
        &self,
        i: &Interpretation,
        premises: &LiteralSet,
        head: &Atom,
    ) -> Result<bool> {
        if self.kb().signature.is_omega(&head.pred) {
            self.entails(premises, &Formula::Atom(head.clone()))
        } else {
            Ok(i.contains(head))
        }
    }

    /// Is `i` a model: its premises are satisfiable with the theory and
    /// every rule with a satisfied body has a satisfied head?
    pub fn is_model(&self, i: &Interpretation) -> Result<bool> {
        let premises = self.two_valued_premises(i);
        if !self.satisfiable_with(&premises)? {
            return Ok(false);
        }
        for rule in &self.kb().rules {
            let mut body_holds = true;
            for e in &rule.body {
                if !self.satisfies_two_valued_at(i, &premises, e)? {
                    body_holds = false;
                    break;
                }
            }
            if body_holds && !self.head_satisfied(i, &premises, &rule.head)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Up-to satisfaction: does every interpretation `F` with
    /// `e ⊆ F ⊆ i` two-valuedly satisfy the element?
    ///
    /// Shortcuts (exact, not approximations): a positive ordinary atom
    /// holds iff it is already in `e`; a negative ordinary atom holds iff
    /// it is outside `i`; a positive FOL element holds iff it follows from
    /// `e`'s shared atoms asserted plus the complement of `i` denied, with
    /// the gap left open — entailment with the gap atoms free is exactly
    /// the conjunction of the entailments over all ways of settling them;
    /// a negative FOL element is checked by enumerating the shared atoms of
    /// `i \ e`, the only atoms the premises depend on (cap:
    /// `max_enum_atoms`).
    ///
    /// Errors when `e ⊄ i`.
    pub fn up_to_satisfies(
        &self,
        e: &BTreeSet<Atom>,
        i: &Interpretation,
        elem: &BodyElem,
    ) -> Result<bool> {
        if !e.is_subset(&i.atoms) {
            return Err(Error::BaseNotContained);
        }
        self.up_to_internal(e, i, elem)
    }

    /// Total variant used by the fixpoint iteration: when `e` escapes `i`
    /// the interval is empty and the universally quantified condition holds
    /// vacuously. On models the escape never happens (see
    /// [`Engine::support_fixpoint`]).
    fn up_to_internal(
        &self,
        e: &BTreeSet<Atom>,
        i: &Interpretation,
        elem: &BodyElem,
    ) -> Result<bool> {
        if !e.is_subset(&i.atoms) {
            return Ok(true);
        }
        match (elem.polarity, elem.classification) {
            (Polarity::Positive, Classification::Ordinary) => match &elem.formula {
                Formula::Atom(a) => Ok(e.contains(a)),
                _ => unreachable!("ordinary elements are atoms"),
            },
            (Polarity::Negative, Classification::Ordinary) => match &elem.formula {
                Formula::Atom(a) => Ok(!i.contains(a)),
                _ => unreachable!("ordinary elements are atoms"),
            },
            (Polarity::Positive, Classification::Fol) => {
                self.entails(&self.lower_premises(e, i), &elem.formula)
            }
            (Polarity::Negative, Classification::Fol) => {
                let undecided: Vec<&Atom> = self
                    .omega_atoms()
                    .iter()
                    .filter(|a| i.contains(a) && !e.contains(*a))
                    .collect();
                if undecided.len() > self.limits().max_enum_atoms {
                    return Err(Error::Resource {
                        what: "up-to interval enumeration",
                        needed: undecided.len(),
                        cap: self.limits().max_enum_atoms,
                    });
                }
                for mask in 0u64..(1u64 << undecided.len()) {
                    let extra: BTreeSet<Atom> = undecided
                        .iter()
                        .enumerate()
                        .filter(|(bit, _)| mask & (1 << bit) != 0)
                        .map(|(_, a)| (*a).clone())
                        .collect();
                    if self.entails(&self.interval_premises(e, &extra), &elem.formula)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Total premises of one interval member `F = e ∪ extra`: its shared
    /// atoms positively, every other shared atom negatively (the member's
    /// own complement denies them).
    fn interval_premises(&self, e: &BTreeSet<Atom>, extra: &BTreeSet<Atom>) -> LiteralSet {
        let mut s = LiteralSet::new();
        for a in self.omega_atoms() {
            if e.contains(a) || extra.contains(a) {
                s.insert_pos(a.clone());
            } else {
                s.insert_neg(a.clone());
            }
        }
        s
    }

    /// Partial premises of a whole interval `[e, i]`: `e`'s shared atoms
    /// positively, the shared atoms outside `i` negatively, the gap left
    /// open.
    fn lower_premises(&self, e: &BTreeSet<Atom>, i: &Interpretation) -> LiteralSet {
        let mut s = LiteralSet::new();
        for a in self.omega_atoms() {
            if e.contains(a) {
                s.insert_pos(a.clone());
            } else if !i.contains(a) {
                s.insert_neg(a.clone());
            }
        }
        s
    }

    /// Least fixpoint of the up-to consequence operator against `i`,
    /// starting from the empty set: everything derivable without
    /// circularity. Meaningful on models, where the chain stays inside `i`;
    /// total on arbitrary interpretations (see [`Engine::up_to_satisfies`]).
    pub fn support_fixpoint(&self, i: &Interpretation) -> Result<BTreeSet<Atom>> {
        let mut e: BTreeSet<Atom> = BTreeSet::new();
        loop {
            let mut next = e.clone();
            'rules: for rule in &self.kb().rules {
                if next.contains(&rule.head) {
                    continue;
                }
                for elem in &rule.body {
                    if !self.up_to_internal(&e, i, elem)? {
                        continue 'rules;
                    }
                }
                next.insert(rule.head.clone());
            }
            if next == e {
                return Ok(e);
            }
            e = next;
        }
    }

    /// Is `i` a well-supported answer set: a model whose every member is in
    /// the support fixpoint or classically entailed from the fixpoint's
    /// shared atoms plus the complement of `i` denied?
    pub fn is_well_supported_answer_set(&self, i: &Interpretation) -> Result<bool> {
        if !i.atoms.is_subset(self.herbrand_base()) {
            let stray = i
                .atoms
                .difference(self.herbrand_base())
                .next()
                .expect("nonempty");
            return Err(Error::NotInHerbrandBase(stray.to_string()));
        }
        if !self.is_model(i)? {
            return Ok(false);
        }
        let fixpoint = self.support_fixpoint(i)?;
        let premises = self.lower_premises(&fixpoint, i);
        for a in &i.atoms {
            if !fixpoint.contains(a) && !self.entails(&premises, &Formula::Atom(a.clone()))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Enumerate every well-supported answer set, in lexicographic order of
    /// their sorted members. Errors when the Herbrand base exceeds
    /// `max_enum_atoms`.
    pub fn enumerate_answer_sets(&self) -> Result<Vec<Interpretation>> {
        let hb: Vec<&Atom> = self.herbrand_base().iter().collect();
        if hb.len() > self.limits().max_enum_atoms {
            return Err(Error::Resource {
                what: "answer-set enumeration",
                needed: hb.len(),
                cap: self.limits().max_enum_atoms,
            });
        }
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << hb.len()) {
            let i: Interpretation = hb
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, a)| (*a).clone())
                .collect();
            if self.is_well_supported_answer_set(&i)? {
                out.push(i);
            }
        }
        out.sort();
        Ok(out)
    }
}
