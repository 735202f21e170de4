//! Well-founded semantics for hybrid knowledge bases.
//!
//! Three monotone operators over partial interpretations drive the
//! computation:
//!
//! * [`Engine::immediate_consequences`] — heads of rules whose body is
//!   settled true by the current interpretation (ordinary elements by
//!   membership, FOL elements by entailment / failure of every consistent
//!   extension), plus shared atoms the theory itself entails;
//! * [`Engine::greatest_unfounded_set`] — the largest set of atoms that can
//!   be settled false together: every rule for each member is blocked, no
//!   consistent extension of the strengthened interpretation rederives the
//!   member, and no member retains potential support
//!   ([`Engine::support_closure`]) under an optimistic reading of the
//!   still-open shared atoms;
//! * [`Engine::negative_consequences`] — atoms whose negation follows
//!   classically from the theory plus the interpretation's shared
//!   projection.
//!
//! One step unions the three ([`Engine::wfs_step`]); iterating from the
//! empty interpretation climbs to the least fixpoint
//! ([`Engine::well_founded_semantics`]). When the knowledge base is
//! irreparably inconsistent the chain explodes to the full literal set and
//! the result is flagged rather than labeled.

use std::collections::BTreeSet;

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::model::{
    Atom, Classification, Formula, Label, LiteralSet, Polarity, Rule, SemanticsResult,
};

/// One optimistic reading of the shared atoms: a lower bound taken as true,
/// everything above the upper bound taken as false, and the gap left open.
/// `premises` bundles the theory-facing part (lower bound positively, the
/// atoms above the upper bound negatively); `open` lists the gap atoms a
/// universally quantified body element must additionally range over.
struct SharedReading {
    premises: LiteralSet,
    open: Vec<Atom>,
}

impl Engine {
    /// Is the rule body settled true under `i`? Positive ordinary elements
    /// must be in `i`, negative ordinary elements negated in `i`; positive
    /// FOL elements must follow from the theory plus `i`'s shared
    /// projection, and negative FOL elements must fail in every consistent
    /// extension of `i`.
    fn body_settled(&self, rule: &Rule, i: &LiteralSet, proj: &LiteralSet) -> Result<bool> {
        for e in &rule.body {
            let holds = match (e.polarity, e.classification) {
                (Polarity::Positive, Classification::Ordinary) => match &e.formula {
                    Formula::Atom(a) => i.has_pos(a),
                    _ => unreachable!("ordinary elements are atoms"),
                },
                (Polarity::Negative, Classification::Ordinary) => match &e.formula {
                    Formula::Atom(a) => i.has_neg(a),
                    _ => unreachable!("ordinary elements are atoms"),
                },
                (Polarity::Positive, Classification::Fol) => self.entails(proj, &e.formula)?,
                (Polarity::Negative, Classification::Fol) => {
                    self.all_extensions_fail(i, &e.formula)?
                }
            };
            if !holds {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Heads derivable in one step from `i`: settled rule bodies, plus
    /// Herbrand-base atoms the theory entails outright from `i`'s shared
    /// projection. If `i` is inconsistent with the theory the result is the
    /// whole Herbrand base.
    pub fn immediate_consequences(&self, i: &LiteralSet) -> Result<BTreeSet<Atom>> {
        if self.state_inconsistent(i)? {
            return Ok(self.herbrand_base().clone());
        }
        let proj = i.project_omega(&self.kb().signature);
        let mut out = BTreeSet::new();
        for rule in &self.kb().rules {
            if !out.contains(&rule.head) && self.body_settled(rule, i, &proj)? {
                out.insert(rule.head.clone());
            }
        }
        for a in self.herbrand_base() {
            if !out.contains(a) && self.entails(&proj, &Formula::Atom(a.clone()))? {
                out.insert(a.clone());
            }
        }
        Ok(out)
    }

    /// Atoms whose negation the theory entails from `i`'s shared projection
    /// — closure under classical contraposition. When the projection is
    /// unsatisfiable with the theory this is the whole Herbrand base
    /// (ex falso).
    pub fn negative_consequences(&self, i: &LiteralSet) -> Result<BTreeSet<Atom>> {
        let proj = i.project_omega(&self.kb().signature);
        let mut out = BTreeSet::new();
        for a in self.herbrand_base() {
            if self.entails(&proj, &Formula::not(Formula::Atom(a.clone())))? {
                out.insert(a.clone());
            }
        }
        Ok(out)
    }

    /// Every reading of the shared atoms that lies between the established
    /// atoms of `seed` and the candidate pool `y`: lower bounds contain the
    /// shared part of `seed`, upper bounds stay inside `y`, and shared atoms
    /// outside `y` are read as false. Readings whose lower bound already
    /// contradicts the theory describe no possible state of affairs and are
    /// dropped.
    ///
    /// Errors when the number of shared atoms in the gap between `seed` and
    /// `y` exceeds the extension cap.
    fn shared_readings(
        &self,
        seed: &BTreeSet<Atom>,
        y: &BTreeSet<Atom>,
    ) -> Result<Vec<SharedReading>> {
        let fixed: Vec<&Atom> = self
            .omega_atoms()
            .iter()
            .filter(|a| seed.contains(a))
            .collect();
        let free: Vec<&Atom> = self
            .omega_atoms()
            .iter()
            .filter(|a| y.contains(*a) && !seed.contains(*a))
            .collect();
        let outside: Vec<&Atom> = self
            .omega_atoms()
            .iter()
            .filter(|a| !y.contains(*a))
            .collect();
        if free.len() > self.limits().max_extension_atoms {
            return Err(Error::Resource {
                what: "potential-support enumeration",
                needed: free.len(),
                cap: self.limits().max_extension_atoms,
            });
        }
        let mut readings = Vec::new();
        for upper_mask in 0u64..(1u64 << free.len()) {
            let mut lower_mask = upper_mask;
            loop {
                let mut lower = LiteralSet::new();
                for a in &fixed {
                    lower.insert_pos((*a).clone());
                }
                for (bit, a) in free.iter().enumerate() {
                    if lower_mask & (1 << bit) != 0 {
                        lower.insert_pos((*a).clone());
                    }
                }
                if self.satisfiable_with(&lower)? {
                    let mut premises = lower;
                    for a in &outside {
                        premises.insert_neg((*a).clone());
                    }
                    let mut open = Vec::new();
                    for (bit, a) in free.iter().enumerate() {
                        if upper_mask & (1 << bit) == 0 {
                            premises.insert_neg((*a).clone());
                        } else if lower_mask & (1 << bit) == 0 {
                            open.push((*a).clone());
                        }
                    }
                    readings.push(SharedReading { premises, open });
                }
                if lower_mask == 0 {
                    break;
                }
                lower_mask = (lower_mask - 1) & upper_mask;
            }
        }
        Ok(readings)
    }

    /// Can the rule body hold under some reading? Ordinary elements never
    /// touch the theory: a positive one needs its atom inside the pool, a
    /// negative one needs its atom outside the established seed (an upper
    /// bound may simply omit it). Each FOL element is checked against the
    /// reading's premises; a universally quantified negative element must
    /// stay underivable for every way of settling the reading's open atoms.
    fn body_possibly_holds(
        &self,
        rule: &Rule,
        readings: &[SharedReading],
        seed: &BTreeSet<Atom>,
        y: &BTreeSet<Atom>,
    ) -> Result<bool> {
        let mut pos_needed = BTreeSet::new();
        let mut neg_needed = BTreeSet::new();
        let mut fol: Vec<&crate::model::BodyElem> = Vec::new();
        for e in &rule.body {
            match (e.polarity, e.classification) {
                (Polarity::Positive, Classification::Ordinary) => match &e.formula {
                    Formula::Atom(a) => {
                        if !y.contains(a) {
                            return Ok(false);
                        }
                        pos_needed.insert(a.clone());
                    }
                    _ => unreachable!("ordinary elements are atoms"),
                },
                (Polarity::Negative, Classification::Ordinary) => match &e.formula {
                    Formula::Atom(a) => {
                        if seed.contains(a) {
                            return Ok(false);
                        }
                        neg_needed.insert(a.clone());
                    }
                    _ => unreachable!("ordinary elements are atoms"),
                },
                _ => fol.push(e),
            }
        }
        if pos_needed.iter().any(|a| neg_needed.contains(a)) {
            return Ok(false);
        }
        if fol.is_empty() {
            return Ok(true);
        }
        'reading: for r in readings {
            for e in &fol {
                let holds = match e.polarity {
                    Polarity::Positive => self.entails(&r.premises, &e.formula)?,
                    Polarity::Negative => {
                        let mut underivable = true;
                        for mask in 0u64..(1u64 << r.open.len()) {
                            let mut prem = r.premises.clone();
                            for (bit, a) in r.open.iter().enumerate() {
                                if mask & (1 << bit) != 0 {
                                    prem.insert_pos(a.clone());
                                }
                            }
                            if self.satisfiable_with(&prem)? && self.entails(&prem, &e.formula)? {
                                underivable = false;
                                break;
                            }
                        }
                        underivable
                    }
                };
                if !holds {
                    continue 'reading;
                }
            }
            return Ok(true);
        }
        Ok(false)
    }

    /// Atoms with a potential derivation from `i`'s established atoms: the
    /// least pool containing every positively settled atom and closed under
    /// optimistic readings of the shared atoms. An atom joins the pool when
    /// the theory derives it under some reading, or when some rule for it
    /// can possibly fire. A reading whose premises are unsatisfiable only
    /// through the imposed negatives shows the pool is still too small to
    /// describe the shared atoms, so everything counts as potentially
    /// derivable.
    ///
    /// The unfounded machinery never settles an atom of this pool false:
    /// doing so is what lets a universally quantified check pass vacuously
    /// and contradict an atom the theory or the rules can still support.
    pub fn support_closure(&self, i: &LiteralSet) -> Result<BTreeSet<Atom>> {
        let seed: BTreeSet<Atom> = self
            .herbrand_base()
            .iter()
            .filter(|a| i.has_pos(a))
            .cloned()
            .collect();
        let mut y = seed.clone();
        loop {
            let readings = self.shared_readings(&seed, &y)?;
            for r in &readings {
                if !self.satisfiable_with(&r.premises)? {
                    return Ok(self.herbrand_base().clone());
                }
            }
            let mut grown = false;
            for h in self.herbrand_base() {
                if y.contains(h) {
                    continue;
                }
                let mut derivable = false;
                for r in &readings {
                    if self.entails(&r.premises, &Formula::Atom(h.clone()))? {
                        derivable = true;
                        break;
                    }
                }
                if !derivable {
                    for rule in self.kb().rules.iter().filter(|r| r.head == *h) {
                        if self.body_possibly_holds(rule, &readings, &seed, &y)? {
                            derivable = true;
                            break;
                        }
                    }
                }
                if derivable {
                    y.insert(h.clone());
                    grown = true;
                }
            }
            if !grown {
                return Ok(y);
            }
        }
    }

    /// The blocking conditions for one candidate member `head` of an
    /// unfounded set `u` under `i`: every rule with this head must be
    /// blocked, and no consistent extension of `i ∪ ¬u` may rederive the
    /// head.
    fn unfounded_at(&self, i: &LiteralSet, u: &BTreeSet<Atom>, head: &Atom) -> Result<bool> {
        let mut strengthened = i.clone();
        for a in u {
            strengthened.insert_neg(a.clone());
        }
        let proj = i.project_omega(&self.kb().signature);
        for rule in self.kb().rules.iter().filter(|r| r.head == *head) {
            let mut blocked = false;
            for e in &rule.body {
                blocked = match (e.polarity, e.classification) {
                    // A positive ordinary atom already false, or assumed
                    // unfounded alongside the candidate set.
                    (Polarity::Positive, Classification::Ordinary) => match &e.formula {
                        Formula::Atom(a) => i.has_neg(a) || u.contains(a),
                        _ => unreachable!("ordinary elements are atoms"),
                    },
                    // A negative ordinary atom already true.
                    (Polarity::Negative, Classification::Ordinary) => match &e.formula {
                        Formula::Atom(a) => i.has_pos(a),
                        _ => unreachable!("ordinary elements are atoms"),
                    },
                    // A positive FOL element that fails in every consistent
                    // extension of the strengthened interpretation.
                    (Polarity::Positive, Classification::Fol) => {
                        self.all_extensions_fail(&strengthened, &e.formula)?
                    }
                    // A negative FOL element the theory already derives.
                    (Polarity::Negative, Classification::Fol) => self.entails(&proj, &e.formula)?,
                };
                if blocked {
                    break;
                }
            }
            if !blocked {
                return Ok(false);
            }
        }
        self.all_extensions_fail(&strengthened, &Formula::Atom(head.clone()))
    }

    /// Is `u` an unfounded set with respect to `i`? Every member must have
    /// all of its rules blocked, must not be rederivable from any consistent
    /// extension of `i ∪ ¬u`, and must lie outside the potential-support
    /// pool of `i`: settling a potentially supported atom false is what
    /// turns the extension checks vacuous instead of sound. When `i` is
    /// inconsistent with the theory, every subset of the Herbrand base is
    /// unfounded.
    ///
    /// Errors when `u` mentions atoms outside the Herbrand base.
    pub fn is_unfounded_set(&self, i: &LiteralSet, u: &BTreeSet<Atom>) -> Result<bool> {
        if let Some(a) = u.iter().find(|a| !self.herbrand_base().contains(*a)) {
            return Err(Error::NotInHerbrandBase(a.to_string()));
        }
        if self.state_inconsistent(i)? {
            return Ok(true);
        }
        for head in u {
            if !self.unfounded_at(i, u, head)? {
                return Ok(false);
            }
        }
        if !u.is_empty() {
            let support = self.support_closure(i)?;
            if u.iter().any(|a| support.contains(a)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The greatest unfounded set with respect to `i`: the union of all
    /// unfounded sets, computed as the downward fixpoint of the blocking
    /// conditions starting from the Herbrand base minus the
    /// potential-support pool. Unfounded sets are closed under union and
    /// never meet the pool, so the fixpoint is the union.
    pub fn greatest_unfounded_set(&self, i: &LiteralSet) -> Result<BTreeSet<Atom>> {
        if self.state_inconsistent(i)? {
            return Ok(self.herbrand_base().clone());
        }
        let support = self.support_closure(i)?;
        let mut u: BTreeSet<Atom> = self
            .herbrand_base()
            .iter()
            .filter(|a| !support.contains(*a))
            .cloned()
            .collect();
        loop {
            let mut next = BTreeSet::new();
            for head in &u {
                if self.unfounded_at(i, &u, head)? {
                    next.insert(head.clone());
                }
            }
            if next == u {
                return Ok(u);
            }
            u = next;
        }
    }

    /// One well-founded step: immediate consequences positively, the
    /// greatest unfounded set and the classical negative consequences
    /// negatively.
    pub fn wfs_step(&self, i: &LiteralSet) -> Result<LiteralSet> {
        let t = self.immediate_consequences(i)?;
        let u = self.greatest_unfounded_set(i)?;
        let z = self.negative_consequences(i)?;
        let mut next = LiteralSet::new();
        for a in t {
            next.insert_pos(a);
        }
        for a in u {
            next.insert_neg(a);
        }
        for a in z {
            next.insert_neg(a);
        }
        Ok(next)
    }

    /// Iterate the well-founded step from the empty interpretation to its
    /// least fixpoint. The trace records every iterate, starting with the
    /// empty state and ending with the repeated stabilization witness. An
    /// inconsistent fixpoint equals the full literal set and yields no
    /// labels, only the flag.
    pub fn well_founded_semantics(&self) -> Result<SemanticsResult> {
        let mut trace = vec![LiteralSet::new()];
        loop {
            let current = trace.last().expect("trace is never empty");
            let next = self.wfs_step(current)?;
            let stable = next == *current;
            trace.push(next);
            if stable {
                break;
            }
            debug_assert!(
                trace.len() <= 2 * self.herbrand_base().len() + 3,
                "the monotone iteration must stabilize within the literal count"
            );
        }
        let lfp = trace.last().expect("trace is never empty");
        let inconsistent = !lfp.is_consistent();
        let mut labels = std::collections::BTreeMap::new();
        if inconsistent {
            debug_assert_eq!(
                *lfp,
                LiteralSet::full(self.herbrand_base()),
                "an inconsistent fixpoint is the full literal set"
            );
        } else {
            for a in self.herbrand_base() {
                let label = if lfp.has_pos(a) {
                    Label::True
                } else if lfp.has_neg(a) {
                    Label::False
                } else {
                    Label::Undefined
                };
                labels.insert(a.clone(), label);
            }
        }
        Ok(SemanticsResult {
            labels,
            inconsistent,
            trace,
        })
    }
}
