//! The reasoning engine: a grounded knowledge base bundled with its Herbrand
//! base, its propositional store, and enumeration limits. The well-founded
//! operators live in [`crate::wfs`] and the answer-set machinery in
//! [`crate::answer`]; this module holds the shared plumbing, most notably
//! the consistent-extension check that both sides quantify over.

use std::collections::BTreeSet;

use crate::entail::Entailer;
use crate::error::{Error, Result};
use crate::model::{Atom, Formula, KnowledgeBase, LiteralSet};

/// Enumeration caps. `max_extension_atoms` bounds the number of unassigned
/// shared atoms a consistent-extension check may complete over (2^n
/// candidate completions); `max_enum_atoms` bounds interpretation-level
/// enumerations (answer-set search over the Herbrand base, and the interval
/// enumeration inside up-to satisfaction).
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_extension_atoms: usize,
    pub max_enum_atoms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_extension_atoms: 20,
            max_enum_atoms: 16,
        }
    }
}

/// A grounded knowledge base ready for semantic queries.
pub struct Engine {
    kb: KnowledgeBase,
    hb: BTreeSet<Atom>,
    omega_atoms: BTreeSet<Atom>,
    entailer: Entailer,
    limits: Limits,
}

impl Engine {
    pub fn new(kb: &KnowledgeBase) -> Result<Self> {
        Engine::with_limits(kb, Limits::default())
    }

    /// Ground the base (a no-op when it is already ground) and build the
    /// propositional store.
    pub fn with_limits(kb: &KnowledgeBase, limits: Limits) -> Result<Self> {
        let ground = kb.ground();
        let hb = ground.herbrand_base();
        let omega_atoms = hb
            .iter()
            .filter(|a| ground.signature.is_omega(&a.pred))
            .cloned()
            .collect();
        let entailer = Entailer::new(&ground.theory, &ground.signature)?;
        Ok(Engine {
            kb: ground,
            hb,
            omega_atoms,
            entailer,
            limits,
        })
    }

    /// The grounded knowledge base the engine runs on.
    pub fn kb(&self) -> &KnowledgeBase {
        &self.kb
    }

    pub fn herbrand_base(&self) -> &BTreeSet<Atom> {
        &self.hb
    }

    /// Herbrand-base atoms over shared predicates.
    pub fn omega_atoms(&self) -> &BTreeSet<Atom> {
        &self.omega_atoms
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// Divert every propositional query to numbered DIMACS files.
    pub fn set_dump(&mut self, prefix: std::path::PathBuf) -> Result<()> {
        self.entailer.set_dump(prefix)
    }

    /// Classical entailment with the premises taken exactly as given.
    pub fn entails(&self, premises: &LiteralSet, phi: &Formula) -> Result<bool> {
        self.entailer.entails(premises, phi)
    }

    /// Satisfiability of the theory together with the given literals.
    pub fn satisfiable_with(&self, premises: &LiteralSet) -> Result<bool> {
        self.entailer.satisfiable_with(premises)
    }

    /// Is `s` consistent with the theory (no complementary pair, and the
    /// theory plus the shared-predicate projection is satisfiable)?
    pub fn consistent_with(&self, s: &LiteralSet) -> Result<bool> {
        Ok(s.is_consistent() && self.satisfiable_with(&s.project_omega(&self.kb.signature))?)
    }

    /// The inconsistency branch condition of the semantic operators:
    /// the interpretation clashes on some atom, or the theory refutes its
    /// shared-predicate projection.
    pub(crate) fn state_inconsistent(&self, i: &LiteralSet) -> Result<bool> {
        Ok(!self.consistent_with(i)?)
    }

    /// Does every consistent extension of `base` fail to derive `phi`?
    ///
    /// An extension is a superset of `base` over the Herbrand-base literals
    /// whose shared-predicate projection is satisfiable together with the
    /// theory; it derives `phi` when the theory plus that projection entails
    /// `phi`. Only total completions over the unassigned shared atoms need
    /// checking: premises depend on an extension only through its projection,
    /// any consistent extension grows into a consistent total completion
    /// with at least the same entailments, and completions are extensions.
    ///
    /// Errors when `base` contains a complementary pair, or when the number
    /// of unassigned shared atoms exceeds the extension cap.
    pub fn forall_extensions_fail(&self, base: &LiteralSet, phi: &Formula) -> Result<bool> {
        if !base.is_consistent() {
            return Err(Error::InconsistentBase);
        }
        self.all_extensions_fail(base, phi)
    }

    /// Internal variant: a base with a complementary pair has no consistent
    /// extension at all, so the universally quantified check holds
    /// vacuously. The semantic operators rely on this totality.
    pub(crate) fn all_extensions_fail(&self, base: &LiteralSet, phi: &Formula) -> Result<bool> {
        if !base.is_consistent() {
            return Ok(true);
        }
        let proj = base.project_omega(&self.kb.signature);
        let unassigned: Vec<&Atom> = self
            .omega_atoms
            .iter()
            .filter(|a| !proj.mentions(a))
            .collect();
        if unassigned.len() > self.limits.max_extension_atoms {
            return Err(Error::Resource {
                what: "consistent-extension check",
                needed: unassigned.len(),
                cap: self.limits.max_extension_atoms,
            });
        }
        // If even the base projection contradicts the theory, no completion
        // is consistent and the check holds vacuously.
        if !self.satisfiable_with(&proj)? {
            return Ok(true);
        }
        for mask in 0u64..(1u64 << unassigned.len()) {
            let mut completion = proj.clone();
            for (bit, atom) in unassigned.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    completion.insert_pos((*atom).clone());
                } else {
                    completion.insert_neg((*atom).clone());
                }
            }
            if self.satisfiable_with(&completion)? && self.entails(&completion, phi)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
