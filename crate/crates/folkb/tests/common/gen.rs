//! Seeded random generators for knowledge bases, literal sets, and
//! formulas. Everything is driven by a `ChaCha8Rng` so failures reproduce
//! from the seed printed by the failing assertion.

use std::collections::{BTreeMap, BTreeSet};

use folkb::{Atom, Formula, KnowledgeBase, LiteralSet, Signature};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random ground normal program: propositional atoms `p0..`, no theory,
/// no shared predicates, rule bodies of up to three literals of either
/// polarity.
pub fn normal_program(rng: &mut impl Rng, max_atoms: usize, max_rules: usize) -> KnowledgeBase {
    let n_atoms = rng.gen_range(1..=max_atoms.max(1));
    let preds: Vec<String> = (0..n_atoms).map(|i| format!("p{i}")).collect();
    let mut rules = Vec::new();
    for _ in 0..rng.gen_range(0..=max_rules) {
        let head = Atom::ground(&preds[rng.gen_range(0..n_atoms)], &[]);
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for _ in 0..rng.gen_range(0..=3usize) {
            let atom = Formula::Atom(Atom::ground(&preds[rng.gen_range(0..n_atoms)], &[]));
            if rng.gen_bool(0.5) {
                pos.push(atom);
            } else {
                neg.push(atom);
            }
        }
        rules.push((head, pos, neg));
    }
    let predicates: BTreeMap<String, usize> = preds.iter().map(|p| (p.clone(), 0)).collect();
    let rule_predicates: BTreeSet<String> = preds.iter().cloned().collect();
    let constants: BTreeSet<String> = ["c".to_string()].into();
    let sig = Signature::new(predicates, constants, rule_predicates, BTreeSet::new())
        .expect("generated signature is valid");
    KnowledgeBase::new(Vec::new(), rules, sig).expect("generated program is valid")
}

/// Shape knobs for [`fol_program`].
#[derive(Clone, Copy)]
pub struct FolShape {
    pub max_omega: usize,
    pub max_ordinary: usize,
    pub max_theory_clauses: usize,
    pub max_rules: usize,
}

impl Default for FolShape {
    fn default() -> Self {
        FolShape {
            max_omega: 5,
            max_ordinary: 3,
            max_theory_clauses: 3,
            max_rules: 4,
        }
    }
}

/// A random ground FOL-program over one constant `a`: shared unary
/// predicates `W0..`, ordinary unary predicates `Q0..`, a theory of random
/// clauses over the shared atoms, and rules mixing ordinary atoms, shared
/// atoms, and small compound formulas, under both polarities.
pub fn fol_program(rng: &mut impl Rng, shape: FolShape) -> KnowledgeBase {
    let n_omega = rng.gen_range(1..=shape.max_omega.max(1));
    let n_ord = rng.gen_range(0..=shape.max_ordinary);
    let omega_preds: Vec<String> = (0..n_omega).map(|i| format!("W{i}")).collect();
    let ord_preds: Vec<String> = (0..n_ord).map(|i| format!("Q{i}")).collect();
    let all_preds: Vec<String> = omega_preds
        .iter()
        .chain(ord_preds.iter())
        .cloned()
        .collect();
    let omega_atoms: Vec<Atom> = omega_preds
        .iter()
        .map(|p| Atom::ground(p, &["a"]))
        .collect();

    let mut theory = Vec::new();
    for _ in 0..rng.gen_range(0..=shape.max_theory_clauses) {
        let len = rng.gen_range(1..=3usize);
        let mut lits = Vec::with_capacity(len);
        for _ in 0..len {
            let atom = Formula::Atom(omega_atoms[rng.gen_range(0..n_omega)].clone());
            lits.push(if rng.gen_bool(0.5) {
                atom
            } else {
                Formula::not(atom)
            });
        }
        theory.push(if lits.len() == 1 {
            lits.pop().unwrap()
        } else {
            Formula::Or(lits)
        });
    }

    let mut rules = Vec::new();
    for _ in 0..rng.gen_range(0..=shape.max_rules) {
        let head = Atom::ground(&all_preds[rng.gen_range(0..all_preds.len())], &["a"]);
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for _ in 0..rng.gen_range(0..=3usize) {
            let formula = if rng.gen_bool(0.75) {
                Formula::Atom(Atom::ground(
                    &all_preds[rng.gen_range(0..all_preds.len())],
                    &["a"],
                ))
            } else {
                ground_formula(rng, &omega_atoms, 2)
            };
            if rng.gen_bool(0.6) {
                pos.push(formula);
            } else {
                neg.push(formula);
            }
        }
        rules.push((head, pos, neg));
    }

    let predicates: BTreeMap<String, usize> = all_preds.iter().map(|p| (p.clone(), 1)).collect();
    let rule_predicates: BTreeSet<String> = all_preds.iter().cloned().collect();
    let omega: BTreeSet<String> = omega_preds.iter().cloned().collect();
    let constants: BTreeSet<String> = ["a".to_string()].into();
    let sig = Signature::new(predicates, constants, rule_predicates, omega)
        .expect("generated signature is valid");
    KnowledgeBase::new(theory, rules, sig).expect("generated program is valid")
}

/// A random ground quantifier-free formula over the given atoms, up to the
/// requested connective depth.
pub fn ground_formula(rng: &mut impl Rng, atoms: &[Atom], depth: usize) -> Formula {
    assert!(!atoms.is_empty());
    if depth == 0 || rng.gen_bool(0.3) {
        let atom = Formula::Atom(atoms[rng.gen_range(0..atoms.len())].clone());
        return if rng.gen_bool(0.25) {
            Formula::not(atom)
        } else {
            atom
        };
    }
    match rng.gen_range(0..5) {
        0 => Formula::not(ground_formula(rng, atoms, depth - 1)),
        1 => Formula::And(
            (0..rng.gen_range(2..=3usize))
                .map(|_| ground_formula(rng, atoms, depth - 1))
                .collect(),
        ),
        2 => Formula::Or(
            (0..rng.gen_range(2..=3usize))
                .map(|_| ground_formula(rng, atoms, depth - 1))
                .collect(),
        ),
        3 => Formula::implies(
            ground_formula(rng, atoms, depth - 1),
            ground_formula(rng, atoms, depth - 1),
        ),
        _ => Formula::iff(
            ground_formula(rng, atoms, depth - 1),
            ground_formula(rng, atoms, depth - 1),
        ),
    }
}

/// A random literal set over `universe`. With `allow_clash`, an atom may
/// receive both signs, producing the occasional inconsistent set.
pub fn literal_subset(
    rng: &mut impl Rng,
    universe: &BTreeSet<Atom>,
    allow_clash: bool,
) -> LiteralSet {
    let mut s = LiteralSet::new();
    for a in universe {
        if allow_clash {
            if rng.gen_bool(0.3) {
                s.insert_pos(a.clone());
            }
            if rng.gen_bool(0.3) {
                s.insert_neg(a.clone());
            }
        } else {
            match rng.gen_range(0..4) {
                0 => s.insert_pos(a.clone()),
                1 => s.insert_neg(a.clone()),
                _ => {}
            }
        }
    }
    s
}

/// A random literal subset of `s`: each literal survives with probability
/// one half.
pub fn literal_subset_of(rng: &mut impl Rng, s: &LiteralSet) -> LiteralSet {
    LiteralSet::from_literals(
        s.literals()
            .into_iter()
            .filter(|_| rng.gen_bool(0.5))
            .map(|(a, sign)| (a.clone(), sign)),
    )
}

/// A random subset of an atom set.
pub fn subset_of(rng: &mut impl Rng, s: &BTreeSet<Atom>) -> BTreeSet<Atom> {
    s.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect()
}
