//! Brute-force reference implementations, written independently of the
//! engine code they are used to check. Entailment runs on truth tables over
//! explicitly enumerated assignments; the two normal-program semantics are
//! textbook fixpoint constructions over plain sets; the remaining oracles
//! replace clever reductions with exhaustive enumeration.

use std::collections::{BTreeMap, BTreeSet};

use folkb::{
    Atom, BodyElem, Classification, Engine, Error, Formula, Interpretation, KnowledgeBase, Label,
    LiteralSet, Polarity,
};

/// Replace quantifiers by explicit conjunctions/disjunctions over the
/// constants. Input must be closed.
pub fn expand(f: &Formula, constants: &BTreeSet<String>) -> Formula {
    match f {
        Formula::Atom(_) => f.clone(),
        Formula::Not(g) => Formula::not(expand(g, constants)),
        Formula::And(gs) => Formula::And(gs.iter().map(|g| expand(g, constants)).collect()),
        Formula::Or(gs) => Formula::Or(gs.iter().map(|g| expand(g, constants)).collect()),
        Formula::Implies(p, q) => Formula::implies(expand(p, constants), expand(q, constants)),
        Formula::Iff(p, q) => Formula::iff(expand(p, constants), expand(q, constants)),
        Formula::Forall(v, body) => Formula::And(instances(v, body, constants)),
        Formula::Exists(v, body) => Formula::Or(instances(v, body, constants)),
    }
}

fn instances(v: &str, body: &Formula, constants: &BTreeSet<String>) -> Vec<Formula> {
    constants
        .iter()
        .map(|c| {
            let mut map = BTreeMap::new();
            map.insert(v.to_string(), c.clone());
            expand(&body.substitute(&map), constants)
        })
        .collect()
}

/// Evaluate a ground, quantifier-free formula under the set of true atoms.
pub fn eval(f: &Formula, truth: &BTreeSet<Atom>) -> bool {
    match f {
        Formula::Atom(a) => truth.contains(a),
        Formula::Not(g) => !eval(g, truth),
        Formula::And(gs) => gs.iter().all(|g| eval(g, truth)),
        Formula::Or(gs) => gs.iter().any(|g| eval(g, truth)),
        Formula::Implies(p, q) => !eval(p, truth) || eval(q, truth),
        Formula::Iff(p, q) => eval(p, truth) == eval(q, truth),
        Formula::Forall(..) | Formula::Exists(..) => unreachable!("expand before eval"),
    }
}

fn assignment_universe(formulas: &[&Formula], extra: &BTreeSet<Atom>) -> Vec<Atom> {
    let mut atoms: BTreeSet<Atom> = extra.clone();
    for f in formulas {
        f.atoms_into(&mut atoms);
    }
    let atoms: Vec<Atom> = atoms.into_iter().collect();
    assert!(
        atoms.len() <= 20,
        "truth-table oracle called with {} atoms",
        atoms.len()
    );
    atoms
}

fn assignments(atoms: &[Atom]) -> impl Iterator<Item = BTreeSet<Atom>> + '_ {
    (0u64..(1u64 << atoms.len())).map(move |mask| {
        atoms
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask & (1 << bit) != 0)
            .map(|(_, a)| a.clone())
            .collect()
    })
}

fn respects(truth: &BTreeSet<Atom>, premises: &LiteralSet) -> bool {
    premises.positives().iter().all(|a| truth.contains(a))
        && premises.negatives().iter().all(|a| !truth.contains(a))
}

/// Truth-table satisfiability of a theory together with a literal set.
pub fn truth_table_satisfiable(
    theory: &[Formula],
    premises: &LiteralSet,
    constants: &BTreeSet<String>,
) -> bool {
    let expanded: Vec<Formula> = theory.iter().map(|f| expand(f, constants)).collect();
    let refs: Vec<&Formula> = expanded.iter().collect();
    let mut mentioned = premises.positives().clone();
    mentioned.extend(premises.negatives().iter().cloned());
    let atoms = assignment_universe(&refs, &mentioned);
    let sat = assignments(&atoms)
        .any(|truth| respects(&truth, premises) && expanded.iter().all(|f| eval(f, &truth)));
    sat
}

/// Truth-table entailment: every assignment satisfying the theory and the
/// premise literals satisfies `phi`.
pub fn truth_table_entails(
    theory: &[Formula],
    premises: &LiteralSet,
    phi: &Formula,
    constants: &BTreeSet<String>,
) -> bool {
    let expanded: Vec<Formula> = theory.iter().map(|f| expand(f, constants)).collect();
    let goal = expand(phi, constants);
    let mut refs: Vec<&Formula> = expanded.iter().collect();
    refs.push(&goal);
    let mut mentioned = premises.positives().clone();
    mentioned.extend(premises.negatives().iter().cloned());
    let atoms = assignment_universe(&refs, &mentioned);
    let holds = assignments(&atoms).all(|truth| {
        !(respects(&truth, premises) && expanded.iter().all(|f| eval(f, &truth)))
            || eval(&goal, &truth)
    });
    holds
}

/// A normal program as plain data: ground rules `(head, positive body,
/// negative body)` over a Herbrand base, no theory, no shared predicates.
struct NormalProgram {
    hb: BTreeSet<Atom>,
    rules: Vec<(Atom, BTreeSet<Atom>, BTreeSet<Atom>)>,
}

fn as_normal(kb: &KnowledgeBase) -> folkb::Result<NormalProgram> {
    if !kb.theory.is_empty() {
        return Err(Error::NotNormal("the theory is nonempty".into()));
    }
    if !kb.signature.omega().is_empty() {
        return Err(Error::NotNormal("shared predicates are declared".into()));
    }
    let ground = kb.ground();
    let mut rules = Vec::with_capacity(ground.rules.len());
    for rule in &ground.rules {
        let mut pos = BTreeSet::new();
        let mut neg = BTreeSet::new();
        for e in &rule.body {
            let atom = match (&e.formula, e.classification) {
                (Formula::Atom(a), Classification::Ordinary) => a.clone(),
                _ => {
                    return Err(Error::NotNormal(format!(
                        "body element `{}` is not an ordinary atom",
                        e.formula
                    )))
                }
            };
            match e.polarity {
                Polarity::Positive => pos.insert(atom),
                Polarity::Negative => neg.insert(atom),
            };
        }
        rules.push((rule.head.clone(), pos, neg));
    }
    Ok(NormalProgram {
        hb: ground.herbrand_base(),
        rules,
    })
}

fn labels_from(hb: &BTreeSet<Atom>, s: &LiteralSet) -> BTreeMap<Atom, Label> {
    hb.iter()
        .map(|a| {
            let label = if s.has_pos(a) {
                Label::True
            } else if s.has_neg(a) {
                Label::False
            } else {
                Label::Undefined
            };
            (a.clone(), label)
        })
        .collect()
}

/// Classic well-founded semantics of a normal program: iterate
/// `S ↦ T(S) ∪ ¬.U(S)` from the empty set, where `T` fires rules whose
/// positive atoms are true and negative atoms false in `S`, and `U` is the
/// greatest set of atoms all of whose rules are blocked (a positive atom
/// false in `S` or inside `U`, or a negative atom true in `S`).
pub fn vangelder_wfs(kb: &KnowledgeBase) -> folkb::Result<BTreeMap<Atom, Label>> {
    let p = as_normal(kb)?;
    let mut s = LiteralSet::new();
    loop {
        let mut next = LiteralSet::new();
        for (head, pos, neg) in &p.rules {
            if pos.iter().all(|a| s.has_pos(a)) && neg.iter().all(|a| s.has_neg(a)) {
                next.insert_pos(head.clone());
            }
        }
        for a in unfounded_of(&p, &s) {
            next.insert_neg(a);
        }
        if next == s {
            return Ok(labels_from(&p.hb, &s));
        }
        s = next;
    }
}

fn unfounded_of(p: &NormalProgram, s: &LiteralSet) -> BTreeSet<Atom> {
    let mut u: BTreeSet<Atom> = p.hb.clone();
    loop {
        let keep: BTreeSet<Atom> = u
            .iter()
            .filter(|head| {
                p.rules
                    .iter()
                    .filter(|(h, _, _)| h == *head)
                    .all(|(_, pos, neg)| {
                        pos.iter().any(|a| s.has_neg(a) || u.contains(a))
                            || neg.iter().any(|a| s.has_pos(a))
                    })
            })
            .cloned()
            .collect();
        if keep == u {
            return u;
        }
        u = keep;
    }
}

/// Alternating-fixpoint well-founded semantics: `Γ(A)` is the least model
/// of the reduct by `A`; iterate `A ↦ Γ(Γ(A))` from the empty set. True
/// atoms are the resulting fixpoint, false atoms the complement of its
/// single `Γ` image.
pub fn alternating_fixpoint_wfs(kb: &KnowledgeBase) -> folkb::Result<BTreeMap<Atom, Label>> {
    let p = as_normal(kb)?;
    let gamma = |a: &BTreeSet<Atom>| -> BTreeSet<Atom> {
        // Reduct: drop rules whose negative body meets `a`, strip negation
        // from the rest, then take the least model of the positive program.
        let mut model: BTreeSet<Atom> = BTreeSet::new();
        loop {
            let mut next = model.clone();
            for (head, pos, neg) in &p.rules {
                if neg.iter().all(|x| !a.contains(x)) && pos.iter().all(|x| model.contains(x)) {
                    next.insert(head.clone());
                }
            }
            if next == model {
                return model;
            }
            model = next;
        }
    };
    let mut a: BTreeSet<Atom> = BTreeSet::new();
    loop {
        let next = gamma(&gamma(&a));
        if next == a {
            break;
        }
        a = next;
    }
    let mut s = LiteralSet::new();
    for atom in &a {
        s.insert_pos(atom.clone());
    }
    for atom in p.hb.difference(&gamma(&a)) {
        s.insert_neg(atom.clone());
    }
    Ok(labels_from(&p.hb, &s))
}

/// The greatest unfounded set as its definition states it: the union of
/// every unfounded subset of the Herbrand base.
pub fn brute_force_gus(engine: &Engine, i: &LiteralSet) -> folkb::Result<BTreeSet<Atom>> {
    let hb: Vec<&Atom> = engine.herbrand_base().iter().collect();
    assert!(
        hb.len() <= 12,
        "brute-force unfounded enumeration over {} atoms",
        hb.len()
    );
    let mut union = BTreeSet::new();
    for mask in 0u64..(1u64 << hb.len()) {
        let u: BTreeSet<Atom> = hb
            .iter()
            .enumerate()
            .filter(|(bit, _)| mask & (1 << bit) != 0)
            .map(|(_, a)| (*a).clone())
            .collect();
        if engine.is_unfounded_set(i, &u)? {
            union.extend(u);
        }
    }
    Ok(union)
}

/// Does every consistent literal superset of `base` (over the Herbrand
/// base) whose shared projection is satisfiable with the theory fail to
/// entail `phi`? Enumerates all 3^k sign assignments of the unmentioned
/// atoms and decides each by truth table.
pub fn brute_force_extensions_fail(
    kb: &KnowledgeBase,
    base: &LiteralSet,
    phi: &Formula,
) -> folkb::Result<bool> {
    if !base.is_consistent() {
        return Err(Error::InconsistentBase);
    }
    let hb = kb.herbrand_base();
    let free: Vec<&Atom> = hb.iter().filter(|a| !base.mentions(a)).collect();
    assert!(
        free.len() <= 10,
        "superset enumeration over {} atoms",
        free.len()
    );
    let constants = kb.signature.constants();
    let mut counter = vec![0u8; free.len()];
    loop {
        let mut ext = base.clone();
        for (digit, atom) in counter.iter().zip(&free) {
            match digit {
                0 => {}
                1 => ext.insert_pos((*atom).clone()),
                _ => ext.insert_neg((*atom).clone()),
            }
        }
        let proj = ext.project_omega(&kb.signature);
        if truth_table_satisfiable(&kb.theory, &proj, constants)
            && truth_table_entails(&kb.theory, &proj, phi, constants)
        {
            return Ok(false);
        }
        // Advance the base-3 counter; carry out means we are done.
        let mut pos = 0;
        loop {
            if pos == counter.len() {
                return Ok(true);
            }
            counter[pos] += 1;
            if counter[pos] < 3 {
                break;
            }
            counter[pos] = 0;
            pos += 1;
        }
    }
}

/// Up-to satisfaction by sheer enumeration: check the element two-valuedly
/// under every interpretation `F` with `e ⊆ F ⊆ i`.
pub fn up_to_enumeration(
    engine: &Engine,
    e: &BTreeSet<Atom>,
    i: &Interpretation,
    elem: &BodyElem,
) -> folkb::Result<bool> {
    assert!(e.is_subset(&i.atoms), "enumeration oracle needs e ⊆ i");
    let free: Vec<&Atom> = i.atoms.difference(e).collect();
    assert!(
        free.len() <= 16,
        "interval enumeration over {} atoms",
        free.len()
    );
    for mask in 0u64..(1u64 << free.len()) {
        let mut f: BTreeSet<Atom> = e.clone();
        f.extend(
            free.iter()
                .enumerate()
                .filter(|(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, a)| (*a).clone()),
        );
        if !engine.satisfies_two_valued(&Interpretation::new(f), elem)? {
            return Ok(false);
        }
    }
    Ok(true)
}
