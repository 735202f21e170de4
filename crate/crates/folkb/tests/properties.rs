//! Structural laws of the semantics and cross-checks between independent
//! implementations, on randomly generated knowledge bases. Seeds are fixed
//! so every run checks the same instances; each assertion names the seed it
//! failed on.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{gen, oracles};
use folkb::{
    parse, parse_formula_str, render_source, Atom, Classification, Engine, Formula, Interpretation,
    Label, LiteralSet, Polarity, Signature,
};
use proptest::prelude::*;

const FIXTURES: [&str; 5] = [
    include_str!("fixtures/ex2.folkb"),
    include_str!("fixtures/ex3.folkb"),
    include_str!("fixtures/assist.folkb"),
    include_str!("fixtures/intro.folkb"),
    include_str!("fixtures/normal.folkb"),
];

/// The two textbook constructions of the well-founded semantics for normal
/// programs — operator iteration and the alternating fixpoint — agree.
/// Both live in the test-support oracle module and are written
/// independently of the engine, so this pins the reference point the
/// engine is measured against.
#[test]
fn classic_semantics_constructions_agree() {
    for seed in 10000..10500u64 {
        let mut rng = gen::rng(seed);
        let kb = gen::normal_program(&mut rng, 5, 7);
        let a = oracles::vangelder_wfs(&kb).unwrap();
        let b = oracles::alternating_fixpoint_wfs(&kb).unwrap();
        assert_eq!(a, b, "seed {seed}");
    }
}

/// The iteration trace starts empty, grows monotonically, ends with the
/// stabilization witness repeated, and its last state is a fixpoint. An
/// inconsistent run ends in the full literal set and reports no labels; a
/// consistent run ends in a consistent state whose labels read it back.
#[test]
fn iteration_traces_are_increasing_chains_with_fixpoints() {
    let shape = gen::FolShape {
        max_omega: 4,
        max_ordinary: 2,
        max_theory_clauses: 2,
        max_rules: 4,
    };
    for seed in 11000..11200u64 {
        let mut rng = gen::rng(seed);
        let kb = gen::fol_program(&mut rng, shape);
        let engine = Engine::new(&kb).unwrap();
        let result = engine.well_founded_semantics().unwrap();
        let trace = &result.trace;
        assert!(trace[0].is_empty(), "seed {seed}: trace must start empty");
        assert!(
            trace.len() >= 2,
            "seed {seed}: trace must include the repeated witness"
        );
        for w in trace.windows(2) {
            assert!(
                w[0].is_subset_of(&w[1]),
                "seed {seed}: trace not increasing"
            );
        }
        assert_eq!(
            trace[trace.len() - 1],
            trace[trace.len() - 2],
            "seed {seed}"
        );
        let lfp = result.lfp();
        assert_eq!(
            &engine.wfs_step(lfp).unwrap(),
            lfp,
            "seed {seed}: lfp not a fixpoint"
        );
        if result.inconsistent {
            assert_eq!(
                lfp,
                &LiteralSet::full(engine.herbrand_base()),
                "seed {seed}"
            );
            assert!(result.labels.is_empty(), "seed {seed}");
        } else {
            assert!(lfp.is_consistent(), "seed {seed}");
            for atom in engine.herbrand_base() {
                let expect = if lfp.has_pos(atom) {
                    Label::True
                } else if lfp.has_neg(atom) {
                    Label::False
                } else {
                    Label::Undefined
                };
                assert_eq!(
                    result.labels.get(atom),
                    Some(&expect),
                    "seed {seed}: {atom}"
                );
            }
        }
    }
}

/// Coherence of the unfounded-set machinery at every state the iteration
/// visits: the greatest unfounded set is itself an unfounded set, and on
/// states the theory tolerates it avoids the potential-support pool and
/// never collides with the immediate consequences — so a clash in the next
/// state can only come from the theory's direct denials. (On states the
/// theory refutes, both operators deliberately return everything.)
#[test]
fn unfounded_sets_cohere_along_the_iteration() {
    let shape = gen::FolShape {
        max_omega: 4,
        max_ordinary: 2,
        max_theory_clauses: 2,
        max_rules: 4,
    };
    for seed in 12000..12150u64 {
        let mut rng = gen::rng(seed);
        let kb = gen::fol_program(&mut rng, shape);
        let engine = Engine::new(&kb).unwrap();
        for state in &engine.well_founded_semantics().unwrap().trace {
            let u = engine.greatest_unfounded_set(state).unwrap();
            assert!(engine.is_unfounded_set(state, &u).unwrap(), "seed {seed}");
            if engine.consistent_with(state).unwrap() {
                let support = engine.support_closure(state).unwrap();
                assert!(
                    u.is_disjoint(&support),
                    "seed {seed}: pool overlap at {state}"
                );
                let t = engine.immediate_consequences(state).unwrap();
                assert!(t.is_disjoint(&u), "seed {seed}: T and U clash at {state}");
            }
        }
    }
}

/// The shortcut decisions for interval satisfaction match sheer
/// enumeration of every interpretation in the interval, for every body
/// element of the generated program, on random intervals `e ⊆ i`.
#[test]
fn interval_satisfaction_shortcuts_match_enumeration() {
    let shape = gen::FolShape {
        max_omega: 4,
        max_ordinary: 2,
        max_theory_clauses: 2,
        max_rules: 4,
    };
    for seed in 13000..13150u64 {
        let mut rng = gen::rng(seed);
        let kb = gen::fol_program(&mut rng, shape);
        let engine = Engine::new(&kb).unwrap();
        let i_atoms = gen::subset_of(&mut rng, engine.herbrand_base());
        let e = gen::subset_of(&mut rng, &i_atoms);
        let i = Interpretation::new(i_atoms);
        for rule in &engine.kb().rules {
            for elem in &rule.body {
                let fast = engine.up_to_satisfies(&e, &i, elem).unwrap();
                let slow = oracles::up_to_enumeration(&engine, &e, &i, elem).unwrap();
                assert_eq!(
                    fast, slow,
                    "seed {seed}: element `{}` of `{}`",
                    elem.formula, rule
                );
            }
        }
    }
}

/// On models the support chain stays inside the interpretation, and every
/// enumerated answer set is a model that passes the membership check.
#[test]
fn support_chains_stay_inside_models() {
    let shape = gen::FolShape {
        max_omega: 4,
        max_ordinary: 2,
        max_theory_clauses: 2,
        max_rules: 4,
    };
    for seed in 14000..14150u64 {
        let mut rng = gen::rng(seed);
        let kb = gen::fol_program(&mut rng, shape);
        let engine = Engine::new(&kb).unwrap();
        let i = Interpretation::new(gen::subset_of(&mut rng, engine.herbrand_base()));
        if engine.is_model(&i).unwrap() {
            let chain = engine.support_fixpoint(&i).unwrap();
            assert!(
                chain.is_subset(&i.atoms),
                "seed {seed}: chain escaped the model"
            );
        }
        for set in engine.enumerate_answer_sets().unwrap() {
            assert!(engine.is_model(&set).unwrap(), "seed {seed}: {set:?}");
            assert!(
                engine.is_well_supported_answer_set(&set).unwrap(),
                "seed {seed}"
            );
        }
    }
}

/// On normal programs (no theory, no shared predicates) the well-supported
/// answer sets are exactly the stable models: interpretations equal to the
/// least model of their own reduct. The reduct construction here is local
/// to the test and independent of the engine.
#[test]
fn answer_sets_of_normal_programs_are_the_stable_models() {
    for seed in 15000..15200u64 {
        let mut rng = gen::rng(seed);
        let kb = gen::normal_program(&mut rng, 5, 7);
        let engine = Engine::new(&kb).unwrap();

        let mut rules: Vec<(Atom, BTreeSet<Atom>, BTreeSet<Atom>)> = Vec::new();
        for rule in &kb.rules {
            let mut pos = BTreeSet::new();
            let mut neg = BTreeSet::new();
            for elem in &rule.body {
                let Formula::Atom(a) = &elem.formula else {
                    panic!("normal program")
                };
                assert_eq!(elem.classification, Classification::Ordinary);
                match elem.polarity {
                    Polarity::Positive => pos.insert(a.clone()),
                    Polarity::Negative => neg.insert(a.clone()),
                };
            }
            rules.push((rule.head.clone(), pos, neg));
        }
        let least_model_of_reduct = |candidate: &BTreeSet<Atom>| -> BTreeSet<Atom> {
            let mut model = BTreeSet::new();
            loop {
                let mut next = model.clone();
                for (head, pos, neg) in &rules {
                    if neg.iter().all(|a| !candidate.contains(a))
                        && pos.iter().all(|a| model.contains(a))
                    {
                        next.insert(head.clone());
                    }
                }
                if next == model {
                    return model;
                }
                model = next;
            }
        };

        let hb: Vec<&Atom> = engine.herbrand_base().iter().collect();
        let mut stable: BTreeSet<BTreeSet<Atom>> = BTreeSet::new();
        for mask in 0u64..(1u64 << hb.len()) {
            let candidate: BTreeSet<Atom> = hb
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, a)| (*a).clone())
                .collect();
            if least_model_of_reduct(&candidate) == candidate {
                stable.insert(candidate);
            }
        }
        let answer: BTreeSet<BTreeSet<Atom>> = engine
            .enumerate_answer_sets()
            .unwrap()
            .into_iter()
            .map(|i| i.atoms)
            .collect();
        assert_eq!(answer, stable, "seed {seed}");
    }
}

/// Emitting a knowledge base to source text and parsing it back is the
/// identity, on the bundled fixtures and on generated programs of both
/// kinds.
#[test]
fn source_emission_round_trips() {
    for (n, src) in FIXTURES.iter().enumerate() {
        let kb = parse(src).unwrap();
        assert_eq!(parse(&render_source(&kb)).unwrap(), kb, "fixture {n}");
    }
    for seed in 16000..16010u64 {
        let mut rng = gen::rng(seed);
        let kb = gen::normal_program(&mut rng, 5, 7);
        assert_eq!(parse(&render_source(&kb)).unwrap(), kb, "seed {seed}");
    }
    let shape = gen::FolShape {
        max_omega: 4,
        max_ordinary: 2,
        max_theory_clauses: 3,
        max_rules: 5,
    };
    for seed in 16010..16025u64 {
        let mut rng = gen::rng(seed);
        let kb = gen::fol_program(&mut rng, shape);
        assert_eq!(parse(&render_source(&kb)).unwrap(), kb, "seed {seed}");
    }
}

/// The Herbrand base ranges over the declared rule predicates and
/// constants only: one ground atom per predicate and argument tuple,
/// theory-only predicates excluded.
#[test]
fn herbrand_base_counts_ground_atoms() {
    let kb = parse(
        "#predicates P/0, Q/1, R/2.\n\
         #constants a, b, c.\n\
         #theory\n\
         Extra(a) | P.\n\
         #rules\n\
         P :- Q(a), not R(a, b).\n",
    )
    .unwrap();
    let hb = kb.herbrand_base();
    assert_eq!(hb.len(), 1 + 3 + 9);
    assert!(hb.contains(&Atom::ground("P", &[])));
    assert!(hb.contains(&Atom::ground("Q", &["c"])));
    assert!(hb.contains(&Atom::ground("R", &["b", "c"])));
    assert!(!hb.iter().any(|a| a.pred == "Extra"));
}

fn formula_signature() -> Signature {
    let predicates: BTreeMap<String, usize> = [
        ("A".to_string(), 1),
        ("B".to_string(), 1),
        ("C".to_string(), 1),
    ]
    .into();
    let constants: BTreeSet<String> = ["a".to_string(), "b".to_string()].into();
    let rule_predicates: BTreeSet<String> = predicates.keys().cloned().collect();
    Signature::new(predicates, constants, rule_predicates, BTreeSet::new()).unwrap()
}

fn formula_strategy() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::Atom(Atom::ground("A", &["a"]))),
        Just(Formula::Atom(Atom::ground("B", &["a"]))),
        Just(Formula::Atom(Atom::ground("C", &["b"]))),
    ];
    leaf.prop_recursive(3, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Formula::And),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Formula::Or),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
}

proptest! {
    /// Arbitrary input text never panics the parser; it either parses or
    /// reports an error.
    #[test]
    fn parser_never_panics(src in "\\PC{0,200}") {
        let _ = parse(&src);
    }

    /// Inputs built from the grammar's own alphabet never panic either —
    /// this drives the tokenizer and section logic much harder than fully
    /// random text.
    #[test]
    fn parser_never_panics_on_grammar_alphabet(
        src in "[A-Za-z0-9_#.,:()~&|<>\\-= \n/]{0,300}",
    ) {
        let _ = parse(&src);
    }

    /// Printing a formula and parsing it back is the identity.
    #[test]
    fn formula_display_round_trips(f in formula_strategy()) {
        let sig = formula_signature();
        let back = parse_formula_str(&f.to_string(), &sig).unwrap();
        prop_assert_eq!(back, f);
    }
}
