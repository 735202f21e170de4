//! Classical entailment over the finite domain.
//!
//! The first-order theory is interpreted with domain closure and unique
//! names over the declared constants, so every query reduces to
//! propositional logic: quantifiers expand to finite conjunctions and
//! disjunctions ([`propositionalize`]), formulas go through a Tseitin
//! transformation to CNF, and a small DPLL solver with unit propagation and
//! lexicographically-first branching decides satisfiability.
//!
//! [`Entailer`] caches the theory's CNF and memoizes query results keyed by
//! `(premise literals, query formula)`, which is sound across fixpoint
//! iterations because the theory never changes. Ground atoms map to solver
//! variables through a stable, lexicographically sorted table; Tseitin
//! auxiliaries are numbered after all atom variables and are never reused
//! across queries.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::model::{Atom, Formula, LiteralSet, Signature, Term};

/// Expand quantifiers over the constant set: `forall` to a conjunction,
/// `exists` to a disjunction, instantiating the bound variable by every
/// constant in sorted order. The input must be closed; the result is a
/// ground, quantifier-free formula. Single-instance expansions collapse to
/// the instance itself.
pub fn propositionalize(f: &Formula, constants: &BTreeSet<String>) -> Result<Formula> {
    fn go(
        f: &Formula,
        constants: &BTreeSet<String>,
        env: &BTreeMap<String, String>,
    ) -> Result<Formula> {
        match f {
            Formula::Atom(a) => {
                let mut args = Vec::with_capacity(a.args.len());
                for t in &a.args {
                    match t {
                        Term::Const(c) => args.push(Term::Const(c.clone())),
                        Term::Var(v) => match env.get(v) {
                            Some(c) => args.push(Term::Const(c.clone())),
                            None => return Err(Error::FreeVariable(v.clone())),
                        },
                    }
                }
                Ok(Formula::Atom(Atom::new(a.pred.clone(), args)))
            }
            Formula::Not(g) => Ok(Formula::not(go(g, constants, env)?)),
            Formula::And(gs) => Ok(Formula::And(
                gs.iter()
                    .map(|g| go(g, constants, env))
                    .collect::<Result<_>>()?,
            )),
            Formula::Or(gs) => Ok(Formula::Or(
                gs.iter()
                    .map(|g| go(g, constants, env))
                    .collect::<Result<_>>()?,
            )),
            Formula::Implies(a, b) => Ok(Formula::implies(
                go(a, constants, env)?,
                go(b, constants, env)?,
            )),
            Formula::Iff(a, b) => Ok(Formula::iff(go(a, constants, env)?, go(b, constants, env)?)),
            Formula::Forall(v, g) | Formula::Exists(v, g) => {
                let mut parts = Vec::with_capacity(constants.len());
                for c in constants {
                    let mut env2 = env.clone();
                    env2.insert(v.clone(), c.clone());
                    parts.push(go(g, constants, &env2)?);
                }
                Ok(if parts.len() == 1 {
                    parts.pop().expect("one instance")
                } else if matches!(f, Formula::Forall(..)) {
                    Formula::And(parts)
                } else {
                    Formula::Or(parts)
                })
            }
        }
    }
    go(f, constants, &BTreeMap::new())
}

/// A CNF under construction: clauses over signed variable ids, 1-based.
struct CnfBuilder<'a> {
    clauses: Vec<Vec<i32>>,
    next_var: u32,
    var_of: &'a BTreeMap<Atom, u32>,
}

impl<'a> CnfBuilder<'a> {
    fn new(var_of: &'a BTreeMap<Atom, u32>, first_free_var: u32) -> Self {
        CnfBuilder {
            clauses: Vec::new(),
            next_var: first_free_var,
            var_of,
        }
    }

    fn fresh(&mut self) -> i32 {
        let v = self.next_var as i32;
        self.next_var += 1;
        v
    }

    /// Tseitin encoding: returns a literal equisatisfiably equivalent to
    /// the (ground, quantifier-free) formula.
    fn lit_of(&mut self, f: &Formula) -> Result<i32> {
        match f {
            Formula::Atom(a) => match self.var_of.get(a) {
                Some(&v) => Ok(v as i32),
                None => Err(Error::Signature(format!(
                    "atom `{a}` is outside the variable table"
                ))),
            },
            Formula::Not(g) => Ok(-self.lit_of(g)?),
            Formula::And(gs) => {
                if gs.len() == 1 {
                    return self.lit_of(&gs[0]);
                }
                let lits: Vec<i32> = gs.iter().map(|g| self.lit_of(g)).collect::<Result<_>>()?;
                if lits.is_empty() {
                    // Empty conjunction is true.
                    let t = self.fresh();
                    self.clauses.push(vec![t]);
                    return Ok(t);
                }
                let g = self.fresh();
                for &l in &lits {
                    self.clauses.push(vec![-g, l]);
                }
                let mut long = vec![g];
                long.extend(lits.iter().map(|&l| -l));
                self.clauses.push(long);
                Ok(g)
            }
            Formula::Or(gs) => {
                if gs.len() == 1 {
                    return self.lit_of(&gs[0]);
                }
                let lits: Vec<i32> = gs.iter().map(|g| self.lit_of(g)).collect::<Result<_>>()?;
                if lits.is_empty() {
                    // Empty disjunction is false.
                    let t = self.fresh();
                    self.clauses.push(vec![-t]);
                    return Ok(t);
                }
                let g = self.fresh();
                for &l in &lits {
                    self.clauses.push(vec![g, -l]);
                }
                let mut long = vec![-g];
                long.extend(lits.iter());
                self.clauses.push(long);
                Ok(g)
            }
            Formula::Implies(a, b) => {
                let (la, lb) = (self.lit_of(a)?, self.lit_of(b)?);
                let g = self.fresh();
                self.clauses.push(vec![-g, -la, lb]);
                self.clauses.push(vec![g, la]);
                self.clauses.push(vec![g, -lb]);
                Ok(g)
            }
            Formula::Iff(a, b) => {
                let (la, lb) = (self.lit_of(a)?, self.lit_of(b)?);
                let g = self.fresh();
                self.clauses.push(vec![-g, -la, lb]);
                self.clauses.push(vec![-g, la, -lb]);
                self.clauses.push(vec![g, la, lb]);
                self.clauses.push(vec![g, -la, -lb]);
                Ok(g)
            }
            Formula::Forall(..) | Formula::Exists(..) => Err(Error::Formula(
                "quantifier reached the propositional encoder; propositionalize first".into(),
            )),
        }
    }

    /// Encode `f` and assert it.
    fn assert_formula(&mut self, f: &Formula) -> Result<()> {
        let l = self.lit_of(f)?;
        self.clauses.push(vec![l]);
        Ok(())
    }
}

/// DPLL with unit propagation. Branches on the lowest-numbered unassigned
/// variable, positive phase first — fully deterministic.
fn dpll_sat(num_vars: u32, clauses: &[Vec<i32>]) -> bool {
    struct Solver<'a> {
        clauses: &'a [Vec<i32>],
        assign: Vec<i8>,
        trail: Vec<u32>,
    }

    impl Solver<'_> {
        fn value(&self, lit: i32) -> i8 {
            let v = self.assign[lit.unsigned_abs() as usize];
            if lit < 0 {
                -v
            } else {
                v
            }
        }

        fn set(&mut self, lit: i32) {
            let var = lit.unsigned_abs();
            self.assign[var as usize] = if lit < 0 { -1 } else { 1 };
            self.trail.push(var);
        }

        fn undo_to(&mut self, mark: usize) {
            while self.trail.len() > mark {
                let var = self.trail.pop().expect("trail checked");
                self.assign[var as usize] = 0;
            }
        }

        /// Repeatedly assert unit clauses; false on conflict.
        fn propagate(&mut self) -> bool {
            loop {
                let mut progress = false;
                'clauses: for clause in self.clauses {
                    let mut unassigned = 0i32;
                    let mut unassigned_count = 0usize;
                    for &lit in clause {
                        match self.value(lit) {
                            1 => continue 'clauses,
                            0 => {
                                unassigned = lit;
                                unassigned_count += 1;
                            }
                            _ => {}
                        }
                    }
                    match unassigned_count {
                        0 => return false,
                        1 => {
                            self.set(unassigned);
                            progress = true;
                        }
                        _ => {}
                    }
                }
                if !progress {
                    return true;
                }
            }
        }

        fn search(&mut self, num_vars: u32) -> bool {
            let mark = self.trail.len();
            if !self.propagate() {
                self.undo_to(mark);
                return false;
            }
            let branch = (1..=num_vars).find(|&v| self.assign[v as usize] == 0);
            let var = match branch {
                None => return true,
                Some(v) => v,
            };
            for lit in [var as i32, -(var as i32)] {
                let inner = self.trail.len();
                self.set(lit);
                if self.search(num_vars) {
                    return true;
                }
                self.undo_to(inner);
            }
            self.undo_to(mark);
            false
        }
    }

    let mut s = Solver {
        clauses,
        assign: vec![0; num_vars as usize + 1],
        trail: Vec::new(),
    };
    s.search(num_vars)
}

/// Decide satisfiability of a conjunction of ground, quantifier-free
/// formulas, building a one-off variable table from the atoms that occur.
pub fn satisfiable(formulas: &[Formula]) -> Result<bool> {
    for f in formulas {
        if !f.is_quantifier_free() {
            return Err(Error::Formula(
                "satisfiable() expects quantifier-free formulas; propositionalize first".into(),
            ));
        }
        if let Some(v) = f.free_vars().into_iter().next() {
            return Err(Error::FreeVariable(v));
        }
    }
    let mut atoms = BTreeSet::new();
    for f in formulas {
        f.atoms_into(&mut atoms);
    }
    let var_of: BTreeMap<Atom, u32> = atoms
        .into_iter()
        .enumerate()
        .map(|(i, a)| (a, i as u32 + 1))
        .collect();
    let first_free = var_of.len() as u32 + 1;
    let mut b = CnfBuilder::new(&var_of, first_free);
    for f in formulas {
        b.assert_formula(f)?;
    }
    Ok(dpll_sat(b.next_var - 1, &b.clauses))
}

/// One-off entailment check: does `theory ∪ premises` entail `phi`?
/// The premises are taken exactly as given (callers project beforehand when
/// a projection is intended). Quantifiers expand over `constants`.
pub fn entails(
    theory: &[Formula],
    premises: &LiteralSet,
    phi: &Formula,
    constants: &BTreeSet<String>,
) -> Result<bool> {
    let mut ground: Vec<Formula> = Vec::with_capacity(theory.len() + premises.len() + 1);
    for f in theory {
        ground.push(propositionalize(f, constants)?);
    }
    for (a, sign) in premises.literals() {
        let f = Formula::Atom(a.clone());
        ground.push(if sign { f } else { Formula::not(f) });
    }
    ground.push(Formula::not(propositionalize(phi, constants)?));
    Ok(!satisfiable(&ground)?)
}

/// Is the literal set consistent with the theory? True iff the set has no
/// complementary pair and the theory plus the set's shared-predicate
/// projection is satisfiable.
pub fn consistent_with(theory: &[Formula], s: &LiteralSet, sig: &Signature) -> Result<bool> {
    if !s.is_consistent() {
        return Ok(false);
    }
    let mut ground: Vec<Formula> = Vec::with_capacity(theory.len() + s.len());
    for f in theory {
        ground.push(propositionalize(f, sig.constants())?);
    }
    for (a, sign) in s.project_omega(sig).literals() {
        let f = Formula::Atom(a.clone());
        ground.push(if sign { f } else { Formula::not(f) });
    }
    satisfiable(&ground)
}

struct Dump {
    prefix: PathBuf,
    counter: AtomicUsize,
}

/// Cached propositional store for one knowledge base: stable atom-variable
/// table over the full signature, the theory's CNF, and a query memo.
pub struct Entailer {
    constants: BTreeSet<String>,
    var_of: BTreeMap<Atom, u32>,
    atoms: Vec<Atom>,
    theory_clauses: Vec<Vec<i32>>,
    /// First variable id free for per-query Tseitin auxiliaries.
    query_var_base: u32,
    memo: Mutex<MemoTable>,
    dump: Option<Dump>,
}

/// Query cache: premise literals (sorted DIMACS codes) → goal formula
/// (`None` = plain satisfiability) → verdict.
type MemoTable = HashMap<Vec<i32>, HashMap<Option<Formula>, bool>>;

impl Entailer {
    /// Build the store: enumerate every ground atom over the signature's
    /// predicates (lexicographically — the table is reproducible), then
    /// encode the propositionalized theory once.
    pub fn new(theory: &[Formula], sig: &Signature) -> Result<Self> {
        let consts: Vec<&String> = sig.constants().iter().collect();
        let mut universe: BTreeSet<Atom> = BTreeSet::new();
        for (p, &arity) in sig.predicates() {
            if arity == 0 {
                universe.insert(Atom::new(p.clone(), vec![]));
                continue;
            }
            for combo in (0..arity).map(|_| consts.iter()).multi_cartesian_product() {
                universe.insert(Atom::new(
                    p.clone(),
                    combo
                        .into_iter()
                        .map(|c| Term::Const((**c).clone()))
                        .collect(),
                ));
            }
        }
        let atoms: Vec<Atom> = universe.into_iter().collect();
        let var_of: BTreeMap<Atom, u32> = atoms
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, a)| (a, i as u32 + 1))
            .collect();

        let mut b = CnfBuilder::new(&var_of, atoms.len() as u32 + 1);
        for f in theory {
            let g = propositionalize(f, sig.constants())?;
            b.assert_formula(&g)?;
        }
        Ok(Entailer {
            constants: sig.constants().clone(),
            query_var_base: b.next_var,
            theory_clauses: b.clauses,
            var_of,
            atoms,
            memo: Mutex::new(HashMap::new()),
            dump: None,
        })
    }

    /// Write every subsequent query as a numbered DIMACS file
    /// `<prefix>-NNNN.cnf` (atom-variable table in the comments).
    pub fn set_dump(&mut self, prefix: PathBuf) -> Result<()> {
        if let Some(dir) = prefix.parent() {
            if !dir.as_os_str().is_empty() {
                std::fs::create_dir_all(dir)?;
            }
        }
        self.dump = Some(Dump {
            prefix,
            counter: AtomicUsize::new(0),
        });
        Ok(())
    }

    fn premise_lits(&self, premises: &LiteralSet) -> Result<Vec<i32>> {
        let mut lits = Vec::with_capacity(premises.len());
        for (a, sign) in premises.literals() {
            let v =
                *self.var_of.get(a).ok_or_else(|| {
                    Error::Signature(format!("atom `{a}` is outside the signature"))
                })? as i32;
            lits.push(if sign { v } else { -v });
        }
        lits.sort_unstable();
        lits.dedup();
        Ok(lits)
    }

    /// Satisfiability of `theory ∧ premises ∧ extra`, memoized.
    fn sat_query(&self, premises: &LiteralSet, extra: Option<&Formula>) -> Result<bool> {
        let lits = self.premise_lits(premises)?;
        {
            let memo = self.memo.lock().expect("memo lock");
            if let Some(inner) = memo.get(&lits) {
                if let Some(&hit) = inner.get(&extra.cloned()) {
                    return Ok(hit);
                }
            }
        }
        let mut clauses = self.theory_clauses.clone();
        for &l in &lits {
            clauses.push(vec![l]);
        }
        let mut num_vars = self.query_var_base - 1;
        if let Some(f) = extra {
            let g = propositionalize(f, &self.constants)?;
            let mut b = CnfBuilder::new(&self.var_of, self.query_var_base);
            b.assert_formula(&g)?;
            num_vars = b.next_var - 1;
            clauses.extend(b.clauses);
        }
        if let Some(dump) = &self.dump {
            self.write_dimacs(dump, num_vars, &clauses, &lits, extra)?;
        }
        let sat = dpll_sat(num_vars, &clauses);
        self.memo
            .lock()
            .expect("memo lock")
            .entry(lits)
            .or_default()
            .insert(extra.cloned(), sat);
        Ok(sat)
    }

    fn write_dimacs(
        &self,
        dump: &Dump,
        num_vars: u32,
        clauses: &[Vec<i32>],
        premise_lits: &[i32],
        extra: Option<&Formula>,
    ) -> Result<()> {
        let n = dump.counter.fetch_add(1, Ordering::SeqCst);
        let path = PathBuf::from(format!("{}-{n:04}.cnf", dump.prefix.display()));
        let mut out = String::new();
        writeln!(out, "c satisfiability query {n}").expect("string write");
        if !premise_lits.is_empty() {
            writeln!(out, "c premises: {}", premise_lits.iter().join(" ")).expect("string write");
        }
        if let Some(f) = extra {
            writeln!(out, "c asserted formula: {f}").expect("string write");
        }
        for (i, a) in self.atoms.iter().enumerate() {
            writeln!(out, "c var {} = {a}", i + 1).expect("string write");
        }
        writeln!(out, "p cnf {num_vars} {}", clauses.len()).expect("string write");
        for c in clauses {
            writeln!(out, "{} 0", c.iter().join(" ")).expect("string write");
        }
        std::fs::write(path, out)?;
        Ok(())
    }

    /// Is `theory ∧ premises` satisfiable?
    pub fn satisfiable_with(&self, premises: &LiteralSet) -> Result<bool> {
        self.sat_query(premises, None)
    }

    /// Does `theory ∪ premises ⊨ phi` hold classically? Premises are used
    /// exactly as given. An inconsistent premise set entails everything.
    pub fn entails(&self, premises: &LiteralSet, phi: &Formula) -> Result<bool> {
        Ok(!self.sat_query(premises, Some(&Formula::not(phi.clone())))?)
    }
}
