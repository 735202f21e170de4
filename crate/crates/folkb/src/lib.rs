//! Reasoning over FOL-programs: knowledge bases pairing a classical
//! first-order theory with a rule base whose bodies may mix ordinary atoms,
//! default-negated atoms, and arbitrary first-order formulas evaluated
//! against the theory.
//!
//! The crate provides, over a finite constant domain:
//!
//! * a data model and a parser for the `.folkb` source format
//!   ([`model`], [`parse`]);
//! * a classical entailment backend (grounding to propositional logic,
//!   Tseitin transformation, DPLL) with memoization and optional DIMACS
//!   dumps ([`entail`]);
//! * the three-valued well-founded semantics: immediate consequences,
//!   greatest unfounded sets, direct negative consequences, and the least
//!   fixpoint of their combination, with the full iteration trace
//!   ([`engine`] plus the operator impls);
//! * well-supported answer sets: two-valued models with a constructive
//!   support condition, checked or enumerated ([`Engine`] methods);
//! * text/JSON rendering and canonical source emission ([`render`]).
//!
//! ```
//! use folkb::{parse, Engine, render_text};
//!
//! let kb = parse(
//!     "#constants a.\n\
//!      #omega A, B.\n\
//!      #theory\n\
//!      forall X. (B(X) -> A(X)).\n\
//!      ~A(a) | C(a).\n\
//!      #rules\n\
//!      B(a) :- B(a).\n\
//!      A(a) :- (~C(a) & B(a)).\n\
//!      R(a) :- not C(a), not A(a).\n",
//! )
//! .unwrap();
//! let engine = Engine::new(&kb).unwrap();
//! let result = engine.well_founded_semantics().unwrap();
//! assert_eq!(render_text(&result), "true: R(a); false: A(a), B(a); undefined: (none)");
//! ```

pub mod engine;
pub mod entail;
pub mod error;
pub mod model;
pub mod parse;
pub mod render;

mod answer;
mod wfs;

pub use engine::{Engine, Limits};
pub use entail::{consistent_with, entails, propositionalize, satisfiable, Entailer};
pub use error::{Error, Result};
pub use model::{
    Atom, BodyElem, Classification, Formula, Interpretation, KnowledgeBase, Label, LiteralSet,
    Polarity, Rule, SemanticsResult, Signature, Term,
};
pub use parse::{
    parse, parse_formula_str, parse_ground_atom, parse_ground_literal, parse_literal_list,
};
pub use render::{
    render_json, render_source, render_text, render_trace_text, result_from_json, JsonResult,
};
