//! Error type shared by the parser, the data model, and the reasoning
//! engines.

use std::io;

use thiserror::Error;

/// Everything that can go wrong while parsing a knowledge base or running
/// the semantics.
#[derive(Debug, Error)]
pub enum Error {
    /// Syntax or resolution error in a source document, with 1-based
    /// position of the offending token.
    #[error("{line}:{col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },

    /// A structurally invalid formula (unexpected quantifier, rebound
    /// variable, and the like).
    #[error("invalid formula: {0}")]
    Formula(String),

    /// Signature-level violation: undeclared predicate, arity clash,
    /// empty constant set, head predicate outside the rule vocabulary, …
    #[error("signature error: {0}")]
    Signature(String),

    /// A variable occurred free where a closed formula was required.
    #[error("free variable `{0}` in a formula that must be closed")]
    FreeVariable(String),

    /// The base of an extension check contained a complementary pair.
    #[error("extension check called on an inconsistent base")]
    InconsistentBase,

    /// Up-to satisfaction requires the lower interpretation to be contained
    /// in the upper one.
    #[error("up-to check: the base set is not a subset of the interpretation")]
    BaseNotContained,

    /// An enumeration would exceed a configured cap.
    #[error("{what} would enumerate over {needed} atoms, above the cap of {cap}")]
    Resource {
        what: &'static str,
        needed: usize,
        cap: usize,
    },

    /// An atom was used where membership in the Herbrand base is required.
    #[error("atom `{0}` is not in the Herbrand base")]
    NotInHerbrandBase(String),

    /// Input to a normal-logic-program routine was not a normal program.
    #[error("not a normal logic program: {0}")]
    NotNormal(String),

    /// A serialized result could not be decoded.
    #[error("invalid result document: {0}")]
    Json(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    /// Convenience constructor for parse errors.
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
