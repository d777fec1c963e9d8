use thiserror::Error;

use crate::element::Element;
use crate::syntax::Language;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("connective `{connective}` is not part of language {language}")]
    Language { connective: &'static str, language: Language },

    #[error("unbound symbol `{0}`")]
    UnboundSymbol(String),

    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("operation not defined for this kind of structure: {0}")]
    Kind(String),

    #[error("{0:?} is not a designated atom")]
    NotDesignated(Element),

    #[error("{0:?} is not an atom")]
    NotAtom(Element),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("admissible family is not closed: {0}")]
    NotClosed(String),

    #[error("assignment space of {needed} exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("no @ table for first coordinate {0:?}")]
    MissingAtTable(Element),

    #[error("D = {0:?} is not below box D")]
    BoxDViolation(Element),

    #[error("the formula is not refuted under the given assignment")]
    NotRefuted,

    #[error("no nominal has a non-bottom constant")]
    NoConstantAvailable,

    #[error("base does not validate the nominal axioms: {0}")]
    SchemaUnchecked(String),

    #[error("internal invariant breached: {0}")]
    InternalInvariantBreach(String),

    #[error("malformed input: {0}")]
    Input(String),

    #[error("derivation rejected at {0}")]
    Step(#[from] crate::proof::StepError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
