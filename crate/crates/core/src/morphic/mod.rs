//! Morphisms and morphic words: prolongable morphisms and their fixed
//! points, the morphism associated with an automaton, the coding `g` and the
//! counter `F`, and checks relating them to counting functions.

mod automaton;
mod morphism;
mod verify;
mod word;

use num_bigint::BigUint;

use crate::automata::AutomatonError;
use crate::numeration::NumerationError;

pub use automaton::{
    associated_morphism, canonical_automaton, coding_g, dfao_from_set, directive_language, set_from_dfao, GfAutomaton,
    GfCounts,
};
pub use morphism::{Morphism, Occurrences};
pub use verify::{verify_lemma_equiv, verify_lemma_l, LemmaReport};
pub use word::{coded_counts, Coding, MorphicWord};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MorphicError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid letter name {0:?}")]
    InvalidLetter(String),
    #[error("letter {0:?} is defined twice")]
    DuplicateLetter(String),
    #[error("unknown letter {0:?}")]
    UnknownLetter(String),
    #[error("{images} images for {letters} letters")]
    ImageCount { letters: usize, images: usize },
    #[error("morphism is not prolongable on {0:?}")]
    NotProlongable(String),
    #[error("fixed point is finite: {0:?}")]
    FiniteFixedPoint(String),
    #[error("coded fixed point is finite")]
    FiniteCodedWord,
    #[error("images of length {0} exceed the positional alphabet")]
    TooManyPositions(usize),
    #[error("the set is finite")]
    FiniteSet,
    #[error("{lemma}: {quantity} at n={n} is {found}, expected {expected}")]
    LemmaViolation { lemma: &'static str, quantity: &'static str, n: usize, expected: BigUint, found: BigUint },
    #[error("lemma_equiv: brackets differ at n={n} (length bracket {by_length:?}, counter bracket {by_count:?})")]
    EquivViolation { n: usize, by_length: Option<usize>, by_count: Option<usize> },
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Numeration(#[from] NumerationError),
}
