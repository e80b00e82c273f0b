//! Finite automata over ordered alphabets: construction from regexes,
//! minimization, trimming, products, disjoint unions and shuffles, and
//! strongly connected component analysis.

mod alphabet;
mod dfa;
mod dfao;
mod minimize;
mod ops;
mod random;
mod regex;
mod scc;

pub use alphabet::{Alphabet, RESERVED};
pub use dfa::Dfa;
pub use dfao::Dfao;
pub use ops::{difference, disjoint_shuffle, disjoint_union, intersection, is_subset, product, Product};
pub use random::random_dfa;
pub use regex::{parse_regex, print_regex, to_regex, Regex, RegexError, RegexErrorKind};
pub use scc::{scc_decompose, Component, SccDecomposition};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum AutomatonError {
    #[error("letter {0:?} occurs twice in the alphabet")]
    DuplicateLetter(char),
    #[error("{0:?} cannot be used as a letter")]
    InvalidLetter(char),
    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(char),
    #[error("alphabets share the letter {0:?}")]
    AlphabetsIntersect(char),
    #[error("automata are over different alphabets")]
    AlphabetMismatch,
    #[error("an automaton needs at least one state")]
    NoStates,
    #[error("state {state} out of range (automaton has {num_states} states)")]
    StateOutOfRange { state: usize, num_states: usize },
    #[error("two transitions from state {state} on {letter:?}")]
    Nondeterministic { state: usize, letter: char },
    #[error("automaton with output must be complete")]
    Incomplete,
    #[error("expected {expected} outputs, found {found}")]
    OutputLength { expected: usize, found: usize },
    #[error("output symbol {0} is not 0 or 1")]
    InvalidOutput(u8),
}
