//! Exact counting of words in regular languages.
//!
//! `u(n)` is the number of accepted words of length `n` and `v(n)` the number
//! of accepted words of length at most `n`. All counts are arbitrary
//! precision integers.

mod recurrence;
mod table;

use num_bigint::BigUint;

use crate::automata::Dfa;

pub use recurrence::{find_recurrence, poly_mul, LinRec};
pub use table::{CountStream, CountTable};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CountingError {
    #[error("need at least {needed} terms to fit a recurrence, got {found}")]
    InsufficientTerms { needed: usize, found: usize },
    #[error("no integer recurrence of order at most {max_order} fits the sequence")]
    NoRecurrence { max_order: usize },
    #[error("fitted recurrence has non-integer coefficients")]
    NonIntegral,
}

/// Counts accepted words of length `n` by explicitly generating them.
///
/// Generation follows the defined transitions depth first and tests each
/// complete word for acceptance; it shares nothing with [`CountTable`].
pub fn brute_force_count(dfa: &Dfa, n: usize) -> BigUint {
    fn walk(dfa: &Dfa, q: usize, left: usize, word: &mut Vec<usize>, count: &mut u64) {
        if left == 0 {
            if dfa.accepts_indices(word) {
                *count += 1;
            }
            return;
        }
        for a in 0..dfa.alphabet().len() {
            if dfa.step(q, a).is_some() {
                word.push(a);
                walk(dfa, dfa.step(q, a).unwrap(), left - 1, word, count);
                word.pop();
            }
        }
    }
    let mut count = 0;
    walk(dfa, dfa.initial(), n, &mut Vec::with_capacity(n), &mut count);
    BigUint::from(count)
}
