use std::io;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::{NumerationError, Ranker};
use crate::automata::{is_subset, parse_regex, Alphabet, Dfa};
use crate::counting::CountTable;

/// An abstract numeration system: an infinite regular language over an
/// ordered alphabet, whose words represent 0, 1, 2, ... in genealogic order.
#[derive(Clone, Debug)]
pub struct NumerationSystem {
    ranker: Ranker,
}

impl NumerationSystem {
    pub fn new(language: &Dfa) -> Result<Self, NumerationError> {
        let ranker = Ranker::new(language);
        if ranker.dfa().is_empty_language() {
            return Err(NumerationError::EmptyLanguage);
        }
        if !ranker.is_infinite() {
            return Err(NumerationError::FiniteLanguage);
        }
        Ok(NumerationSystem { ranker })
    }

    pub fn from_regex(text: &str, alphabet: &Alphabet) -> Result<Self, NumerationError> {
        Self::new(&parse_regex(text, alphabet)?)
    }

    /// Trim minimal automaton of the numeration language.
    pub fn dfa(&self) -> &Dfa {
        self.ranker.dfa()
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.dfa().alphabet()
    }

    pub fn counts(&self) -> &CountTable {
        self.ranker.counts()
    }

    pub fn ranker(&self) -> &Ranker {
        &self.ranker
    }

    pub fn rep_indices(&self, n: &BigUint) -> Vec<usize> {
        self.ranker.unrank(n).expect("numeration language is infinite")
    }

    /// The representation of `n`: the `(n+1)`-th word of the language.
    pub fn rep(&self, n: &BigUint) -> String {
        self.alphabet().decode(&self.rep_indices(n))
    }

    pub fn rep_u64(&self, n: u64) -> String {
        self.rep(&BigUint::from(n))
    }

    pub fn val_indices(&self, word: &[usize]) -> Result<BigUint, NumerationError> {
        self.ranker.rank(word).ok_or_else(|| NumerationError::NotInLanguage(self.alphabet().decode(word)))
    }

    /// Inverse of [`rep`](Self::rep).
    pub fn val(&self, word: &str) -> Result<BigUint, NumerationError> {
        let w = self.alphabet().encode(word).map_err(|_| NumerationError::NotInLanguage(word.to_string()))?;
        self.val_indices(&w)
    }

    /// Representations of `0, 1, 2, ...` in order.
    pub fn words(&self) -> super::ranker::Words<'_> {
        self.ranker.words()
    }
}

/// A set `X` of nonnegative integers given by the regular language
/// `rep_S(X)` of its representations in a numeration system.
#[derive(Clone, Debug)]
pub struct RecognizableSet {
    system: Arc<NumerationSystem>,
    reps: Ranker,
}

impl RecognizableSet {
    /// Fails unless `L(rep_dfa)` is contained in the numeration language.
    pub fn new(system: Arc<NumerationSystem>, rep_dfa: &Dfa) -> Result<Self, NumerationError> {
        if rep_dfa.alphabet() != system.alphabet() {
            return Err(crate::automata::AutomatonError::AlphabetMismatch.into());
        }
        if !is_subset(rep_dfa, system.dfa())? {
            return Err(NumerationError::NotSubset);
        }
        Ok(RecognizableSet { system, reps: Ranker::new(rep_dfa) })
    }

    /// The set of all nonnegative integers.
    pub fn natural(system: Arc<NumerationSystem>) -> Self {
        let reps = system.ranker().clone();
        RecognizableSet { system, reps }
    }

    pub fn system(&self) -> &Arc<NumerationSystem> {
        &self.system
    }

    /// Trim minimal automaton of `rep_S(X)`.
    pub fn rep_dfa(&self) -> &Dfa {
        self.reps.dfa()
    }

    pub fn rep_counts(&self) -> &CountTable {
        self.reps.counts()
    }

    pub fn is_infinite(&self) -> bool {
        self.reps.is_infinite()
    }

    pub fn size(&self) -> Option<BigUint> {
        self.reps.size()
    }

    /// `t_X(n)`: the `(n+1)`-th smallest element.
    pub fn t(&self, n: &BigUint) -> Result<BigUint, NumerationError> {
        let word = self.reps.unrank(n).ok_or_else(|| NumerationError::IndexBeyondSet {
            index: n.clone(),
            size: self.size().unwrap_or_default(),
        })?;
        self.system.val_indices(&word)
    }

    pub fn t_u64(&self, n: u64) -> Result<BigUint, NumerationError> {
        self.t(&BigUint::from(n))
    }

    pub fn contains(&self, m: &BigUint) -> bool {
        self.rep_dfa().accepts_indices(&self.system.rep_indices(m))
    }

    /// `χ_X(0..=n_max)`, by running each representation through the
    /// automaton of `rep_S(X)`.
    pub fn characteristic(&self, n_max: usize) -> Vec<bool> {
        self.system.words().take(n_max + 1).map(|w| self.rep_dfa().accepts_indices(&w)).collect()
    }

    /// Elements in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = BigUint> + '_ {
        self.reps.words().map(|w| self.system.val_indices(&w).expect("rep(X) is inside L"))
    }

    /// `t_X(from), t_X(from+1), ...`.
    pub fn elements_from(&self, from: &BigUint) -> impl Iterator<Item = BigUint> + '_ {
        self.reps.words_from(from).map(|w| self.system.val_indices(&w).expect("rep(X) is inside L"))
    }

    /// Writes `n,t` lines for indices in `from..=to`, with a header.
    pub fn write_csv<W: io::Write + ?Sized>(&self, out: &mut W, from: u64, to: u64) -> io::Result<()> {
        writeln!(out, "n,t")?;
        if from > to {
            return Ok(());
        }
        for (n, t) in (from..=to).zip(self.elements_from(&BigUint::from(from))) {
            writeln!(out, "{n},{t}")?;
        }
        Ok(())
    }

    /// `v_{rep_S(X)}`: number of elements whose representation has length at
    /// most `n`.
    pub fn v_rep(&self, n: usize) -> BigUint {
        self.rep_counts().v(n)
    }

    /// Index of `m` in the set if present (`|X ∩ [0, m)|`).
    pub fn index_of(&self, m: &BigUint) -> Option<BigUint> {
        let w = self.system.rep_indices(m);
        self.reps.rank(&w)
    }

    /// Shortcut for small sets in tests and reports.
    pub fn first_elements(&self, count: usize) -> Vec<u64> {
        self.elements().take(count).map(|x| x.to_u64().unwrap_or(u64::MAX)).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.dfa().is_empty_language() || self.size().is_some_and(|s| s.is_zero())
    }
}
