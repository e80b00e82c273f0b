//! Abstract numeration systems: the `rep`/`val` bijection between the
//! nonnegative integers and a regular language in genealogic order, and
//! recognizable sets of integers.

pub mod families;
mod ranker;
mod system;

use num_bigint::BigUint;

use crate::automata::{AutomatonError, RegexError};

pub use ranker::{Ranker, Words};
pub use system::{NumerationSystem, RecognizableSet};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NumerationError {
    #[error("numeration language is empty")]
    EmptyLanguage,
    #[error("numeration language is finite")]
    FiniteLanguage,
    #[error("word {0:?} is not in the numeration language")]
    NotInLanguage(String),
    #[error("representation language is not contained in the numeration language")]
    NotSubset,
    #[error("index {index} is beyond the finite set of size {size}")]
    IndexBeyondSet { index: BigUint, size: BigUint },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Regex(#[from] RegexError),
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;
    use crate::automata::{parse_regex, Alphabet};
    use std::sync::Arc;

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn binary_rep() {
        let s = base(2).unwrap();
        assert_eq!(s.rep_u64(6), "110");
        assert_eq!(s.rep_u64(0), "");
        for x in 0..2000u64 {
            assert_eq!(s.rep_u64(x), if x == 0 { String::new() } else { format!("{x:b}") });
        }
    }

    #[test]
    fn squares_system_order() {
        let s = squares_system();
        let words: Vec<String> = (0..10).map(|i| s.rep_u64(i)).collect();
        assert_eq!(words, ["", "a", "b", "c", "aa", "ab", "ac", "bb", "cc", "aaa"]);
        assert_eq!(s.val("aa").unwrap(), n(4));
    }

    #[test]
    fn fibonacci_rep_is_zeckendorf() {
        assert_eq!(fibonacci().rep_u64(4), "101");
    }

    #[test]
    fn pansiot_values() {
        let s = pansiot_system();
        assert_eq!(s.val("20").unwrap(), n(6));
        assert_eq!(s.val("22").unwrap(), n(8));
        assert_eq!(s.val("").unwrap(), n(0));
        assert_eq!(s.val("02"), Err(NumerationError::NotInLanguage("02".into())));
        assert_eq!(s.val("x"), Err(NumerationError::NotInLanguage("x".into())));
    }

    #[test]
    fn worked_example_sets() {
        let fx = |name| fixture(name).unwrap().set;
        assert_eq!(fx("base4-ones-threes").first_elements(11), [0, 1, 3, 5, 7, 13, 15, 21, 23, 29, 31]);
        assert_eq!(fx("base4-k").first_elements(17), [0, 1, 2, 3, 4, 6, 8, 10, 12, 14, 17, 18, 19, 25, 26, 27, 33]);
        assert_eq!(fx("base4-fibonacci").first_elements(13), [0, 1, 4, 16, 17, 64, 65, 68, 256, 257, 260, 272, 273]);
        assert_eq!(fx("base4-nonzero").first_elements(12), [0, 1, 2, 3, 5, 6, 7, 9, 10, 11, 13, 14]);
    }

    #[test]
    fn t_matches_elements_and_characteristic() {
        let x = pansiot_set();
        let chi = x.characteristic(11);
        let bits: Vec<u8> = chi.iter().map(|&b| u8::from(b)).collect();
        assert_eq!(bits, [1, 0, 1, 0, 0, 0, 1, 0, 1, 0, 0, 0]);
        for (i, e) in x.elements().take(50).enumerate() {
            assert_eq!(x.t_u64(i as u64).unwrap(), e);
            assert!(x.contains(&e));
            assert_eq!(x.index_of(&e), Some(n(i as u64)));
        }
    }

    #[test]
    fn natural_numbers() {
        let x = RecognizableSet::natural(fibonacci());
        for i in 0..300 {
            assert_eq!(x.t_u64(i).unwrap(), n(i));
            assert!(x.contains(&n(i)));
        }
    }

    #[test]
    fn thue_morse_members() {
        assert_eq!(thue_morse_set().first_elements(8), [1, 2, 4, 7, 8, 11, 13, 14]);
    }

    #[test]
    fn finite_sets_report_overflow() {
        let s = base(2).unwrap();
        let x = RecognizableSet::new(s, &parse_regex("1|10", &Alphabet::parse("01").unwrap()).unwrap()).unwrap();
        assert_eq!(x.t_u64(1).unwrap(), n(2));
        assert!(matches!(x.t_u64(2), Err(NumerationError::IndexBeyondSet { .. })));
    }

    #[test]
    fn subset_and_language_errors() {
        let sigma = Alphabet::parse("01").unwrap();
        let s = base(2).unwrap();
        let bad = parse_regex("0", &sigma).unwrap();
        assert_eq!(RecognizableSet::new(Arc::clone(&s), &bad).unwrap_err(), NumerationError::NotSubset);
        assert_eq!(NumerationSystem::from_regex("0|1", &sigma).unwrap_err(), NumerationError::FiniteLanguage);
    }

    #[test]
    fn csv_enumeration() {
        let mut out = Vec::new();
        fixture("base4-fibonacci").unwrap().set.write_csv(&mut out, 0, 6).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "n,t\n0,0\n1,1\n2,4\n3,16\n4,17\n5,64\n6,65\n");
    }
}
