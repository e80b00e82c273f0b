//! Numeration systems and recognizable sets used throughout the crate:
//! integer bases, unary, bounded languages, Fibonacci, the squares system,
//! and the constructions realizing prescribed growth classes.

use std::sync::Arc;

use super::{NumerationError, NumerationSystem, RecognizableSet};
use crate::automata::{disjoint_union, parse_regex, Alphabet, Dfa, Dfao};

const DIGITS: &str = "0123456789abcdefghijklmnopqrstuvwxyz";
const DATA_LETTERS: &str = "0123456789ABCDEFGHIJKLMNOPQRSTUV";

fn alphabet(letters: &str) -> Alphabet {
    Alphabet::parse(letters).expect("static alphabet")
}

fn regex(text: &str, letters: &str) -> Dfa {
    parse_regex(text, &alphabet(letters)).expect("static regex")
}

fn system(dfa: &Dfa) -> Arc<NumerationSystem> {
    Arc::new(NumerationSystem::new(dfa).expect("static system is infinite"))
}

/// `{ε} ∪ {1..b-1}{0..b-1}*` over the digits `0 < 1 < ... < b-1`.
pub fn base_language(b: u32) -> Result<Dfa, NumerationError> {
    if !(2..=36).contains(&b) {
        return Err(NumerationError::InvalidParameter(format!("base must be in 2..=36, got {b}")));
    }
    let sigma = Alphabet::new(DIGITS.chars().take(b as usize)).unwrap();
    let digits: Vec<char> = sigma.letters().to_vec();
    let mut transitions = Vec::new();
    for &d in &digits[1..] {
        transitions.push((0, d, 1));
    }
    for &d in &digits {
        transitions.push((1, d, 1));
    }
    Ok(Dfa::new(sigma, 2, 0, [0, 1], transitions).unwrap())
}

pub fn base(b: u32) -> Result<Arc<NumerationSystem>, NumerationError> {
    Ok(system(&base_language(b)?))
}

/// The system built on `a*`.
pub fn unary() -> Arc<NumerationSystem> {
    system(&regex("a*", "a"))
}

/// `a_1* a_2* ... a_l*` over the letters `a < b < c < ...`.
pub fn bounded_language(l: usize) -> Result<Dfa, NumerationError> {
    if !(1..=26).contains(&l) {
        return Err(NumerationError::InvalidParameter(format!("bounded(l) needs 1 <= l <= 26, got {l}")));
    }
    let sigma = Alphabet::new(('a'..='z').take(l)).unwrap();
    let letters = sigma.letters().to_vec();
    let transitions =
        (0..l).flat_map(|i| (i..l).map(move |j| (i, j))).map(|(i, j)| (i, letters[j], j)).collect::<Vec<_>>();
    // State i: the last letter read was a_{i+1} (state 0 also initial).
    Ok(Dfa::new(sigma, l, 0, 0..l, transitions).unwrap())
}

pub fn bounded(l: usize) -> Result<Arc<NumerationSystem>, NumerationError> {
    Ok(system(&bounded_language(l)?))
}

/// `{ε} ∪ 1(0|01)*`.
pub fn fibonacci_language() -> Dfa {
    regex("eps | 1(0|01)*", "01")
}

pub fn fibonacci() -> Arc<NumerationSystem> {
    system(&fibonacci_language())
}

/// `a*b* ∪ a*c*` with `a < b < c`.
pub fn squares_language() -> Dfa {
    regex("a*b* | a*c*", "abc")
}

pub fn squares_system() -> Arc<NumerationSystem> {
    system(&squares_language())
}

/// The perfect squares: `val(a^n) = n^2` in the squares system.
pub fn squares_set() -> RecognizableSet {
    let s = squares_system();
    let rep = regex("a*", "abc");
    RecognizableSet::new(s, &rep).unwrap()
}

/// Trim minimal automaton over `0 < 1 < 2 < 3` whose genealogic order makes
/// the fixed point of `1 -> 1010, 0 -> 00` the characteristic sequence of
/// `val(2{0,2}* ∪ {ε})`.
pub fn pansiot_language() -> Dfa {
    Dfa::new(
        alphabet("0123"),
        3,
        0,
        [0, 1, 2],
        [
            (0, '2', 1),
            (0, '1', 2),
            (0, '3', 2),
            (1, '0', 1),
            (1, '2', 1),
            (1, '1', 2),
            (1, '3', 2),
            (2, '0', 2),
            (2, '1', 2),
        ],
    )
    .unwrap()
}

pub fn pansiot_system() -> Arc<NumerationSystem> {
    system(&pansiot_language())
}

pub fn pansiot_set() -> RecognizableSet {
    RecognizableSet::new(pansiot_system(), &regex("2(0|2)* | eps", "0123")).unwrap()
}

/// Two-state automaton generating the Pansiot set: output 1 on the initial
/// state, 0 on the other. Partial transitions are completed with a 0 sink.
pub fn pansiot_dfao() -> Dfao {
    let d = Dfa::new(
        alphabet("0123"),
        2,
        0,
        [],
        [(0, '0', 0), (0, '2', 0), (0, '1', 1), (0, '3', 1), (1, '0', 1), (1, '1', 1)],
    )
    .unwrap();
    Dfao::from_partial(&d, vec![1, 0]).unwrap()
}

/// The two-state automaton `K` over `0 < 1 < 2 < 3`: 1,2,3 lead from the
/// initial state to the other, 0,2 lead back; both states accept.
pub fn k_language() -> Dfa {
    Dfa::new(alphabet("0123"), 2, 0, [0, 1], [(0, '1', 1), (0, '2', 1), (0, '3', 1), (1, '0', 0), (1, '2', 0)]).unwrap()
}

/// Base-2 parity automaton of the number of 1s.
pub fn thue_morse_dfao() -> Dfao {
    let d = Dfa::new(alphabet("01"), 2, 0, [], [(0, '0', 0), (0, '1', 1), (1, '0', 1), (1, '1', 0)]).unwrap();
    Dfao::new(d, vec![0, 1]).unwrap()
}

/// Integers with an odd number of 1s in base 2.
pub fn thue_morse_set() -> RecognizableSet {
    let s = base(2).unwrap();
    let odd = regex("0*1(0|10*1)*", "01");
    RecognizableSet::new(s, &crate::automata::intersection(&odd, &base_language(2).unwrap()).unwrap()).unwrap()
}

/// `val_b(K)` for a language `K` over the base-`b` digits.
pub fn base_subset(b: u32, rep: &Dfa) -> Result<RecognizableSet, NumerationError> {
    RecognizableSet::new(base(b)?, rep)
}

/// Numeration on `B_c`, with `X = val_S(B_d)`: `t_X(n) = Θ(n^{c/d})`.
pub fn rational_power(c: usize, d: usize) -> Result<RecognizableSet, NumerationError> {
    if !(d >= 1 && c >= d) {
        return Err(NumerationError::InvalidParameter(format!("rational_power needs c >= d >= 1, got c={c}, d={d}")));
    }
    let s = bounded(c)?;
    let rep = bounded_language(d)?.extend_alphabet(s.alphabet())?;
    RecognizableSet::new(s, &rep)
}

/// Words over `2^l` data letters with at most `max_sep` (or exactly
/// `exact_sep`) occurrences of a separator.
fn separator_language(data: &str, sep: char, seps: usize, exact: bool) -> Dfa {
    let letters: String = data.chars().chain(std::iter::once(sep)).collect();
    let sigma = alphabet(&letters);
    let mut transitions = Vec::new();
    for i in 0..=seps {
        for c in data.chars() {
            transitions.push((i, c, i));
        }
        if i < seps {
            transitions.push((i, sep, i + 1));
        }
    }
    let finals: Vec<usize> = if exact { vec![seps] } else { (0..=seps).collect() };
    Dfa::new(sigma, seps + 1, 0, finals, transitions).unwrap()
}

fn data_letters(l: usize) -> Result<&'static str, NumerationError> {
    if !(1..=5).contains(&l) {
        return Err(NumerationError::InvalidParameter(format!("need 1 <= l <= 5, got {l}")));
    }
    Ok(&DATA_LETTERS[..1 << l])
}

/// `L = L1 ∪ L2` over disjoint alphabets: `L1` = words over `2^l` letters
/// with at most `k` separators `/`, `L2 = {x,y}*`, and `X = val_S(L2)`.
/// Then `t_X(n) = Θ((log n)^k n^l)`.
pub fn logpoly(k: usize, l: usize) -> Result<RecognizableSet, NumerationError> {
    let l1 = separator_language(data_letters(l)?, '/', k, false);
    let l2 = regex("(x|y)*", "xy");
    let language = disjoint_union(&l1, &l2)?;
    let s = system(&language);
    let rep = l2.extend_alphabet(s.alphabet())?;
    RecognizableSet::new(s, &rep)
}

/// Parameters `(d, c)` of [`inverse_logpoly`]: `d = ceil(k / (l - 1))`,
/// `c = l d - k`.
pub fn inverse_logpoly_params(k: usize, l: usize) -> Result<(usize, usize), NumerationError> {
    if l < 2 {
        return Err(NumerationError::InvalidParameter(format!("inverse_logpoly needs l >= 2, got {l}")));
    }
    let d = k.div_ceil(l - 1);
    Ok((d, l * d - k))
}

/// `L1` = words over `2^l` letters with at most `c` separators `/`,
/// `L2` = words over `{x,y}` with exactly `d` separators `.`, and
/// `X = val_S(L2)`. Then `t_X(n) = Θ(n^l / (log n)^k)`.
pub fn inverse_logpoly(k: usize, l: usize) -> Result<RecognizableSet, NumerationError> {
    let (d, c) = inverse_logpoly_params(k, l)?;
    let l1 = separator_language(data_letters(l)?, '/', c, false);
    let l2 = separator_language("xy", '.', d, true);
    let language = disjoint_union(&l1, &l2)?;
    let s = system(&language);
    let rep = l2.extend_alphabet(s.alphabet())?;
    RecognizableSet::new(s, &rep)
}

/// A named numeration system with a recognizable set.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub set: RecognizableSet,
}

impl Fixture {
    pub fn system(&self) -> &Arc<NumerationSystem> {
        self.set.system()
    }
}

/// The worked examples: the Pansiot set, five base-4 sets, `val_2(1*0*)`
/// and the Thue-Morse set.
pub fn fixtures() -> Vec<Fixture> {
    let b4 = |text: &str| base_subset(4, &regex(text, "0123")).unwrap();
    vec![
        Fixture { name: "pansiot", set: pansiot_set() },
        Fixture { name: "base4-ones-threes", set: b4("(1|3)*") },
        Fixture { name: "base4-nonzero", set: b4("(1|2|3)*") },
        Fixture { name: "base4-fibonacci", set: b4("eps | 1(0|01)*") },
        Fixture { name: "base4-k", set: base_subset(4, &k_language()).unwrap() },
        Fixture { name: "base4-pansiot", set: base_subset(4, &pansiot_language()).unwrap() },
        Fixture { name: "base2-ones-zeros", set: base_subset(2, &intersect_base2(&regex("1*0*", "01"))).unwrap() },
        Fixture { name: "base2-thue-morse", set: thue_morse_set() },
    ]
}

fn intersect_base2(d: &Dfa) -> Dfa {
    crate::automata::intersection(d, &base_language(2).unwrap()).unwrap()
}

pub fn fixture(name: &str) -> Option<Fixture> {
    fixtures().into_iter().find(|f| f.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn base_language_shape() {
        let d = base_language(4).unwrap();
        assert!(d.accepts("") && d.accepts("123") && !d.accepts("0") && !d.accepts("01"));
        assert!(base_language(1).is_err());
        assert!(base_language(37).is_err());
    }

    #[test]
    fn bounded_counts_are_binomial() {
        let s = bounded(2).unwrap();
        for n in 0..=30u64 {
            assert_eq!(s.counts().v(n as usize), BigUint::from((n + 2) * (n + 1) / 2));
        }
        assert!(bounded(0).is_err());
    }

    #[test]
    fn parameter_checks() {
        assert!(rational_power(1, 2).is_err());
        assert!(rational_power(2, 0).is_err());
        assert!(inverse_logpoly(1, 1).is_err());
        assert!(logpoly(1, 0).is_err());
        assert_eq!(inverse_logpoly_params(1, 2).unwrap(), (1, 1));
        assert_eq!(inverse_logpoly_params(3, 2).unwrap(), (3, 3));
        assert_eq!(inverse_logpoly_params(3, 3).unwrap(), (2, 3));
    }

    #[test]
    fn constructed_sets_are_infinite_subsets() {
        for set in [logpoly(1, 1).unwrap(), logpoly(2, 2).unwrap(), inverse_logpoly(1, 2).unwrap()] {
            assert!(set.is_infinite());
            let xs = set.first_elements(20);
            assert!(xs.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn squares_are_squares() {
        let sq = squares_set();
        for n in 0..=20u64 {
            assert_eq!(sq.t_u64(n).unwrap(), BigUint::from(n * n));
        }
    }
}
