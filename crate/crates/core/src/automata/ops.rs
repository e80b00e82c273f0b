//! Product, union and shuffle constructions.

use std::collections::HashMap;

use super::{AutomatonError, Dfa};

/// Accessible part of a pair automaton, with each state's provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    pub dfa: Dfa,
    /// `pairs[s] = (p, q)`: state `s` is the pair of `p` in the left factor
    /// and `q` in the right factor.
    pub pairs: Vec<(usize, usize)>,
}

/// Synchronous product. A transition exists iff it exists in both factors;
/// `final_rule(left_final, right_final)` decides acceptance.
pub fn product<R>(a: &Dfa, b: &Dfa, final_rule: R) -> Result<Product, AutomatonError>
where
    R: Fn(bool, bool) -> bool,
{
    if a.alphabet() != b.alphabet() {
        return Err(AutomatonError::AlphabetMismatch);
    }
    let k = a.alphabet().len();
    let start = (a.initial(), b.initial());
    let mut ids = HashMap::from([(start, 0usize)]);
    let mut pairs = vec![start];
    let mut delta = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (p, q) = pairs[i];
        let mut row = vec![None; k];
        for (letter, slot) in row.iter_mut().enumerate() {
            if let (Some(p2), Some(q2)) = (a.step(p, letter), b.step(q, letter)) {
                let next = ids.len();
                let id = *ids.entry((p2, q2)).or_insert_with(|| {
                    pairs.push((p2, q2));
                    next
                });
                *slot = Some(id);
            }
        }
        delta.push(row);
        i += 1;
    }
    let finals = pairs.iter().map(|&(p, q)| final_rule(a.is_final(p), b.is_final(q))).collect();
    Ok(Product { dfa: Dfa::from_parts(a.alphabet().clone(), delta, 0, finals), pairs })
}

/// Intersection of two languages over the same alphabet, minimized.
pub fn intersection(a: &Dfa, b: &Dfa) -> Result<Dfa, AutomatonError> {
    Ok(product(a, b, |x, y| x && y)?.dfa.minimize())
}

/// `L(a) \ L(b)`, minimized.
pub fn difference(a: &Dfa, b: &Dfa) -> Result<Dfa, AutomatonError> {
    Ok(product(a, &b.complete(), |x, y| x && !y)?.dfa.minimize())
}

/// Whether `L(a) ⊆ L(b)`.
pub fn is_subset(a: &Dfa, b: &Dfa) -> Result<bool, AutomatonError> {
    Ok(difference(a, b)?.is_empty_language())
}

/// Union of languages over disjoint alphabets. The result's alphabet lists
/// all of `a`'s letters, then all of `b`'s.
pub fn disjoint_union(a: &Dfa, b: &Dfa) -> Result<Dfa, AutomatonError> {
    let sigma = a.alphabet().disjoint_concat(b.alphabet())?;
    let left = a.extend_alphabet(&sigma)?;
    let right = b.extend_alphabet(&sigma)?;
    // Run both factors side by side; a dead factor is `None`.
    type Pair = (Option<usize>, Option<usize>);
    let k = sigma.len();
    let start: Pair = (Some(left.initial()), Some(right.initial()));
    let mut ids: HashMap<Pair, usize> = HashMap::from([(start, 0)]);
    let mut states = vec![start];
    let mut delta = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let (p, q) = states[i];
        let mut row = vec![None; k];
        for (letter, slot) in row.iter_mut().enumerate() {
            let next: Pair = (p.and_then(|p| left.step(p, letter)), q.and_then(|q| right.step(q, letter)));
            if next == (None, None) {
                continue;
            }
            let fresh = ids.len();
            let id = *ids.entry(next).or_insert_with(|| {
                states.push(next);
                fresh
            });
            *slot = Some(id);
        }
        delta.push(row);
        i += 1;
    }
    let finals = states
        .iter()
        .map(|&(p, q)| p.is_some_and(|p| left.is_final(p)) || q.is_some_and(|q| right.is_final(q)))
        .collect();
    Ok(Dfa::from_parts(sigma, delta, 0, finals).minimize())
}

/// All interleavings of a word of `L(a)` with a word of `L(b)`, over
/// disjoint alphabets ordered `a`'s letters first.
pub fn disjoint_shuffle(a: &Dfa, b: &Dfa) -> Result<Dfa, AutomatonError> {
    let sigma = a.alphabet().disjoint_concat(b.alphabet())?;
    let ka = a.alphabet().len();
    let nb = b.num_states();
    let n = a.num_states() * nb;
    let id = |p: usize, q: usize| p * nb + q;
    let mut delta = vec![vec![None; sigma.len()]; n];
    let mut finals = vec![false; n];
    for p in 0..a.num_states() {
        for q in 0..nb {
            let s = id(p, q);
            finals[s] = a.is_final(p) && b.is_final(q);
            for letter in 0..sigma.len() {
                delta[s][letter] = if letter < ka {
                    a.step(p, letter).map(|p2| id(p2, q))
                } else {
                    b.step(q, letter - ka).map(|q2| id(p, q2))
                };
            }
        }
    }
    Ok(Dfa::from_parts(sigma, delta, id(a.initial(), b.initial()), finals).minimize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{parse_regex, Alphabet};
    use crate::counting::brute_force_count;
    use num_bigint::BigUint;

    fn re(text: &str, letters: &str) -> Dfa {
        parse_regex(text, &Alphabet::parse(letters).unwrap()).unwrap()
    }

    #[test]
    fn product_with_itself_is_identity() {
        let d = re("eps|1(0|01)*", "01");
        let p = product(&d, &d, |x, y| x && y).unwrap();
        assert!(p.dfa.equivalent(&d));
        assert!(p.pairs.iter().all(|&(x, y)| x == y));
    }

    #[test]
    fn product_intersects() {
        let a = re("1*0*", "01");
        let b = re("1(0|1)*", "01");
        let p = product(&a, &b, |x, y| x && y).unwrap();
        assert!(p.dfa.equivalent(&re("11*0*", "01")));
        for len in 0..=5 {
            let expected: Vec<_> = a.words_of_length(len).into_iter().filter(|w| b.accepts_indices(w)).collect();
            assert_eq!(p.dfa.words_of_length(len), expected);
        }
    }

    #[test]
    fn product_alphabet_mismatch() {
        assert_eq!(
            product(&re("a*", "a"), &re("b*", "b"), |x, y| x && y).unwrap_err(),
            AutomatonError::AlphabetMismatch
        );
    }

    #[test]
    fn shuffle_of_stars_is_everything() {
        let s = disjoint_shuffle(&re("a*", "a"), &re("b*", "b")).unwrap();
        assert_eq!(s.alphabet().letters(), &['a', 'b']);
        for n in 0..10 {
            assert_eq!(brute_force_count(&s, n), BigUint::from(1u32) << n);
        }
    }

    #[test]
    fn union_of_stars_shares_epsilon() {
        let u = disjoint_union(&re("a*", "a"), &re("b*", "b")).unwrap();
        assert_eq!(brute_force_count(&u, 0), BigUint::from(1u32));
        for n in 1..10 {
            assert_eq!(brute_force_count(&u, n), BigUint::from(2u32));
        }
    }

    #[test]
    fn shuffle_with_epsilon_is_identity() {
        let x = re("(ab|b)*a?", "ab");
        let s = disjoint_shuffle(&x, &re("eps", "z")).unwrap();
        let x_ext = x.extend_alphabet(s.alphabet()).unwrap();
        assert!(s.equivalent(&x_ext));
    }

    #[test]
    fn intersecting_alphabets_rejected() {
        assert_eq!(
            disjoint_union(&re("a*", "ab"), &re("b", "bc")).unwrap_err(),
            AutomatonError::AlphabetsIntersect('b')
        );
        assert!(disjoint_shuffle(&re("a*", "a"), &re("a", "a")).is_err());
    }
}
