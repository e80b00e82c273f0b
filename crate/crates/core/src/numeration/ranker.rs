use num_bigint::BigUint;
use num_traits::Zero;

use crate::automata::Dfa;
use crate::counting::CountTable;

/// Ranking and unranking of the words of a regular language in genealogic
/// order, driven by a [`CountTable`]. Works for finite languages too.
#[derive(Clone, Debug)]
pub struct Ranker {
    table: CountTable,
    infinite: bool,
}

impl Ranker {
    /// `dfa` is trimmed and minimized first.
    pub fn new(dfa: &Dfa) -> Self {
        let dfa = dfa.minimize();
        let infinite = dfa.is_infinite_language();
        Ranker { table: CountTable::new(dfa), infinite }
    }

    pub fn dfa(&self) -> &Dfa {
        self.table.dfa()
    }

    pub fn counts(&self) -> &CountTable {
        &self.table
    }

    pub fn is_infinite(&self) -> bool {
        self.infinite
    }

    /// Size of a finite language; `None` when infinite.
    pub fn size(&self) -> Option<BigUint> {
        if self.infinite {
            None
        } else {
            // Words of a finite trim language are shorter than the state count.
            Some(self.table.v(self.dfa().num_states()))
        }
    }

    /// Length of the `(n+1)`-th word: the least `len` with `v(len) > n`.
    pub fn length_of_rank(&self, n: &BigUint) -> Option<usize> {
        if let Some(size) = self.size() {
            if *n >= size {
                return None;
            }
        }
        // Gallop, then binary search on the non-decreasing v.
        let mut hi = 1usize;
        while self.table.v(hi) <= *n {
            hi *= 2;
        }
        let mut lo = 0usize;
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.table.v(mid) > *n {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Some(lo)
    }

    /// The `(n+1)`-th word in genealogic order, as letter indices.
    pub fn unrank(&self, n: &BigUint) -> Option<Vec<usize>> {
        let len = self.length_of_rank(n)?;
        let mut k = n - self.table.v_below(len);
        let dfa = self.dfa();
        let mut q = dfa.initial();
        let mut word = Vec::with_capacity(len);
        for pos in 0..len {
            let row = self.table.row(len - pos - 1);
            let mut chosen = None;
            for a in 0..dfa.alphabet().len() {
                if let Some(r) = dfa.step(q, a) {
                    if k < row[r] {
                        chosen = Some((a, r));
                        break;
                    }
                    k -= &row[r];
                }
            }
            let (a, r) = chosen.expect("count table is consistent");
            word.push(a);
            q = r;
        }
        debug_assert!(k.is_zero() && dfa.is_final(q));
        Some(word)
    }

    /// Position of `word` in genealogic order; `None` if not accepted.
    pub fn rank(&self, word: &[usize]) -> Option<BigUint> {
        let dfa = self.dfa();
        if !dfa.accepts_indices(word) {
            return None;
        }
        let len = word.len();
        let mut total = self.table.v_below(len);
        let mut q = dfa.initial();
        for (i, &letter) in word.iter().enumerate() {
            let row = self.table.row(len - i - 1);
            for b in 0..letter {
                if let Some(r) = dfa.step(q, b) {
                    total += &row[r];
                }
            }
            q = dfa.step(q, letter).expect("accepted word");
        }
        Some(total)
    }

    /// Genealogically least word of length `len` from state `q`.
    fn least_completion(&self, mut q: usize, len: usize, word: &mut Vec<usize>) -> bool {
        let dfa = self.dfa();
        for pos in 0..len {
            let row = self.table.row(len - pos - 1);
            let next =
                (0..dfa.alphabet().len()).find_map(|a| dfa.step(q, a).filter(|&r| !row[r].is_zero()).map(|r| (a, r)));
            match next {
                Some((a, r)) => {
                    word.push(a);
                    q = r;
                }
                None => return false,
            }
        }
        dfa.is_final(q)
    }

    /// The next accepted word after `word` (which must be accepted).
    pub fn successor(&self, word: &[usize]) -> Option<Vec<usize>> {
        let dfa = self.dfa();
        let len = word.len();
        let mut states = Vec::with_capacity(len + 1);
        states.push(dfa.initial());
        for &a in word {
            states.push(dfa.step(*states.last().unwrap(), a)?);
        }
        for i in (0..len).rev() {
            let remaining = len - i - 1;
            let row = self.table.row(remaining);
            for b in word[i] + 1..dfa.alphabet().len() {
                if let Some(r) = dfa.step(states[i], b) {
                    if !row[r].is_zero() {
                        let mut next = word[..i].to_vec();
                        next.push(b);
                        if self.least_completion(r, remaining, &mut next) {
                            return Some(next);
                        }
                    }
                }
            }
        }
        // First word of the next non-empty length.
        let bound = if self.infinite { usize::MAX } else { dfa.num_states() };
        let mut next_len = len + 1;
        while next_len < bound {
            if !self.table.u(next_len).is_zero() {
                let mut next = Vec::with_capacity(next_len);
                self.least_completion(dfa.initial(), next_len, &mut next);
                return Some(next);
            }
            next_len += 1;
        }
        None
    }

    /// Words of rank `n, n+1, ...`.
    pub fn words_from(&self, n: &BigUint) -> Words<'_> {
        Words { ranker: self, next: self.unrank(n) }
    }

    /// Accepted words in genealogic order, starting from the first.
    pub fn words(&self) -> Words<'_> {
        Words { ranker: self, next: self.unrank(&BigUint::zero()) }
    }
}

pub struct Words<'a> {
    ranker: &'a Ranker,
    next: Option<Vec<usize>>,
}

impl Iterator for Words<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        self.next = self.ranker.successor(&current);
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{parse_regex, Alphabet};

    #[test]
    fn finite_language_ranks() {
        let sigma = Alphabet::parse("ab").unwrap();
        let r = Ranker::new(&parse_regex("a|b|ab|bba", &sigma).unwrap());
        assert_eq!(r.size(), Some(BigUint::from(4u32)));
        let words: Vec<String> = r.words().map(|w| sigma.decode(&w)).collect();
        assert_eq!(words, ["a", "b", "ab", "bba"]);
        assert_eq!(r.unrank(&BigUint::from(4u32)), None);
        assert_eq!(r.rank(&[1, 1, 0]), Some(BigUint::from(3u32)));
        assert_eq!(r.rank(&[1, 1]), None);
    }

    #[test]
    fn successor_agrees_with_unrank() {
        let sigma = Alphabet::parse("abc").unwrap();
        let r = Ranker::new(&parse_regex("a*b*|a*c*", &sigma).unwrap());
        for (i, w) in r.words().take(300).enumerate() {
            assert_eq!(r.unrank(&BigUint::from(i)), Some(w.clone()));
            assert_eq!(r.rank(&w), Some(BigUint::from(i)));
        }
    }
}
