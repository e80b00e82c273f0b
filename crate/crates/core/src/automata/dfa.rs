use std::collections::VecDeque;

use super::{Alphabet, AutomatonError};

/// A deterministic automaton with a partial transition function.
///
/// States are dense indices `0..num_states()`. Letters are addressed by their
/// rank in the alphabet. A missing transition means the word is rejected.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Alphabet,
    delta: Vec<Vec<Option<usize>>>,
    initial: usize,
    finals: Vec<bool>,
}

impl Dfa {
    /// Builds a DFA from `(source, letter, target)` triples.
    pub fn new<F, T>(
        alphabet: Alphabet,
        num_states: usize,
        initial: usize,
        finals: F,
        transitions: T,
    ) -> Result<Self, AutomatonError>
    where
        F: IntoIterator<Item = usize>,
        T: IntoIterator<Item = (usize, char, usize)>,
    {
        if num_states == 0 {
            return Err(AutomatonError::NoStates);
        }
        let check = |q: usize| {
            if q < num_states {
                Ok(q)
            } else {
                Err(AutomatonError::StateOutOfRange { state: q, num_states })
            }
        };
        check(initial)?;
        let mut is_final = vec![false; num_states];
        for q in finals {
            is_final[check(q)?] = true;
        }
        let mut delta = vec![vec![None; alphabet.len()]; num_states];
        for (src, c, dst) in transitions {
            check(src)?;
            check(dst)?;
            let a = alphabet.index_of(c).ok_or(AutomatonError::UnknownLetter(c))?;
            match delta[src][a] {
                Some(old) if old != dst => return Err(AutomatonError::Nondeterministic { state: src, letter: c }),
                _ => delta[src][a] = Some(dst),
            }
        }
        Ok(Dfa { alphabet, delta, initial, finals: is_final })
    }

    pub(crate) fn from_parts(
        alphabet: Alphabet,
        delta: Vec<Vec<Option<usize>>>,
        initial: usize,
        finals: Vec<bool>,
    ) -> Self {
        debug_assert_eq!(delta.len(), finals.len());
        debug_assert!(initial < delta.len());
        Dfa { alphabet, delta, initial, finals }
    }

    /// The canonical automaton of the empty language: one rejecting state.
    pub fn empty_language(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        Dfa { alphabet, delta: vec![vec![None; k]], initial: 0, finals: vec![false] }
    }

    /// Automaton accepting exactly the empty word.
    pub fn epsilon(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        Dfa { alphabet, delta: vec![vec![None; k]], initial: 0, finals: vec![true] }
    }

    /// Automaton accepting every word over the alphabet.
    pub fn universal(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        Dfa { alphabet, delta: vec![vec![Some(0); k]], initial: 0, finals: vec![true] }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        self.finals.iter().enumerate().filter(|(_, &f)| f).map(|(q, _)| q)
    }

    #[inline]
    pub fn step(&self, q: usize, letter: usize) -> Option<usize> {
        self.delta[q][letter]
    }

    pub fn row(&self, q: usize) -> &[Option<usize>] {
        &self.delta[q]
    }

    /// All defined transitions as `(source, letter index, target)`.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.delta
            .iter()
            .enumerate()
            .flat_map(|(q, row)| row.iter().enumerate().filter_map(move |(a, t)| t.map(|r| (q, a, r))))
    }

    pub fn run_from(&self, q: usize, word: &[usize]) -> Option<usize> {
        word.iter().try_fold(q, |q, &a| self.step(q, a))
    }

    pub fn run(&self, word: &[usize]) -> Option<usize> {
        self.run_from(self.initial, word)
    }

    pub fn accepts_indices(&self, word: &[usize]) -> bool {
        self.run(word).is_some_and(|q| self.finals[q])
    }

    /// Accepts a word given as text. Letters outside the alphabet reject.
    pub fn accepts(&self, word: &str) -> bool {
        match self.alphabet.encode(word) {
            Ok(w) => self.accepts_indices(&w),
            Err(_) => false,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(|row| row.iter().all(Option::is_some))
    }

    /// Adds an explicit rejecting sink for undefined transitions.
    pub fn complete(&self) -> Dfa {
        if self.is_complete() {
            return self.clone();
        }
        let sink = self.num_states();
        let k = self.alphabet.len();
        let mut delta: Vec<Vec<Option<usize>>> =
            self.delta.iter().map(|row| row.iter().map(|t| Some(t.unwrap_or(sink))).collect()).collect();
        delta.push(vec![Some(sink); k]);
        let mut finals = self.finals.clone();
        finals.push(false);
        Dfa { alphabet: self.alphabet.clone(), delta, initial: self.initial, finals }
    }

    pub fn accessible(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            for r in self.delta[q].iter().flatten() {
                if !seen[*r] {
                    seen[*r] = true;
                    queue.push_back(*r);
                }
            }
        }
        seen
    }

    pub fn coaccessible(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut reverse = vec![Vec::new(); n];
        for (q, _, r) in self.transitions() {
            reverse[r].push(q);
        }
        let mut seen = self.finals.clone();
        let mut stack: Vec<usize> = self.finals().collect();
        while let Some(r) = stack.pop() {
            for &q in &reverse[r] {
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        seen
    }

    pub fn is_empty_language(&self) -> bool {
        let acc = self.accessible();
        !self.finals().any(|q| acc[q])
    }

    pub fn is_trim(&self) -> bool {
        let acc = self.accessible();
        let co = self.coaccessible();
        acc.iter().zip(&co).all(|(a, c)| *a && *c)
    }

    /// Restriction to accessible and co-accessible states, renumbered in
    /// breadth-first order from the initial state. An empty language yields
    /// [`Dfa::empty_language`]; use [`Dfa::is_empty_language`] to detect it.
    pub fn trim(&self) -> Dfa {
        let acc = self.accessible();
        let co = self.coaccessible();
        let keep: Vec<bool> = acc.iter().zip(&co).map(|(a, c)| *a && *c).collect();
        if !keep[self.initial] {
            return Dfa::empty_language(self.alphabet.clone());
        }
        self.restrict(&keep).canonical()
    }

    /// Keeps only the accessible part, renumbered canonically.
    pub fn accessible_part(&self) -> Dfa {
        self.canonical()
    }

    fn restrict(&self, keep: &[bool]) -> Dfa {
        let mut index = vec![None; self.num_states()];
        let mut next = 0;
        for q in 0..self.num_states() {
            if keep[q] {
                index[q] = Some(next);
                next += 1;
            }
        }
        let delta = (0..self.num_states())
            .filter(|&q| keep[q])
            .map(|q| self.delta[q].iter().map(|t| t.and_then(|r| index[r])).collect())
            .collect();
        let finals = (0..self.num_states()).filter(|&q| keep[q]).map(|q| self.finals[q]).collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            delta,
            initial: index[self.initial].expect("initial state kept"),
            finals,
        }
    }

    /// Renumbers accessible states in BFS order (letters in alphabet order)
    /// and drops inaccessible ones. Two automata that are isomorphic on their
    /// accessible parts have equal canonical forms.
    pub fn canonical(&self) -> Dfa {
        let (order, index) = self.bfs_order();
        let delta =
            order.iter().map(|&q| self.delta[q].iter().map(|t| t.map(|r| index[r].unwrap())).collect()).collect();
        let finals = order.iter().map(|&q| self.finals[q]).collect();
        Dfa { alphabet: self.alphabet.clone(), delta, initial: 0, finals }
    }

    /// BFS visiting order of accessible states and the inverse map.
    pub(crate) fn bfs_order(&self) -> (Vec<usize>, Vec<Option<usize>>) {
        let mut index = vec![None; self.num_states()];
        let mut order = vec![self.initial];
        index[self.initial] = Some(0);
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for r in self.delta[q].iter().flatten() {
                if index[*r].is_none() {
                    index[*r] = Some(order.len());
                    order.push(*r);
                }
            }
        }
        (order, index)
    }

    /// Same graph with a different acceptance set.
    pub fn with_finals(&self, finals: Vec<bool>) -> Dfa {
        assert_eq!(finals.len(), self.num_states());
        Dfa { finals, ..self.clone() }
    }

    /// Same graph with every state accepting.
    pub fn with_all_final(&self) -> Dfa {
        self.with_finals(vec![true; self.num_states()])
    }

    /// Whether the trim part of the automaton contains a cycle, i.e. the
    /// language is infinite.
    pub fn is_infinite_language(&self) -> bool {
        let t = self.trim();
        if t.is_empty_language() {
            return false;
        }
        // Kahn's algorithm: a cycle exists iff not every state gets removed.
        let n = t.num_states();
        let mut indegree = vec![0usize; n];
        for (_, _, r) in t.transitions() {
            indegree[r] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&q| indegree[q] == 0).collect();
        let mut removed = 0;
        while let Some(q) = stack.pop() {
            removed += 1;
            for r in t.delta[q].iter().flatten() {
                indegree[*r] -= 1;
                if indegree[*r] == 0 {
                    stack.push(*r);
                }
            }
        }
        removed < n
    }

    /// Reinterprets the automaton over a larger alphabet that contains the
    /// current one; new letters have no transitions.
    pub fn extend_alphabet(&self, alphabet: &Alphabet) -> Result<Dfa, AutomatonError> {
        let map: Vec<usize> = self
            .alphabet
            .letters()
            .iter()
            .map(|&c| alphabet.index_of(c).ok_or(AutomatonError::UnknownLetter(c)))
            .collect::<Result<_, _>>()?;
        let delta = self
            .delta
            .iter()
            .map(|row| {
                let mut new_row = vec![None; alphabet.len()];
                for (a, t) in row.iter().enumerate() {
                    new_row[map[a]] = *t;
                }
                new_row
            })
            .collect();
        Ok(Dfa { alphabet: alphabet.clone(), delta, initial: self.initial, finals: self.finals.clone() })
    }

    /// Words of exactly `len` letters accepted, in genealogic order. Explicit
    /// depth-first generation; meant for small lengths and test oracles.
    pub fn words_of_length(&self, len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(len);
        self.collect_words(self.initial, len, &mut word, &mut out);
        out
    }

    fn collect_words(&self, q: usize, left: usize, word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            if self.finals[q] {
                out.push(word.clone());
            }
            return;
        }
        for a in 0..self.alphabet.len() {
            if let Some(r) = self.delta[q][a] {
                word.push(a);
                self.collect_words(r, left - 1, word, out);
                word.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary() -> Alphabet {
        Alphabet::parse("01").unwrap()
    }

    /// Complete automaton of 1(0|1)* with an explicit dead state for a
    /// leading 0, plus an unreachable state.
    fn leading_one_complete() -> Dfa {
        Dfa::new(
            binary(),
            4,
            0,
            [1],
            [(0, '0', 2), (0, '1', 1), (1, '0', 1), (1, '1', 1), (2, '0', 2), (2, '1', 2), (3, '0', 1)],
        )
        .unwrap()
    }

    #[test]
    fn trim_drops_dead_and_unreachable_states() {
        let d = leading_one_complete();
        let t = d.trim();
        assert_eq!(t.num_states(), 2);
        assert!(t.is_trim());
        for len in 0..8 {
            assert_eq!(d.words_of_length(len), t.words_of_length(len));
        }
        assert_eq!(t.trim(), t);
    }

    #[test]
    fn trim_of_empty_language_is_flagged() {
        let d = Dfa::new(binary(), 2, 0, [], [(0, '0', 1)]).unwrap();
        let t = d.trim();
        assert!(t.is_empty_language());
        assert_eq!(t.num_states(), 1);
    }

    #[test]
    fn rejects_nondeterminism_and_bad_states() {
        assert!(matches!(
            Dfa::new(binary(), 2, 0, [1], [(0, '0', 1), (0, '0', 0)]),
            Err(AutomatonError::Nondeterministic { state: 0, letter: '0' })
        ));
        assert!(matches!(Dfa::new(binary(), 2, 0, [5], []), Err(AutomatonError::StateOutOfRange { state: 5, .. })));
        assert!(matches!(Dfa::new(binary(), 1, 0, [0], [(0, '2', 0)]), Err(AutomatonError::UnknownLetter('2'))));
    }

    #[test]
    fn complete_adds_single_sink() {
        let t = leading_one_complete().trim();
        let c = t.complete();
        assert!(c.is_complete());
        assert_eq!(c.num_states(), 3);
        assert!(c.accepts("10") && !c.accepts("01") && !c.accepts(""));
    }

    #[test]
    fn infinite_language_detection() {
        assert!(leading_one_complete().is_infinite_language());
        assert!(!Dfa::epsilon(binary()).is_infinite_language());
        assert!(!Dfa::empty_language(binary()).is_infinite_language());
    }
}
