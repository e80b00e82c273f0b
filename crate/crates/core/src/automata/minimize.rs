//! Partition refinement (Moore) minimization.

use std::collections::HashMap;

use super::Dfa;

impl Dfa {
    /// Trim minimal automaton of the language, canonically numbered.
    ///
    /// Two automata for the same language minimize to identical values, so
    /// `==` on minimized automata is language equality.
    pub fn minimize(&self) -> Dfa {
        let t = self.trim();
        if t.is_empty_language() {
            return t;
        }
        t.complete().quotient_by_equivalence().trim()
    }

    /// Complete minimal automaton: the trim minimal one plus a sink when
    /// some transition is undefined.
    pub fn minimize_complete(&self) -> Dfa {
        self.minimize().complete().canonical()
    }

    /// Quotient of a complete automaton by Myhill-Nerode equivalence.
    fn quotient_by_equivalence(&self) -> Dfa {
        debug_assert!(self.is_complete());
        let n = self.num_states();
        let k = self.alphabet().len();
        let mut class: Vec<usize> = (0..n).map(|q| usize::from(self.is_final(q))).collect();
        let mut num_classes = class.iter().copied().max().map_or(0, |m| m + 1);
        loop {
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next = Vec::with_capacity(n);
            for q in 0..n {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[q]);
                sig.extend((0..k).map(|a| class[self.step(q, a).unwrap()]));
                let len = ids.len();
                next.push(*ids.entry(sig).or_insert(len));
            }
            let count = ids.len();
            class = next;
            if count == num_classes {
                break;
            }
            num_classes = count;
        }
        let mut delta = vec![vec![None; k]; num_classes];
        let mut finals = vec![false; num_classes];
        for q in 0..n {
            let c = class[q];
            finals[c] = self.is_final(q);
            for a in 0..k {
                delta[c][a] = self.step(q, a).map(|r| class[r]);
            }
        }
        Dfa::from_parts(self.alphabet().clone(), delta, class[self.initial()], finals)
    }

    /// Language equality via minimal automata.
    pub fn equivalent(&self, other: &Dfa) -> bool {
        self.alphabet() == other.alphabet() && self.minimize() == other.minimize()
    }
}
