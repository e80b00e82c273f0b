use super::{AutomatonError, Dfa};

/// Deterministic finite automaton with output. The underlying automaton is
/// complete and every state carries an output symbol in `{0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfao {
    dfa: Dfa,
    outputs: Vec<u8>,
}

impl Dfao {
    pub fn new(dfa: Dfa, outputs: Vec<u8>) -> Result<Self, AutomatonError> {
        if !dfa.is_complete() {
            return Err(AutomatonError::Incomplete);
        }
        if outputs.len() != dfa.num_states() {
            return Err(AutomatonError::OutputLength { expected: dfa.num_states(), found: outputs.len() });
        }
        if let Some(&o) = outputs.iter().find(|&&o| o > 1) {
            return Err(AutomatonError::InvalidOutput(o));
        }
        Ok(Dfao { dfa, outputs })
    }

    /// Completes a partial automaton with a sink whose output is 0.
    pub fn from_partial(dfa: &Dfa, mut outputs: Vec<u8>) -> Result<Self, AutomatonError> {
        if outputs.len() != dfa.num_states() {
            return Err(AutomatonError::OutputLength { expected: dfa.num_states(), found: outputs.len() });
        }
        let complete = dfa.complete();
        if complete.num_states() > dfa.num_states() {
            outputs.push(0);
        }
        Dfao::new(complete, outputs)
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn output(&self, q: usize) -> u8 {
        self.outputs[q]
    }

    pub fn outputs(&self) -> &[u8] {
        &self.outputs
    }

    /// τ(δ(q0, w)).
    pub fn eval(&self, word: &[usize]) -> u8 {
        self.outputs[self.dfa.run(word).expect("complete automaton")]
    }

    /// The automaton accepting the words whose output is 1.
    pub fn ones(&self) -> Dfa {
        self.dfa.with_finals(self.outputs.iter().map(|&o| o == 1).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Alphabet;

    #[test]
    fn thue_morse_parity() {
        let sigma = Alphabet::parse("01").unwrap();
        let d = Dfa::new(sigma, 2, 0, [], [(0, '0', 0), (0, '1', 1), (1, '0', 1), (1, '1', 0)]).unwrap();
        let a = Dfao::new(d, vec![0, 1]).unwrap();
        assert_eq!(a.eval(&[1, 1, 0]), 0);
        assert_eq!(a.eval(&[1, 0, 0]), 1);
    }

    #[test]
    fn validation() {
        let sigma = Alphabet::parse("01").unwrap();
        let partial = Dfa::new(sigma, 1, 0, [0], [(0, '0', 0)]).unwrap();
        assert_eq!(Dfao::new(partial.clone(), vec![1]), Err(AutomatonError::Incomplete));
        let a = Dfao::from_partial(&partial, vec![1]).unwrap();
        assert_eq!(a.outputs(), &[1, 0]);
        assert_eq!(a.eval(&[0, 1, 0]), 0);
        assert!(matches!(Dfao::new(a.dfa().clone(), vec![1, 2]), Err(AutomatonError::InvalidOutput(2))));
    }
}
