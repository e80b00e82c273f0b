use num_bigint::BigUint;

use super::word::coded_counts;
use super::{Coding, MorphicError, MorphicWord, Morphism};
use crate::automata::{intersection, product, Alphabet, Dfa, Dfao, Product};
use crate::numeration::{NumerationSystem, RecognizableSet};

/// Letters of the positional alphabet of [`canonical_automaton`].
const POSITIONS: &str = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

/// `μ_A` on the states of `dfa` plus a fresh letter `α` (the last index):
/// `μ_A(q)` lists the targets of the defined transitions of `q` in letter
/// order and `μ_A(α) = α μ_A(q0)`. States are named by their index.
pub fn associated_morphism(dfa: &Dfa) -> (Morphism, usize) {
    let n = dfa.num_states();
    let mut names: Vec<String> = (0..n).map(|q| q.to_string()).collect();
    names.push("α".to_string());
    let mut images: Vec<Vec<usize>> = (0..n).map(|q| dfa.row(q).iter().flatten().copied().collect()).collect();
    let alpha = n;
    let mut seed = vec![alpha];
    seed.extend_from_slice(&images[dfa.initial()]);
    images.push(seed);
    (Morphism::new(names, images).expect("state indices are in range"), alpha)
}

/// The coding `g` on product states `(p, q)`: `1` when both are final, `0`
/// when only `p` is, `ε` when `p` is not final; `g(α) = g(q0)`.
pub fn coding_g(product: &Product, language: &Dfa, rep: &Dfa) -> Coding {
    let g = |&(p, q): &(usize, usize)| match (language.is_final(p), rep.is_final(q)) {
        (true, true) => Some(1),
        (true, false) => Some(0),
        (false, _) => None,
    };
    let mut images: Vec<Option<u8>> = product.pairs.iter().map(g).collect();
    images.push(images[product.dfa.initial()]);
    Coding::new(images)
}

/// The product of the trim minimal automaton of `L` with the complete
/// minimal automaton of `rep_S(X)`, with its associated morphism and coding.
#[derive(Clone, Debug)]
pub struct GfAutomaton {
    pub product: Product,
    pub morphism: Morphism,
    pub alpha: usize,
    pub coding: Coding,
}

/// `|μ^n(α)|`, `|g(μ^n(α))|` and `F(n)` for one `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfCounts {
    pub length: BigUint,
    pub coded_length: BigUint,
    pub ones: BigUint,
}

impl GfAutomaton {
    pub fn new(x: &RecognizableSet) -> Result<Self, MorphicError> {
        let language = x.system().dfa();
        let rep = x.rep_dfa().complete();
        let product = product(language, &rep, |a, b| a && b)?;
        let (morphism, alpha) = associated_morphism(&product.dfa);
        let coding = coding_g(&product, language, &rep);
        Ok(GfAutomaton { product, morphism, alpha, coding })
    }

    /// Counts for `n = 0..=n_max`, from occurrence vectors.
    pub fn counts(&self, n_max: usize) -> Vec<GfCounts> {
        coded_counts(&self.morphism, self.alpha, &self.coding, n_max)
            .into_iter()
            .map(|(length, coded_length, ones)| GfCounts { length, coded_length, ones })
            .collect()
    }

    /// `F(n)`: occurrences of `1` in `g(μ^n(α))`.
    pub fn f(&self, n: usize) -> BigUint {
        self.counts(n).pop().expect("n_max + 1 entries").ones
    }

    /// `g(μ_A^ω(α))`, the characteristic sequence of `X`.
    pub fn characteristic_word(&self) -> Result<MorphicWord, MorphicError> {
        MorphicWord::fixed_point(self.morphism.clone(), self.alpha)?.with_coding(self.coding.clone())
    }
}

/// The automaton of the morphism `m` read from `α`: states are the letters,
/// all final, and the `i`-th letter of the positional alphabet leads from
/// `b` to the `i`-th letter of `m(b)`. On `α`, position 0 is the loop
/// `α -> α`. Words of length `n` from `α` correspond to letters of `m^n(α)`.
pub fn canonical_automaton(m: &Morphism, alpha: usize) -> Result<Dfa, MorphicError> {
    if !m.is_prolongable(alpha) {
        return Err(MorphicError::NotProlongable(m.name(alpha).to_string()));
    }
    let width = m.max_image_len().max(1);
    if width > POSITIONS.len() {
        return Err(MorphicError::TooManyPositions(width));
    }
    let sigma = Alphabet::parse(&POSITIONS[..width]).expect("static positions");
    // Relabel so that α is the initial state 0.
    let state = |b: usize| {
        if b == alpha {
            0
        } else if b < alpha {
            b + 1
        } else {
            b
        }
    };
    let letters = sigma.letters().to_vec();
    let transitions = (0..m.len())
        .flat_map(|b| m.image(b).iter().enumerate().map(move |(i, &c)| (state(b), i, state(c))))
        .map(|(s, i, t)| (s, letters[i], t));
    Ok(Dfa::new(sigma, m.len(), 0, 0..m.len(), transitions.collect::<Vec<_>>())?)
}

/// The language `K` read from `α` in [`canonical_automaton`], minus the
/// words starting with the loop letter: `|m^n(α)| = v_K(n)`.
pub fn directive_language(m: &Morphism, alpha: usize) -> Result<Dfa, MorphicError> {
    let b = canonical_automaton(m, alpha)?;
    let n = b.num_states();
    let mut transitions: Vec<(usize, char, usize)> =
        b.transitions().map(|(s, a, t)| (s, b.alphabet().letter(a), t)).collect();
    // A fresh initial state copying α without the loop.
    transitions
        .extend(b.transitions().filter(|&(s, a, _)| s == 0 && a != 0).map(|(_, a, t)| (n, b.alphabet().letter(a), t)));
    let k = Dfa::new(b.alphabet().clone(), n + 1, n, 0..=n, transitions)?;
    Ok(k.trim())
}

/// The set whose characteristic sequence is generated by `a` reading
/// representations in `system`.
pub fn set_from_dfao(system: std::sync::Arc<NumerationSystem>, a: &Dfao) -> Result<RecognizableSet, MorphicError> {
    let rep = intersection(&a.ones(), system.dfa())?;
    Ok(RecognizableSet::new(system, &rep)?)
}

/// A DFAO generating `χ_X`: the complete minimal automaton of `rep_S(X)`
/// with output 1 on its final states.
pub fn dfao_from_set(x: &RecognizableSet) -> Dfao {
    let rep = x.rep_dfa().complete();
    let outputs = (0..rep.num_states()).map(|q| u8::from(rep.is_final(q))).collect();
    Dfao::new(rep, outputs).expect("completed automaton")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::parse_regex;
    use crate::counting::CountTable;
    use crate::numeration::families;

    #[test]
    fn pansiot_dfao_graph_gives_h() {
        let sigma = Alphabet::parse("0123").unwrap();
        let d =
            Dfa::new(sigma, 2, 0, [], [(0, '0', 0), (0, '2', 0), (0, '1', 1), (0, '3', 1), (1, '0', 1), (1, '2', 1)])
                .unwrap();
        let (m, alpha) = associated_morphism(&d);
        assert_eq!(m.image(0), &[0, 1, 0, 1]);
        assert_eq!(m.image(1), &[1, 1]);
        assert_eq!(m.image(alpha), &[2, 0, 1, 0, 1]);
    }

    #[test]
    fn partial_transitions_are_dropped() {
        let sigma = Alphabet::parse("ab").unwrap();
        let loop2 = Dfa::new(sigma.clone(), 1, 0, [0], [(0, 'a', 0), (0, 'b', 0)]).unwrap();
        assert_eq!(associated_morphism(&loop2).0.image(0), &[0, 0]);
        let chain = Dfa::new(sigma, 2, 0, [1], [(0, 'a', 1)]).unwrap();
        let (m, _) = associated_morphism(&chain);
        assert_eq!(m.image(0), &[1]);
        assert!(m.image(1).is_empty());
    }

    #[test]
    fn pansiot_counter() {
        let gf = GfAutomaton::new(&families::pansiot_set()).unwrap();
        for (n, c) in gf.counts(40).iter().enumerate() {
            assert_eq!(c.ones, BigUint::from(1u32) << n);
            assert_eq!(c.coded_length, BigUint::from(n + 1) << n);
        }
    }

    #[test]
    fn natural_numbers_have_no_zero_images() {
        let x = RecognizableSet::natural(families::fibonacci());
        let gf = GfAutomaton::new(&x).unwrap();
        assert!((0..gf.coding.len()).all(|a| gf.coding.image(a) != Some(0)));
        let counts = x.system().counts();
        for (n, c) in gf.counts(30).iter().enumerate() {
            assert_eq!(c.ones, counts.v(n));
        }
    }

    #[test]
    fn ones_then_zeros_counter() {
        let f = families::fixture("base2-ones-zeros").unwrap();
        let gf = GfAutomaton::new(&f.set).unwrap();
        // rep(X) = {ε} ∪ 1+0*: one word of length 0 and k of each length k >= 1.
        for (n, c) in gf.counts(40).iter().enumerate() {
            assert_eq!(c.ones, BigUint::from(1 + n * (n + 1) / 2));
        }
    }

    #[test]
    fn canonical_automaton_counts_lengths() {
        let gf = GfAutomaton::new(&families::pansiot_set()).unwrap();
        let k = CountTable::new(directive_language(&gf.morphism, gf.alpha).unwrap());
        for (n, c) in gf.counts(30).iter().enumerate() {
            assert_eq!(c.length, k.v(n));
        }
        let b = canonical_automaton(&gf.morphism, gf.alpha).unwrap();
        assert_eq!(b.run(&[0, 0, 0]), Some(0));
    }

    #[test]
    fn single_loop_letter() {
        let m = Morphism::from_chars(&[('a', "aq"), ('q', "q")]).unwrap();
        let k = directive_language(&m, 0).unwrap();
        assert!(k.accepts("") && k.accepts("100") && !k.accepts("0"));
        let counts = CountTable::new(k);
        for (n, occ) in m.occurrences(0).take(20).enumerate() {
            let len: BigUint = occ.iter().sum();
            assert_eq!(len, BigUint::from(n + 1));
            assert_eq!(counts.v(n), len);
        }
    }

    #[test]
    fn fibonacci_directive_language_is_prefix_closure() {
        let s = families::fibonacci();
        let gf = GfAutomaton::new(&RecognizableSet::natural(s.clone())).unwrap();
        let k = CountTable::new(directive_language(&gf.morphism, gf.alpha).unwrap());
        let prefixes = CountTable::new(s.dfa().with_all_final().minimize());
        for n in 0..=30 {
            assert_eq!(k.v(n), prefixes.v(n));
        }
    }

    #[test]
    fn dfao_round_trips() {
        let x = set_from_dfao(families::pansiot_system(), &families::pansiot_dfao()).unwrap();
        assert_eq!(x.first_elements(11), [0, 2, 6, 8, 16, 18, 22, 24, 40, 42, 46]);
        let t = set_from_dfao(families::base(2).unwrap(), &families::thue_morse_dfao()).unwrap();
        assert_eq!(t.first_elements(8), [1, 2, 4, 7, 8, 11, 13, 14]);

        let s = families::base(3).unwrap();
        let ones = Dfa::universal(s.alphabet().clone());
        let constant = Dfao::new(ones, vec![1]).unwrap();
        let all = set_from_dfao(s.clone(), &constant).unwrap();
        assert!(all.characteristic(200).into_iter().all(|b| b));

        let k = families::fixture("base4-k").unwrap().set;
        let a = dfao_from_set(&k);
        let back = set_from_dfao(k.system().clone(), &a).unwrap();
        assert_eq!(back.characteristic(500), k.characteristic(500));
        let words: Vec<_> = k.system().words().take(500).collect();
        let chi = k.characteristic(499);
        assert!(words.iter().zip(chi).all(|(w, c)| a.eval(w) == u8::from(c)));
    }

    #[test]
    fn epsilon_outside_the_language() {
        let sigma = Alphabet::parse("a").unwrap();
        let s = std::sync::Arc::new(NumerationSystem::new(&parse_regex("aa*", &sigma).unwrap()).unwrap());
        let x = RecognizableSet::natural(s.clone());
        let gf = GfAutomaton::new(&x).unwrap();
        assert_eq!(gf.coding.image(gf.alpha), None);
        let counts = gf.counts(10);
        assert_eq!(counts[0].coded_length, BigUint::from(0u32));
        assert_eq!(counts[5].ones, BigUint::from(5u32));
    }
}
