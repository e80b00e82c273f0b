use ans_core::automata::{intersection, random_dfa, Alphabet, Dfa};
use ans_core::counting::{brute_force_count, CountTable};
use ans_core::morphic::Morphism;
use ans_core::numeration::families;
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn seeded_dfa(seed: u64, letters: &str, states: usize) -> Dfa {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_dfa(&mut rng, &Alphabet::parse(letters).unwrap(), states, 0.6)
}

fn fixture_index() -> impl Strategy<Value = usize> {
    0..families::fixtures().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn val_inverts_rep(f in fixture_index(), n in 0u64..1_000_000) {
        let s = families::fixtures()[f].system().clone();
        let n = BigUint::from(n);
        prop_assert_eq!(s.val_indices(&s.rep_indices(&n)).unwrap(), n);
    }

    #[test]
    fn rep_is_increasing(f in fixture_index(), n in 0u64..100_000, gap in 1u64..1000) {
        let s = families::fixtures()[f].system().clone();
        let a = s.rep_indices(&BigUint::from(n));
        let b = s.rep_indices(&BigUint::from(n + gap));
        prop_assert_eq!(Alphabet::genealogic_cmp(&a, &b), std::cmp::Ordering::Less);
    }

    #[test]
    fn t_and_index_are_inverse(f in fixture_index(), n in 0u64..20_000) {
        let x = families::fixtures()[f].set.clone();
        let t = x.t_u64(n).unwrap();
        prop_assert!(x.contains(&t));
        prop_assert_eq!(x.index_of(&t), Some(BigUint::from(n)));
        prop_assert!(x.t_u64(n + 1).unwrap() > t);
    }

    #[test]
    fn counts_match_enumeration(seed in any::<u64>(), states in 1usize..6, n in 0usize..9) {
        let d = seeded_dfa(seed, "abc", states);
        prop_assert_eq!(CountTable::new(d.clone()).u(n), brute_force_count(&d, n));
    }

    #[test]
    fn minimization_preserves_language(seed in any::<u64>(), states in 1usize..7) {
        let d = seeded_dfa(seed, "ab", states);
        let m = d.minimize();
        prop_assert!(m.num_states() <= d.num_states().max(1));
        prop_assert!(m.equivalent(&d));
        for len in 0..7 {
            prop_assert_eq!(m.words_of_length(len), d.words_of_length(len));
        }
    }

    #[test]
    fn intersection_is_commutative(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (seeded_dfa(a, "ab", 4), seeded_dfa(b, "ab", 4));
        prop_assert!(intersection(&x, &y).unwrap().equivalent(&intersection(&y, &x).unwrap()));
    }

    #[test]
    fn occurrences_count_letters(images in prop::collection::vec(prop::collection::vec(0usize..3, 0..4), 3)) {
        let mut images = images;
        images[0].insert(0, 0);
        let names = ["a", "b", "c"].map(String::from).to_vec();
        let m = Morphism::new(names, images).unwrap();
        for (n, occ) in m.occurrences(0).take(9).enumerate() {
            let word = m.iterate(0, n);
            if word.len() > 200_000 {
                break;
            }
            for (letter, count) in occ.iter().enumerate() {
                let direct = word.iter().filter(|&&l| l == letter).count();
                prop_assert_eq!(count, &BigUint::from(direct));
            }
        }
    }

    #[test]
    fn morphic_prefixes_are_stable(f in fixture_index(), a in 1usize..5000, b in 1usize..5000) {
        let x = families::fixtures()[f].set.clone();
        let gf = ans_core::morphic::GfAutomaton::new(&x).unwrap();
        let w = gf.characteristic_word().unwrap();
        let (short, long) = (a.min(b), a.max(b));
        let p = w.prefix(short);
        prop_assert_eq!(&w.prefix(long)[..short], &p[..]);
    }
}
