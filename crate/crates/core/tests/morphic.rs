use ans_core::morphic::{GfAutomaton, MorphicWord, Morphism};
use ans_core::numeration::families;

#[test]
fn characteristic_words_agree_with_numeration() {
    for f in families::fixtures() {
        let gf = GfAutomaton::new(&f.set).unwrap();
        let word = gf.characteristic_word().unwrap();
        let chi = f.set.characteristic(10_000);
        let coded: Vec<bool> = word.prefix(10_000).into_iter().map(|s| s == 1).collect();
        assert_eq!(coded, chi[..10_000], "{}", f.name);
    }
}

#[test]
fn prefix_stability_to_ten_thousand() {
    let m = Morphism::from_chars(&[('1', "1010"), ('0', "00")]).unwrap();
    let w = MorphicWord::fixed_point(m, 0).unwrap();
    let full = w.prefix(10_000);
    for n in [1, 7, 64, 1000, 4097, 9999] {
        assert_eq!(w.prefix(n), full[..n]);
    }
    let ones: Vec<usize> = full.iter().enumerate().filter(|(_, &l)| l == 0).map(|(i, _)| i).take(8).collect();
    assert_eq!(ones, [0, 2, 6, 8, 16, 18, 22, 24]);
}

#[test]
fn pansiot_counter_is_a_power_of_two() {
    let gf = GfAutomaton::new(&families::pansiot_set()).unwrap();
    for (n, c) in gf.counts(64).iter().enumerate() {
        assert_eq!(c.ones, num_bigint::BigUint::from(1u32) << n);
    }
}
