use rand::Rng;

use super::{Alphabet, Dfa};

/// A random DFA with `states` states over `alphabet`: each transition is
/// present with probability `density` and targets a uniform state, and
/// each state is final with probability 1/2 (state 0 always is).
pub fn random_dfa<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, states: usize, density: f64) -> Dfa {
    let states = states.max(1);
    let delta = (0..states)
        .map(|_| (0..alphabet.len()).map(|_| rng.gen_bool(density).then(|| rng.gen_range(0..states))).collect())
        .collect();
    let finals = (0..states).map(|q| q == 0 || rng.gen_bool(0.5)).collect();
    Dfa::from_parts(alphabet.clone(), delta, 0, finals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seeded_generation_is_reproducible() {
        let sigma = Alphabet::parse("ab").unwrap();
        let a = random_dfa(&mut ChaCha8Rng::seed_from_u64(7), &sigma, 5, 0.7);
        let b = random_dfa(&mut ChaCha8Rng::seed_from_u64(7), &sigma, 5, 0.7);
        assert_eq!(a, b);
        assert_eq!(a.num_states(), 5);
        assert!(a.is_final(0));
    }
}
