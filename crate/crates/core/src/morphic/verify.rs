use std::fmt;

use num_bigint::BigUint;

use super::{GfAutomaton, MorphicError};
use crate::counting::CountTable;
use crate::numeration::RecognizableSet;

/// Outcome of a successful verification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub name: &'static str,
    /// Indices checked, `0..=n_max`.
    pub n_max: usize,
    pub checks: usize,
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}=PASS nmax={} checks={}", self.name, self.n_max, self.checks)
    }
}

fn mismatch(lemma: &'static str, quantity: &'static str, n: usize, expected: BigUint, found: BigUint) -> MorphicError {
    MorphicError::LemmaViolation { lemma, quantity, n, expected, found }
}

/// For `n <= n_max`: `|g(μ^n(α))| = v_L(n)`, `F(n) = v_{rep(X)}(n)`, and
/// `|μ^n(α)| = v_K(n)` for the prefix closure `K` of `L`.
pub fn verify_lemma_l(x: &RecognizableSet, n_max: usize) -> Result<LemmaReport, MorphicError> {
    if !x.is_infinite() {
        return Err(MorphicError::FiniteSet);
    }
    let gf = GfAutomaton::new(x)?;
    let language = x.system().counts();
    let prefixes = CountTable::new(x.system().dfa().with_all_final().minimize());
    for (n, c) in gf.counts(n_max).into_iter().enumerate() {
        let v = language.v(n);
        if c.coded_length != v {
            return Err(mismatch("lemma_l", "coded_length", n, v, c.coded_length));
        }
        let f = x.v_rep(n);
        if c.ones != f {
            return Err(mismatch("lemma_l", "F", n, f, c.ones));
        }
        let k = prefixes.v(n);
        if c.length != k {
            return Err(mismatch("lemma_l", "length", n, k, c.length));
        }
    }
    Ok(LemmaReport { name: "lemma_l", n_max, checks: 3 * (n_max + 1) })
}

/// For `n <= n_max`: with `k = |rep(t_X(n))| - 1`, i.e. the unique `k` with
/// `|g(μ^k(α))| <= t_X(n) < |g(μ^{k+1}(α))|`, also `F(k) <= n < F(k+1)`;
/// and the converse.
pub fn verify_lemma_equiv(x: &RecognizableSet, n_max: usize) -> Result<LemmaReport, MorphicError> {
    if !x.is_infinite() {
        return Err(MorphicError::FiniteSet);
    }
    let gf = GfAutomaton::new(x)?;
    let last = BigUint::from(n_max);
    // Enough terms that F exceeds n_max and |g(μ^k(α))| exceeds t_X(n_max).
    let t_last = x.t(&last)?;
    let mut depth = 1;
    let counts = loop {
        let counts = gf.counts(depth);
        let top = counts.last().unwrap();
        if top.ones > last && top.coded_length > t_last {
            break counts;
        }
        depth *= 2;
    };
    let lengths: Vec<&BigUint> = counts.iter().map(|c| &c.coded_length).collect();
    let ones: Vec<&BigUint> = counts.iter().map(|c| &c.ones).collect();
    let bracket = |n: &BigUint, values: &[&BigUint]| values.windows(2).position(|w| w[0] <= n && n < w[1]);
    for n in 0..=n_max {
        let nb = BigUint::from(n);
        let t = x.t(&nb)?;
        let by_g = bracket(&t, &lengths);
        let by_f = bracket(&nb, &ones);
        // None on both sides is k = -1: t_X(n) < v_L(0) and n < F(0).
        if by_g != by_f {
            return Err(MorphicError::EquivViolation { n, by_length: by_g, by_count: by_f });
        }
        let rep_len = x.system().rep_indices(&t).len();
        if rep_len != by_g.map_or(0, |k| k + 1) {
            return Err(MorphicError::EquivViolation { n, by_length: Some(rep_len.saturating_sub(1)), by_count: by_f });
        }
    }
    Ok(LemmaReport { name: "lemma_equiv", n_max, checks: n_max + 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeration::families;

    #[test]
    fn all_fixtures_pass() {
        for f in families::fixtures() {
            verify_lemma_l(&f.set, 40).unwrap_or_else(|e| panic!("{}: {e}", f.name));
            verify_lemma_equiv(&f.set, 300).unwrap_or_else(|e| panic!("{}: {e}", f.name));
        }
    }

    #[test]
    fn base4_language_lengths() {
        let f = families::fixture("base4-ones-threes").unwrap();
        let gf = GfAutomaton::new(&f.set).unwrap();
        for (n, c) in gf.counts(20).iter().enumerate() {
            assert_eq!(c.coded_length, BigUint::from(4u32).pow(n as u32));
        }
    }

    #[test]
    fn finite_sets_are_rejected() {
        let s = families::base(2).unwrap();
        let x = RecognizableSet::new(s.clone(), &crate::automata::parse_regex("1|10", s.alphabet()).unwrap()).unwrap();
        assert_eq!(verify_lemma_l(&x, 5), Err(MorphicError::FiniteSet));
    }
}
