use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;

use super::perron::PerronRoot;
use super::{ln_big, GrowthError};
use crate::automata::{scc_decompose, Dfa};
use crate::counting::CountTable;

/// Non-certified estimate of a per-residue constant `a_i` in
/// `v(np+i) ~ a_i n^c θ^{pn}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstantEstimate {
    pub value: f64,
    /// Successive estimates agree within 1%.
    pub converged: bool,
}

impl ConstantEstimate {
    pub fn approx(&self) -> Option<BigRational> {
        BigRational::from_float(self.value)
    }
}

/// Growth signature `(p, c, θ)` of `v_L`: for each residue `i < p`,
/// `v(np+i) ~ a_i n^c θ^{pn}`.
#[derive(Clone, Debug)]
pub struct GrowthSignature {
    pub period: usize,
    pub degree: usize,
    pub theta: PerronRoot,
    pub constants: Vec<ConstantEstimate>,
    /// Some critical components could only be declared equal at the
    /// enclosure width floor.
    pub equal_at_floor: bool,
}

/// Index at which constants are estimated.
const ESTIMATE_AT: usize = 256;

impl GrowthSignature {
    /// `v(np+i) / (n^c θ^{pn})`, computed in log space.
    pub fn constant_estimate(&self, counts: &CountTable, i: usize, n: usize) -> f64 {
        let len = n * self.period + i;
        let ln_v = ln_big(&counts.v(len));
        let ln_theta = self.theta.midpoint().ln();
        (ln_v - self.degree as f64 * (n as f64).ln() - (self.period * n) as f64 * ln_theta).exp()
    }

    fn estimate_constants(&mut self, counts: &CountTable) {
        self.constants = (0..self.period)
            .map(|i| {
                let a = self.constant_estimate(counts, i, ESTIMATE_AT);
                let b = self.constant_estimate(counts, i, ESTIMATE_AT - 1);
                ConstantEstimate { value: a, converged: (a / b - 1.0).abs() < 0.01 }
            })
            .collect();
    }

    /// `θ = 1`.
    pub fn is_polynomial(&self) -> bool {
        self.theta.is_one()
    }
}

impl fmt::Display for GrowthSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sig p={} c={} theta={}", self.period, self.degree, self.theta)
    }
}

/// Signature of `v` for the language of `dfa`, read off the strongly
/// connected components of its trim minimal automaton.
pub fn signature(dfa: &Dfa) -> Result<GrowthSignature, GrowthError> {
    let dfa = dfa.minimize();
    if dfa.is_empty_language() {
        return Err(GrowthError::EmptyLanguage);
    }
    if !dfa.is_infinite_language() {
        return Err(GrowthError::FiniteLanguage);
    }
    let scc = scc_decompose(&dfa);
    let roots: Vec<Option<PerronRoot>> =
        scc.components.iter().map(|c| c.is_cyclic().then(|| PerronRoot::of_irreducible(&c.adjacency))).collect();

    let mut theta: Option<PerronRoot> = None;
    for r in roots.iter().flatten() {
        if theta.as_ref().is_none_or(|t| r.compare(t).is_gt()) {
            theta = Some(r.clone());
        }
    }
    let theta = theta.expect("infinite language has a cycle");
    let mut equal_at_floor = false;
    let critical: Vec<bool> = roots
        .iter()
        .map(|r| {
            r.as_ref().is_some_and(|r| {
                let eq = r.compare(&theta).is_eq();
                if eq && (r.exact().is_none() || theta.exact().is_none()) && r.lo() != theta.lo() {
                    equal_at_floor = true;
                }
                eq
            })
        })
        .collect();

    let period = scc
        .components
        .iter()
        .zip(&critical)
        .filter(|(_, &crit)| crit)
        .map(|(c, _)| c.period.unwrap())
        .fold(1usize, |acc, p| acc.lcm(&p));

    // Longest chain of critical components; components are topologically
    // sorted, so a reverse sweep suffices.
    let k = scc.components.len();
    let mut chain = vec![0usize; k];
    for c in (0..k).rev() {
        let best = scc.condensation[c].iter().map(|&(d, _)| chain[d]).max().unwrap_or(0);
        chain[c] = best + usize::from(critical[c]);
    }
    let on_path = chain[scc.initial_component(&dfa)];
    let degree = if theta.is_one() { on_path } else { on_path - 1 };

    let mut sig = GrowthSignature { period, degree, theta, constants: Vec::new(), equal_at_floor };
    sig.estimate_constants(&CountTable::new(dfa));
    Ok(sig)
}
