//! Growth of regular languages and of recognizable sets: the polynomial or
//! exponential dichotomy, growth signatures `(p, c, θ)` of cumulative
//! counts, and the Θ-class of `t_X` they determine.

mod class;
mod feasibility;
mod fit;
mod perron;
mod poly;
mod signature;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::automata::{scc_decompose, Dfa};
use crate::numeration::{NumerationError, RecognizableSet};

pub use class::{predict, validate, Exponent, GrowthClass, InnerConstant, Refinement, Violation};
pub use feasibility::{feasibility, impossibility_check, Construction, ImpossibilityTrace, Target};
pub use fit::{bracket_index, empirical_fit, geometric_grid, Bracket, FitReport};
pub use perron::{ExactRoot, PerronRoot, WIDTH_FLOOR};
pub use signature::{signature, ConstantEstimate, GrowthSignature};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GrowthError {
    #[error("language is empty")]
    EmptyLanguage,
    #[error("language is finite")]
    FiniteLanguage,
    #[error("infeasible signatures: {0}")]
    Infeasible(#[from] Violation),
    #[error(transparent)]
    Numeration(#[from] NumerationError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LanguageClass {
    Finite,
    Polynomial,
    Exponential,
}

/// Polynomial iff every cyclic component of the trim automaton is a simple
/// cycle.
pub fn classify(dfa: &Dfa) -> LanguageClass {
    let dfa = dfa.minimize();
    if !dfa.is_infinite_language() {
        return LanguageClass::Finite;
    }
    let scc = scc_decompose(&dfa);
    if scc.components.iter().filter(|c| c.is_cyclic()).all(|c| c.is_simple_cycle) {
        LanguageClass::Polynomial
    } else {
        LanguageClass::Exponential
    }
}

/// Natural logarithm of a big integer (`-inf` for zero).
pub(crate) fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// Signatures of a numeration language and a set, with the predicted class.
#[derive(Clone, Debug)]
pub struct SetAnalysis {
    pub language: GrowthSignature,
    pub set: GrowthSignature,
    pub class: Result<GrowthClass, Violation>,
}

/// Number of exact `v_X` values handed to [`predict`] for refinement.
fn refinement_terms(x: &RecognizableSet) -> usize {
    64 + 4 * x.rep_dfa().num_states()
}

pub fn analyze(x: &RecognizableSet) -> Result<SetAnalysis, GrowthError> {
    let language = signature(x.system().dfa())?;
    let set = signature(x.rep_dfa())?;
    let data = x.rep_counts().v_prefix(refinement_terms(x));
    let class = match predict(&language, &set, Some(&data)) {
        Ok(c) => Ok(c),
        Err(GrowthError::Infeasible(v)) => Err(v),
        Err(e) => return Err(e),
    };
    Ok(SetAnalysis { language, set, class })
}
