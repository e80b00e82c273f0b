use num_bigint::BigUint;

use super::class::GrowthClass;
use super::ln_big;
use crate::numeration::{NumerationError, RecognizableSet};

/// Position of an index `n` among the values `F(k) = v_{rep(X)}(k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bracket {
    /// `n < F(0)`; reported as `k = -1`.
    Below,
    /// The unique `k` with `F(k) <= n < F(k+1)`.
    At(usize),
    /// `n` is at least the size of a finite set.
    Beyond,
}

impl Bracket {
    pub fn as_i64(self) -> Option<i64> {
        match self {
            Bracket::Below => Some(-1),
            Bracket::At(k) => Some(k as i64),
            Bracket::Beyond => None,
        }
    }
}

/// Length bracket of the `n`-th element: the `k` with
/// `v_{rep(X)}(k) <= n < v_{rep(X)}(k+1)`.
pub fn bracket_index(x: &RecognizableSet, n: &BigUint) -> Bracket {
    let f = |k: usize| x.v_rep(k);
    if f(0) > *n {
        return Bracket::Below;
    }
    if x.size().is_some_and(|s| *n >= s) {
        return Bracket::Beyond;
    }
    let mut hi = 1usize;
    while f(hi) <= *n {
        hi *= 2;
    }
    // Largest k < hi with F(k) <= n.
    let mut lo = 0usize;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if f(mid) <= *n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Bracket::At(lo)
}

/// `2^from, ..., 2^to` subdivided into `per_octave` geometric steps.
pub fn geometric_grid(from_exp: u32, to_exp: u32, per_octave: u32) -> Vec<u64> {
    let mut grid: Vec<u64> = (0..=(to_exp - from_exp) * per_octave)
        .map(|i| 2f64.powf(from_exp as f64 + i as f64 / per_octave as f64).round() as u64)
        .collect();
    grid.dedup();
    grid
}

/// Ratios of `t_X(n)` against the representative of a growth class.
#[derive(Clone, Debug)]
pub struct FitReport {
    /// `(n, ratio)`; for stretched exponentials the ratio of logarithms
    /// `ln t(n) / ln g(n)`, otherwise `t(n) / g(n)`.
    pub points: Vec<(u64, f64)>,
    pub log_domain: bool,
}

impl FitReport {
    pub fn min(&self) -> f64 {
        self.points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn spread(&self) -> f64 {
        self.max() / self.min()
    }

    pub fn within_spread(&self, tolerance: f64) -> bool {
        self.spread() <= tolerance
    }

    pub fn within_band(&self, lo: f64, hi: f64) -> bool {
        lo <= self.min() && self.max() <= hi
    }
}

/// Evaluates `t_X` on `grid` and compares it with the class representative.
pub fn empirical_fit(x: &RecognizableSet, class: &GrowthClass, grid: &[u64]) -> Result<FitReport, NumerationError> {
    let log_domain = class.is_stretched();
    let points = grid
        .iter()
        .map(|&n| {
            let ln_t = ln_big(&x.t_u64(n)?);
            let ln_g = class.ln_representative(n as f64);
            let r = if log_domain { ln_t / ln_g } else { (ln_t - ln_g).exp() };
            Ok((n, r))
        })
        .collect::<Result<_, NumerationError>>()?;
    Ok(FitReport { points, log_domain })
}
