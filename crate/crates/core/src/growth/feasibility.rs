use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::class::{predict, validate, Exponent, GrowthClass};
use super::perron::PerronRoot;
use super::signature::GrowthSignature;
use crate::numeration::{families, NumerationError, RecognizableSet};

/// A target growth `Θ((log n)^log_exponent n^power)` or `Θ(n^r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    LogPower { log_exponent: i64, power: u32 },
    Power(BigRational),
}

/// A construction realizing a target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    Natural,
    LogPoly { k: usize, l: usize },
    InverseLogPoly { k: usize, l: usize },
    RationalPower { c: usize, d: usize },
}

impl Construction {
    pub fn build(&self) -> Result<RecognizableSet, NumerationError> {
        match *self {
            Construction::Natural => Ok(RecognizableSet::natural(families::unary())),
            Construction::LogPoly { k, l } => families::logpoly(k, l),
            Construction::InverseLogPoly { k, l } => families::inverse_logpoly(k, l),
            Construction::RationalPower { c, d } => families::rational_power(c, d),
        }
    }
}

/// Exhaustive check over symbolic signatures that no recognizable set has
/// `t_X(n) = Θ(n / (log n)^k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImpossibilityTrace {
    pub k: u32,
    pub cases_checked: usize,
    /// Feasible signature pairs realizing the target; empty when the
    /// target is impossible.
    pub witnesses: Vec<String>,
    pub lines: Vec<String>,
}

impl ImpossibilityTrace {
    pub fn infeasible(&self) -> bool {
        self.witnesses.is_empty()
    }
}

impl fmt::Display for ImpossibilityTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

fn symbolic(theta: u64, degree: usize) -> GrowthSignature {
    GrowthSignature {
        period: 1,
        degree,
        theta: PerronRoot::integer(theta),
        constants: Vec::new(),
        equal_at_floor: false,
    }
}

/// Degrees and integer growth rates enumerated per `k`.
const RATES: [u64; 5] = [1, 2, 3, 4, 8];

pub fn impossibility_check(k: u32) -> ImpossibilityTrace {
    let bound = k as usize + 4;
    let target_f = Exponent::integer(1);
    let target_log = Exponent::integer(-(k as i64));
    let mut lines = vec![format!("target: t(n) = Theta(n / (log n)^{k})")];
    let mut cases = 0;
    let mut witnesses = Vec::new();
    let mut rejected = 0;
    let mut f_one = 0;
    for &tl in &RATES {
        for &tx in &RATES {
            for c in 0..=bound {
                for d in 0..=bound {
                    if tx == 1 && d == 0 {
                        continue;
                    }
                    cases += 1;
                    let (sl, sx) = (symbolic(tl, c), symbolic(tx, d));
                    if validate(&sl, &sx).is_err() {
                        rejected += 1;
                        continue;
                    }
                    if let Ok(GrowthClass::LogPower { f, log_exponent }) = predict(&sl, &sx, None) {
                        if f == target_f {
                            f_one += 1;
                            assert!(tl == tx && d <= c);
                            if log_exponent == target_log {
                                witnesses.push(format!("theta_L={tl} c={c} theta_X={tx} d={d}"));
                            }
                        }
                    }
                }
            }
        }
    }
    lines.push(format!("checked {cases} signature pairs with c, d <= {bound}; {rejected} fail validation"));
    lines.push("theta_X = 1 gives a power or stretched exponential class".to_string());
    lines.push(format!("{f_one} valid pairs have f = 1, all with theta_L = theta_X and d <= c"));
    if witnesses.is_empty() {
        lines.push("infeasible: f=1 ⇒ c≥d ⇒ log-exponent ≥ 0".to_string());
    } else {
        lines.push(format!("feasible: {}", witnesses.join(", ")));
    }
    ImpossibilityTrace { k, cases_checked: cases, witnesses, lines }
}

/// A construction realizing `target`, or the trace showing none exists.
pub fn feasibility(target: &Target) -> Result<Construction, ImpossibilityTrace> {
    match *target {
        Target::Power(ref r) => {
            let one = BigRational::from_integer(BigInt::from(1));
            if *r < one {
                // Elements are distinct integers: t(n) >= n.
                return Err(ImpossibilityTrace {
                    k: 0,
                    cases_checked: 0,
                    witnesses: Vec::new(),
                    lines: vec![format!("infeasible: t(n) >= n excludes Theta(n^{r})")],
                });
            }
            let c = usize::try_from(r.numer()).expect("small numerator");
            let d = usize::try_from(r.denom()).expect("small denominator");
            Ok(if c == d { Construction::Natural } else { Construction::RationalPower { c, d } })
        }
        Target::LogPower { log_exponent, power } => match (log_exponent, power as usize) {
            (_, 0) => Err(impossibility_check(1)),
            (0, 1) => Ok(Construction::Natural),
            (k, l) if k >= 0 => Ok(Construction::LogPoly { k: k as usize, l }),
            (k, 1) => Err(impossibility_check((-k) as u32)),
            (k, l) => Ok(Construction::InverseLogPoly { k: (-k) as usize, l }),
        },
    }
}
