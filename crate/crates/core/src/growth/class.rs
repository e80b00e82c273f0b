use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::perron::PerronRoot;
use super::signature::GrowthSignature;
use super::GrowthError;

/// An exponent that is either exact or only enclosed.
#[derive(Clone, Debug, PartialEq)]
pub enum Exponent {
    Rational(BigRational),
    /// `log(numerator) / log(denominator)` for two Perron roots that are
    /// not powers of a common integer.
    LogRatio {
        numerator: String,
        denominator: String,
        lo: f64,
        hi: f64,
    },
    Interval {
        lo: f64,
        hi: f64,
    },
}

impl Exponent {
    pub fn integer(n: i64) -> Self {
        Exponent::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Exponent::Rational(r) => r.to_f64().unwrap(),
            Exponent::LogRatio { lo, hi, .. } | Exponent::Interval { lo, hi } => (lo + hi) / 2.0,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Exponent::Rational(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Rational(r) => write!(f, "{r}"),
            Exponent::LogRatio { numerator, denominator, .. } => write!(f, "log({numerator})/log({denominator})"),
            Exponent::Interval { lo, hi } => write!(f, "[{lo:.9},{hi:.9}]"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Refinement {
    None,
    /// `v_X(n) ~ b n^d` with a single residue class.
    Asymptotic,
    /// `v_X(n) = b n^d` on all supplied values.
    Exact,
}

impl fmt::Display for Refinement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Refinement::None => "none",
            Refinement::Asymptotic => "asymptotic",
            Refinement::Exact => "exact",
        })
    }
}

/// Constant multiplying `n^{1/d}` in the exponent of a stretched
/// exponential.
#[derive(Clone, Debug, PartialEq)]
pub enum InnerConstant {
    /// `radicand^(1/index)`.
    Root { radicand: BigRational, index: usize },
    /// Per-residue constants that need not converge to one value.
    Range { lo: f64, hi: f64 },
}

impl InnerConstant {
    pub fn to_f64(&self) -> f64 {
        match self {
            InnerConstant::Root { radicand, index } => radicand.to_f64().unwrap().powf(1.0 / *index as f64),
            InnerConstant::Range { lo, hi } => (lo + hi) / 2.0,
        }
    }
}

fn exact_root(r: &BigRational, k: u32) -> Option<BigRational> {
    let (n, d) = (r.numer().to_biguint()?, r.denom().to_biguint()?);
    let (rn, rd) = (n.nth_root(k), d.nth_root(k));
    (rn.pow(k) == n && rd.pow(k) == d).then(|| BigRational::new(rn.into(), rd.into()))
}

impl fmt::Display for InnerConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InnerConstant::Root { radicand, index } => match exact_root(radicand, *index as u32) {
                Some(r) => write!(f, "{r}"),
                None if *index == 2 => write!(f, "sqrt({radicand})"),
                None => write!(f, "{radicand}^(1/{index})"),
            },
            InnerConstant::Range { lo, hi } => write!(f, "[{lo:.9},{hi:.9}]"),
        }
    }
}

/// Θ-class of the growth function `t_X` of a recognizable set.
#[derive(Clone, Debug, PartialEq)]
pub enum GrowthClass {
    /// `Θ((log n)^log_exponent n^f)`.
    LogPower { f: Exponent, log_exponent: Exponent },
    /// `Θ(n^r)`.
    Power { r: BigRational },
    /// `n^poly_exponent base^(Θ(n^inner_exponent))`; the `Θ` sharpens to
    /// `(1+o(1)) K` or exactly `K` when refined, `K` the inner constant.
    StretchedExp {
        poly_exponent: BigRational,
        base: PerronRoot,
        inner_exponent: BigRational,
        inner_constant: Option<InnerConstant>,
        refined: Refinement,
    },
}

impl GrowthClass {
    /// `ln g(n)` for the representative `g` of the class.
    pub fn ln_representative(&self, n: f64) -> f64 {
        match self {
            GrowthClass::LogPower { f, log_exponent } => log_exponent.to_f64() * n.ln().ln() + f.to_f64() * n.ln(),
            GrowthClass::Power { r } => r.to_f64().unwrap() * n.ln(),
            GrowthClass::StretchedExp { poly_exponent, base, inner_exponent, inner_constant, .. } => {
                let k = inner_constant.as_ref().map_or(1.0, InnerConstant::to_f64);
                poly_exponent.to_f64().unwrap() * n.ln()
                    + base.midpoint().ln() * k * n.powf(inner_exponent.to_f64().unwrap())
            }
        }
    }

    pub fn is_stretched(&self) -> bool {
        matches!(self, GrowthClass::StretchedExp { .. })
    }
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthClass::LogPower { f: e, log_exponent } => write!(f, "class logpower f={e} logexp={log_exponent}"),
            GrowthClass::Power { r } => write!(f, "class power r={r}"),
            GrowthClass::StretchedExp { poly_exponent, base, inner_exponent, inner_constant, refined } => {
                write!(
                    f,
                    "class stretchedexp polyexp={poly_exponent} base={} innerexp={inner_exponent}",
                    base.symbol()
                )?;
                match (inner_constant, refined) {
                    (Some(k @ InnerConstant::Root { .. }), Refinement::Asymptotic) => write!(f, " innerconst~{k}")?,
                    (Some(k), _) => write!(f, " innerconst={k}")?,
                    (None, _) => {}
                }
                write!(f, " refined={refined}")
            }
        }
    }
}

/// Why a pair of signatures cannot come from a language and a sublanguage.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("set grows faster than the numeration language")]
    SetOutgrowsLanguage,
    #[error("equal growth rates but set degree {d} exceeds language degree {c}")]
    DegreeExceeds { c: usize, d: usize },
}

/// Checks that `sig_x` can be the signature of a sublanguage of a language
/// with signature `sig_l`.
pub fn validate(sig_l: &GrowthSignature, sig_x: &GrowthSignature) -> Result<(), Violation> {
    match sig_x.theta.compare(&sig_l.theta) {
        Ordering::Less => Ok(()),
        Ordering::Greater => Err(Violation::SetOutgrowsLanguage),
        Ordering::Equal if sig_x.degree <= sig_l.degree => Ok(()),
        Ordering::Equal => Err(Violation::DegreeExceeds { c: sig_l.degree, d: sig_x.degree }),
    }
}

fn ratio(a: usize, b: usize) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// `log θ_L / log θ_X` for `θ_X > 1`.
fn log_ratio(theta_l: &PerronRoot, theta_x: &PerronRoot) -> Exponent {
    if theta_l.compare(theta_x).is_eq() {
        return Exponent::integer(1);
    }
    let forms = (theta_l.exact().and_then(|e| e.power_form()), theta_x.exact().and_then(|e| e.power_form()));
    if let (Some((g1, e1)), Some((g2, e2))) = forms {
        if g1 == g2 {
            return Exponent::Rational(e1 / e2);
        }
    }
    let (l_lo, l_hi) = theta_l.ln_bounds();
    let (x_lo, x_hi) = theta_x.ln_bounds();
    Exponent::LogRatio { numerator: theta_l.symbol(), denominator: theta_x.symbol(), lo: l_lo / x_hi, hi: l_hi / x_lo }
}

/// Leading coefficient `b` of `w(n) = b n^d + ...` when the `d`-th
/// difference of `w` is constant on the second half of the data.
fn leading_coefficient(w: &[BigInt], d: usize) -> Option<BigRational> {
    if w.len() < 2 * (d + 2) {
        return None;
    }
    let mut diff = w[w.len() / 2..].to_vec();
    for _ in 0..d {
        diff = diff.windows(2).map(|p| &p[1] - &p[0]).collect();
    }
    if diff.windows(2).any(|p| p[0] != p[1]) {
        return None;
    }
    let factorial: BigInt = (1..=d).map(BigInt::from).product();
    Some(BigRational::new(diff[0].clone(), factorial))
}

/// Predicts the Θ-class of `t_X`. `v_x`, when given, holds exact values
/// `v_X(0), v_X(1), ...` and enables the refined stretched-exponential
/// forms.
pub fn predict(
    sig_l: &GrowthSignature,
    sig_x: &GrowthSignature,
    v_x: Option<&[BigUint]>,
) -> Result<GrowthClass, GrowthError> {
    validate(sig_l, sig_x)?;
    let (c, d) = (sig_l.degree, sig_x.degree);
    if !sig_x.theta.is_one() {
        let f = log_ratio(&sig_l.theta, &sig_x.theta);
        let log_exponent = if d == 0 {
            Exponent::integer(c as i64)
        } else if let Exponent::Rational(r) = &f {
            Exponent::Rational(
                BigRational::from_integer(BigInt::from(c)) - BigRational::from_integer(BigInt::from(d)) * r,
            )
        } else {
            let (lo, hi) = match &f {
                Exponent::LogRatio { lo, hi, .. } | Exponent::Interval { lo, hi } => (*lo, *hi),
                Exponent::Rational(_) => unreachable!(),
            };
            Exponent::Interval { lo: c as f64 - d as f64 * hi, hi: c as f64 - d as f64 * lo }
        };
        return Ok(GrowthClass::LogPower { f, log_exponent });
    }
    if sig_l.theta.is_one() {
        return Ok(GrowthClass::Power { r: ratio(c, d) });
    }
    let q = sig_x.period;
    let mut inner_constant = None;
    let mut refined = Refinement::None;
    if let Some(values) = v_x {
        let values: Vec<BigInt> = values.iter().cloned().map(BigInt::from).collect();
        if q == 1 {
            if let Some(b) = leading_coefficient(&values, d).filter(|b| b.is_positive()) {
                let exact = values.iter().enumerate().all(|(n, v)| {
                    BigRational::from_integer(v.clone())
                        == &b * BigRational::from_integer(BigInt::from(n).pow(d as u32))
                });
                refined = if exact { Refinement::Exact } else { Refinement::Asymptotic };
                inner_constant = Some(InnerConstant::Root { radicand: b.recip(), index: d });
            }
        } else {
            // v(nq+j) ~ b_j n^d, i.e. v(N) ~ (b_j / q^d) N^d along residue j.
            let per_residue: Option<Vec<f64>> = (0..q)
                .map(|j| {
                    let w: Vec<BigInt> = values.iter().skip(j).step_by(q).cloned().collect();
                    leading_coefficient(&w, d).map(|b| q as f64 / b.to_f64().unwrap().powf(1.0 / d as f64))
                })
                .collect();
            if let Some(ks) = per_residue {
                let lo = ks.iter().cloned().fold(f64::INFINITY, f64::min);
                let hi = ks.iter().cloned().fold(0.0, f64::max);
                inner_constant = Some(InnerConstant::Range { lo, hi });
            }
        }
    }
    Ok(GrowthClass::StretchedExp {
        poly_exponent: ratio(c, d),
        base: sig_l.theta.clone(),
        inner_exponent: ratio(1, d),
        inner_constant,
        refined,
    })
}
