use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{self, Poly};

/// Absolute width below which overlapping enclosures are treated as equal.
pub const WIDTH_FLOOR: f64 = 1e-12;

/// Closed form of a certified Perron root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExactRoot {
    Integer(BigUint),
    /// `base^(1/index)`, `index >= 2`, not an integer.
    Radical {
        base: BigUint,
        index: u32,
    },
    /// The root of `x^2 - a x - b` selected by `larger`.
    Quadratic {
        a: BigInt,
        b: BigInt,
        larger: bool,
    },
}

impl ExactRoot {
    /// `(g, e)` with the root equal to `g^e`, `g` not a perfect power.
    /// `None` for quadratic irrationals and for 1.
    pub fn power_form(&self) -> Option<(BigUint, BigRational)> {
        let (m, index) = match self {
            ExactRoot::Integer(m) => (m, 1u32),
            ExactRoot::Radical { base, index } => (base, *index),
            ExactRoot::Quadratic { .. } => return None,
        };
        if *m <= BigUint::one() {
            return None;
        }
        let (g, k) = perfect_power(m);
        Some((g, BigRational::new(BigInt::from(k), BigInt::from(index))))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactRoot::Integer(m) => m.to_f64().unwrap_or(f64::INFINITY),
            ExactRoot::Radical { base, index } => base.to_f64().unwrap_or(f64::INFINITY).powf(1.0 / f64::from(*index)),
            ExactRoot::Quadratic { a, b, larger } => {
                let (a, b) = (a.to_f64().unwrap(), b.to_f64().unwrap());
                let s = (a * a + 4.0 * b).sqrt();
                if *larger {
                    (a + s) / 2.0
                } else {
                    (a - s) / 2.0
                }
            }
        }
    }
}

/// `m = g^k` with `k` maximal.
fn perfect_power(m: &BigUint) -> (BigUint, u32) {
    let bits = m.bits() as u32;
    for k in (2..=bits).rev() {
        let r = m.nth_root(k);
        if r.pow(k) == *m {
            return (r, k);
        }
    }
    (m.clone(), 1)
}

/// `n = k^2 r` with `r` squarefree.
fn split_square(n: &BigUint) -> (BigUint, BigUint) {
    let mut k = BigUint::one();
    let mut r = n.clone();
    let mut f = BigUint::from(2u32);
    while &f * &f <= r {
        let sq = &f * &f;
        while (&r % &sq).is_zero() {
            r /= &sq;
            k *= &f;
        }
        f += 1u32;
    }
    (k, r)
}

impl fmt::Display for ExactRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactRoot::Integer(m) => write!(f, "{m}"),
            ExactRoot::Radical { base, index: 2 } => write!(f, "sqrt({base})"),
            ExactRoot::Radical { base, index } => write!(f, "{base}^(1/{index})"),
            ExactRoot::Quadratic { a, b, larger } => {
                let disc = (a * a + BigInt::from(4) * b).to_biguint().expect("real root");
                let (k, r) = split_square(&disc);
                let mut k = BigInt::from(k);
                let mut a = a.clone();
                let mut den = BigInt::from(2);
                let g = a.gcd(&k).gcd(&den);
                if !g.is_zero() {
                    a /= &g;
                    k /= &g;
                    den /= &g;
                }
                let radical = if k.is_one() { format!("sqrt({r})") } else { format!("{k}*sqrt({r})") };
                let sign = if *larger { "+" } else { "-" };
                let num = if a.is_zero() {
                    if *larger {
                        radical
                    } else {
                        format!("-{radical}")
                    }
                } else {
                    format!("{a}{sign}{radical}")
                };
                if den.is_one() {
                    f.write_str(&num)
                } else if a.is_zero() && *larger {
                    write!(f, "{num}/{den}")
                } else {
                    write!(f, "({num})/{den}")
                }
            }
        }
    }
}

/// The spectral radius of a nonnegative integer matrix, enclosed in a
/// rational interval by Collatz-Wielandt bounds and identified exactly
/// when it is an integer, a radical or a quadratic irrational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerronRoot {
    lo: BigRational,
    hi: BigRational,
    exact: Option<ExactRoot>,
    minimal_hint: Option<String>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn floor_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12))
}

fn rat_to_f64(r: &BigRational) -> f64 {
    // Scale so both parts fit comfortably in f64.
    let shift = (r.numer().bits() as i64).max(r.denom().bits() as i64) - 900;
    if shift > 0 {
        let n = r.numer() >> (shift as usize);
        let d = r.denom() >> (shift as usize);
        if d.is_zero() {
            return f64::INFINITY;
        }
        n.to_f64().unwrap() / d.to_f64().unwrap()
    } else {
        r.numer().to_f64().unwrap() / r.denom().to_f64().unwrap()
    }
}

impl PerronRoot {
    pub fn one() -> Self {
        PerronRoot::integer(1)
    }

    pub fn integer(m: u64) -> Self {
        PerronRoot {
            lo: rat(m as i64),
            hi: rat(m as i64),
            exact: Some(ExactRoot::Integer(BigUint::from(m))),
            minimal_hint: None,
        }
    }

    /// Perron root of an irreducible nonnegative matrix (a strongly
    /// connected component's multi-edge adjacency matrix).
    pub fn of_irreducible(a: &[Vec<u64>]) -> Self {
        let n = a.len();
        assert!(n > 0, "empty matrix");
        if a.iter().all(|row| row.iter().sum::<u64>() == 1) {
            return PerronRoot::one();
        }
        let (lo, hi) = enclose(a, &floor_width());
        let mut root = PerronRoot { lo, hi, exact: None, minimal_hint: None };
        root.identify(a);
        root
    }

    fn identify(&mut self, a: &[Vec<u64>]) {
        let p = poly::from_ints(&poly::charpoly(a));
        let s = poly::squarefree(&p);
        if poly::count_roots(&s, &self.lo, &self.hi) != 1 {
            return;
        }
        let mid = self.midpoint();
        let contains_root_of = |q: &Poly| poly::count_roots(&poly::gcd(&s, q), &self.lo, &self.hi) == 1;

        let m = mid.round();
        if m >= 1.0 {
            let mr = rat(m as i64);
            if self.lo <= mr && mr <= self.hi && poly::eval(&s, &mr).is_zero() {
                self.lo = mr.clone();
                self.hi = mr;
                self.exact = Some(ExactRoot::Integer(BigUint::from(m as u64)));
                return;
            }
        }
        for index in 2..=n_max_index(a.len()) {
            let power = mid.powi(index as i32);
            if power >= 2f64.powi(50) {
                break;
            }
            let m = power.round() as i64;
            if m < 2 {
                continue;
            }
            // x^index - m
            let mut q = vec![BigRational::zero(); index as usize + 1];
            q[0] = rat(-m);
            q[index as usize] = rat(1);
            if contains_root_of(&q) {
                self.exact = Some(ExactRoot::Radical { base: BigUint::from(m as u64), index });
                return;
            }
        }
        let bound = 2 * mid.ceil() as i64 + 2;
        for a_coef in -bound..=bound {
            let b_coef = (mid * mid - a_coef as f64 * mid).round() as i64;
            let disc = a_coef * a_coef + 4 * b_coef;
            if disc <= 0 || disc.sqrt() * disc.sqrt() == disc {
                continue;
            }
            let q = vec![rat(-b_coef), rat(-a_coef), rat(1)];
            if contains_root_of(&q) {
                let larger = ((a_coef as f64 + (disc as f64).sqrt()) / 2.0 - mid).abs()
                    < ((a_coef as f64 - (disc as f64).sqrt()) / 2.0 - mid).abs();
                self.exact = Some(ExactRoot::Quadratic { a: BigInt::from(a_coef), b: BigInt::from(b_coef), larger });
                return;
            }
        }
        self.minimal_hint = Some(format!("root({})", poly::render(&s)));
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn exact(&self) -> Option<&ExactRoot> {
        self.exact.as_ref()
    }

    pub fn is_one(&self) -> bool {
        self.lo.is_one() && self.hi.is_one()
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> f64 {
        match &self.exact {
            Some(e) => e.to_f64(),
            None => rat_to_f64(&((&self.lo + &self.hi) / rat(2))),
        }
    }

    pub fn lo_f64(&self) -> f64 {
        rat_to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        rat_to_f64(&self.hi)
    }

    /// Natural-log bounds, widened by a relative float margin.
    pub fn ln_bounds(&self) -> (f64, f64) {
        let lo = self.lo_f64().ln();
        let hi = self.hi_f64().ln();
        (lo - lo.abs() * 1e-14, hi + hi.abs() * 1e-14)
    }

    /// Symbolic rendering: the exact form when known, else a decimal.
    pub fn symbol(&self) -> String {
        match &self.exact {
            Some(e) => e.to_string(),
            None => format!("{:.9}", self.midpoint()),
        }
    }

    /// Compares two roots; enclosures that still overlap at the width floor
    /// compare equal.
    pub fn compare(&self, other: &PerronRoot) -> Ordering {
        if let (Some((g1, e1)), Some((g2, e2))) =
            (self.exact.as_ref().and_then(ExactRoot::power_form), other.exact.as_ref().and_then(ExactRoot::power_form))
        {
            if g1 == g2 {
                return e1.cmp(&e2);
            }
        }
        if self.exact == other.exact && self.exact.is_some() {
            return Ordering::Equal;
        }
        if self.hi < other.lo {
            Ordering::Less
        } else if other.hi < self.lo {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    }
}

fn n_max_index(dim: usize) -> u32 {
    dim.clamp(2, 64) as u32
}

impl fmt::Display for PerronRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(ExactRoot::Integer(m)) = &self.exact {
            return write!(f, "{m}");
        }
        let lo = (self.lo_f64() * 1e9).floor() / 1e9;
        let hi = (self.hi_f64() * 1e9).ceil() / 1e9;
        write!(f, "[{lo:.9},{hi:.9}]")?;
        match (&self.exact, &self.minimal_hint) {
            (Some(e), _) => write!(f, "~{e}"),
            (None, Some(h)) => write!(f, "~{h}"),
            (None, None) => Ok(()),
        }
    }
}

/// Collatz-Wielandt enclosure `[min (Ax)_i/x_i, max (Ax)_i/x_i]` for a
/// positive integer vector `x`, started from a floating-point Perron
/// vector of `A + I` and iterated exactly until the width target is met.
fn enclose(a: &[Vec<u64>], target: &BigRational) -> (BigRational, BigRational) {
    let n = a.len();
    let mut v = vec![1.0f64; n];
    for _ in 0..200_000 {
        let mut w: Vec<f64> = (0..n).map(|i| v[i] + (0..n).map(|j| a[i][j] as f64 * v[j]).sum::<f64>()).collect();
        let max = w.iter().cloned().fold(0.0, f64::max);
        w.iter_mut().for_each(|x| *x /= max);
        let delta = w.iter().zip(&v).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        v = w;
        if delta < 1e-15 {
            break;
        }
    }
    let scale = 2f64.powi(52);
    let mut x: Vec<BigInt> = v.iter().map(|&t| BigInt::from(((t * scale).round() as i64).max(1))).collect();
    let mut best: Option<(BigRational, BigRational)> = None;
    for _ in 0..20_000 {
        let y: Vec<BigInt> =
            (0..n).map(|i| (0..n).filter(|&j| a[i][j] > 0).map(|j| &x[j] * BigInt::from(a[i][j])).sum()).collect();
        let ratios = (0..n).map(|i| BigRational::new(y[i].clone(), x[i].clone()));
        let (lo, hi) = ratios.fold((None::<BigRational>, None::<BigRational>), |(lo, hi), r| {
            (
                Some(lo.map_or(r.clone(), |l| if r < l { r.clone() } else { l })),
                Some(hi.map_or(r.clone(), |h| if r > h { r } else { h })),
            )
        });
        let (lo, hi) = (lo.unwrap(), hi.unwrap());
        best = Some(match best {
            None => (lo, hi),
            Some((bl, bh)) => (if lo > bl { lo } else { bl }, if hi < bh { hi } else { bh }),
        });
        let (bl, bh) = best.as_ref().unwrap();
        if &(bh - bl) <= target {
            break;
        }
        for i in 0..n {
            x[i] += &y[i];
        }
        let bits = x.iter().map(|t| t.bits()).max().unwrap_or(0);
        if bits > 2048 {
            let shift = (bits - 256) as usize;
            x.iter_mut().for_each(|t| {
                *t = (&*t >> shift).max(BigInt::one());
            });
        }
    }
    let (lo, hi) = best.unwrap();
    debug_assert!(!lo.is_negative() && lo <= hi);
    (lo, hi)
}
