//! Dense univariate polynomials with exact coefficients, lowest degree
//! first. Just enough algebra to isolate and identify Perron roots.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type Poly = Vec<BigRational>;

fn normalize(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub(crate) fn from_ints(coeffs: &[BigInt]) -> Poly {
    normalize(coeffs.iter().cloned().map(BigRational::from_integer).collect())
}

pub(crate) fn degree(p: &Poly) -> Option<usize> {
    p.len().checked_sub(1)
}

pub(crate) fn eval(p: &Poly, x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

pub(crate) fn derivative(p: &Poly) -> Poly {
    normalize(p.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(BigInt::from(i))).collect())
}

/// Quotient and remainder; `d` must be nonzero.
pub(crate) fn div_rem(n: &Poly, d: &Poly) -> (Poly, Poly) {
    let dd = degree(d).expect("division by zero polynomial");
    let lead = d[dd].clone();
    let mut rem = n.clone();
    if rem.len() <= dd {
        return (Vec::new(), normalize(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dd] / &lead;
        if !c.is_zero() {
            for (j, dc) in d.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
        }
        quot[i] = c;
    }
    rem.truncate(dd);
    (normalize(quot), normalize(rem))
}

fn monic(p: Poly) -> Poly {
    match p.last().cloned() {
        Some(lead) => p.into_iter().map(|c| c / &lead).collect(),
        None => p,
    }
}

pub(crate) fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (normalize(a.clone()), normalize(b.clone()));
    while !b.is_empty() {
        let (_, r) = div_rem(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

/// `p / gcd(p, p')`: same roots, all simple.
pub(crate) fn squarefree(p: &Poly) -> Poly {
    let g = gcd(p, &derivative(p));
    if degree(&g).unwrap_or(0) == 0 {
        return monic(p.clone());
    }
    monic(div_rem(p, &g).0)
}

fn sign_changes(seq: &[Poly], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for p in seq {
        let v = eval(p, x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            continue;
        };
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Number of distinct real roots of `p` in the closed interval `[lo, hi]`.
pub(crate) fn count_roots(p: &Poly, lo: &BigRational, hi: &BigRational) -> usize {
    let s = squarefree(p);
    if degree(&s).unwrap_or(0) == 0 {
        return 0;
    }
    let mut seq = vec![s.clone(), derivative(&s)];
    loop {
        let n = seq.len();
        let (_, r) = div_rem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    // V(lo) - V(hi) counts roots in (lo, hi].
    let interior = sign_changes(&seq, lo) - sign_changes(&seq, hi);
    interior + usize::from(eval(&s, lo).is_zero())
}

/// Characteristic polynomial `det(xI - A)` by the Faddeev-LeVerrier
/// recursion; integer coefficients, lowest degree first.
pub(crate) fn charpoly(a: &[Vec<u64>]) -> Vec<BigInt> {
    let n = a.len();
    let am: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigInt::zero();
                for l in 0..n {
                    if !am[i][l].is_zero() && !m[l][j].is_zero() {
                        s += &am[i][l] * &m[l][j];
                    }
                }
                next[i][j] = s;
            }
            next[i][i] += &coeffs[n - k + 1];
        }
        m = next;
        let mut trace = BigInt::zero();
        for i in 0..n {
            for l in 0..n {
                if !am[i][l].is_zero() {
                    trace += &am[i][l] * &m[l][i];
                }
            }
        }
        coeffs[n - k] = -(trace / BigInt::from(k));
    }
    coeffs
}

/// Renders an integer polynomial (lowest degree first) in `x`.
pub(crate) fn render(coeffs: &[BigRational]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let unit = mag.is_one();
        if !unit || i == 0 {
            out.push_str(&mag.to_string());
            if i > 0 {
                out.push('*');
            }
        }
        match i {
            0 => {}
            1 => out.push('x'),
            _ => out.push_str(&format!("x^{i}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
