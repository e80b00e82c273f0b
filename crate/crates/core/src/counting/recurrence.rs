use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::CountingError;

/// An integer linear recurrence
/// `s(n + k) = a_1 s(n + k - 1) + ... + a_k s(n)` holding for `n >= valid_from`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinRec {
    coefficients: Vec<BigInt>,
    valid_from: usize,
    initial_terms: Vec<BigInt>,
}

impl LinRec {
    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    /// `a_1, ..., a_k`.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn valid_from(&self) -> usize {
        self.valid_from
    }

    /// The first `valid_from + k` terms, which determine the sequence.
    pub fn initial_terms(&self) -> &[BigInt] {
        &self.initial_terms
    }

    /// Coefficients of `x^k - a_1 x^(k-1) - ... - a_k`, highest degree first.
    pub fn characteristic_polynomial(&self) -> Vec<BigInt> {
        std::iter::once(BigInt::one()).chain(self.coefficients.iter().map(|a| -a)).collect()
    }

    fn next_term(&self, seq: &[BigInt]) -> BigInt {
        let m = seq.len();
        self.coefficients.iter().enumerate().map(|(i, a)| a * &seq[m - 1 - i]).sum()
    }

    /// Whether every equation with index `n >= valid_from` inside `seq` holds.
    pub fn holds_on(&self, seq: &[BigInt]) -> bool {
        let k = self.order();
        (self.valid_from + k..seq.len()).all(|m| self.next_term(&seq[..m]) == seq[m])
    }

    /// The first `len` terms of the sequence.
    pub fn terms(&self, len: usize) -> Vec<BigInt> {
        let mut seq = self.initial_terms.clone();
        seq.truncate(len);
        while seq.len() < len {
            let t = self.next_term(&seq);
            seq.push(t);
        }
        seq
    }

    /// Continues `prefix` (assumed to satisfy the recurrence) by `count` terms.
    pub fn predict(&self, prefix: &[BigInt], count: usize) -> Vec<BigInt> {
        assert!(prefix.len() >= self.order());
        let mut seq = prefix.to_vec();
        for _ in 0..count {
            let t = self.next_term(&seq);
            seq.push(t);
        }
        seq.split_off(prefix.len())
    }
}

impl fmt::Display for LinRec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.order();
        write!(f, "s(n+{k}) =")?;
        let mut first = true;
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let sign = if first {
                if *a < BigInt::zero() {
                    " -"
                } else {
                    ""
                }
            } else if *a < BigInt::zero() {
                " -"
            } else {
                " +"
            };
            let mag = if *a < BigInt::zero() { -a } else { a.clone() };
            let coef = if mag.is_one() { String::new() } else { format!("{mag}*") };
            match k - 1 - i {
                0 => write!(f, "{sign} {coef}s(n)")?,
                j => write!(f, "{sign} {coef}s(n+{j})")?,
            }
            first = false;
        }
        if first {
            f.write_str(" 0")?;
        }
        write!(f, " for n >= {}", self.valid_from)
    }
}

/// Multiplies polynomials given highest degree first.
pub fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Minimal-order integer recurrence for `seq`, fitted exactly on the tail
/// after the first `max_order` terms and then validated on the whole prefix.
///
/// Needs at least `3 * max_order` terms. The recorded `valid_from` is the
/// smallest index from which every equation in the prefix holds.
pub fn find_recurrence(seq: &[BigInt], max_order: usize) -> Result<LinRec, CountingError> {
    let max_order = max_order.max(1);
    let drop = max_order;
    let needed = drop + 2 * max_order;
    if seq.len() < needed {
        return Err(CountingError::InsufficientTerms { needed, found: seq.len() });
    }
    let tail: Vec<BigRational> = seq[drop..].iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let connection = berlekamp_massey(&tail);
    let order = connection.len() - 1;
    if order > max_order {
        return Err(CountingError::NoRecurrence { max_order });
    }
    let coefficients: Vec<BigInt> = if order == 0 {
        // Identically zero tail.
        vec![BigInt::zero()]
    } else {
        connection[1..]
            .iter()
            .map(|c| {
                let a = -c;
                if a.is_integer() {
                    Ok(a.to_integer())
                } else {
                    Err(CountingError::NonIntegral)
                }
            })
            .collect::<Result<_, _>>()?
    };
    let k = coefficients.len();
    let mut rec = LinRec { coefficients, valid_from: 0, initial_terms: Vec::new() };
    // Largest failing equation index, scanning back from the end.
    let mut valid_from = 0;
    for m in (k..seq.len()).rev() {
        if rec.next_term(&seq[..m]) != seq[m] {
            valid_from = m - k + 1;
            break;
        }
    }
    if valid_from > drop {
        return Err(CountingError::NoRecurrence { max_order });
    }
    rec.valid_from = valid_from;
    rec.initial_terms = seq[..valid_from + k].to_vec();
    Ok(rec)
}

/// Connection polynomial `1 + c_1 x + ... + c_L x^L` of the shortest
/// recurrence generating `s`, over the rationals.
fn berlekamp_massey(s: &[BigRational]) -> Vec<BigRational> {
    let one = BigRational::one();
    let mut c = vec![one.clone()];
    let mut b = vec![one.clone()];
    let mut len = 0usize;
    let mut shift = 1usize;
    let mut last_discrepancy = one;
    for n in 0..s.len() {
        let mut d = s[n].clone();
        for i in 1..=len {
            if i < c.len() {
                d += &c[i] * &s[n - i];
            }
        }
        if d.is_zero() {
            shift += 1;
            continue;
        }
        let factor = &d / &last_discrepancy;
        let previous = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, BigRational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + shift] -= &factor * bi;
        }
        if 2 * len <= n {
            len = n + 1 - len;
            b = previous;
            last_discrepancy = d;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    c.resize(len + 1, BigRational::zero());
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn constant_sequence_has_order_one() {
        let r = find_recurrence(&ints(&[1, 1, 1, 1]), 1).unwrap();
        assert_eq!(r.coefficients(), &ints(&[1]));
        assert_eq!(r.valid_from(), 0);
    }

    #[test]
    fn fibonacci_counts_have_transient() {
        // u of eps|1(0|01)*, three trim states.
        let u = ints(&[1, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144]);
        let r = find_recurrence(&u, 3).unwrap();
        assert_eq!(r.coefficients(), &ints(&[1, 1]));
        assert_eq!(r.valid_from(), 1);
        assert_eq!(r.terms(13), u);
        assert_eq!(r.to_string(), "s(n+2) = s(n+1) + s(n) for n >= 1");
    }

    #[test]
    fn zero_tail() {
        let r = find_recurrence(&ints(&[1, 2, 0, 0, 0, 0, 0, 0]), 2).unwrap();
        assert_eq!(r.coefficients(), &ints(&[0]));
        assert_eq!(r.valid_from(), 1);
    }

    #[test]
    fn errors() {
        assert_eq!(find_recurrence(&ints(&[1, 2]), 1), Err(CountingError::InsufficientTerms { needed: 3, found: 2 }));
        // Squares need order 3.
        let sq: Vec<BigInt> = (0..12).map(|n| BigInt::from(n * n)).collect();
        assert_eq!(find_recurrence(&sq, 2), Err(CountingError::NoRecurrence { max_order: 2 }));
        assert!(find_recurrence(&sq, 3).is_ok());
        // 1, 1/2-like growth forces rational coefficients.
        assert_eq!(
            find_recurrence(&ints(&[2, 1, 2, 1, 3, 3, 9, 27, 81]), 2).err(),
            Some(CountingError::NoRecurrence { max_order: 2 })
        );
    }

    #[test]
    fn characteristic_polynomial_product() {
        let r = find_recurrence(&ints(&[1, 1, 2, 3, 5, 8, 13, 21]), 2).unwrap();
        assert_eq!(r.characteristic_polynomial(), ints(&[1, -1, -1]));
        assert_eq!(poly_mul(&ints(&[1, -1]), &ints(&[1, -1, -1])), ints(&[1, -2, 0, 1]));
    }
}
