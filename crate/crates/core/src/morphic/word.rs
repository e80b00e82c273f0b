use std::sync::Mutex;

use num_bigint::BigUint;
use num_traits::Zero;

use super::{MorphicError, Morphism};

/// A letter-to-letter coding that may erase: each letter maps to a symbol
/// or to the empty word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coding {
    images: Vec<Option<u8>>,
}

impl Coding {
    pub fn new(images: Vec<Option<u8>>) -> Self {
        Coding { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, a: usize) -> Option<u8> {
        self.images[a]
    }

    pub fn apply(&self, word: &[usize]) -> Vec<u8> {
        word.iter().filter_map(|&a| self.images[a]).collect()
    }

    /// `|g(w)|` from the letter counts of `w`.
    pub fn coded_length(&self, occ: &[BigUint]) -> BigUint {
        occ.iter().zip(&self.images).filter(|(_, g)| g.is_some()).map(|(c, _)| c).sum()
    }

    /// Occurrences of `symbol` in `g(w)` from the letter counts of `w`.
    pub fn count(&self, occ: &[BigUint], symbol: u8) -> BigUint {
        occ.iter().zip(&self.images).filter(|(_, g)| **g == Some(symbol)).map(|(c, _)| c).sum()
    }
}

#[derive(Default)]
struct Expansion {
    letters: Vec<usize>,
    /// Letters of the fixed point whose images have been appended.
    cursor: usize,
    coded: Vec<u8>,
}

/// `g(μ^ω(a))`, generated lazily. The prefix buffer only grows; each call
/// extends it under a lock and copies out a completed prefix.
pub struct MorphicWord {
    morphism: Morphism,
    seed: usize,
    coding: Option<Coding>,
    buffer: Mutex<Expansion>,
}

impl MorphicWord {
    /// `μ^ω(a)`; fails unless `μ` is prolongable on `a` with an infinite
    /// fixed point.
    pub fn fixed_point(morphism: Morphism, seed: usize) -> Result<Self, MorphicError> {
        if !morphism.is_prolongable(seed) {
            return Err(MorphicError::NotProlongable(morphism.name(seed).to_string()));
        }
        if !morphism.has_infinite_fixed_point(seed) {
            let n = morphism.len();
            return Err(MorphicError::FiniteFixedPoint(morphism.render(&morphism.iterate(seed, n))));
        }
        let buffer = Mutex::new(Expansion { letters: vec![seed], cursor: 0, coded: Vec::new() });
        Ok(MorphicWord { morphism, seed, coding: None, buffer })
    }

    /// Applies `coding` to the fixed point; fails if the coded word is finite.
    pub fn with_coding(self, coding: Coding) -> Result<Self, MorphicError> {
        if coding.len() != self.morphism.len() {
            return Err(MorphicError::ImageCount { letters: self.morphism.len(), images: coding.len() });
        }
        // The coded length of μ^n(a) is nondecreasing and, from n = k on, an
        // exponential polynomial; it is bounded iff constant on [k, 2k].
        let k = self.morphism.len();
        let lengths: Vec<BigUint> =
            self.morphism.occurrences(self.seed).take(2 * k + 1).map(|o| coding.coded_length(&o)).collect();
        if lengths[k] == lengths[2 * k] {
            return Err(MorphicError::FiniteCodedWord);
        }
        let mut buffer = self.buffer.into_inner().unwrap();
        buffer.coded = coding.apply(&buffer.letters);
        Ok(MorphicWord { morphism: self.morphism, seed: self.seed, coding: Some(coding), buffer: Mutex::new(buffer) })
    }

    pub fn morphism(&self) -> &Morphism {
        &self.morphism
    }

    pub fn seed(&self) -> usize {
        self.seed
    }

    pub fn coding(&self) -> Option<&Coding> {
        self.coding.as_ref()
    }

    fn expand_until<F: Fn(&Expansion) -> bool>(&self, done: F) -> std::sync::MutexGuard<'_, Expansion> {
        let mut buf = self.buffer.lock().unwrap();
        while !done(&buf) {
            // The fixed point w satisfies w = μ(w[0]) μ(w[1]) ...; the first
            // image is w[0] followed by the rest of μ(w[0]).
            let a = buf.letters[buf.cursor];
            let skip = usize::from(buf.cursor == 0);
            let image = &self.morphism.image(a)[skip..];
            buf.letters.extend_from_slice(image);
            if let Some(g) = &self.coding {
                let coded = g.apply(image);
                buf.coded.extend(coded);
            }
            buf.cursor += 1;
        }
        buf
    }

    /// First `n` letters of the uncoded fixed point `μ^ω(a)`.
    pub fn fixed_point_prefix(&self, n: usize) -> Vec<usize> {
        self.expand_until(|b| b.letters.len() >= n).letters[..n].to_vec()
    }

    /// First `n` symbols of the morphic word: coded symbols when a coding is
    /// present, letter indices of the fixed point otherwise.
    pub fn prefix(&self, n: usize) -> Vec<usize> {
        match self.coding {
            Some(_) => {
                let buf = self.expand_until(|b| b.coded.len() >= n);
                buf.coded[..n].iter().map(|&s| s as usize).collect()
            }
            None => self.fixed_point_prefix(n),
        }
    }

    /// Prefix rendered as text: digits for coded words, letter names otherwise.
    pub fn prefix_string(&self, n: usize) -> String {
        let p = self.prefix(n);
        match self.coding {
            Some(_) => p.iter().map(|s| char::from_digit(*s as u32, 36).unwrap_or('?')).collect(),
            None => self.morphism.render(&p),
        }
    }

    /// Number of letters generated so far.
    pub fn buffered(&self) -> usize {
        self.buffer.lock().unwrap().letters.len()
    }
}

/// Letter counts of `μ^n(a)` and their coded lengths, without
/// materializing words: `(|μ^n(a)|, |g(μ^n(a))|, |g(μ^n(a))|_1)`.
pub fn coded_counts(
    morphism: &Morphism,
    seed: usize,
    coding: &Coding,
    n_max: usize,
) -> Vec<(BigUint, BigUint, BigUint)> {
    morphism
        .occurrences(seed)
        .take(n_max + 1)
        .map(|occ| {
            let total: BigUint = occ.iter().fold(BigUint::zero(), |s, c| s + c);
            (total, coding.coded_length(&occ), coding.count(&occ, 1))
        })
        .collect()
}
