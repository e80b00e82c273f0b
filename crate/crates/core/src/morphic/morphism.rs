use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use super::MorphicError;

/// A morphism `μ` on a finite alphabet of named letters. Letters are
/// addressed by index; names are only used for parsing and printing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    names: Vec<String>,
    images: Vec<Vec<usize>>,
}

impl Morphism {
    pub fn new(names: Vec<String>, images: Vec<Vec<usize>>) -> Result<Self, MorphicError> {
        if names.len() != images.len() {
            return Err(MorphicError::ImageCount { letters: names.len(), images: images.len() });
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(char::is_whitespace) || name == "eps" {
                return Err(MorphicError::InvalidLetter(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(MorphicError::DuplicateLetter(name.clone()));
            }
        }
        if let Some(&b) = images.iter().flatten().find(|&&b| b >= names.len()) {
            return Err(MorphicError::UnknownLetter(b.to_string()));
        }
        Ok(Morphism { names, images })
    }

    /// Morphism over single-character letters, e.g. `[('1', "1010"), ('0', "00")]`.
    pub fn from_chars(rules: &[(char, &str)]) -> Result<Self, MorphicError> {
        let names: Vec<String> = rules.iter().map(|(c, _)| c.to_string()).collect();
        let index: HashMap<char, usize> = rules.iter().enumerate().map(|(i, (c, _))| (*c, i)).collect();
        let images = rules
            .iter()
            .map(|(_, img)| {
                img.chars()
                    .map(|c| index.get(&c).copied().ok_or_else(|| MorphicError::UnknownLetter(c.to_string())))
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        Morphism::new(names, images)
    }

    /// Parses lines `letter -> image`, with `eps` for the empty image and
    /// `#` comments. Images are read letter by letter when every letter is a
    /// single character, and as whitespace-separated names otherwise.
    pub fn parse(text: &str) -> Result<Self, MorphicError> {
        let mut rules = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| MorphicError::Parse {
                line: lineno + 1,
                message: "expected `letter -> image`".to_string(),
            })?;
            let lhs = lhs.trim();
            if lhs.is_empty() || lhs.contains(char::is_whitespace) {
                return Err(MorphicError::Parse { line: lineno + 1, message: format!("bad letter {lhs:?}") });
            }
            rules.push((lineno + 1, lhs.to_string(), rhs.trim().to_string()));
        }
        let names: Vec<String> = rules.iter().map(|r| r.1.clone()).collect();
        let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let single = names.iter().all(|n| n.chars().count() == 1);
        let mut images = Vec::with_capacity(rules.len());
        for (line, _, rhs) in &rules {
            let tokens: Vec<String> = if rhs == "eps" || rhs.is_empty() {
                Vec::new()
            } else if single && !rhs.contains(char::is_whitespace) {
                rhs.chars().map(String::from).collect()
            } else {
                rhs.split_whitespace().map(String::from).collect()
            };
            let image = tokens
                .iter()
                .map(|t| {
                    index
                        .get(t.as_str())
                        .copied()
                        .ok_or_else(|| MorphicError::Parse { line: *line, message: format!("unknown letter {t:?}") })
                })
                .collect::<Result<Vec<_>, _>>()?;
            images.push(image);
        }
        Morphism::new(names, images)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn image(&self, a: usize) -> &[usize] {
        &self.images[a]
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn apply(&self, word: &[usize]) -> Vec<usize> {
        word.iter().flat_map(|&a| self.images[a].iter().copied()).collect()
    }

    /// `μ^n(a)`, materialized. Only for small `n`.
    pub fn iterate(&self, a: usize, n: usize) -> Vec<usize> {
        (0..n).fold(vec![a], |w, _| self.apply(&w))
    }

    /// Renders a word with the letter names, space separated unless every
    /// name is a single character.
    pub fn render(&self, word: &[usize]) -> String {
        let sep = if self.names.iter().all(|n| n.chars().count() == 1) { "" } else { " " };
        word.iter().map(|&a| self.names[a].as_str()).collect::<Vec<_>>().join(sep)
    }

    /// Incidence matrix: `m[a][b]` is the number of occurrences of `b` in `μ(a)`.
    pub fn incidence(&self) -> Vec<Vec<u64>> {
        let k = self.len();
        let mut m = vec![vec![0u64; k]; k];
        for (a, img) in self.images.iter().enumerate() {
            for &b in img {
                m[a][b] += 1;
            }
        }
        m
    }

    /// One step of the occurrence vector: letter counts of `μ(w)` from those of `w`.
    pub fn step_occurrences(&self, occ: &[BigUint]) -> Vec<BigUint> {
        let mut next = vec![BigUint::zero(); self.len()];
        for (a, count) in occ.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            for &b in &self.images[a] {
                next[b] += count;
            }
        }
        next
    }

    /// Letter counts of `μ^n(a)` for `n = 0, 1, ...`.
    pub fn occurrences(&self, a: usize) -> Occurrences<'_> {
        let mut occ = vec![BigUint::zero(); self.len()];
        occ[a] = BigUint::from(1u32);
        Occurrences { morphism: self, next: occ }
    }

    /// `μ(a)` begins with `a`.
    pub fn is_prolongable(&self, a: usize) -> bool {
        self.images[a].first() == Some(&a)
    }

    /// Letters `b` with `μ^n(b) = ε` for some `n`.
    pub fn mortal_letters(&self) -> Vec<bool> {
        let mut mortal = vec![false; self.len()];
        loop {
            let mut changed = false;
            for a in 0..self.len() {
                if !mortal[a] && self.images[a].iter().all(|&b| mortal[b]) {
                    mortal[a] = true;
                    changed = true;
                }
            }
            if !changed {
                return mortal;
            }
        }
    }

    /// For `a` prolongable, whether `μ^ω(a)` is infinite: `μ(a) = a u` with
    /// some letter of `u` immortal.
    pub fn has_infinite_fixed_point(&self, a: usize) -> bool {
        if !self.is_prolongable(a) {
            return false;
        }
        let mortal = self.mortal_letters();
        self.images[a][1..].iter().any(|&b| !mortal[b])
    }
}

pub struct Occurrences<'a> {
    morphism: &'a Morphism,
    next: Vec<BigUint>,
}

impl Iterator for Occurrences<'_> {
    type Item = Vec<BigUint>;

    fn next(&mut self) -> Option<Vec<BigUint>> {
        let following = self.morphism.step_occurrences(&self.next);
        Some(std::mem::replace(&mut self.next, following))
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, img) in self.images.iter().enumerate() {
            let rhs = if img.is_empty() { "eps".to_string() } else { self.render(img) };
            writeln!(f, "{} -> {}", self.names[a], rhs)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> Morphism {
        Morphism::from_chars(&[('1', "1010"), ('0', "00")]).unwrap()
    }

    #[test]
    fn prolongability() {
        let h = h();
        assert!(h.is_prolongable(0) && h.has_infinite_fixed_point(0));
        let dies = Morphism::from_chars(&[('a', "ab"), ('b', "")]).unwrap();
        assert!(dies.is_prolongable(0) && !dies.has_infinite_fixed_point(0));
        let swap = Morphism::from_chars(&[('a', "ba"), ('b', "b")]).unwrap();
        assert!(!swap.is_prolongable(0));
        // b dies only after two steps.
        let slow = Morphism::from_chars(&[('a', "ab"), ('b', "c"), ('c', "")]).unwrap();
        assert_eq!(slow.mortal_letters(), [false, true, true]);
        assert!(!slow.has_infinite_fixed_point(0));
    }

    #[test]
    fn text_format_round_trip() {
        let m = Morphism::parse("# h\n1 -> 1010\n0 -> 00\n").unwrap();
        assert_eq!(m, h());
        assert_eq!(Morphism::parse(&m.to_string()).unwrap(), m);
        let multi = Morphism::parse("q0 -> q0 q1\nq1 -> eps\n").unwrap();
        assert_eq!(multi.image(0), &[0, 1]);
        assert!(multi.image(1).is_empty());
        assert_eq!(multi.to_string(), "q0 -> q0 q1\nq1 -> eps\n");
        assert_eq!(Morphism::parse(&multi.to_string()).unwrap(), multi);
        assert!(matches!(Morphism::parse("a -> ab"), Err(MorphicError::Parse { line: 1, .. })));
        assert!(matches!(Morphism::parse("a = b"), Err(MorphicError::Parse { .. })));
        assert!(matches!(Morphism::parse("a -> a\na -> a"), Err(MorphicError::DuplicateLetter(_))));
    }

    #[test]
    fn occurrences_match_materialized_words() {
        let h = h();
        for (n, occ) in h.occurrences(0).take(9).enumerate() {
            let w = h.iterate(0, n);
            for (a, count) in occ.iter().enumerate() {
                let direct = w.iter().filter(|&&b| b == a).count();
                assert_eq!(*count, BigUint::from(direct));
            }
        }
        assert_eq!(h.incidence(), [[2, 2], [0, 2]]);
    }
}
