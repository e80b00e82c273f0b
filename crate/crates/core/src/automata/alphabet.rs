use std::fmt;

use super::AutomatonError;

/// Characters that cannot be letters because the regex grammar or the
/// spec-file format reserves them.
pub const RESERVED: &[char] = &['(', ')', '|', '*', '?', '#', ','];

/// A finite alphabet of single-character letters with a declared total order.
///
/// Letters are addressed internally by their rank in the declared order, so
/// the index of a letter *is* its position in the genealogic comparison.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(letters: I) -> Result<Self, AutomatonError> {
        let letters: Vec<char> = letters.into_iter().collect();
        for (i, &c) in letters.iter().enumerate() {
            if c.is_whitespace() || c.is_control() || RESERVED.contains(&c) {
                return Err(AutomatonError::InvalidLetter(c));
            }
            if letters[..i].contains(&c) {
                return Err(AutomatonError::DuplicateLetter(c));
            }
        }
        Ok(Alphabet { letters })
    }

    /// Parses `"0 1 2"` or `"012"` style declarations.
    pub fn parse(text: &str) -> Result<Self, AutomatonError> {
        Self::new(text.chars().filter(|c| !c.is_whitespace()))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn letter(&self, index: usize) -> char {
        self.letters[index]
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.letters.iter().position(|&l| l == c)
    }

    pub fn contains(&self, c: char) -> bool {
        self.letters.contains(&c)
    }

    /// Whether the keyword `eps` denotes the empty word in text over this
    /// alphabet. It cannot when `e` is itself a letter.
    pub fn eps_keyword_allowed(&self) -> bool {
        !self.contains('e')
    }

    /// Converts a word to letter indices.
    pub fn encode(&self, word: &str) -> Result<Vec<usize>, AutomatonError> {
        word.chars().map(|c| self.index_of(c).ok_or(AutomatonError::UnknownLetter(c))).collect()
    }

    pub fn decode(&self, word: &[usize]) -> String {
        word.iter().map(|&i| self.letters[i]).collect()
    }

    /// Concatenates two disjoint alphabets, every letter of `self` ordered
    /// below every letter of `other`.
    pub fn disjoint_concat(&self, other: &Alphabet) -> Result<Alphabet, AutomatonError> {
        if let Some(&c) = self.letters.iter().find(|c| other.contains(**c)) {
            return Err(AutomatonError::AlphabetsIntersect(c));
        }
        Ok(Alphabet { letters: self.letters.iter().chain(other.letters.iter()).copied().collect() })
    }

    /// Genealogic (radix) comparison of two index-encoded words.
    pub fn genealogic_cmp(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
        a.len().cmp(&b.len()).then_with(|| a.cmp(b))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::cmp::Ordering;

    #[test]
    fn rejects_duplicates_and_reserved() {
        assert_eq!(Alphabet::parse("a b a"), Err(AutomatonError::DuplicateLetter('a')));
        assert_eq!(Alphabet::parse("a |"), Err(AutomatonError::InvalidLetter('|')));
    }

    #[test]
    fn order_is_declaration_order() {
        let sigma = Alphabet::parse("c a b").unwrap();
        assert_eq!(sigma.encode("ab").unwrap(), vec![1, 2]);
        assert_eq!(
            Alphabet::genealogic_cmp(&sigma.encode("cb").unwrap(), &sigma.encode("ab").unwrap()),
            Ordering::Less
        );
        assert_eq!(Alphabet::genealogic_cmp(&sigma.encode("b").unwrap(), &sigma.encode("cc").unwrap()), Ordering::Less);
    }

    #[test]
    fn disjoint_concat_orders_left_first() {
        let a = Alphabet::parse("xy").unwrap();
        let b = Alphabet::parse("ab").unwrap();
        assert_eq!(a.disjoint_concat(&b).unwrap().letters(), &['x', 'y', 'a', 'b']);
        assert_eq!(a.disjoint_concat(&Alphabet::parse("y").unwrap()), Err(AutomatonError::AlphabetsIntersect('y')));
    }
}
