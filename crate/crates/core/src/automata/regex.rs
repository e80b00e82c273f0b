//! Regular expressions over an ordered alphabet.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! union   := concat ('|' concat)*
//! concat  := postfix+
//! postfix := atom ('*' | '?')*
//! atom    := letter | 'eps' | 'ε' | '(' union ')'
//! ```
//!
//! `eps` is only a keyword when `e` is not a letter of the alphabet; `ε` is
//! always accepted.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::{Alphabet, Dfa};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("regex error at position {position}: {kind}")]
pub struct RegexError {
    pub position: usize,
    pub kind: RegexErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RegexErrorKind {
    #[error("unexpected character {0:?}")]
    Unexpected(char),
    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(char),
    #[error("unexpected end of expression")]
    UnexpectedEnd,
    #[error("unmatched ')'")]
    UnmatchedClose,
    #[error("empty alternative")]
    EmptyAlternative,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regex {
    Epsilon,
    Letter(usize),
    Concat(Vec<Regex>),
    Union(Vec<Regex>),
    Star(Box<Regex>),
    Optional(Box<Regex>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Token {
    Letter(usize),
    Epsilon,
    Bar,
    Star,
    Question,
    Open,
    Close,
}

fn lex(text: &str, alphabet: &Alphabet) -> Result<Vec<(usize, Token)>, RegexError> {
    let chars: Vec<char> = text.chars().collect();
    let eps_keyword = alphabet.eps_keyword_allowed();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '|' => Token::Bar,
            '*' => Token::Star,
            '?' => Token::Question,
            '(' => Token::Open,
            ')' => Token::Close,
            'ε' => Token::Epsilon,
            'e' if eps_keyword && chars.get(i + 1) == Some(&'p') && chars.get(i + 2) == Some(&'s') => {
                out.push((i, Token::Epsilon));
                i += 3;
                continue;
            }
            c => match alphabet.index_of(c) {
                Some(a) => Token::Letter(a),
                None => return Err(RegexError { position: i, kind: RegexErrorKind::UnknownLetter(c) }),
            },
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<Token> {
        self.tokens.get(self.pos).map(|t| t.1)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err(&self, kind: RegexErrorKind) -> RegexError {
        RegexError { position: self.here(), kind }
    }

    fn union(&mut self) -> Result<Regex, RegexError> {
        let mut alts = vec![self.concat()?];
        while self.peek() == Some(Token::Bar) {
            self.pos += 1;
            alts.push(self.concat()?);
        }
        Ok(if alts.len() == 1 { alts.pop().unwrap() } else { Regex::Union(alts) })
    }

    fn concat(&mut self) -> Result<Regex, RegexError> {
        let mut parts = Vec::new();
        while let Some(t) = self.peek() {
            if matches!(t, Token::Bar | Token::Close) {
                break;
            }
            parts.push(self.postfix()?);
        }
        match parts.len() {
            0 => Err(match self.peek() {
                None if self.tokens.is_empty() => self.err(RegexErrorKind::UnexpectedEnd),
                None => self.err(RegexErrorKind::EmptyAlternative),
                Some(_) => self.err(RegexErrorKind::EmptyAlternative),
            }),
            1 => Ok(parts.pop().unwrap()),
            _ => Ok(Regex::Concat(parts)),
        }
    }

    fn postfix(&mut self) -> Result<Regex, RegexError> {
        let mut r = self.atom()?;
        loop {
            match self.peek() {
                Some(Token::Star) => r = Regex::Star(Box::new(r)),
                Some(Token::Question) => r = Regex::Optional(Box::new(r)),
                _ => return Ok(r),
            }
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<Regex, RegexError> {
        let start = self.here();
        let tok = self.peek().ok_or_else(|| self.err(RegexErrorKind::UnexpectedEnd))?;
        self.pos += 1;
        match tok {
            Token::Letter(a) => Ok(Regex::Letter(a)),
            Token::Epsilon => Ok(Regex::Epsilon),
            Token::Open => {
                let inner = self.union()?;
                if self.peek() != Some(Token::Close) {
                    return Err(self.err(RegexErrorKind::UnexpectedEnd));
                }
                self.pos += 1;
                Ok(inner)
            }
            Token::Star => Err(RegexError { position: start, kind: RegexErrorKind::Unexpected('*') }),
            Token::Question => Err(RegexError { position: start, kind: RegexErrorKind::Unexpected('?') }),
            Token::Bar => Err(RegexError { position: start, kind: RegexErrorKind::EmptyAlternative }),
            Token::Close => Err(RegexError { position: start, kind: RegexErrorKind::UnmatchedClose }),
        }
    }
}

impl Regex {
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Regex, RegexError> {
        let tokens = lex(text, alphabet)?;
        let mut p = Parser { tokens, pos: 0, end: text.chars().count() };
        let r = p.union()?;
        if let Some(t) = p.peek() {
            let kind = match t {
                Token::Close => RegexErrorKind::UnmatchedClose,
                _ => RegexErrorKind::Unexpected(')'),
            };
            return Err(p.err(kind));
        }
        Ok(r)
    }

    /// Subset construction over a Thompson automaton; the result is trim and
    /// minimal.
    pub fn to_dfa(&self, alphabet: &Alphabet) -> Dfa {
        let mut nfa = Nfa::default();
        let (start, end) = nfa.build(self);
        nfa.determinize(alphabet, start, end).minimize()
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> RegexDisplay<'a> {
        RegexDisplay { regex: self, alphabet }
    }
}

/// Renders a regex in the parser's grammar.
pub struct RegexDisplay<'a> {
    regex: &'a Regex,
    alphabet: &'a Alphabet,
}

impl RegexDisplay<'_> {
    fn write(&self, r: &Regex, prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // prec: 0 = union context, 1 = concat context, 2 = operand of a postfix.
        match r {
            Regex::Epsilon => {
                if self.alphabet.eps_keyword_allowed() {
                    f.write_str("eps")
                } else {
                    f.write_str("ε")
                }
            }
            Regex::Letter(a) => write!(f, "{}", self.alphabet.letter(*a)),
            Regex::Union(alts) => {
                if prec > 0 {
                    f.write_str("(")?;
                }
                for (i, a) in alts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("|")?;
                    }
                    self.write(a, 0, f)?;
                }
                if prec > 0 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Regex::Concat(parts) => {
                if prec > 1 {
                    f.write_str("(")?;
                }
                for p in parts {
                    self.write(p, 1, f)?;
                }
                if prec > 1 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Regex::Star(inner) => {
                self.write(inner, 2, f)?;
                f.write_str("*")
            }
            Regex::Optional(inner) => {
                self.write(inner, 2, f)?;
                f.write_str("?")
            }
        }
    }
}

impl fmt::Display for RegexDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(self.regex, 0, f)
    }
}

/// Parses `text` and returns the trim minimal automaton of its language.
pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<Dfa, RegexError> {
    Ok(Regex::parse(text, alphabet)?.to_dfa(alphabet))
}

/// A regex for the language of `dfa` by state elimination, or `None` when
/// the language is empty (the grammar has no symbol for it).
pub fn print_regex(dfa: &Dfa) -> Option<String> {
    let r = to_regex(dfa)?;
    Some(r.display(dfa.alphabet()).to_string())
}

/// State elimination. Intermediate expressions use `None` for the empty set.
pub fn to_regex(dfa: &Dfa) -> Option<Regex> {
    let t = dfa.trim();
    if t.is_empty_language() {
        return None;
    }
    let n = t.num_states();
    // Generalized automaton: start = n, accept = n + 1.
    let size = n + 2;
    let mut edge: Vec<Vec<Option<Regex>>> = vec![vec![None; size]; size];
    edge[n][t.initial()] = Some(Regex::Epsilon);
    for q in t.finals() {
        edge[q][n + 1] = Some(Regex::Epsilon);
    }
    for (q, a, r) in t.transitions() {
        let prev = edge[q][r].take();
        edge[q][r] = union(prev, Some(Regex::Letter(a)));
    }
    for k in 0..n {
        let loop_part = edge[k][k].take().map(star);
        let ins: Vec<usize> = (0..size).filter(|&i| i != k && edge[i][k].is_some()).collect();
        let outs: Vec<usize> = (0..size).filter(|&j| j != k && edge[k][j].is_some()).collect();
        for &i in &ins {
            for &j in &outs {
                let mut path = edge[i][k].clone().unwrap();
                if let Some(l) = &loop_part {
                    path = concat(path, l.clone());
                }
                path = concat(path, edge[k][j].clone().unwrap());
                let prev = edge[i][j].take();
                edge[i][j] = union(prev, Some(path));
            }
        }
        for i in 0..size {
            edge[i][k] = None;
            edge[k][i] = None;
        }
    }
    edge[n][n + 1].take()
}

fn union(a: Option<Regex>, b: Option<Regex>) -> Option<Regex> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) if a == b => Some(a),
        (Some(Regex::Union(mut xs)), Some(Regex::Union(ys))) => {
            xs.extend(ys);
            Some(Regex::Union(xs))
        }
        (Some(Regex::Union(mut xs)), Some(y)) => {
            xs.push(y);
            Some(Regex::Union(xs))
        }
        (Some(x), Some(Regex::Union(ys))) => {
            let mut xs = vec![x];
            xs.extend(ys);
            Some(Regex::Union(xs))
        }
        (Some(x), Some(y)) => Some(Regex::Union(vec![x, y])),
    }
}

fn concat(a: Regex, b: Regex) -> Regex {
    match (a, b) {
        (Regex::Epsilon, x) | (x, Regex::Epsilon) => x,
        (Regex::Concat(mut xs), Regex::Concat(ys)) => {
            xs.extend(ys);
            Regex::Concat(xs)
        }
        (Regex::Concat(mut xs), y) => {
            xs.push(y);
            Regex::Concat(xs)
        }
        (x, Regex::Concat(ys)) => {
            let mut xs = vec![x];
            xs.extend(ys);
            Regex::Concat(xs)
        }
        (x, y) => Regex::Concat(vec![x, y]),
    }
}

fn star(r: Regex) -> Regex {
    match r {
        Regex::Epsilon => Regex::Epsilon,
        s @ Regex::Star(_) => s,
        Regex::Optional(inner) => Regex::Star(inner),
        other => Regex::Star(Box::new(other)),
    }
}

#[derive(Default)]
struct Nfa {
    eps: Vec<Vec<usize>>,
    moves: Vec<Vec<(usize, usize)>>,
}

impl Nfa {
    fn state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.moves.push(Vec::new());
        self.eps.len() - 1
    }

    fn build(&mut self, r: &Regex) -> (usize, usize) {
        match r {
            Regex::Epsilon => {
                let s = self.state();
                (s, s)
            }
            Regex::Letter(a) => {
                let s = self.state();
                let e = self.state();
                self.moves[s].push((*a, e));
                (s, e)
            }
            Regex::Concat(parts) => {
                let (start, mut end) = self.build(&parts[0]);
                for p in &parts[1..] {
                    let (s, e) = self.build(p);
                    self.eps[end].push(s);
                    end = e;
                }
                (start, end)
            }
            Regex::Union(alts) => {
                let s = self.state();
                let e = self.state();
                for alt in alts {
                    let (a, b) = self.build(alt);
                    self.eps[s].push(a);
                    self.eps[b].push(e);
                }
                (s, e)
            }
            Regex::Star(inner) => {
                let s = self.state();
                let e = self.state();
                let (a, b) = self.build(inner);
                self.eps[s].extend([a, e]);
                self.eps[b].extend([a, e]);
                (s, e)
            }
            Regex::Optional(inner) => {
                let s = self.state();
                let e = self.state();
                let (a, b) = self.build(inner);
                self.eps[s].extend([a, e]);
                self.eps[b].push(e);
                (s, e)
            }
        }
    }

    fn closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &r in &self.eps[q] {
                if set.insert(r) {
                    stack.push(r);
                }
            }
        }
    }

    fn determinize(&self, alphabet: &Alphabet, start: usize, end: usize) -> Dfa {
        let k = alphabet.len();
        let mut init = BTreeSet::from([start]);
        self.closure(&mut init);
        let mut ids: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut sets = vec![init.clone()];
        ids.insert(init, 0);
        let mut delta: Vec<Vec<Option<usize>>> = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            let mut row = vec![None; k];
            for (a, slot) in row.iter_mut().enumerate() {
                let mut next = BTreeSet::new();
                for &q in &sets[i] {
                    for &(b, r) in &self.moves[q] {
                        if b == a {
                            next.insert(r);
                        }
                    }
                }
                if next.is_empty() {
                    continue;
                }
                self.closure(&mut next);
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = sets.len();
                        ids.insert(next.clone(), id);
                        sets.push(next);
                        id
                    }
                };
                *slot = Some(id);
            }
            delta.push(row);
            i += 1;
        }
        let finals = sets.iter().map(|s| s.contains(&end)).collect();
        Dfa::from_parts(alphabet.clone(), delta, 0, finals)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::brute_force_count;

    fn abc() -> Alphabet {
        Alphabet::parse("abc").unwrap()
    }

    #[test]
    fn squares_language() {
        let d = parse_regex("a*b* | a*c*", &abc()).unwrap();
        for w in ["", "a", "aab", "bbb", "acc", "c"] {
            assert!(d.accepts(w), "{w}");
        }
        for w in ["ba", "bc", "abc", "cb"] {
            assert!(!d.accepts(w), "{w}");
        }
    }

    #[test]
    fn fibonacci_language_counts() {
        let sigma = Alphabet::parse("01").unwrap();
        let d = parse_regex("eps | 1(0|01)*", &sigma).unwrap();
        let counts: Vec<u64> = (0..=6).map(|n| brute_force_count(&d, n).try_into().unwrap()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 3, 5, 8]);
    }

    #[test]
    fn epsilon_only() {
        let d = parse_regex("eps", &abc()).unwrap();
        assert!(d.accepts(""));
        assert!(!d.accepts("a"));
        assert_eq!(d.num_states(), 1);
        assert_eq!(parse_regex("ε", &abc()).unwrap(), d);
    }

    #[test]
    fn optional_and_nesting() {
        let d = parse_regex("(ab?)*c", &abc()).unwrap();
        assert!(d.accepts("c") && d.accepts("aabc") && d.accepts("ababac"));
        assert!(!d.accepts("bc"));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_regex("a(b", &abc()).unwrap_err();
        assert_eq!(e.kind, RegexErrorKind::UnexpectedEnd);
        assert_eq!(e.position, 3);
        let e = parse_regex("ab)", &abc()).unwrap_err();
        assert_eq!((e.position, e.kind), (2, RegexErrorKind::UnmatchedClose));
        let e = parse_regex("a|d", &abc()).unwrap_err();
        assert_eq!((e.position, e.kind), (2, RegexErrorKind::UnknownLetter('d')));
        let e = parse_regex("*a", &abc()).unwrap_err();
        assert_eq!((e.position, e.kind), (0, RegexErrorKind::Unexpected('*')));
        let e = parse_regex("a||b", &abc()).unwrap_err();
        assert_eq!(e.kind, RegexErrorKind::EmptyAlternative);
        assert_eq!(parse_regex("", &abc()).unwrap_err().kind, RegexErrorKind::UnexpectedEnd);
    }

    #[test]
    fn eps_is_literal_when_e_is_a_letter() {
        let sigma = Alphabet::parse("eps").unwrap();
        let d = parse_regex("eps", &sigma).unwrap();
        assert!(d.accepts("eps") && !d.accepts(""));
        let printed = print_regex(&parse_regex("ε|e", &sigma).unwrap()).unwrap();
        assert!(parse_regex(&printed, &sigma).unwrap().equivalent(&parse_regex("e?", &sigma).unwrap()));
    }

    #[test]
    fn print_round_trips() {
        let sigma = Alphabet::parse("01").unwrap();
        for text in ["eps | 1(0|01)*", "1*0*", "(0|1)(0|1)", "(00|1)*0?", "eps"] {
            let d = parse_regex(text, &sigma).unwrap();
            let printed = print_regex(&d).unwrap();
            assert!(parse_regex(&printed, &sigma).unwrap().equivalent(&d), "{text} -> {printed}");
        }
        assert_eq!(print_regex(&Dfa::empty_language(sigma)), None);
    }
}
