//! Plain-text system specifications.
//!
//! ```text
//! # comment
//! name: pansiot
//! alphabet: 0 1 2 3
//! language:
//! dfa:
//! states 3
//! initial 0
//! final 0 1 2
//! trans 0 2 1
//! set:
//! regex: 2(0|2)* | eps
//! expect F: 1 2 4 8
//! expect class: class logpower f=1 logexp=1
//! ```
//!
//! A block is either `regex: <expr>` or `dfa:` followed by its table. The
//! `set:` block describes `rep_S(X)` and must be contained in the language.
//! `expect` lines record values that `verify` recomputes.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::sync::Arc;

use ans_core::automata::{parse_regex, Alphabet, Dfa};
use ans_core::numeration::{NumerationError, NumerationSystem, RecognizableSet};
use num_bigint::BigUint;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing {0}")]
    Missing(&'static str),
    #[error("{0}")]
    Numeration(#[from] NumerationError),
}

fn syntax(line: usize, message: impl Into<String>) -> SpecError {
    SpecError::Syntax { line, message: message.into() }
}

/// Quantities an `expect` line can pin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expectation {
    /// `v_L(0), v_L(1), ...`
    V(Vec<BigUint>),
    /// `F(0), F(1), ... = v_{rep(X)}(0), ...`
    F(Vec<BigUint>),
    /// `t_X(0), t_X(1), ...`
    T(Vec<BigUint>),
    /// Signature line of the language.
    Signature(String),
    /// Class line of the set.
    Class(String),
}

impl Expectation {
    pub fn key(&self) -> &'static str {
        match self {
            Expectation::V(_) => "v",
            Expectation::F(_) => "F",
            Expectation::T(_) => "t",
            Expectation::Signature(_) => "sig",
            Expectation::Class(_) => "class",
        }
    }

    fn parse(line: usize, key: &str, rest: &str) -> Result<Self, SpecError> {
        let numbers = || {
            rest.split_whitespace()
                .map(|t| BigUint::from_str(t).map_err(|_| syntax(line, format!("bad number {t:?}"))))
                .collect::<Result<Vec<_>, _>>()
        };
        Ok(match key {
            "v" => Expectation::V(numbers()?),
            "F" => Expectation::F(numbers()?),
            "t" => Expectation::T(numbers()?),
            "sig" => Expectation::Signature(rest.to_string()),
            "class" => Expectation::Class(rest.to_string()),
            _ => return Err(syntax(line, format!("unknown expectation {key:?}"))),
        })
    }
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "expect {}:", self.key())?;
        match self {
            Expectation::V(xs) | Expectation::F(xs) | Expectation::T(xs) => {
                xs.iter().try_for_each(|x| write!(f, " {x}"))
            }
            Expectation::Signature(s) | Expectation::Class(s) => write!(f, " {s}"),
        }
    }
}

/// A parsed specification file.
#[derive(Clone, Debug)]
pub struct SystemSpec {
    pub name: String,
    pub alphabet: Alphabet,
    pub language: Dfa,
    pub set: Option<Dfa>,
    pub expect: Vec<Expectation>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Block {
    Language,
    Set,
}

/// A `dfa:` table under construction.
struct Table {
    start: usize,
    states: Option<usize>,
    initial: Option<usize>,
    finals: Vec<usize>,
    transitions: Vec<(usize, char, usize)>,
}

impl Table {
    fn finish(self, alphabet: &Alphabet) -> Result<Dfa, SpecError> {
        let states = self.states.ok_or_else(|| syntax(self.start, "dfa table needs `states N`"))?;
        let initial = self.initial.unwrap_or(0);
        Dfa::new(alphabet.clone(), states, initial, self.finals, self.transitions)
            .map_err(|e| syntax(self.start, e.to_string()))
    }
}

fn parse_index(line: usize, token: &str) -> Result<usize, SpecError> {
    token.parse().map_err(|_| syntax(line, format!("bad state {token:?}")))
}

impl SystemSpec {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let mut name = None;
        let mut alphabet: Option<Alphabet> = None;
        let mut language = None;
        let mut set = None;
        let mut expect = Vec::new();
        let mut block = Block::Language;
        let mut table: Option<(Block, Table)> = None;

        let close = |table: &mut Option<(Block, Table)>,
                     alphabet: &Option<Alphabet>,
                     language: &mut Option<Dfa>,
                     set: &mut Option<Dfa>|
         -> Result<(), SpecError> {
            if let Some((b, t)) = table.take() {
                let dfa = t.finish(alphabet.as_ref().ok_or(SpecError::Missing("alphabet"))?)?;
                *(if b == Block::Language { language } else { set }) = Some(dfa);
            }
            Ok(())
        };

        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some((_, t)) = table.as_mut() {
                let mut tokens = line.split_whitespace();
                let head = tokens.next().unwrap();
                let args: Vec<&str> = tokens.collect();
                match head {
                    "states" | "initial" if args.len() == 1 => {
                        let v = parse_index(lineno, args[0])?;
                        if head == "states" {
                            t.states = Some(v);
                        } else {
                            t.initial = Some(v);
                        }
                        continue;
                    }
                    "final" => {
                        for a in args {
                            t.finals.push(parse_index(lineno, a)?);
                        }
                        continue;
                    }
                    "trans" if args.len() == 3 => {
                        let mut letter = args[1].chars();
                        let c = match (letter.next(), letter.next()) {
                            (Some(c), None) => c,
                            _ => return Err(syntax(lineno, format!("bad letter {:?}", args[1]))),
                        };
                        t.transitions.push((parse_index(lineno, args[0])?, c, parse_index(lineno, args[2])?));
                        continue;
                    }
                    _ => close(&mut table, &alphabet, &mut language, &mut set)?,
                }
            }
            let (key, rest) = match line.split_once(':') {
                Some((k, r)) => (k.trim(), r.trim()),
                None => return Err(syntax(lineno, format!("unexpected line {line:?}"))),
            };
            match key {
                "name" => name = Some(rest.to_string()),
                "alphabet" => {
                    alphabet = Some(Alphabet::parse(rest).map_err(|e| syntax(lineno, e.to_string()))?);
                }
                "language" | "set" if rest.is_empty() => {
                    block = if key == "language" { Block::Language } else { Block::Set };
                }
                "regex" => {
                    let sigma = alphabet.as_ref().ok_or(SpecError::Missing("alphabet"))?;
                    let dfa = parse_regex(rest, sigma).map_err(|e| syntax(lineno, e.to_string()))?;
                    *(if block == Block::Language { &mut language } else { &mut set }) = Some(dfa);
                }
                "dfa" if rest.is_empty() => {
                    table = Some((
                        block,
                        Table {
                            start: lineno,
                            states: None,
                            initial: None,
                            finals: Vec::new(),
                            transitions: Vec::new(),
                        },
                    ));
                }
                k if k.starts_with("expect ") => {
                    expect.push(Expectation::parse(lineno, k["expect ".len()..].trim(), rest)?);
                }
                _ => return Err(syntax(lineno, format!("unexpected line {line:?}"))),
            }
        }
        close(&mut table, &alphabet, &mut language, &mut set)?;
        Ok(SystemSpec {
            name: name.unwrap_or_default(),
            alphabet: alphabet.ok_or(SpecError::Missing("alphabet"))?,
            language: language.ok_or(SpecError::Missing("language block"))?,
            set,
            expect,
        })
    }

    pub fn from_system(name: &str, system: &NumerationSystem) -> Self {
        SystemSpec {
            name: name.to_string(),
            alphabet: system.alphabet().clone(),
            language: system.dfa().clone(),
            set: None,
            expect: Vec::new(),
        }
    }

    pub fn from_set(name: &str, x: &RecognizableSet) -> Self {
        SystemSpec { set: Some(x.rep_dfa().clone()), ..SystemSpec::from_system(name, x.system()) }
    }

    /// The numeration system; fails on an empty or finite language.
    pub fn system(&self) -> Result<Arc<NumerationSystem>, SpecError> {
        Ok(Arc::new(NumerationSystem::new(&self.language)?))
    }

    /// The recognizable set, if a `set:` block is present; fails unless it
    /// is contained in the language.
    pub fn recognizable_set(&self) -> Result<Option<RecognizableSet>, SpecError> {
        match &self.set {
            None => Ok(None),
            Some(rep) => Ok(Some(RecognizableSet::new(self.system()?, rep)?)),
        }
    }
}

fn write_table(out: &mut String, dfa: &Dfa) {
    let dfa = dfa.canonical();
    let sigma = dfa.alphabet();
    let _ = writeln!(out, "dfa:\nstates {}\ninitial {}", dfa.num_states(), dfa.initial());
    let finals: Vec<String> = dfa.finals().map(|q| q.to_string()).collect();
    let _ = writeln!(out, "final {}", finals.join(" "));
    for (s, a, t) in dfa.transitions() {
        let _ = writeln!(out, "trans {s} {} {t}", sigma.letter(a));
    }
}

impl fmt::Display for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if !self.name.is_empty() {
            let _ = writeln!(out, "name: {}", self.name);
        }
        let letters: Vec<String> = self.alphabet.letters().iter().map(char::to_string).collect();
        let _ = writeln!(out, "alphabet: {}\nlanguage:", letters.join(" "));
        write_table(&mut out, &self.language);
        if let Some(set) = &self.set {
            out.push_str("set:\n");
            write_table(&mut out, set);
        }
        for e in &self.expect {
            let _ = writeln!(out, "{e}");
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ans_core::numeration::families;

    const PANSIOT: &str = "\
# Pansiot system
name: pansiot
alphabet: 0 1 2 3
language:
dfa:
states 3
initial 0
final 0 1 2   # every state accepts
trans 0 2 1
trans 0 1 2
trans 0 3 2
trans 1 0 1
trans 1 2 1
trans 1 1 2
trans 1 3 2
trans 2 0 2
trans 2 1 2
set:
regex: 2(0|2)* | eps
expect F: 1 2 4 8
expect class: class logpower f=1 logexp=1
";

    #[test]
    fn parses_tables_and_regexes() {
        let spec = SystemSpec::parse(PANSIOT).unwrap();
        assert_eq!(spec.name, "pansiot");
        let x = spec.recognizable_set().unwrap().unwrap();
        assert_eq!(x.first_elements(5), [0, 2, 6, 8, 16]);
        assert_eq!(spec.expect.len(), 2);
        assert_eq!(spec.expect[1], Expectation::Class("class logpower f=1 logexp=1".into()));
    }

    #[test]
    fn emitted_specs_reload() {
        for f in families::fixtures() {
            let spec = SystemSpec::from_set(f.name, &f.set);
            let text = spec.to_string();
            let back = SystemSpec::parse(&text).unwrap();
            assert_eq!(back.to_string(), text, "{}", f.name);
            let system = back.system().unwrap();
            assert_eq!(system.dfa().canonical(), f.system().dfa().canonical());
            let x = back.recognizable_set().unwrap().unwrap();
            assert_eq!(x.rep_dfa().canonical(), f.set.rep_dfa().canonical());
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(SystemSpec::parse("regex: a*"), Err(SpecError::Missing("alphabet"))));
        assert!(matches!(SystemSpec::parse("alphabet: ab"), Err(SpecError::Missing("language block"))));
        let e = SystemSpec::parse("alphabet: ab\nregex: a(\n").unwrap_err();
        assert!(matches!(e, SpecError::Syntax { line: 2, .. }));
        let e = SystemSpec::parse("alphabet: ab\ndfa:\nstates 1\ntrans 0 c 0\n").unwrap_err();
        assert!(matches!(e, SpecError::Syntax { line: 2, .. }));
        let not_subset = "alphabet: ab\nregex: a*\nset:\nregex: b\n";
        let spec = SystemSpec::parse(not_subset).unwrap();
        assert!(matches!(spec.recognizable_set(), Err(SpecError::Numeration(NumerationError::NotSubset))));
        assert!(SystemSpec::parse("alphabet: ab\nregex: a*\nexpect q: 1").is_err());
    }
}
