use std::io;
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::automata::Dfa;

#[derive(Default)]
struct Rows {
    /// `by_length[r][q]` = number of accepted words of length `r` read from `q`.
    by_length: Vec<Arc<Vec<BigUint>>>,
    /// `cumulative[r]` = v(r) for the initial state.
    cumulative: Vec<BigUint>,
}

/// Lazily grown table of exact path counts N(q, r).
///
/// Rows are appended whole under a write lock, so concurrent readers never
/// see a partially computed row.
pub struct CountTable {
    dfa: Dfa,
    rows: RwLock<Rows>,
}

impl Clone for CountTable {
    fn clone(&self) -> Self {
        let rows = self.rows.read().unwrap();
        CountTable {
            dfa: self.dfa.clone(),
            rows: RwLock::new(Rows { by_length: rows.by_length.clone(), cumulative: rows.cumulative.clone() }),
        }
    }
}

impl std::fmt::Debug for CountTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CountTable")
            .field("states", &self.dfa.num_states())
            .field("rows", &self.rows.read().unwrap().by_length.len())
            .finish()
    }
}

impl CountTable {
    pub fn new(dfa: Dfa) -> Self {
        CountTable { dfa, rows: RwLock::new(Rows::default()) }
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    /// Number of rows computed so far.
    pub fn computed_rows(&self) -> usize {
        self.rows.read().unwrap().by_length.len()
    }

    fn ensure(&self, len: usize) {
        if self.rows.read().unwrap().by_length.len() > len {
            return;
        }
        let mut rows = self.rows.write().unwrap();
        while rows.by_length.len() <= len {
            let next: Vec<BigUint> = match rows.by_length.last() {
                None => (0..self.dfa.num_states()).map(|q| BigUint::from(u8::from(self.dfa.is_final(q)))).collect(),
                Some(prev) => next_row(&self.dfa, prev),
            };
            let v = rows.cumulative.last().cloned().unwrap_or_default() + &next[self.dfa.initial()];
            rows.cumulative.push(v);
            rows.by_length.push(Arc::new(next));
        }
    }

    /// Row `r`: N(q, r) for every state q.
    pub fn row(&self, r: usize) -> Arc<Vec<BigUint>> {
        self.ensure(r);
        self.rows.read().unwrap().by_length[r].clone()
    }

    /// N(q, r).
    pub fn count_from(&self, q: usize, r: usize) -> BigUint {
        self.row(r)[q].clone()
    }

    /// Number of accepted words of length exactly `n`.
    pub fn u(&self, n: usize) -> BigUint {
        self.count_from(self.dfa.initial(), n)
    }

    /// Number of accepted words of length at most `n`.
    pub fn v(&self, n: usize) -> BigUint {
        self.ensure(n);
        self.rows.read().unwrap().cumulative[n].clone()
    }

    /// Number of accepted words of length strictly less than `len`
    /// (`v(len - 1)`, with `v(-1) = 0`).
    pub fn v_below(&self, len: usize) -> BigUint {
        if len == 0 {
            BigUint::zero()
        } else {
            self.v(len - 1)
        }
    }

    pub fn u_prefix(&self, count: usize) -> Vec<BigUint> {
        (0..count).map(|n| self.u(n)).collect()
    }

    pub fn v_prefix(&self, count: usize) -> Vec<BigUint> {
        if count > 0 {
            self.ensure(count - 1);
        }
        self.rows.read().unwrap().cumulative[..count].to_vec()
    }

    /// Writes `n,u,v` lines for `0..=n_max`, with a header.
    pub fn write_csv<W: io::Write + ?Sized>(&self, out: &mut W, n_max: usize) -> io::Result<()> {
        writeln!(out, "n,u,v")?;
        for n in 0..=n_max {
            writeln!(out, "{},{},{}", n, self.u(n), self.v(n))?;
        }
        Ok(())
    }
}

fn next_row(dfa: &Dfa, prev: &[BigUint]) -> Vec<BigUint> {
    (0..dfa.num_states()).map(|q| dfa.row(q).iter().flatten().fold(BigUint::zero(), |acc, &r| acc + &prev[r])).collect()
}

/// Streams `(u(n), v(n))` for n = 0, 1, 2, ... keeping a single row.
pub struct CountStream<'a> {
    dfa: &'a Dfa,
    row: Option<Vec<BigUint>>,
    total: BigUint,
}

impl<'a> CountStream<'a> {
    pub fn new(dfa: &'a Dfa) -> Self {
        CountStream { dfa, row: None, total: BigUint::zero() }
    }
}

impl Iterator for CountStream<'_> {
    type Item = (BigUint, BigUint);

    fn next(&mut self) -> Option<Self::Item> {
        let row = match self.row.take() {
            None => (0..self.dfa.num_states()).map(|q| BigUint::from(u8::from(self.dfa.is_final(q)))).collect(),
            Some(prev) => next_row(self.dfa, &prev),
        };
        let u = row[self.dfa.initial()].clone();
        self.total += &u;
        self.row = Some(row);
        Some((u, self.total.clone()))
    }
}
