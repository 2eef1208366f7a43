//! Words over `{1..n}`, permutations, and greedy subsequence matching.
//!
//! Positions are 1-based; position 0 is the sentinel "before the first
//! symbol" used by [`next_occurrence`] and [`SuccessorTable`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::text::{content_lines, join, parse_int, parse_ints};

/// A finite word over the alphabet `{1..alphabet_size}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet_size: u32,
    symbols: Vec<u32>,
}

impl Word {
    pub fn new(alphabet_size: u32, symbols: Vec<u32>) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(Error::invalid("alphabet size must be positive"));
        }
        if let Some((idx, &s)) = symbols.iter().enumerate().find(|(_, &s)| s == 0 || s > alphabet_size) {
            return Err(Error::invalid(format!(
                "symbol {s} at index {} is outside 1..={alphabet_size}",
                idx + 1
            )));
        }
        Ok(Word { alphabet_size, symbols })
    }

    pub fn empty(alphabet_size: u32) -> Self {
        Word::new(alphabet_size, Vec::new()).expect("positive alphabet size")
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn reversed(&self) -> Word {
        reverse(self)
    }

    /// Appends `other`'s symbols. Alphabets must agree.
    pub fn extend_from(&mut self, other: &[u32]) {
        debug_assert!(other.iter().all(|&s| s >= 1 && s <= self.alphabet_size));
        self.symbols.extend_from_slice(other);
    }

    pub fn contains(&self, pattern: &[u32]) -> bool {
        is_subsequence(pattern, &self.symbols)
    }
}

impl fmt::Display for Word {
    /// `word <n> <L>` followed by the symbols on one line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "word {} {}", self.alphabet_size, self.symbols.len())?;
        writeln!(f, "{}", join(&self.symbols))
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = content_lines(s);
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty input, expected `word <n> <L>`"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 || fields[0] != "word" {
            return Err(Error::parse(hline, "expected header `word <n> <L>`"));
        }
        let n: u32 = parse_int(hline, fields[1], "an alphabet size")?;
        let len: usize = parse_int(hline, fields[2], "a word length")?;
        if n == 0 {
            return Err(Error::parse(hline, "alphabet size must be positive"));
        }
        let (sline, symbols) = match lines.next() {
            Some((l, body)) => (l, parse_ints::<u32>(l, body, "a symbol")?),
            None => (hline + 1, Vec::new()),
        };
        if let Some((l, _)) = lines.next() {
            return Err(Error::parse(l, "unexpected content after the symbol line"));
        }
        if symbols.len() != len {
            return Err(Error::parse(
                sline,
                format!("header declares length {len} but {} symbols follow", symbols.len()),
            ));
        }
        if let Some((idx, &sym)) = symbols.iter().enumerate().find(|(_, &x)| x == 0 || x > n) {
            return Err(Error::parse(
                sline,
                format!("symbol {sym} at index {} is outside 1..={n}", idx + 1),
            ));
        }
        Ok(Word {
            alphabet_size: n,
            symbols,
        })
    }
}

/// A bijection on `{1..n}`, written as the word `π₁ π₂ … πₙ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::invalid("a permutation needs at least one element"));
        }
        let mut seen = vec![false; n + 1];
        for (i, &v) in values.iter().enumerate() {
            let v = v as usize;
            if v == 0 || v > n {
                return Err(Error::invalid(format!(
                    "value {v} at index {} is outside 1..={n}",
                    i + 1
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::invalid(format!("value {v} appears more than once")));
            }
        }
        Ok(Permutation { values })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n as u32).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// `π(i)` for 1-based `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.values[i - 1]
    }

    pub fn as_word(&self) -> Word {
        Word {
            alphabet_size: self.values.len() as u32,
            symbols: self.values.clone(),
        }
    }

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.values))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = parse_ints(1, s, "a permutation value")?;
        Permutation::new(values)
    }
}

/// Greedy left-to-right matcher: each pattern symbol takes its earliest
/// occurrence after the previous match.
pub fn is_subsequence(pattern: &[u32], text: &[u32]) -> bool {
    let mut rest = pattern.iter().peekable();
    for &c in text {
        match rest.peek() {
            None => return true,
            Some(&&want) if want == c => {
                rest.next();
            }
            Some(_) => {}
        }
    }
    rest.peek().is_none()
}

/// Smallest 1-based index `j > position` with `text[j] == symbol`.
pub fn next_occurrence(text: &[u32], position: usize, symbol: u32) -> Option<usize> {
    text.get(position..)?
        .iter()
        .position(|&c| c == symbol)
        .map(|off| position + off + 1)
}

pub fn reverse(w: &Word) -> Word {
    let mut symbols = w.symbols.clone();
    symbols.reverse();
    Word {
        alphabet_size: w.alphabet_size,
        symbols,
    }
}

/// `next[pos][c]` for every position `0..=|T|` and symbol, with `|T| + 1`
/// standing in for "no further occurrence".
#[derive(Debug, Clone)]
pub struct SuccessorTable {
    n: usize,
    len: usize,
    next: Vec<u32>,
}

impl SuccessorTable {
    pub fn new(text: &Word) -> Self {
        let n = text.alphabet_size as usize;
        let len = text.len();
        let none = (len + 1) as u32;
        let mut next = vec![none; (len + 1) * n];
        for pos in (0..len).rev() {
            let (head, tail) = next.split_at_mut((pos + 1) * n);
            head[pos * n..].copy_from_slice(&tail[..n]);
            let c = text.symbols[pos] as usize - 1;
            head[pos * n + c] = (pos + 1) as u32;
        }
        SuccessorTable { n, len, next }
    }

    /// The sentinel returned when a symbol does not occur again.
    pub fn infinity(&self) -> u32 {
        (self.len + 1) as u32
    }

    /// Next occurrence of `symbol` strictly after `position`. Any
    /// `position > |T|` is absorbing.
    #[inline]
    pub fn next(&self, position: u32, symbol: u32) -> u32 {
        if position as usize >= self.len {
            return self.infinity();
        }
        self.next[position as usize * self.n + symbol as usize - 1]
    }

    pub fn get(&self, position: usize, symbol: u32) -> Option<usize> {
        let j = self.next(position as u32, symbol);
        (j != self.infinity()).then_some(j as usize)
    }
}
