//! Free-group words over named generators.
//!
//! Words are kept freely reduced at all times. The text syntax is a
//! whitespace-separated list of tokens `name` or `name^-1`; the empty string
//! is the identity.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("invalid token `{token}` at position {position}")]
    InvalidToken { token: String, position: usize },
    #[error("unknown generator `{0}`")]
    UnknownSymbol(String),
}

/// Name of a generator. Cheap to clone.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Result<Self, WordError> {
        let valid = !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(WordError::InvalidName(name.to_string()));
        }
        Ok(Symbol(Arc::from(name)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A generator or its inverse.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    pub symbol: Symbol,
    pub inverse: bool,
}

impl Letter {
    pub fn new(symbol: Symbol, inverse: bool) -> Self {
        Letter { symbol, inverse }
    }

    pub fn inv(&self) -> Letter {
        Letter {
            symbol: self.symbol.clone(),
            inverse: !self.inverse,
        }
    }

    /// +1 or -1.
    pub fn sign(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.symbol == other.symbol && self.inverse != other.inverse
    }
}

/// A freely reduced word in the free group on named generators.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(symbol: Symbol) -> Self {
        Word {
            letters: alloc::vec![Letter::new(symbol, false)],
        }
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last().is_some_and(|last| last.cancels(&l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// `symbol^exponent`.
    pub fn power(symbol: &Symbol, exponent: i64) -> Self {
        let inverse = exponent < 0;
        let letters = (0..exponent.unsigned_abs())
            .map(|_| Letter::new(symbol.clone(), inverse))
            .collect();
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        Word::reduce(self.letters.iter().chain(other.letters.iter()).cloned())
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(Letter::inv).collect(),
        }
    }

    /// `by · self · by^-1`.
    pub fn conjugate(&self, by: &Word) -> Word {
        by.multiply(self).multiply(&by.inverse())
    }

    /// `u v u^-1 v^-1`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.multiply(v).multiply(&u.inverse()).multiply(&v.inverse())
    }

    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut out = Word::identity();
        for _ in 0..exponent.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// Signed letter counts against an ordered basis.
    pub fn exponent_vector(&self, basis: &[Symbol]) -> Result<Vec<i64>, WordError> {
        let mut v = alloc::vec![0i64; basis.len()];
        for l in &self.letters {
            let i = basis
                .iter()
                .position(|s| *s == l.symbol)
                .ok_or_else(|| WordError::UnknownSymbol(l.symbol.to_string()))?;
            v[i] += l.sign();
        }
        Ok(v)
    }

    /// Number of letters (either sign) on `symbol`.
    pub fn occurrences(&self, symbol: &Symbol) -> usize {
        self.letters.iter().filter(|l| l.symbol == *symbol).count()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.letters.iter().map(|l| &l.symbol)
    }

    /// Substitute a word for every occurrence of each generator.
    pub fn substitute<F>(&self, mut image: F) -> Word
    where
        F: FnMut(&Symbol) -> Word,
    {
        let mut letters = Vec::new();
        for l in &self.letters {
            let w = image(&l.symbol);
            if l.inverse {
                letters.extend(w.inverse().letters);
            } else {
                letters.extend(w.letters);
            }
        }
        Word::reduce(letters)
    }

    /// Remove inverse pairs between the two ends.
    pub fn cyclically_reduced(&self) -> Word {
        let n = self.letters.len();
        let mut lo = 0;
        let mut hi = n;
        while hi - lo >= 2 && self.letters[lo].cancels(&self.letters[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        Word {
            letters: self.letters[lo..hi].to_vec(),
        }
    }

    /// Rotation by `k` letters (only meaningful on cyclically reduced words).
    pub fn rotate(&self, k: usize) -> Word {
        if self.letters.is_empty() {
            return Word::identity();
        }
        let k = k % self.letters.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Word::reduce(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if l.inverse {
                write!(f, "{}^-1", l.symbol)?;
            } else {
                write!(f, "{}", l.symbol)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{}\")", self)
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        for (position, token) in s.split_whitespace().enumerate() {
            let (name, inverse) = match token.strip_suffix("^-1") {
                Some(name) => (name, true),
                None => (token, false),
            };
            let symbol = Symbol::new(name).map_err(|_| WordError::InvalidToken {
                token: token.to_string(),
                position,
            })?;
            letters.push(Letter::new(symbol, inverse));
        }
        Ok(Word::reduce(letters))
    }
}
