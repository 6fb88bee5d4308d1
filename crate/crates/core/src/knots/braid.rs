//! Braid words and their closures.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use super::diagram::{Builder, DiagramError};
use super::pd::PdCode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("empty braid word")]
    Empty,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Letters `±i` for `σ_i^{±1}`, `i >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(letters: Vec<i32>) -> Result<Self, BraidError> {
        if letters.contains(&0) {
            return Err(BraidError::Syntax {
                position: 0,
                message: "generator indices start at 1".into(),
            });
        }
        Ok(BraidWord { letters })
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn strands(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
            + 1
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if *l > 0 {
                write!(f, "s{}", l)?;
            } else {
                write!(f, "s{}^-1", -l)?;
            }
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    /// Whitespace-separated `s<i>` or `s<i>^<k>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for token in s.split_whitespace() {
            let position = s[offset..].find(token).expect("token from s") + offset;
            offset = position + token.len();
            let err = |message: &str| BraidError::Syntax {
                position,
                message: message.into(),
            };
            let body = token
                .strip_prefix('s')
                .or_else(|| token.strip_prefix('σ'))
                .ok_or_else(|| err("expected `s<i>`"))?;
            let (index, power) = match body.split_once('^') {
                Some((i, k)) => (i, k.parse::<i32>().map_err(|_| err("bad exponent"))?),
                None => (body, 1),
            };
            let index: i32 = index.parse().map_err(|_| err("bad generator index"))?;
            if index <= 0 {
                return Err(err("generator indices start at 1"));
            }
            let letter = if power < 0 { -index } else { index };
            letters.extend(core::iter::repeat_n(letter, power.unsigned_abs() as usize));
        }
        if letters.is_empty() {
            return Err(BraidError::Empty);
        }
        BraidWord::new(letters)
    }
}

/// PD code of the braid closure; fails unless the closure is a knot.
pub fn pd_from_braid(b: &BraidWord) -> Result<PdCode, BraidError> {
    if b.letters.is_empty() {
        return Err(BraidError::Empty);
    }
    let mut d = Builder::default();
    let bottom: Vec<usize> = (0..b.strands()).map(|_| d.fresh()).collect();
    let mut cur = bottom.clone();
    for &l in &b.letters {
        let i = l.unsigned_abs() as usize - 1;
        let (sw, se) = (cur[i], cur[i + 1]);
        let (nw, ne) = (d.fresh(), d.fresh());
        d.crossings.push(if l > 0 {
            [se, ne, nw, sw]
        } else {
            [sw, se, ne, nw]
        });
        cur[i] = nw;
        cur[i + 1] = ne;
    }
    for (top, bot) in cur.into_iter().zip(bottom) {
        d.join(top, bot);
    }
    Ok(d.into_pd()?)
}
