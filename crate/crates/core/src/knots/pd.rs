//! Planar diagram codes, Knot Atlas convention: `X[i,j,k,l]` lists the four
//! edge labels counterclockwise starting from the incoming understrand.
//! Edges of a knot are labelled `1..=2n` consecutively along the orientation.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use super::gauss::{GaussCode, GaussLetter};
use super::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PdError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("label {label} occurs {count} times; every label must occur exactly twice")]
    LabelCount { label: u32, count: usize },
    #[error("labels are not the contiguous range 1..={expected}")]
    NonContiguous { expected: u32 },
    #[error("crossing {index} is not oriented consecutively (X{tuple:?})")]
    Orientation { index: usize, tuple: [u32; 4] },
    #[error("crossing {0} does not exist")]
    InvalidCrossing(usize),
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PdCode {
    crossings: Vec<[u32; 4]>,
}

impl PdCode {
    /// Validate a knot diagram.
    pub fn new(crossings: Vec<[u32; 4]>) -> Result<Self, PdError> {
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for c in &crossings {
            for &l in c {
                *counts.entry(l).or_default() += 1;
            }
        }
        if let Some((&label, &count)) = counts.iter().find(|(_, &c)| c != 2) {
            return Err(PdError::LabelCount { label, count });
        }
        let expected = 2 * crossings.len() as u32;
        if counts.keys().copied().ne(1..=expected) {
            return Err(PdError::NonContiguous { expected });
        }
        let pd = PdCode { crossings };
        for (index, t) in pd.crossings.iter().enumerate() {
            let under_ok = t[2] == pd.succ(t[0]);
            let over_ok = t[1] == pd.succ(t[3]) || t[3] == pd.succ(t[1]);
            if !under_ok || !over_ok {
                return Err(PdError::Orientation { index, tuple: *t });
            }
        }
        Ok(pd)
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    fn edge_count(&self) -> u32 {
        2 * self.crossings.len() as u32
    }

    /// The label following `e` along the orientation.
    pub fn succ(&self, e: u32) -> u32 {
        if e == self.edge_count() {
            1
        } else {
            e + 1
        }
    }

    /// Positive when the overstrand runs from slot 3 to slot 1. With a
    /// single crossing `succ` is an involution; there the overstrand leaves
    /// along the label the understrand enters on.
    pub fn sign(&self, index: usize) -> Sign {
        let t = &self.crossings[index];
        let positive = if self.edge_count() == 2 {
            t[1] == t[0]
        } else {
            t[1] == self.succ(t[3])
        };
        if positive {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    /// (incoming, outgoing) labels of the overstrand.
    pub fn over_labels(&self, index: usize) -> (u32, u32) {
        let t = &self.crossings[index];
        match self.sign(index) {
            Sign::Positive => (t[3], t[1]),
            Sign::Negative => (t[1], t[3]),
        }
    }

    /// Swap over and under at crossing `index` (0-based).
    pub fn crossing_change(&self, index: usize) -> Result<PdCode, PdError> {
        let t = *self
            .crossings
            .get(index)
            .ok_or(PdError::InvalidCrossing(index))?;
        let new = match self.sign(index) {
            Sign::Positive => [t[3], t[0], t[1], t[2]],
            Sign::Negative => [t[1], t[2], t[3], t[0]],
        };
        let mut crossings = self.crossings.clone();
        crossings[index] = new;
        Ok(PdCode { crossings })
    }

    /// Gauss-code id of each crossing, in PD order.
    pub fn crossing_ids(&self) -> Vec<u32> {
        let code = self.to_gauss();
        let mut ids = alloc::vec![0; self.crossings.len()];
        for (c, t) in self.crossings.iter().enumerate() {
            ids[c] = code.letters()[t[0] as usize - 1].id;
        }
        ids
    }

    /// Gauss code read along the orientation starting at edge 1. Crossings
    /// are numbered by first appearance.
    pub fn to_gauss(&self) -> GaussCode {
        let mut ends: BTreeMap<u32, (usize, bool)> = BTreeMap::new();
        for (c, t) in self.crossings.iter().enumerate() {
            ends.insert(t[0], (c, false));
            ends.insert(self.over_labels(c).0, (c, true));
        }
        let mut ids: BTreeMap<usize, u32> = BTreeMap::new();
        let mut letters = Vec::new();
        for e in 1..=self.edge_count() {
            let (c, over) = ends[&e];
            let next = ids.len() as u32 + 1;
            let id = *ids.entry(c).or_insert(next);
            letters.push(GaussLetter {
                id,
                over,
                sign: self.sign(c),
            });
        }
        GaussCode::new(letters).expect("a PD code yields a valid Gauss code")
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.crossings.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "X[{},{},{},{}]", t[0], t[1], t[2], t[3])?;
        }
        Ok(())
    }
}

impl fmt::Debug for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PdCode({})", self)
    }
}

impl FromStr for PdCode {
    type Err = PdError;

    /// `X[a,b,c,d]` tuples separated by whitespace or commas.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let mut crossings = Vec::new();
        let err = |position: usize, message: &str| PdError::Syntax {
            position,
            message: message.into(),
        };
        loop {
            while pos < bytes.len() && (bytes[pos].is_ascii_whitespace() || bytes[pos] == b',') {
                pos += 1;
            }
            if pos == bytes.len() {
                break;
            }
            if bytes[pos] != b'X' {
                return Err(err(pos, "expected `X[`"));
            }
            pos += 1;
            if bytes.get(pos) != Some(&b'[') {
                return Err(err(pos, "expected `[`"));
            }
            pos += 1;
            let mut tuple = [0u32; 4];
            for (k, slot) in tuple.iter_mut().enumerate() {
                while pos < bytes.len() && bytes[pos] == b' ' {
                    pos += 1;
                }
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let value: u32 = s[start..pos]
                    .parse()
                    .map_err(|_| err(start, "expected a positive integer label"))?;
                if value == 0 {
                    return Err(err(start, "labels are positive"));
                }
                *slot = value;
                while pos < bytes.len() && bytes[pos] == b' ' {
                    pos += 1;
                }
                let want = if k == 3 { b']' } else { b',' };
                if bytes.get(pos) != Some(&want) {
                    return Err(err(
                        pos,
                        if k == 3 {
                            "expected `]`"
                        } else {
                            "expected `,`"
                        },
                    ));
                }
                pos += 1;
            }
            crossings.push(tuple);
        }
        PdCode::new(crossings)
    }
}
