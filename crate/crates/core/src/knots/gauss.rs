//! Signed Gauss codes `O1+U2-...` for classical and virtual knot diagrams.
//! Virtual crossings are not recorded.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use super::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaussError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("crossing {0} must occur exactly once over and once under")]
    Occurrence(u32),
    #[error("crossing {0} has inconsistent signs")]
    SignMismatch(u32),
    #[error("crossing ids are not the contiguous range 1..={0}")]
    NonContiguous(u32),
    #[error("crossing {0} does not exist")]
    InvalidCrossing(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussLetter {
    pub id: u32,
    pub over: bool,
    pub sign: Sign,
}

impl fmt::Display for GaussLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ou = if self.over { 'O' } else { 'U' };
        let s = match self.sign {
            Sign::Positive => '+',
            Sign::Negative => '-',
        };
        write!(f, "{}{}{}", ou, self.id, s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct GaussCode {
    letters: Vec<GaussLetter>,
}

impl GaussCode {
    pub fn new(letters: Vec<GaussLetter>) -> Result<Self, GaussError> {
        let mut seen: BTreeMap<u32, (usize, usize, Sign)> = BTreeMap::new();
        for l in &letters {
            let e = seen.entry(l.id).or_insert((0, 0, l.sign));
            if l.over {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
            if e.2 != l.sign {
                return Err(GaussError::SignMismatch(l.id));
            }
        }
        if let Some((&id, _)) = seen.iter().find(|(_, v)| v.0 != 1 || v.1 != 1) {
            return Err(GaussError::Occurrence(id));
        }
        let n = seen.len() as u32;
        if seen.keys().copied().ne(1..=n) {
            return Err(GaussError::NonContiguous(n));
        }
        Ok(GaussCode { letters })
    }

    pub fn empty() -> Self {
        GaussCode::default()
    }

    pub fn letters(&self) -> &[GaussLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.letters.len() / 2
    }

    pub fn sign(&self, id: u32) -> Option<Sign> {
        self.letters.iter().find(|l| l.id == id).map(|l| l.sign)
    }

    /// Positions of the (over, under) letters of crossing `id`.
    pub fn positions(&self, id: u32) -> Option<(usize, usize)> {
        let o = self.letters.iter().position(|l| l.id == id && l.over)?;
        let u = self.letters.iter().position(|l| l.id == id && !l.over)?;
        Some((o, u))
    }

    fn check(&self, id: u32) -> Result<(), GaussError> {
        if id == 0 || id as usize > self.crossing_count() {
            Err(GaussError::InvalidCrossing(id))
        } else {
            Ok(())
        }
    }

    /// Swap over and under at crossing `id`; the sign flips.
    pub fn crossing_change(&self, id: u32) -> Result<GaussCode, GaussError> {
        self.check(id)?;
        let letters = self
            .letters
            .iter()
            .map(|l| {
                if l.id == id {
                    GaussLetter {
                        id,
                        over: !l.over,
                        sign: l.sign.flip(),
                    }
                } else {
                    *l
                }
            })
            .collect();
        Ok(GaussCode { letters })
    }

    /// Turn crossing `id` into a virtual crossing; remaining ids are
    /// compacted preserving order.
    pub fn virtualize(&self, id: u32) -> Result<GaussCode, GaussError> {
        self.check(id)?;
        Ok(self.remove(&[id]))
    }

    /// Drop the letters of the given crossings and renumber.
    pub(crate) fn remove(&self, ids: &[u32]) -> GaussCode {
        let letters = self
            .letters
            .iter()
            .filter(|l| !ids.contains(&l.id))
            .map(|l| GaussLetter {
                id: l.id - ids.iter().filter(|&&x| x < l.id).count() as u32,
                ..*l
            })
            .collect();
        GaussCode { letters }
    }

    /// Renumber crossings by first appearance.
    pub fn relabeled(&self) -> GaussCode {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        let letters = self
            .letters
            .iter()
            .map(|l| {
                let next = map.len() as u32 + 1;
                let id = *map.entry(l.id).or_insert(next);
                GaussLetter { id, ..*l }
            })
            .collect();
        GaussCode { letters }
    }

    /// Minimal relabeled code over all rotations and reversals.
    pub fn canonical(&self) -> GaussCode {
        let n = self.letters.len();
        if n == 0 {
            return self.clone();
        }
        let mut best: Option<GaussCode> = None;
        let reversed: Vec<GaussLetter> = self.letters.iter().rev().copied().collect();
        for seq in [&self.letters, &reversed] {
            for k in 0..n {
                let mut rot = seq[k..].to_vec();
                rot.extend_from_slice(&seq[..k]);
                let cand = GaussCode { letters: rot }.relabeled();
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        best.expect("nonempty")
    }

    /// A crossing whose two letters are cyclically adjacent.
    pub fn find_r1(&self) -> Option<u32> {
        let n = self.letters.len();
        (0..n).find_map(|i| {
            let a = self.letters[i];
            let b = self.letters[(i + 1) % n];
            (n > 1 && a.id == b.id).then_some(a.id)
        })
    }

    /// Two crossings of opposite sign whose over letters are adjacent and
    /// whose under letters are adjacent.
    pub fn find_r2(&self) -> Option<(u32, u32)> {
        let n = self.letters.len();
        let adjacent = |p: usize, q: usize| (p + 1) % n == q || (q + 1) % n == p;
        for c in 1..=self.crossing_count() as u32 {
            for d in c + 1..=self.crossing_count() as u32 {
                if self.sign(c) == self.sign(d) {
                    continue;
                }
                let (oc, uc) = self.positions(c)?;
                let (od, ud) = self.positions(d)?;
                if adjacent(oc, od) && adjacent(uc, ud) {
                    return Some((c, d));
                }
            }
        }
        None
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l)?;
        }
        Ok(())
    }
}

impl FromStr for GaussCode {
    type Err = GaussError;

    /// Letters `O<id><sign>` or `U<id><sign>`, optionally separated by
    /// whitespace or commas. The empty string is the crossingless diagram.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let mut letters = Vec::new();
        let err = |position: usize, message: &str| GaussError::Syntax {
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
            let over = match bytes[pos] {
                b'O' | b'o' => true,
                b'U' | b'u' => false,
                _ => return Err(err(pos, "expected `O` or `U`")),
            };
            pos += 1;
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let id: u32 = s[start..pos]
                .parse()
                .map_err(|_| err(start, "expected a crossing id"))?;
            let sign = match bytes.get(pos) {
                Some(b'+') => Sign::Positive,
                Some(b'-') => Sign::Negative,
                _ => return Err(err(pos, "expected `+` or `-`")),
            };
            pos += 1;
            letters.push(GaussLetter { id, over, sign });
        }
        GaussCode::new(letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn round_trip() {
        let s = "O1-U2-O3-U1-O2-U3-";
        let g: GaussCode = s.parse().unwrap();
        assert_eq!(g.to_string(), s);
        assert_eq!(g.crossing_count(), 3);
        assert_eq!("".parse::<GaussCode>().unwrap(), GaussCode::empty());
    }

    #[test]
    fn errors() {
        assert!(matches!(
            "O1+U1-".parse::<GaussCode>(),
            Err(GaussError::SignMismatch(1))
        ));
        assert!(matches!(
            "O1+O1+".parse::<GaussCode>(),
            Err(GaussError::Occurrence(1))
        ));
        assert!(matches!(
            "O2+U2+".parse::<GaussCode>(),
            Err(GaussError::NonContiguous(1))
        ));
        assert!(matches!(
            "O1+X".parse::<GaussCode>(),
            Err(GaussError::Syntax { position: 3, .. })
        ));
    }

    #[test]
    fn moves() {
        let g: GaussCode = "O1-U2-O3-U1-O2-U3-".parse().unwrap();
        assert_eq!(
            g.crossing_change(2).unwrap().to_string(),
            "O1-O2+O3-U1-U2+U3-"
        );
        assert_eq!(g.virtualize(2).unwrap().to_string(), "O1-O2-U1-U2-");
        assert!(g.virtualize(4).is_err());
        assert_eq!(g.find_r1(), None);
        assert_eq!(g.find_r2(), None);
        let kink: GaussCode = "U1+O1+".parse().unwrap();
        assert_eq!(kink.find_r1(), Some(1));
        let r2: GaussCode = "O1+O2-U1+U2-".parse().unwrap();
        assert_eq!(r2.find_r2(), Some((1, 2)));
    }

    #[test]
    fn canonical_is_rotation_invariant() {
        let g: GaussCode = "O1-U2-O3-U1-O2-U3-".parse().unwrap();
        let rotated: GaussCode = "U3-O1-U2-O3-U1-O2-".parse().unwrap();
        assert_eq!(g.canonical(), rotated.canonical());
    }
}
