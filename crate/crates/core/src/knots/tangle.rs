//! Rational tangles and continued fractions.

use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TangleError {
    #[error("empty continued fraction")]
    Empty,
    #[error("0/0 is not a tangle fraction")]
    Indeterminate,
    #[error("{0}/{1} is not in lowest terms")]
    NotReduced(i64, i64),
    #[error("arithmetic overflow")]
    Overflow,
}

/// Which boundary points the tangle's strands connect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EndpointPairing {
    /// NW–NE and SW–SE.
    Horizontal,
    /// NW–SW and NE–SE.
    Vertical,
    /// NW–SE and NE–SW.
    Diagonal,
}

/// A rational tangle `p/q` with `q > 0`, or `1/0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalTangle {
    p: i64,
    q: i64,
}

impl RationalTangle {
    pub fn new(p: i64, q: i64) -> Result<Self, TangleError> {
        if p == 0 && q == 0 {
            return Err(TangleError::Indeterminate);
        }
        if p.gcd(&q) != 1 {
            return Err(TangleError::NotReduced(p, q));
        }
        Ok(if q < 0 || (q == 0 && p < 0) {
            RationalTangle {
                p: p.checked_neg().ok_or(TangleError::Overflow)?,
                q: -q,
            }
        } else {
            RationalTangle { p, q }
        })
    }

    pub fn integer(n: i64) -> Self {
        RationalTangle { p: n, q: 1 }
    }

    pub fn infinity() -> Self {
        RationalTangle { p: 1, q: 0 }
    }

    pub fn from_continued_fraction(cf: &[i64]) -> Result<Self, TangleError> {
        let (p, q) = tangle_fraction(cf)?;
        RationalTangle::new(p, q)
    }

    pub fn numerator(&self) -> i64 {
        self.p
    }

    pub fn denominator(&self) -> i64 {
        self.q
    }

    pub fn is_integer(&self) -> bool {
        self.q == 1
    }

    pub fn is_infinity(&self) -> bool {
        self.q == 0
    }

    pub fn continued_fraction(&self) -> Vec<i64> {
        cf_from_fraction(self.p, self.q).expect("valid tangle")
    }

    pub fn pairing(&self) -> EndpointPairing {
        pairing(self.p, self.q).expect("valid tangle")
    }
}

impl fmt::Display for RationalTangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Fraction of the tangle `a_1 a_2 ... a_n`, i.e. `a_n + 1/(a_{n-1} + ...)`,
/// evaluated projectively so `1/0` is reachable. Sign normalized to `q >= 0`.
pub fn tangle_fraction(cf: &[i64]) -> Result<(i64, i64), TangleError> {
    let (&first, rest) = cf.split_first().ok_or(TangleError::Empty)?;
    let (mut p, mut q) = (first, 1i64);
    for &a in rest {
        let np = a
            .checked_mul(p)
            .and_then(|x| x.checked_add(q))
            .ok_or(TangleError::Overflow)?;
        q = p;
        p = np;
    }
    let t = RationalTangle::new(p, q)?;
    Ok((t.p, t.q))
}

/// Continued fraction by floor division; `tangle_fraction` inverts it.
pub fn cf_from_fraction(p: i64, q: i64) -> Result<Vec<i64>, TangleError> {
    let t = RationalTangle::new(p, q)?;
    if t.q == 0 {
        return Ok(alloc::vec![0, 0]);
    }
    let (mut p, mut q) = (t.p, t.q);
    let mut out = Vec::new();
    while q != 0 {
        let a = Integer::div_floor(&p, &q);
        out.push(a);
        let r = p - a * q;
        p = q;
        q = r;
    }
    out.reverse();
    Ok(out)
}

pub fn pairing(p: i64, q: i64) -> Result<EndpointPairing, TangleError> {
    let t = RationalTangle::new(p, q)?;
    Ok(if t.p % 2 == 0 {
        EndpointPairing::Horizontal
    } else if t.q % 2 == 0 {
        EndpointPairing::Vertical
    } else {
        EndpointPairing::Diagonal
    })
}

/// A replacement keeps the endpoint pairing and changes the tangle.
pub fn is_proper_replacement(from: &RationalTangle, to: &RationalTangle) -> bool {
    from != to && from.pairing() == to.pairing()
}
