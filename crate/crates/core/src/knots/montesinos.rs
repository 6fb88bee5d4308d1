//! Montesinos knots `K(p_1/q_1, ..., p_k/q_k)`: the numerator closure of a
//! horizontal sum of rational tangles.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

use super::diagram::{Builder, DiagramError};
use super::pd::PdCode;
use super::tangle::{is_proper_replacement, RationalTangle, TangleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MontesinosError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("a Montesinos descriptor needs at least one tangle")]
    Empty,
    #[error("the tangle 1/0 cannot appear in a Montesinos sum")]
    Infinity,
    #[error("position {0} out of range")]
    Position(usize),
    #[error("{from} -> {to} changes the endpoint pairing or is not a change")]
    Improper {
        from: RationalTangle,
        to: RationalTangle,
    },
    #[error(transparent)]
    Tangle(#[from] TangleError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MontesinosKnot {
    tangles: Vec<RationalTangle>,
}

impl MontesinosKnot {
    pub fn new(tangles: Vec<RationalTangle>) -> Result<Self, MontesinosError> {
        if tangles.is_empty() {
            return Err(MontesinosError::Empty);
        }
        if tangles.iter().any(RationalTangle::is_infinity) {
            return Err(MontesinosError::Infinity);
        }
        Ok(MontesinosKnot { tangles })
    }

    pub fn tangles(&self) -> &[RationalTangle] {
        &self.tangles
    }

    /// `|Σ p_i Π_{j≠i} q_j|`.
    pub fn determinant(&self) -> i128 {
        let (n, _) = self.sum();
        n.abs()
    }

    /// `Σ p_i/q_i` as `(numerator, Π q_i)`, unreduced.
    fn sum(&self) -> (i128, i128) {
        self.tangles.iter().fold((0i128, 1i128), |(n, d), t| {
            let (p, q) = (t.numerator() as i128, t.denominator() as i128);
            (n * q + p * d, d * q)
        })
    }
}

impl fmt::Display for MontesinosKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("K(")?;
        for (i, t) in self.tangles.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", t)?;
        }
        f.write_str(")")
    }
}

impl FromStr for MontesinosKnot {
    type Err = MontesinosError;

    /// `K(p1/q1, p2/q2, ...)`; an entry without `/` is an integer.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |position: usize, message: &str| MontesinosError::Syntax {
            position,
            message: message.into(),
        };
        let start = s.len() - s.trim_start().len();
        let body = s.trim();
        let inner = body
            .strip_prefix("K(")
            .ok_or_else(|| err(start, "expected `K(`"))?;
        let inner = inner
            .strip_suffix(')')
            .ok_or_else(|| err(start + body.len(), "expected `)`"))?;
        let mut tangles = Vec::new();
        let mut offset = start + 2;
        for entry in inner.split(',') {
            let pos = offset + (entry.len() - entry.trim_start().len());
            offset += entry.len() + 1;
            let entry = entry.trim();
            let (p, q) = match entry.split_once('/') {
                Some((p, q)) => (p.trim(), q.trim()),
                None => (entry, "1"),
            };
            let p: i64 = p
                .parse()
                .map_err(|_| err(pos, "expected an integer numerator"))?;
            let q: i64 = q
                .parse()
                .map_err(|_| err(pos, "expected an integer denominator"))?;
            tangles.push(RationalTangle::new(p, q)?);
        }
        MontesinosKnot::new(tangles)
    }
}

fn reduce(n: i128, d: i128) -> (i128, i128) {
    let g = n.gcd(&d).max(1);
    let (n, d) = (n / g, d / g);
    if d < 0 {
        (-n, -d)
    } else {
        (n, d)
    }
}

fn invariants(m: &MontesinosKnot) -> ((i128, i128), Vec<(i128, i128)>) {
    let (n, d) = m.sum();
    let parts: Vec<(i128, i128)> = m
        .tangles
        .iter()
        .filter(|t| !t.is_integer())
        .map(|t| {
            let (p, q) = (t.numerator() as i128, t.denominator() as i128);
            (p.mod_floor(&q), q)
        })
        .collect();
    let mut best = parts.clone();
    let reversed: Vec<_> = parts.iter().rev().copied().collect();
    for seq in [&parts, &reversed] {
        for k in 0..seq.len() {
            let mut rot = seq[k..].to_vec();
            rot.extend_from_slice(&seq[..k]);
            if rot < best {
                best = rot;
            }
        }
    }
    (reduce(n, d), best)
}

/// Same total `Σ p_i/q_i` and the same fractional parts up to rotation and
/// reversal, integer tangles being absorbed into their neighbours.
pub fn montesinos_equiv(a: &MontesinosKnot, b: &MontesinosKnot) -> bool {
    invariants(a) == invariants(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TwoBridgeKind {
    Unknot,
    Knot,
    TwoComponentLink,
}

/// `|p| = 1` is the unknot, even `p` (including the unlink `p = 0`) a
/// two-component link.
pub fn two_bridge_classify(p: i64) -> TwoBridgeKind {
    match p.unsigned_abs() {
        1 => TwoBridgeKind::Unknot,
        x if x % 2 == 0 => TwoBridgeKind::TwoComponentLink,
        _ => TwoBridgeKind::Knot,
    }
}

/// The two-bridge link `b(p, q)`, `p >= 0`, with `q` reduced mod `p`
/// (determined up to mirror image and `q ↦ q^{-1}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwoBridgeLink {
    pub p: i64,
    pub q: i64,
    pub kind: TwoBridgeKind,
}

impl TwoBridgeLink {
    fn new(p: i128, q: i128) -> Self {
        let p = p.abs();
        let q = if p == 0 { 1 } else { q.mod_floor(&p) };
        let p = i64::try_from(p).expect("small");
        TwoBridgeLink {
            p,
            q: i64::try_from(q).expect("small"),
            kind: two_bridge_classify(p),
        }
    }
}

impl fmt::Display for TwoBridgeLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b({}, {})", self.p, self.q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkDescriptor {
    Montesinos(MontesinosKnot),
    TwoBridge(TwoBridgeLink),
}

impl LinkDescriptor {
    pub fn is_unknot(&self) -> bool {
        matches!(self, LinkDescriptor::TwoBridge(t) if t.kind == TwoBridgeKind::Unknot)
    }
}

impl fmt::Display for LinkDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkDescriptor::Montesinos(m) => write!(f, "{}", m),
            LinkDescriptor::TwoBridge(t) => write!(f, "{}", t),
        }
    }
}

/// Absorb integer tangles; with at most two non-integer tangles left the
/// closure is two-bridge: `N(a/b + c/d) = b(ad + bc, ad' + bc')` where
/// `cd' - dc' = 1`.
pub fn classify_montesinos(m: &MontesinosKnot) -> LinkDescriptor {
    classify(m.clone())
}

fn classify(m: MontesinosKnot) -> LinkDescriptor {
    let shift: i128 = m
        .tangles
        .iter()
        .filter(|t| t.is_integer())
        .map(|t| t.numerator() as i128)
        .sum();
    let rest: Vec<(i128, i128)> = m
        .tangles
        .iter()
        .filter(|t| !t.is_integer())
        .map(|t| (t.numerator() as i128, t.denominator() as i128))
        .collect();
    match rest.as_slice() {
        [] => LinkDescriptor::TwoBridge(TwoBridgeLink::new(shift, 1)),
        [(p, q)] => LinkDescriptor::TwoBridge(TwoBridgeLink::new(p + shift * q, *q)),
        [(a, b), (c, d)] => {
            let a = a + shift * b;
            let e = c.extended_gcd(d);
            // e.x * c + e.y * d = 1, so d' = e.x and c' = -e.y.
            let (dp, cp) = (e.x, -e.y);
            LinkDescriptor::TwoBridge(TwoBridgeLink::new(a * d + b * c, a * dp + b * cp))
        }
        _ => LinkDescriptor::Montesinos(m),
    }
}

/// Replace the tangle at `position` (1-based) by `to`, which must have the
/// same endpoint pairing.
pub fn replace_tangle(
    m: &MontesinosKnot,
    position: usize,
    to: RationalTangle,
) -> Result<LinkDescriptor, MontesinosError> {
    let from = *position
        .checked_sub(1)
        .and_then(|i| m.tangles.get(i))
        .ok_or(MontesinosError::Position(position))?;
    if from == to {
        return Ok(LinkDescriptor::Montesinos(m.clone()));
    }
    if !is_proper_replacement(&from, &to) || to.is_infinity() {
        return Err(MontesinosError::Improper { from, to });
    }
    let mut tangles = m.tangles.clone();
    tangles[position - 1] = to;
    Ok(classify(MontesinosKnot::new(tangles)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalUnknottingCertificate {
    pub position: usize,
    pub from: RationalTangle,
    pub to: RationalTangle,
    pub result: TwoBridgeLink,
}

/// Candidate tangles with `max(|p|, q) <= bound`, ordered by that height,
/// then `q`, then `p`.
fn candidates(bound: i64) -> Vec<RationalTangle> {
    let mut out = Vec::new();
    for h in 1..=bound {
        for q in 0..=h {
            for p in -h..=h {
                if p.abs().max(q) != h || p.gcd(&q) != 1 || (q == 0 && p != 1) {
                    continue;
                }
                out.push(RationalTangle::new(p, q).expect("reduced"));
            }
        }
    }
    out
}

/// First single proper replacement, scanning positions in order, that turns
/// `m` into the unknot.
pub fn rational_unknotting_certificate(
    m: &MontesinosKnot,
    bound: i64,
) -> Option<RationalUnknottingCertificate> {
    let cands = candidates(bound);
    for (i, &from) in m.tangles.iter().enumerate() {
        for &to in &cands {
            if to.is_infinity() || !is_proper_replacement(&from, &to) {
                continue;
            }
            if let Ok(LinkDescriptor::TwoBridge(t)) = replace_tangle(m, i + 1, to) {
                if t.kind == TwoBridgeKind::Unknot {
                    return Some(RationalUnknottingCertificate {
                        position: i + 1,
                        from,
                        to,
                        result: t,
                    });
                }
            }
        }
    }
    None
}

struct Tangle {
    /// NW, NE, SW, SE.
    ends: [usize; 4],
    crossings: Vec<usize>,
}

fn zero(d: &mut Builder) -> Tangle {
    let (top, bottom) = (d.fresh(), d.fresh());
    Tangle {
        ends: [top, top, bottom, bottom],
        crossings: Vec::new(),
    }
}

/// One horizontal half-twist of the eastern endpoints.
fn twist(d: &mut Builder, t: &mut Tangle, positive: bool) {
    let [_, ne, _, se] = t.ends;
    let (new_ne, new_se) = (d.fresh(), d.fresh());
    d.crossings.push(if positive {
        [new_se, new_ne, ne, se]
    } else {
        [se, new_se, new_ne, ne]
    });
    t.crossings.push(d.crossings.len() - 1);
    t.ends[1] = new_ne;
    t.ends[3] = new_se;
}

/// Reflection in the NW–SE diagonal: `F ↦ 1/F`.
fn invert(d: &mut Builder, t: &mut Tangle) {
    t.ends.swap(1, 2);
    for &c in &t.crossings {
        let [s0, s1, s2, s3] = d.crossings[c];
        d.crossings[c] = [s0, s3, s2, s1];
    }
}

fn rational(d: &mut Builder, cf: &[i64]) -> Tangle {
    let mut t = zero(d);
    for (i, &a) in cf.iter().enumerate() {
        if i > 0 {
            invert(d, &mut t);
        }
        for _ in 0..a.unsigned_abs() {
            twist(d, &mut t, a > 0);
        }
    }
    t
}

fn sum(d: &mut Builder, a: Tangle, b: Tangle) -> Tangle {
    d.join(a.ends[1], b.ends[0]);
    d.join(a.ends[3], b.ends[2]);
    let mut crossings = a.crossings;
    crossings.extend(b.crossings);
    Tangle {
        ends: [a.ends[0], b.ends[1], a.ends[2], b.ends[3]],
        crossings,
    }
}

/// A PD code for the numerator closure of the tangle sum.
pub fn pd_for_montesinos(m: &MontesinosKnot) -> Result<PdCode, MontesinosError> {
    let mut d = Builder::default();
    let mut acc: Option<Tangle> = None;
    for t in &m.tangles {
        let r = rational(&mut d, &t.continued_fraction());
        acc = Some(match acc {
            None => r,
            Some(a) => sum(&mut d, a, r),
        });
    }
    let t = acc.expect("nonempty");
    d.join(t.ends[0], t.ends[1]);
    d.join(t.ends[2], t.ends[3]);
    Ok(d.into_pd()?)
}

/// A PD code for `N(p/q)`. Vertical twists vanish in the numerator
/// closure, so `q` is first reduced modulo `p`.
pub fn pd_for_two_bridge(p: i64, q: i64) -> Result<PdCode, MontesinosError> {
    let q = if p == 0 {
        q
    } else {
        match q.rem_euclid(p.abs()) {
            0 => p.abs(),
            r => r,
        }
    };
    pd_for_montesinos(&MontesinosKnot::new(alloc::vec![RationalTangle::new(
        p, q
    )?])?)
}
