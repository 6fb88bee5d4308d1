//! Wirtinger presentations from diagrams, and the relator-level effect of
//! crossing changes and virtualizations.

use alloc::format;
use alloc::vec::Vec;

use thiserror::Error;

use super::gauss::{GaussCode, GaussError};
use super::pd::PdCode;
use super::Sign;
use crate::presentation::Presentation;
use crate::word::{Letter, Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WirtingerError {
    #[error(transparent)]
    Gauss(#[from] GaussError),
}

/// Two presentations differing in exactly the relator at `index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorDelta {
    pub before: Presentation,
    pub after: Presentation,
    pub index: usize,
}

fn generators(n: usize) -> Vec<Symbol> {
    (1..=n)
        .map(|i| Symbol::new(&format!("x{}", i)).expect("valid name"))
        .collect()
}

fn letter(gens: &[Symbol], i: usize, inverse: bool) -> Letter {
    Letter::new(gens[i].clone(), inverse)
}

/// `x_out x_over^{-s} x_in^{-1} x_over^{s}`.
fn crossing_relator(gens: &[Symbol], out: usize, over: usize, inn: usize, sign: Sign) -> Word {
    let pos = sign == Sign::Positive;
    Word::reduce([
        letter(gens, out, false),
        letter(gens, over, pos),
        letter(gens, inn, true),
        letter(gens, over, !pos),
    ])
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Arcs are the classes of edge labels joined along overstrands, numbered
/// by their smallest label. One relator per crossing, in PD order.
pub fn wirtinger_from_pd(pd: &PdCode) -> Presentation {
    let n = pd.crossing_count();
    if n == 0 {
        return Presentation::new(generators(1), Vec::new()).expect("valid");
    }
    let mut parent: Vec<usize> = (0..=2 * n).collect();
    for t in pd.crossings() {
        let a = find(&mut parent, t[1] as usize);
        let b = find(&mut parent, t[3] as usize);
        parent[a.max(b)] = a.min(b);
    }
    let mut arc_of = alloc::vec![usize::MAX; 2 * n + 1];
    let mut count = 0;
    for label in 1..=2 * n {
        let root = find(&mut parent, label);
        if arc_of[root] == usize::MAX {
            arc_of[root] = count;
            count += 1;
        }
        arc_of[label] = arc_of[root];
    }
    let gens = generators(count);
    let relators = pd
        .crossings()
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let arc = |l: u32| arc_of[l as usize];
            crossing_relator(&gens, arc(t[2]), arc(t[1]), arc(t[0]), pd.sign(i))
        })
        .collect();
    Presentation::new(gens, relators).expect("valid")
}

/// Arc bookkeeping for a Gauss code: arc `k` runs from the `k`-th
/// undercrossing to the next one.
struct GaussArcs {
    under: Vec<usize>,
    len: usize,
}

impl GaussArcs {
    fn new(code: &GaussCode) -> Self {
        let under = code
            .letters()
            .iter()
            .enumerate()
            .filter(|(_, l)| !l.over)
            .map(|(i, _)| i)
            .collect();
        GaussArcs {
            under,
            len: code.len(),
        }
    }

    fn count(&self) -> usize {
        self.under.len()
    }

    /// Arc containing position `p`.
    fn arc_at(&self, p: usize) -> usize {
        let before = self.under.iter().filter(|&&u| u < p).count();
        if before == 0 {
            self.count() - 1
        } else {
            before - 1
        }
    }

    /// Index of the undercrossing at position `p`.
    fn under_index(&self, p: usize) -> usize {
        self.under
            .iter()
            .position(|&u| u == p)
            .expect("under letter")
    }

    /// Distance along arc `k` from its start.
    fn offset(&self, k: usize, p: usize) -> usize {
        (p + self.len - self.under[k] - 1) % self.len
    }
}

/// Per-crossing generator roles: (out, over, in) for crossing ids `1..=n`.
fn roles(
    code: &GaussCode,
    arcs: &GaussArcs,
    split: Option<(usize, usize, usize)>,
) -> Vec<(usize, usize, usize)> {
    let n = arcs.count();
    // split = (arc, offset of the split point, new generator index)
    let over_gen = |p: usize| {
        let a = arcs.arc_at(p);
        match split {
            Some((sa, so, g)) if sa == a && arcs.offset(a, p) > so => g,
            _ => a,
        }
    };
    let mut out = alloc::vec![(0, 0, 0); code.crossing_count()];
    for id in 1..=code.crossing_count() as u32 {
        let (o, u) = code.positions(id).expect("valid code");
        let k = arcs.under_index(u);
        let inn = (k + n - 1) % n;
        let inn = match split {
            Some((sa, _, g)) if sa == inn => g,
            _ => inn,
        };
        out[id as usize - 1] = (k, over_gen(o), inn);
    }
    out
}

/// Arcs are the segments between undercrossings; relators follow crossing
/// ids. The crossingless code gives `<x1 | >`.
pub fn wirtinger_from_gauss(code: &GaussCode) -> Presentation {
    if code.is_empty() {
        return Presentation::new(generators(1), Vec::new()).expect("valid");
    }
    let arcs = GaussArcs::new(code);
    let gens = generators(arcs.count());
    let relators = roles(code, &arcs, None)
        .into_iter()
        .enumerate()
        .map(|(i, (out, over, inn))| {
            let sign = code.sign(i as u32 + 1).expect("valid");
            crossing_relator(&gens, out, over, inn, sign)
        })
        .collect();
    Presentation::new(gens, relators).expect("valid")
}

/// Presentations of the knot and of its crossing change at `id` that differ
/// in a single relator.
///
/// The overarc at `id` is split into `c_in` and `c_out` at that crossing.
/// Relator 0 is `c_in c_out^-1` before and `a b^-1` after, where `a`, `b`
/// are the incoming and outgoing underarcs; relator `id` is the boundary
/// relation `b = c_out^-1 a c_in` (positive) or `b = c_in a c_out^-1`
/// (negative), which holds in both groups.
pub fn crossing_change_relator_delta(
    code: &GaussCode,
    id: u32,
) -> Result<RelatorDelta, WirtingerError> {
    code.crossing_change(id)?;
    let arcs = GaussArcs::new(code);
    let n = arcs.count();
    let gens = generators(n + 1);
    let (o, _) = code.positions(id).expect("checked");
    let over = arcs.arc_at(o);
    let split = (over, arcs.offset(over, o), n);
    let roles = roles(code, &arcs, Some(split));
    let (c_in, c_out) = (over, n);
    let mut relators = alloc::vec![Word::reduce([
        letter(&gens, c_in, false),
        letter(&gens, c_out, true),
    ])];
    for (i, &(out, ov, inn)) in roles.iter().enumerate() {
        let sign = code.sign(i as u32 + 1).expect("valid");
        if i as u32 + 1 != id {
            relators.push(crossing_relator(&gens, out, ov, inn, sign));
            continue;
        }
        let (a, b) = (inn, out);
        let boundary = match sign {
            Sign::Positive => [
                letter(&gens, b, true),
                letter(&gens, c_out, true),
                letter(&gens, a, false),
                letter(&gens, c_in, false),
            ],
            Sign::Negative => [
                letter(&gens, b, true),
                letter(&gens, c_in, false),
                letter(&gens, a, false),
                letter(&gens, c_out, true),
            ],
        };
        relators.push(Word::reduce(boundary));
    }
    let (a, b) = (roles[id as usize - 1].2, roles[id as usize - 1].0);
    let before = Presentation::new(gens.clone(), relators).expect("valid");
    let after = before
        .replace_relator_at(
            0,
            Word::reduce([letter(&gens, a, false), letter(&gens, b, true)]),
        )
        .expect("valid");
    Ok(RelatorDelta {
        before,
        after,
        index: 0,
    })
}

/// The Wirtinger presentation with the relator of crossing `id` replaced by
/// `x_out x_in^-1`.
pub fn virtualize_relator_delta(code: &GaussCode, id: u32) -> Result<RelatorDelta, WirtingerError> {
    code.virtualize(id)?;
    let before = wirtinger_from_gauss(code);
    let arcs = GaussArcs::new(code);
    let (out, _, inn) = roles(code, &arcs, None)[id as usize - 1];
    let gens = before.generators().to_vec();
    let index = id as usize - 1;
    let after = before
        .replace_relator_at(
            index,
            Word::reduce([letter(&gens, out, false), letter(&gens, inn, true)]),
        )
        .expect("valid");
    Ok(RelatorDelta {
        before,
        after,
        index,
    })
}
