//! Bounded search for normal-closure membership certificates.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use super::Presentation;
use crate::word::{Letter, Word};

/// Hard cap on explored states, independent of `width`.
const MAX_STATES: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClosureBase {
    Seed(usize),
    Relator(usize),
}

/// `conjugator · base^sign · conjugator^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureFactor {
    pub conjugator: Word,
    pub base: ClosureBase,
    pub inverse: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureResult {
    /// `target` equals the product of the factors in the free group.
    Yes(Vec<ClosureFactor>),
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureSearch {
    pub depth: usize,
    pub width: usize,
}

impl ClosureFactor {
    pub fn evaluate(&self, seeds: &[Word], relators: &[Word]) -> Word {
        let base = match self.base {
            ClosureBase::Seed(i) => &seeds[i],
            ClosureBase::Relator(i) => &relators[i],
        };
        let b = if self.inverse {
            base.inverse()
        } else {
            base.clone()
        };
        b.conjugate(&self.conjugator)
    }
}

/// Check that the product of `factors` equals `target` in the free group.
pub fn verify_expression(
    target: &Word,
    seeds: &[Word],
    relators: &[Word],
    factors: &[ClosureFactor],
) -> bool {
    let product = factors.iter().fold(Word::identity(), |acc, f| {
        acc.multiply(&f.evaluate(seeds, relators))
    });
    product == *target
}

/// All freely reduced words of length `<= depth`, in shortlex order.
fn conjugators(p: &Presentation, depth: usize) -> Vec<Word> {
    let letters: Vec<Letter> = p
        .generators()
        .iter()
        .flat_map(|g| [Letter::new(g.clone(), false), Letter::new(g.clone(), true)])
        .collect();
    let mut out = alloc::vec![Word::identity()];
    let mut layer = alloc::vec![Word::identity()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for w in &layer {
            for l in &letters {
                if w.letters().last().is_some_and(|x| *x == l.inv()) {
                    continue;
                }
                let mut ls = w.letters().to_vec();
                ls.push(l.clone());
                next.push(Word::reduce(ls));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Breadth-first search for `target` as a product of at most `width`
/// conjugates of seeds and relators (and their inverses), with conjugators of
/// length at most `depth`. Sound but not complete.
pub fn normal_closure_member_bounded(
    p: &Presentation,
    target: &Word,
    seeds: &[Word],
    search: ClosureSearch,
) -> ClosureResult {
    if target.is_identity() {
        return ClosureResult::Yes(Vec::new());
    }
    let mut factors: Vec<(ClosureFactor, Word)> = Vec::new();
    let bases = (0..seeds.len())
        .map(ClosureBase::Seed)
        .chain((0..p.relators().len()).map(ClosureBase::Relator));
    let conj = conjugators(p, search.depth);
    for base in bases {
        for c in &conj {
            for inverse in [false, true] {
                let f = ClosureFactor {
                    conjugator: c.clone(),
                    base,
                    inverse,
                };
                let value = f.evaluate(seeds, p.relators());
                if !value.is_identity() {
                    factors.push((f, value));
                }
            }
        }
    }

    // Each state is the remaining word still to be expressed; a step peels a
    // factor off the front: rest = f · rest'.
    let mut parent: BTreeMap<Word, Option<(Word, usize)>> = BTreeMap::new();
    parent.insert(target.clone(), None);
    let mut queue: VecDeque<(Word, usize)> = VecDeque::new();
    queue.push_back((target.clone(), 0));
    while let Some((rest, used)) = queue.pop_front() {
        if used >= search.width {
            continue;
        }
        for (fi, (_, value)) in factors.iter().enumerate() {
            let next = value.inverse().multiply(&rest);
            if parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), Some((rest.clone(), fi)));
            if next.is_identity() {
                let mut chain = Vec::new();
                let mut cur = next;
                while let Some(Some((prev, fi))) = parent.get(&cur) {
                    chain.push(factors[*fi].0.clone());
                    cur = prev.clone();
                }
                chain.reverse();
                return ClosureResult::Yes(chain);
            }
            if parent.len() >= MAX_STATES {
                return ClosureResult::Inconclusive;
            }
            queue.push_back((next, used + 1));
        }
    }
    ClosureResult::Inconclusive
}
