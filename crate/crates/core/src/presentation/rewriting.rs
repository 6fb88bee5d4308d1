//! Knuth-Bendix completion for group presentations under shortlex order.
//!
//! Letters are encoded as `2i` for generator `i` and `2i + 1` for its
//! inverse, so each inverse sorts immediately after its generator.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use thiserror::Error;

use super::Presentation;
use crate::word::{Letter, Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewritingError {
    #[error("rewrite system is not complete")]
    Incomplete,
    #[error("`{0}` is not a generator of the rewrite system")]
    ForeignSymbol(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KbLimits {
    pub max_rules: usize,
    pub max_length: usize,
    pub max_steps: usize,
}

impl Default for KbLimits {
    fn default() -> Self {
        KbLimits {
            max_rules: 400,
            max_length: 40,
            max_steps: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Completion {
    Complete(RewriteSystem),
    Inconclusive { rules: usize, steps: usize },
}

/// Length-reducing or shortlex-reducing string rewriting rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteSystem {
    generators: Vec<Symbol>,
    rules: Vec<(Vec<u32>, Vec<u32>)>,
    complete: bool,
}

pub(crate) fn shortlex(a: &[u32], b: &[u32]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl RewriteSystem {
    pub fn generators(&self) -> &[Symbol] {
        &self.generators
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    /// Rules as pairs of words.
    pub fn rules(&self) -> Vec<(Word, Word)> {
        self.rules
            .iter()
            .map(|(l, r)| (self.decode(l), self.decode(r)))
            .collect()
    }

    pub fn encode(&self, w: &Word) -> Result<Vec<u32>, RewritingError> {
        encode(&self.generators, w)
    }

    pub fn decode(&self, v: &[u32]) -> Word {
        Word::reduce(
            v.iter()
                .map(|&c| Letter::new(self.generators[(c / 2) as usize].clone(), c % 2 == 1)),
        )
    }

    /// Normal form of `w`.
    pub fn normal_form(&self, w: &Word) -> Result<Word, RewritingError> {
        let v = self.encode(w)?;
        Ok(self.decode(&reduce(&self.rules, &v)))
    }

    /// Apply the rule at match site `choose` (modulo the number of sites), if any.
    pub fn rewrite_step(&self, v: &[u32], choose: usize) -> Option<Vec<u32>> {
        let mut sites = Vec::new();
        for (ri, (l, _)) in self.rules.iter().enumerate() {
            if l.len() > v.len() {
                continue;
            }
            for p in 0..=v.len() - l.len() {
                if &v[p..p + l.len()] == l.as_slice() {
                    sites.push((ri, p));
                }
            }
        }
        if sites.is_empty() {
            return None;
        }
        let (ri, p) = sites[choose % sites.len()];
        let (l, r) = &self.rules[ri];
        let mut out = v[..p].to_vec();
        out.extend_from_slice(r);
        out.extend_from_slice(&v[p + l.len()..]);
        Some(out)
    }

    pub fn word_problem(&self, w: &Word) -> Result<bool, RewritingError> {
        if !self.complete {
            return Err(RewritingError::Incomplete);
        }
        Ok(self.normal_form(w)?.is_identity())
    }
}

fn encode(gens: &[Symbol], w: &Word) -> Result<Vec<u32>, RewritingError> {
    w.letters()
        .iter()
        .map(|l| {
            let i = gens
                .iter()
                .position(|g| *g == l.symbol)
                .ok_or_else(|| RewritingError::ForeignSymbol(l.symbol.as_str().into()))?;
            Ok(2 * i as u32 + u32::from(l.inverse))
        })
        .collect()
}

/// Leftmost-innermost reduction with a stack.
fn reduce(rules: &[(Vec<u32>, Vec<u32>)], v: &[u32]) -> Vec<u32> {
    let mut by_last: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, (l, _)) in rules.iter().enumerate() {
        if let Some(&c) = l.last() {
            by_last.entry(c).or_default().push(i);
        }
    }
    reduce_indexed(rules, &by_last, v)
}

fn reduce_indexed(
    rules: &[(Vec<u32>, Vec<u32>)],
    by_last: &BTreeMap<u32, Vec<usize>>,
    v: &[u32],
) -> Vec<u32> {
    let mut input: Vec<u32> = v.iter().rev().copied().collect();
    let mut out: Vec<u32> = Vec::with_capacity(v.len());
    while let Some(c) = input.pop() {
        out.push(c);
        if let Some(cands) = by_last.get(&c) {
            for &ri in cands {
                let (l, r) = &rules[ri];
                if out.ends_with(l) {
                    out.truncate(out.len() - l.len());
                    input.extend(r.iter().rev());
                    break;
                }
            }
        }
    }
    out
}

struct Completer {
    rules: Vec<Option<(Vec<u32>, Vec<u32>)>>,
    limits: KbLimits,
    steps: usize,
}

impl Completer {
    fn live(&self) -> Vec<(Vec<u32>, Vec<u32>)> {
        self.rules.iter().flatten().cloned().collect()
    }

    fn live_count(&self) -> usize {
        self.rules.iter().flatten().count()
    }

    fn normal(&self, v: &[u32]) -> Vec<u32> {
        let live = self.live();
        reduce(&live, v)
    }

    /// Add `a = b`, interreducing. Returns false when a limit is hit.
    fn add_equation(&mut self, a: Vec<u32>, b: Vec<u32>) -> bool {
        let mut pending: VecDeque<(Vec<u32>, Vec<u32>)> = VecDeque::new();
        pending.push_back((a, b));
        while let Some((a, b)) = pending.pop_front() {
            self.steps += 1;
            if self.steps > self.limits.max_steps {
                return false;
            }
            let a = self.normal(&a);
            let b = self.normal(&b);
            let (l, r) = match shortlex(&a, &b) {
                Ordering::Equal => continue,
                Ordering::Greater => (a, b),
                Ordering::Less => (b, a),
            };
            if l.len() > self.limits.max_length {
                return false;
            }
            // Rules whose left side contains l are removed and re-added.
            for slot in self.rules.iter_mut() {
                let Some((sl, sr)) = slot else { continue };
                if contains(sl, &l) {
                    pending.push_back((sl.clone(), sr.clone()));
                    *slot = None;
                }
            }
            self.rules.push(Some((l, r)));
            let live = self.live();
            for slot in self.rules.iter_mut().flatten() {
                slot.1 = reduce(&live, &slot.1);
            }
            if self.live_count() > self.limits.max_rules {
                return false;
            }
        }
        true
    }
}

fn contains(hay: &[u32], needle: &[u32]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Critical pairs from suffix/prefix overlaps of `l1` and `l2`.
fn overlaps(r1: &(Vec<u32>, Vec<u32>), r2: &(Vec<u32>, Vec<u32>)) -> Vec<(Vec<u32>, Vec<u32>)> {
    let (l1, rr1) = r1;
    let (l2, rr2) = r2;
    let mut out = Vec::new();
    for k in 1..l1.len().min(l2.len()) {
        if l1[l1.len() - k..] == l2[..k] {
            // l1 = a b, l2 = b c, overlap word a b c.
            let a = &l1[..l1.len() - k];
            let c = &l2[k..];
            let mut left = rr1.clone();
            left.extend_from_slice(c);
            let mut right = a.to_vec();
            right.extend_from_slice(rr2);
            out.push((left, right));
        }
    }
    out
}

/// Shortlex Knuth-Bendix completion on `<S | R>` with free inverse rules.
pub fn knuth_bendix(p: &Presentation, limits: KbLimits) -> Completion {
    let gens = p.generators().to_vec();
    let mut c = Completer {
        rules: Vec::new(),
        limits,
        steps: 0,
    };
    let inconclusive = |c: &Completer| Completion::Inconclusive {
        rules: c.live_count(),
        steps: c.steps,
    };
    for i in 0..gens.len() as u32 {
        c.rules
            .push(Some((alloc::vec![2 * i, 2 * i + 1], Vec::new())));
        c.rules
            .push(Some((alloc::vec![2 * i + 1, 2 * i], Vec::new())));
    }
    for r in p.relators() {
        let v = encode(&gens, r).expect("relators use listed generators");
        if !c.add_equation(v, Vec::new()) {
            return inconclusive(&c);
        }
    }
    type Rule = (Vec<u32>, Vec<u32>);
    let mut done: BTreeSet<(Rule, Rule)> = BTreeSet::new();
    loop {
        let live = c.live();
        let mut fresh = Vec::new();
        for r1 in &live {
            for r2 in &live {
                if done.insert((r1.clone(), r2.clone())) {
                    fresh.extend(overlaps(r1, r2));
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        for (a, b) in fresh {
            if !c.add_equation(a, b) {
                return inconclusive(&c);
            }
        }
    }
    let mut rules = c.live();
    rules.sort_by(|a, b| shortlex(&a.0, &b.0));
    Completion::Complete(RewriteSystem {
        generators: gens,
        rules,
        complete: true,
    })
}
