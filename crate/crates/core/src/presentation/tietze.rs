//! Greedy, budgeted Tietze simplification.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{cyclic_key, solve_for, Presentation};
use crate::word::{Symbol, Word};

impl Presentation {
    /// Simplify by cyclic reduction, deletion of trivial and repeated
    /// relators, elimination of generators that occur exactly once in some
    /// relator, and length reduction between relator pairs. Each applied
    /// transformation costs one unit of `budget`. Returns the simplified
    /// presentation and its generator count.
    pub fn tietze_simplify(&self, budget: usize) -> (Presentation, usize) {
        let mut gens = self.generators.clone();
        let mut rels: Vec<Word> = self.relators.clone();
        let mut steps = 0usize;
        loop {
            tidy(&mut rels);
            if steps >= budget {
                break;
            }
            if let Some((g, i)) = best_elimination(&gens, &rels) {
                let solved = solve_for(&rels[i], &g);
                rels.remove(i);
                for r in rels.iter_mut() {
                    if r.occurrences(&g) > 0 {
                        *r = r.substitute(|s| {
                            if *s == g {
                                solved.clone()
                            } else {
                                Word::generator(s.clone())
                            }
                        });
                    }
                }
                gens.retain(|s| *s != g);
                steps += 1;
                continue;
            }
            if shorten_once(&mut rels) {
                steps += 1;
                continue;
            }
            break;
        }
        let p = Presentation {
            generators: gens,
            relators: rels,
        };
        let n = p.generators.len();
        (p, n)
    }
}

/// Cyclically reduce, drop empty relators and relators repeated up to
/// rotation and inversion.
fn tidy(rels: &mut Vec<Word>) {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(rels.len());
    for r in rels.drain(..) {
        let c = r.cyclically_reduced();
        if c.is_identity() {
            continue;
        }
        if seen.insert(cyclic_key(&c)) {
            out.push(c);
        }
    }
    *rels = out;
}

/// The elimination giving the smallest total relator length afterwards;
/// ties go to the earlier relator, then the earlier generator.
fn best_elimination(gens: &[Symbol], rels: &[Word]) -> Option<(Symbol, usize)> {
    let mut best: Option<(usize, Symbol, usize)> = None;
    for (i, r) in rels.iter().enumerate() {
        for g in gens {
            if r.occurrences(g) != 1 {
                continue;
            }
            let solved = solve_for(r, g);
            let cost: usize = rels
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, s)| s.len() + s.occurrences(g) * solved.len().saturating_sub(1))
                .sum();
            if best.as_ref().is_none_or(|(c, _, _)| cost < *c) {
                best = Some((cost, g.clone(), i));
            }
        }
    }
    best.map(|(_, g, i)| (g, i))
}

/// Replace one relator by a strictly shorter cyclic reduction of its product
/// with a rotation of another relator or its inverse.
fn shorten_once(rels: &mut [Word]) -> bool {
    for i in 0..rels.len() {
        for j in 0..rels.len() {
            if i == j || rels[j].len() > 2 * rels[i].len() {
                continue;
            }
            let target = rels[i].len();
            let other = rels[j].clone();
            let inv = other.inverse();
            for base in [&other, &inv] {
                for k in 0..base.len() {
                    let cand = rels[i].multiply(&base.rotate(k)).cyclically_reduced();
                    if cand.len() < target {
                        rels[i] = cand;
                        return true;
                    }
                }
            }
        }
    }
    false
}
