//! Homomorphisms onto non-abelian subgroups of small symmetric groups.

use alloc::vec::Vec;

use crate::presentation::Presentation;
use crate::word::Word;

/// A permutation of `0..degree`, stored as images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(pub Vec<u8>);

impl Permutation {
    fn identity(n: usize) -> Self {
        Permutation((0..n as u8).collect())
    }

    /// `self` then `other`.
    fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    fn inverse(&self) -> Permutation {
        let mut out = alloc::vec![0u8; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u8;
        }
        Permutation(out)
    }
}

fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    fn rec(k: usize, cur: &mut Vec<u8>, out: &mut Vec<Permutation>) {
        if k == cur.len() {
            out.push(Permutation(cur.clone()));
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out.sort();
    out
}

fn evaluate(w: &Word, p: &Presentation, images: &[Permutation], n: usize) -> Permutation {
    w.letters().iter().fold(Permutation::identity(n), |acc, l| {
        let i = p
            .generators()
            .iter()
            .position(|g| *g == l.symbol)
            .expect("generator");
        let x = if l.inverse {
            images[i].inverse()
        } else {
            images[i].clone()
        };
        acc.then(&x)
    })
}

/// Generator images in `S_degree` satisfying every relator with
/// non-commuting images, found by backtracking. Only attempted for at most
/// four generators.
pub fn symmetric_quotient(p: &Presentation, degree: usize) -> Option<Vec<Permutation>> {
    let k = p.generator_count();
    if k > 4 || degree < 3 {
        return None;
    }
    let perms = all_permutations(degree);
    let id = Permutation::identity(degree);
    // Relators become checkable once their last-needed generator is assigned.
    let mut ready: Vec<Vec<&Word>> = alloc::vec![Vec::new(); k];
    for r in p.relators() {
        let last = r
            .symbols()
            .map(|s| {
                p.generators()
                    .iter()
                    .position(|g| g == s)
                    .expect("generator")
            })
            .max();
        if let Some(i) = last {
            ready[i].push(r);
        }
    }
    let mut images: Vec<Permutation> = alloc::vec![id.clone(); k];
    fn rec(
        i: usize,
        p: &Presentation,
        perms: &[Permutation],
        ready: &[Vec<&Word>],
        images: &mut Vec<Permutation>,
        id: &Permutation,
        degree: usize,
    ) -> bool {
        if i == images.len() {
            return (0..images.len()).any(|a| {
                (a + 1..images.len())
                    .any(|b| images[a].then(&images[b]) != images[b].then(&images[a]))
            });
        }
        for x in perms {
            images[i] = x.clone();
            let ok = ready[i]
                .iter()
                .all(|r| evaluate(r, p, &images[..], degree) == *id);
            if ok && rec(i + 1, p, perms, ready, images, id, degree) {
                return true;
            }
        }
        false
    }
    if rec(0, p, &perms, &ready, &mut images, &id, degree) {
        Some(images)
    } else {
        None
    }
}
