//! Seeded random presentations and null-homologous relator replacements.

use rand::seq::SliceRandom;
use rand::Rng;

use mqindex_core::presentation::Presentation;
use mqindex_core::word::{Letter, Symbol, Word};

pub fn generators(n: usize) -> Vec<Symbol> {
    (1..=n)
        .map(|i| Symbol::new(&format!("x{i}")).expect("valid name"))
        .collect()
}

/// A freely reduced word of length `1..=max_len` (shorter after reduction).
pub fn word<R: Rng>(rng: &mut R, gens: &[Symbol], max_len: usize) -> Word {
    loop {
        let len = rng.gen_range(1..=max_len);
        let w = Word::reduce((0..len).map(|_| {
            Letter::new(
                gens.choose(rng).expect("nonempty").clone(),
                rng.gen_bool(0.5),
            )
        }));
        if !w.is_identity() {
            return w;
        }
    }
}

/// Between `min_gens` and `max_gens` generators, up to `generators + 1`
/// relators of length at most `max_len`.
pub fn presentation<R: Rng>(
    rng: &mut R,
    min_gens: usize,
    max_gens: usize,
    max_len: usize,
) -> Presentation {
    let gens = generators(rng.gen_range(min_gens.max(1)..=max_gens));
    let r = rng.gen_range(1..=gens.len() + 1);
    let relators = (0..r).map(|_| word(rng, &gens, max_len)).collect();
    Presentation::new(gens, relators).expect("valid presentation")
}

/// A relator with the same exponent sums as `old` and different from it.
///
/// Needs at least two generators: over one generator no such word exists.
pub fn null_homologous_variant<R: Rng>(rng: &mut R, gens: &[Symbol], old: &Word) -> Word {
    assert!(
        gens.len() >= 2,
        "null-homologous variants need two generators"
    );
    loop {
        let new = if rng.gen_bool(0.5) {
            let u = word(rng, gens, 2);
            let v = word(rng, gens, 2);
            old.multiply(&Word::commutator(&u, &v))
        } else {
            old.conjugate(&word(rng, gens, 2))
        };
        if new != *old && !new.is_identity() {
            return new;
        }
    }
}

/// `p` with `k` relators (at distinct positions) replaced by
/// null-homologous variants.
pub fn replaced<R: Rng>(rng: &mut R, p: &Presentation, k: usize) -> Presentation {
    let mut positions: Vec<usize> = (0..p.relators().len()).collect();
    positions.shuffle(rng);
    let mut q = p.clone();
    for &i in positions.iter().take(k) {
        let new = null_homologous_variant(rng, p.generators(), &q.relators()[i]);
        q = q.replace_relator_at(i, new).expect("same generators");
    }
    q
}
