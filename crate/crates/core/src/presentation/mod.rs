//! Finite group presentations `<S | R>`, abelianization, relator replacement
//! and generator elimination.

mod closure;
mod rewriting;
mod tietze;

pub use closure::{
    normal_closure_member_bounded, verify_expression, ClosureBase, ClosureFactor, ClosureResult,
    ClosureSearch,
};
pub use rewriting::{knuth_bendix, Completion, KbLimits, RewriteSystem, RewritingError};

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::matrix::{lattice_member, snf, IntegerMatrix};
use crate::word::{Symbol, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("relator `{relator}` uses `{symbol}`, which is not a generator")]
    ForeignSymbol { relator: String, symbol: String },
    #[error("generator lists differ")]
    GeneratorMismatch,
    #[error("relator `{0}` is not in the presentation")]
    RelatorAbsent(String),
    #[error("new relator `{0}` is not null-homologous in the original group")]
    NewNotNullHomologous(String),
    #[error("old relator `{0}` is not null-homologous in the resulting group")]
    OldNotNullHomologous(String),
    #[error("`{generator}` occurs {count} times in `{relator}`; exactly one is required")]
    Multiplicity {
        generator: String,
        relator: String,
        count: usize,
    },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// `<generators | relators>`; relators form a multiset of freely reduced words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: Vec<Symbol>,
    relators: Vec<Word>,
}

/// `Z^free_rank + Z/d_1 + ... + Z/d_k` with `d_1 | d_2 | ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroupInvariants {
    pub free_rank: usize,
    pub torsion_factors: Vec<BigInt>,
    pub minimal_generators: usize,
}

impl AbelianGroupInvariants {
    pub fn is_infinite_cyclic(&self) -> bool {
        self.free_rank == 1 && self.torsion_factors.is_empty()
    }
}

impl fmt::Display for AbelianGroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            n => parts.push(alloc::format!("Z^{}", n)),
        }
        for d in &self.torsion_factors {
            parts.push(alloc::format!("Z/{}", d));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `R_0 = R ∩ R'`, `R_G = R \ R_0`, `R_G' = R' \ R_0` as multisets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationDiff {
    pub common: Vec<Word>,
    pub only_left: Vec<Word>,
    pub only_right: Vec<Word>,
}

/// How relators are identified when diffing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RelatorMatching {
    /// Equal freely reduced words.
    #[default]
    Exact,
    /// Equal up to cyclic permutation and inversion.
    CyclicInverse,
}

impl Presentation {
    pub fn new(generators: Vec<Symbol>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.clone()) {
                return Err(PresentationError::DuplicateGenerator(g.to_string()));
            }
        }
        for r in &relators {
            if let Some(s) = r.symbols().find(|s| !seen.contains(*s)) {
                return Err(PresentationError::ForeignSymbol {
                    relator: r.to_string(),
                    symbol: s.to_string(),
                });
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    /// Build from generator names and relator strings in word syntax.
    pub fn parse(generators: &[&str], relators: &[&str]) -> Result<Self, PresentationError> {
        let gens = generators
            .iter()
            .map(|g| Symbol::new(g))
            .collect::<Result<Vec<_>, _>>()?;
        let rels = relators
            .iter()
            .map(|r| r.parse::<Word>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(gens, rels)
    }

    pub fn generators(&self) -> &[Symbol] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn check_word(&self, w: &Word) -> Result<(), PresentationError> {
        match w.symbols().find(|s| !self.generators.contains(s)) {
            Some(s) => Err(PresentationError::ForeignSymbol {
                relator: w.to_string(),
                symbol: s.to_string(),
            }),
            None => Ok(()),
        }
    }

    /// Same generators, relators `R ∪ extra`.
    pub fn with_relators(&self, extra: &[Word]) -> Result<Self, PresentationError> {
        let mut relators = self.relators.clone();
        relators.extend_from_slice(extra);
        Self::new(self.generators.clone(), relators)
    }

    /// Rows are relator exponent vectors.
    pub fn exponent_matrix(&self) -> IntegerMatrix {
        let rows: Vec<Vec<i64>> = self
            .relators
            .iter()
            .map(|r| {
                r.exponent_vector(&self.generators)
                    .expect("relators use listed generators")
            })
            .collect();
        IntegerMatrix::from_i64_rows(&rows, self.generators.len()).expect("consistent rows")
    }

    pub fn abelianization(&self) -> AbelianGroupInvariants {
        let d = snf(&self.exponent_matrix());
        let free_rank = self.generators.len() - d.rank();
        let torsion_factors: Vec<BigInt> = d
            .invariant_factors
            .into_iter()
            .filter(|f| !f.is_one())
            .collect();
        AbelianGroupInvariants {
            free_rank,
            minimal_generators: free_rank + torsion_factors.len(),
            torsion_factors,
        }
    }

    /// Whether `w` maps to zero in `H_1`.
    pub fn is_null_homologous(&self, w: &Word) -> Result<bool, PresentationError> {
        self.check_word(w)?;
        let v: Vec<BigInt> = w
            .exponent_vector(&self.generators)?
            .into_iter()
            .map(BigInt::from)
            .collect();
        Ok(lattice_member(&v, &self.exponent_matrix())
            .expect("dimensions agree")
            .is_some())
    }

    pub fn h1_equal(&self, other: &Presentation) -> bool {
        self.abelianization() == other.abelianization()
    }

    pub fn diff(
        &self,
        other: &Presentation,
        matching: RelatorMatching,
    ) -> Result<PresentationDiff, PresentationError> {
        if self.generators != other.generators {
            return Err(PresentationError::GeneratorMismatch);
        }
        let key = |w: &Word| match matching {
            RelatorMatching::Exact => w.clone(),
            RelatorMatching::CyclicInverse => cyclic_key(w),
        };
        let mut right: Vec<Option<&Word>> = other.relators.iter().map(Some).collect();
        let right_keys: Vec<Word> = other.relators.iter().map(key).collect();
        let mut common = Vec::new();
        let mut only_left = Vec::new();
        for r in &self.relators {
            let k = key(r);
            let hit = (0..right.len()).find(|&i| right[i].is_some() && right_keys[i] == k);
            match hit {
                Some(i) => {
                    right[i] = None;
                    common.push(r.clone());
                }
                None => only_left.push(r.clone()),
            }
        }
        let only_right = right.into_iter().flatten().cloned().collect();
        Ok(PresentationDiff {
            common,
            only_left,
            only_right,
        })
    }

    /// `<S | R \ {old}, new>`, optionally requiring the replacement to be
    /// null-homologous in both directions.
    pub fn replace_relator(
        &self,
        old: &Word,
        new: &Word,
        enforce_null_homologous: bool,
    ) -> Result<Presentation, PresentationError> {
        self.check_word(new)?;
        let pos = self
            .relators
            .iter()
            .position(|r| r == old)
            .ok_or_else(|| PresentationError::RelatorAbsent(old.to_string()))?;
        let mut relators = self.relators.clone();
        relators[pos] = new.clone();
        let result = Presentation::new(self.generators.clone(), relators)?;
        if enforce_null_homologous {
            if !self.is_null_homologous(new)? {
                return Err(PresentationError::NewNotNullHomologous(new.to_string()));
            }
            if !result.is_null_homologous(old)? {
                return Err(PresentationError::OldNotNullHomologous(old.to_string()));
            }
        }
        Ok(result)
    }

    /// Replace the relator at `index`.
    pub fn replace_relator_at(
        &self,
        index: usize,
        new: Word,
    ) -> Result<Presentation, PresentationError> {
        let old = self
            .relators
            .get(index)
            .ok_or_else(|| PresentationError::RelatorAbsent(alloc::format!("#{}", index)))?;
        if *old == new {
            return Ok(self.clone());
        }
        let mut relators = self.relators.clone();
        relators[index] = new;
        Presentation::new(self.generators.clone(), relators)
    }

    /// Remove `g` using `defining`, a relator containing `g` exactly once.
    pub fn eliminate_generator(
        &self,
        g: &Symbol,
        defining: &Word,
    ) -> Result<Presentation, PresentationError> {
        let pos = self
            .relators
            .iter()
            .position(|r| r == defining)
            .ok_or_else(|| PresentationError::RelatorAbsent(defining.to_string()))?;
        let count = defining.occurrences(g);
        if count != 1 {
            return Err(PresentationError::Multiplicity {
                generator: g.to_string(),
                relator: defining.to_string(),
                count,
            });
        }
        let solved = solve_for(defining, g);
        let generators: Vec<Symbol> = self
            .generators
            .iter()
            .filter(|s| *s != g)
            .cloned()
            .collect();
        let relators: Vec<Word> = self
            .relators
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pos)
            .map(|(_, r)| {
                r.substitute(|s| {
                    if s == g {
                        solved.clone()
                    } else {
                        Word::generator(s.clone())
                    }
                })
            })
            .collect();
        Presentation::new(generators, relators)
    }
}

/// The word equal to `g` in the group, given a relator containing `g` once.
pub(crate) fn solve_for(relator: &Word, g: &Symbol) -> Word {
    let at = relator
        .letters()
        .iter()
        .position(|l| l.symbol == *g)
        .expect("generator occurs");
    let inverse = relator.letters()[at].inverse;
    // relator = a g^e b, so g^e = a^-1 b^-1.
    let a = Word::reduce(relator.letters()[..at].iter().cloned());
    let b = Word::reduce(relator.letters()[at + 1..].iter().cloned());
    let ge = a.inverse().multiply(&b.inverse());
    if inverse {
        ge.inverse()
    } else {
        ge
    }
}

/// Representative of a relator up to cyclic permutation and inversion.
pub fn cyclic_key(w: &Word) -> Word {
    let c = w.cyclically_reduced();
    let ci = c.inverse();
    (0..c.len().max(1))
        .flat_map(|k| [c.rotate(k), ci.rotate(k)])
        .map(|r| r.cyclically_reduced())
        .filter(|r| r.len() == c.len())
        .min()
        .unwrap_or_default()
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("< ")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", g)?;
        }
        f.write_str(" | ")?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", r)?;
        }
        f.write_str(" >")
    }
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Presentation{}", self)
    }
}
