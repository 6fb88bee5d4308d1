//! Elementary Nielsen automorphisms of a free group, acting on the images of
//! the basis.

use alloc::vec::Vec;

use crate::presentation::Presentation;
use crate::word::{Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NielsenMove {
    Swap(usize, usize),
    Invert(usize),
    /// `w[target] ← w[target] · w[by]^power`
    Multiply {
        target: usize,
        by: usize,
        power: i64,
    },
}

impl NielsenMove {
    pub fn inverse(&self) -> NielsenMove {
        match *self {
            NielsenMove::Multiply { target, by, power } => NielsenMove::Multiply {
                target,
                by,
                power: -power,
            },
            ref m => m.clone(),
        }
    }

    pub fn apply(&self, images: &mut [Word]) {
        match *self {
            NielsenMove::Swap(i, j) => images.swap(i, j),
            NielsenMove::Invert(i) => images[i] = images[i].inverse(),
            NielsenMove::Multiply { target, by, power } => {
                images[target] = images[target].multiply(&images[by].pow(power))
            }
        }
    }
}

/// The automorphism `s_i ↦ images[i]` obtained by applying `moves` in
/// order to the identity basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NielsenAutomorphism {
    pub basis: Vec<Symbol>,
    pub moves: Vec<NielsenMove>,
}

impl NielsenAutomorphism {
    fn images_of(&self, moves: impl Iterator<Item = NielsenMove>) -> Vec<Word> {
        let mut images: Vec<Word> = self.basis.iter().cloned().map(Word::generator).collect();
        for m in moves {
            m.apply(&mut images);
        }
        images
    }

    pub fn images(&self) -> Vec<Word> {
        self.images_of(self.moves.iter().cloned())
    }

    pub fn inverse(&self) -> NielsenAutomorphism {
        NielsenAutomorphism {
            basis: self.basis.clone(),
            moves: self.moves.iter().rev().map(NielsenMove::inverse).collect(),
        }
    }

    pub fn apply(&self, w: &Word) -> Word {
        substitute(&self.basis, &self.images(), w)
    }
}

pub(crate) fn substitute(basis: &[Symbol], images: &[Word], w: &Word) -> Word {
    w.substitute(|s| {
        let i = basis
            .iter()
            .position(|b| b == s)
            .expect("word over the basis");
        images[i].clone()
    })
}

/// Convenience: the presentation's generators as the basis.
pub(crate) fn basis_of(p: &Presentation) -> Vec<Symbol> {
    p.generators().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_undoes() {
        let basis: Vec<Symbol> = ["x", "y", "z"]
            .iter()
            .map(|s| Symbol::new(s).unwrap())
            .collect();
        let a = NielsenAutomorphism {
            basis,
            moves: alloc::vec![
                NielsenMove::Multiply {
                    target: 0,
                    by: 1,
                    power: 2
                },
                NielsenMove::Swap(1, 2),
                NielsenMove::Invert(0),
                NielsenMove::Multiply {
                    target: 2,
                    by: 0,
                    power: -1
                },
            ],
        };
        let w: Word = "x y^-1 z x z".parse().unwrap();
        assert_eq!(a.inverse().apply(&a.apply(&w)), w);
        assert_eq!(a.apply(&a.inverse().apply(&w)), w);
    }
}
