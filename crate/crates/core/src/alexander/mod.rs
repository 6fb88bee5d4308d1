//! Alexander matrices, elementary ideals and Nakanishi-index lower bounds for
//! groups with infinite cyclic abelianization.

mod fox;
mod ideal;

pub use fox::{abelianize_t, fox_derivative, GroupRingElement};
pub use ideal::{
    ideal_is_unit, IdealDecision, IdealError, ProperWitness, ResidueCertificate, UnitCertificate,
};

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::laurent::LaurentPolynomial;
use crate::matrix::snf;
use crate::polymatrix::{combinations, LaurentMatrix};
use crate::presentation::Presentation;
use crate::word::Symbol;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlexanderError {
    #[error("abelianization is {0}, not Z: the multivariable case is out of scope")]
    NotInfiniteCyclic(alloc::string::String),
    #[error("{relators} relators for {generators} generators; expected n or n-1")]
    RelatorCount { generators: usize, relators: usize },
    #[error("no generator maps to a generator of Z")]
    NoUnitWeight,
    #[error("index {index} out of range")]
    DropOutOfRange { index: usize },
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// Fox Jacobian with one relator row and one generator column removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlexanderMatrix {
    pub matrix: LaurentMatrix,
    pub dropped_relator: Option<usize>,
    pub dropped_column: usize,
    pub weights: BTreeMap<Symbol, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryIdeal {
    pub index: usize,
    pub generators: Vec<LaurentPolynomial>,
    pub decision: IdealDecision,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NakanishiLowerBound {
    pub value: usize,
    /// Witness that `E_{value-1}` is proper (absent when `value == 0`).
    pub proper: Option<ProperWitness>,
    /// Certificate that `E_value` is the unit ideal.
    pub unit: UnitCertificate,
    /// Decisions for `E_0, ..., E_value`.
    pub ideals: Vec<ElementaryIdeal>,
}

/// Images of the generators under the isomorphism `H_1 ≅ Z`, sign chosen so
/// the first nonzero weight is positive.
pub fn infinite_cyclic_weights(p: &Presentation) -> Result<BTreeMap<Symbol, i64>, AlexanderError> {
    let ab = p.abelianization();
    if !ab.is_infinite_cyclic() {
        return Err(AlexanderError::NotInfiniteCyclic(alloc::format!("{}", ab)));
    }
    let n = p.generator_count();
    let d = snf(&p.exponent_matrix());
    let mut v: Vec<BigInt> = (0..n).map(|i| d.v[(i, n - 1)].clone()).collect();
    if v.iter()
        .find(|x| !x.is_zero())
        .is_some_and(Signed::is_negative)
    {
        v = v.into_iter().map(|x| -x).collect();
    }
    Ok(p.generators()
        .iter()
        .cloned()
        .zip(
            v.iter()
                .map(|x| i64::try_from(x).expect("weights fit in i64")),
        )
        .collect())
}

/// Alexander matrix with the default drops: the last relator when there are
/// as many relators as generators, and the first generator of weight ±1.
pub fn alexander_matrix(p: &Presentation) -> Result<AlexanderMatrix, AlexanderError> {
    let weights = infinite_cyclic_weights(p)?;
    let column = p
        .generators()
        .iter()
        .position(|g| weights[g].abs() == 1)
        .ok_or(AlexanderError::NoUnitWeight)?;
    let n = p.generator_count();
    let r = p.relators().len();
    let relator = if r == n {
        Some(r - 1)
    } else if r + 1 == n {
        None
    } else {
        return Err(AlexanderError::RelatorCount {
            generators: n,
            relators: r,
        });
    };
    alexander_matrix_with(p, relator, column)
}

/// Alexander matrix with explicit drops.
pub fn alexander_matrix_with(
    p: &Presentation,
    dropped_relator: Option<usize>,
    dropped_column: usize,
) -> Result<AlexanderMatrix, AlexanderError> {
    let weights = infinite_cyclic_weights(p)?;
    let n = p.generator_count();
    let r = p.relators().len();
    if dropped_column >= n {
        return Err(AlexanderError::DropOutOfRange {
            index: dropped_column,
        });
    }
    if let Some(i) = dropped_relator {
        if i >= r {
            return Err(AlexanderError::DropOutOfRange { index: i });
        }
    }
    let kept = r - usize::from(dropped_relator.is_some());
    if kept + 1 != n {
        return Err(AlexanderError::RelatorCount {
            generators: n,
            relators: r,
        });
    }
    let mut entries = Vec::with_capacity(kept * (n - 1));
    for (i, rel) in p.relators().iter().enumerate() {
        if Some(i) == dropped_relator {
            continue;
        }
        for (j, g) in p.generators().iter().enumerate() {
            if j == dropped_column {
                continue;
            }
            let d = fox_derivative(rel, g);
            entries.push(abelianize_t(&d, &weights).expect("all generators weighted"));
        }
    }
    let matrix = LaurentMatrix::from_entries(kept, n - 1, entries).expect("sizes agree");
    Ok(AlexanderMatrix {
        matrix,
        dropped_relator,
        dropped_column,
        weights,
    })
}

/// Representative with lowest exponent 0 and positive leading coefficient.
pub fn alexander_polynomial(p: &Presentation) -> Result<LaurentPolynomial, AlexanderError> {
    let a = alexander_matrix(p)?;
    Ok(a.matrix.determinant().expect("square").normalize())
}

pub fn knot_determinant(p: &Presentation) -> Result<BigInt, AlexanderError> {
    let delta = alexander_polynomial(p)?;
    Ok(delta
        .evaluate_at(&-BigInt::one())
        .expect("-1 is a unit")
        .abs())
}

/// `E_k`: the ideal of `(m-k)`-minors of a square `m x m` presentation
/// matrix, minors enumerated lexicographically by (rows, columns).
pub fn elementary_ideal_of(m: &LaurentMatrix, k: usize) -> Result<ElementaryIdeal, AlexanderError> {
    let size = m.rows().min(m.cols());
    let generators = if k >= size {
        alloc::vec![LaurentPolynomial::one()]
    } else {
        let order = size - k;
        let rows = combinations(m.rows(), order);
        let cols = combinations(m.cols(), order);
        let mut gens = Vec::with_capacity(rows.len() * cols.len());
        for r in &rows {
            for c in &cols {
                gens.push(m.submatrix(r, c).determinant().expect("square minor"));
            }
        }
        gens
    };
    let decision = ideal_is_unit(&generators)?;
    Ok(ElementaryIdeal {
        index: k,
        generators,
        decision,
    })
}

pub fn elementary_ideal(p: &Presentation, k: usize) -> Result<ElementaryIdeal, AlexanderError> {
    elementary_ideal_of(&alexander_matrix(p)?.matrix, k)
}

/// Largest `k` with `E_{k-1}` proper; the Alexander module then needs at
/// least `k` generators.
pub fn nakanishi_lower(p: &Presentation) -> Result<NakanishiLowerBound, AlexanderError> {
    nakanishi_lower_of(&alexander_matrix(p)?.matrix)
}

pub fn nakanishi_lower_of(m: &LaurentMatrix) -> Result<NakanishiLowerBound, AlexanderError> {
    let mut ideals = Vec::new();
    let mut proper = None;
    for k in 0.. {
        let e = elementary_ideal_of(m, k)?;
        let decision = e.decision.clone();
        ideals.push(e);
        match decision {
            IdealDecision::Unit(unit) => {
                return Ok(NakanishiLowerBound {
                    value: k,
                    proper,
                    unit,
                    ideals,
                })
            }
            IdealDecision::Proper(w) => proper = Some(w),
        }
    }
    unreachable!("E_k is the unit ideal once k reaches the matrix size")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn trefoil_wirtinger() -> Presentation {
        Presentation::parse(
            &["a", "b", "c"],
            &["c a b^-1 a^-1", "a b c^-1 b^-1", "b c a^-1 c^-1"],
        )
        .unwrap()
    }

    #[test]
    fn trefoil_invariants() {
        let p = trefoil_wirtinger();
        let a = alexander_matrix(&p).unwrap();
        assert_eq!((a.matrix.rows(), a.matrix.cols()), (2, 2));
        assert_eq!(a.dropped_relator, Some(2));
        assert_eq!(a.dropped_column, 0);
        assert_eq!(alexander_polynomial(&p).unwrap().to_string(), "1 - t + t^2");
        assert_eq!(knot_determinant(&p).unwrap(), BigInt::from(3));
        let m = nakanishi_lower(&p).unwrap();
        assert_eq!(m.value, 1);
        assert!(matches!(m.proper, Some(ProperWitness::RationalGcd(_))));
    }

    #[test]
    fn unknot() {
        let p = Presentation::parse(&["x"], &[]).unwrap();
        let a = alexander_matrix(&p).unwrap();
        assert_eq!(a.matrix.rows(), 0);
        assert_eq!(alexander_polynomial(&p).unwrap(), LaurentPolynomial::one());
        assert_eq!(nakanishi_lower(&p).unwrap().value, 0);
        assert_eq!(knot_determinant(&p).unwrap(), BigInt::one());
    }

    #[test]
    fn two_generator_trefoil() {
        let p = Presentation::parse(&["x", "y"], &["x y x y^-1 x^-1 y^-1"]).unwrap();
        assert_eq!(alexander_polynomial(&p).unwrap().to_string(), "1 - t + t^2");
        let e1 = elementary_ideal(&p, 1).unwrap();
        assert!(e1.decision.is_unit());
    }

    #[test]
    fn rejects_other_abelianizations() {
        let hopf = Presentation::parse(&["x", "y"], &["x y x^-1 y^-1"]).unwrap();
        assert!(matches!(
            alexander_matrix(&hopf),
            Err(AlexanderError::NotInfiniteCyclic(_))
        ));
    }
}
