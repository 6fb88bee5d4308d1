//! Fox free differential calculus on the integral group ring of a free group.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::laurent::LaurentPolynomial;
use crate::word::{Letter, Symbol, Word};

/// Finite formal sum of free-group words with integer coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        Self::term(w, BigInt::one())
    }

    pub fn term(w: Word, c: BigInt) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        self + &(-rhs)
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.multiply(v), a * b);
            }
        }
        out
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let word = if w.is_identity() {
                String::from("1")
            } else {
                w.to_string()
            };
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag.is_one() {
                write!(f, "{}", word)?;
            } else {
                write!(f, "{}*({})", mag, word)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupRingElement({})", self)
    }
}

/// `∂w/∂g`, using `∂(uv) = ∂u + u ∂v`, `∂g/∂g = 1`, `∂g^-1/∂g = -g^-1`.
pub fn fox_derivative(w: &Word, g: &Symbol) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix: alloc::vec::Vec<Letter> = alloc::vec::Vec::new();
    for l in w.letters() {
        if l.symbol == *g {
            if l.inverse {
                let mut p = prefix.clone();
                p.push(l.clone());
                out.add_term(Word::reduce(p), -BigInt::one());
            } else {
                out.add_term(Word::reduce(prefix.iter().cloned()), BigInt::one());
            }
        }
        prefix.push(l.clone());
    }
    out
}

/// Apply `word -> t^(sum of weights · exponents)` termwise. Returns `None`
/// when a symbol has no weight.
pub fn abelianize_t(
    e: &GroupRingElement,
    weights: &BTreeMap<Symbol, i64>,
) -> Option<LaurentPolynomial> {
    let mut acc = LaurentPolynomial::zero();
    for (w, c) in &e.terms {
        let mut exp = 0i64;
        for l in w.letters() {
            exp += weights.get(&l.symbol)? * l.sign();
        }
        acc = &acc + &LaurentPolynomial::monomial(c.clone(), exp);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn sym(s: &str) -> Symbol {
        Symbol::new(s).unwrap()
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(fox_derivative(&w("x"), &sym("x")), GroupRingElement::one());
        let d = fox_derivative(&w("x y x"), &sym("x"));
        assert_eq!(
            d,
            &GroupRingElement::one() + &GroupRingElement::from_word(w("x y"))
        );
        assert_eq!(
            fox_derivative(&w("x^-1"), &sym("x")),
            GroupRingElement::term(w("x^-1"), -BigInt::one())
        );
        assert!(fox_derivative(&w("y"), &sym("x")).is_zero());
    }

    #[test]
    fn abelianization_to_t() {
        let weights: BTreeMap<Symbol, i64> = [(sym("x"), 1), (sym("y"), 1)].into_iter().collect();
        let e = &GroupRingElement::one() + &GroupRingElement::from_word(w("x y"));
        assert_eq!(
            abelianize_t(&e, &weights).unwrap(),
            "1 + t^2".parse().unwrap()
        );
        let e = GroupRingElement::term(w("x^-1"), -BigInt::one());
        assert_eq!(
            abelianize_t(&e, &weights).unwrap(),
            "-t^-1".parse().unwrap()
        );
        assert!(abelianize_t(&GroupRingElement::zero(), &weights)
            .unwrap()
            .is_zero());
        assert!(abelianize_t(&GroupRingElement::from_word(w("z")), &weights).is_none());
    }
}
