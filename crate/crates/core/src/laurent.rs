//! One-variable integer Laurent polynomials `Z[t, t^-1]`.
//!
//! Canonical form: no leading or trailing zero coefficients; the zero
//! polynomial has no coefficients and lowest exponent 0.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("cannot evaluate at 0: the polynomial has negative exponents")]
    NotInvertible,
    #[error("evaluation is not an integer")]
    NonIntegral,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPolynomial {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(0, alloc::vec![c])
    }

    /// `c * t^e`
    pub fn monomial(c: BigInt, e: i64) -> Self {
        Self::new(e, alloc::vec![c])
    }

    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    /// Build from coefficients of `t^low, t^(low+1), ...`.
    pub fn new(low: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        LaurentPolynomial {
            low: low + lead_zeros as i64,
            coeffs,
        }
    }

    pub fn from_i64(low: i64, coeffs: &[i64]) -> Self {
        Self::new(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Units of the Laurent ring are exactly `±t^k`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].abs().is_one()
    }

    pub fn lowest_exponent(&self) -> i64 {
        self.low
    }

    pub fn highest_exponent(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    /// Width of the exponent range (0 for monomials and zero).
    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coefficient(&self, e: i64) -> BigInt {
        let i = e - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPolynomial {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Substitute `t -> t^-1`.
    pub fn reciprocal(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(-self.highest_exponent(), coeffs)
    }

    /// Strip the unit factor `±t^k`: lowest exponent 0, positive leading coefficient.
    pub fn normalize(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let p = self.shift(-self.low);
        if p.coeffs.last().is_some_and(Signed::is_negative) {
            -p
        } else {
            p
        }
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        Self::new(self.low, self.coeffs.iter().map(|x| x / &c).collect())
    }

    pub fn evaluate_at(&self, x: &BigInt) -> Result<BigInt, LaurentError> {
        if self.is_zero() {
            return Ok(BigInt::zero());
        }
        if x.is_zero() && self.low < 0 {
            return Err(LaurentError::NotInvertible);
        }
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        if self.low >= 0 {
            Ok(acc * x.pow(self.low as u32))
        } else {
            let d = x.pow((-self.low) as u32);
            let (q, r) = acc.div_rem(&d);
            if r.is_zero() {
                Ok(q)
            } else {
                Err(LaurentError::NonIntegral)
            }
        }
    }

    /// Exact quotient in the Laurent ring, if `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let q = dense::div_exact(&self.coeffs, &divisor.coeffs)?;
        Some(Self::new(self.low - divisor.low, q))
    }

    /// Coefficients reduced into `[0, p)`.
    pub fn mod_p(&self, p: &BigInt) -> Self {
        Self::new(
            self.low,
            self.coeffs.iter().map(|c| c.mod_floor(p)).collect(),
        )
    }

    /// Greatest common divisor over the rational Laurent ring, represented as a
    /// primitive integer polynomial with lowest exponent 0 and positive leading
    /// coefficient.
    pub fn gcd_over_rationals(&self, other: &Self) -> Result<Self, LaurentError> {
        if self.is_zero() && other.is_zero() {
            return Err(LaurentError::BothZero);
        }
        let g = dense::primitive_gcd(&self.coeffs, &other.coeffs);
        Ok(Self::new(0, g).normalize())
    }

    /// Monic gcd over the `p`-element field, with the `t`-power stripped.
    pub fn gcd_mod_p(&self, other: &Self, p: &BigInt) -> Result<Self, LaurentError> {
        if !is_prime(p) {
            return Err(LaurentError::NotPrime(p.clone()));
        }
        let a = self.mod_p(p);
        let b = other.mod_p(p);
        let g = dense::gcd_mod(&a.coeffs, &b.coeffs, p);
        Ok(Self::new(0, g))
    }
}

/// Deterministic primality by trial division (adequate for the moduli that
/// appear as explicit arguments).
pub fn is_prime(p: &BigInt) -> bool {
    if *p < BigInt::from(2) {
        return false;
    }
    let mut d = BigInt::from(2);
    while &d * &d <= *p {
        if p.is_multiple_of(&d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.highest_exponent().max(rhs.highest_exponent());
        let mut coeffs = alloc::vec![BigInt::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - low) as usize + i] += c;
        }
        LaurentPolynomial::new(low, coeffs)
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        LaurentPolynomial::new(self.low + rhs.low, dense::mul(&self.coeffs, &rhs.coeffs))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $f(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for LaurentPolynomial {
    /// Ascending exponents, e.g. `1 - t + t^2`, `2 - 5*t + 2*t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.low + i as i64;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{}*t", mag)?,
                (_, true) => write!(f, "t^{}", e)?,
                (_, false) => write!(f, "{}*t^{}", mag, e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({})", self)
    }
}

impl FromStr for LaurentPolynomial {
    type Err = LaurentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(LaurentError::Parse("empty input".into()));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            // A sign right after `^` belongs to the exponent.
            if (ch == '+' || ch == '-') && prev != Some('^') {
                if !current.is_empty() {
                    terms.push((negative, core::mem::take(&mut current)));
                } else if prev.is_some() {
                    return Err(LaurentError::Parse(s.to_string()));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
            prev = Some(ch);
        }
        if current.is_empty() {
            return Err(LaurentError::Parse(s.to_string()));
        }
        terms.push((negative, current));

        let mut acc = LaurentPolynomial::zero();
        for (neg, term) in terms {
            let bad = || LaurentError::Parse(term.clone());
            let (coef, exp) = match term.find('t') {
                None => (term.parse::<BigInt>().map_err(|_| bad())?, 0i64),
                Some(pos) => {
                    let head = &term[..pos];
                    let coef = match head {
                        "" => BigInt::one(),
                        h => h
                            .strip_suffix('*')
                            .ok_or_else(bad)?
                            .parse::<BigInt>()
                            .map_err(|_| bad())?,
                    };
                    let tail = &term[pos + 1..];
                    let exp = match tail {
                        "" => 1,
                        t => t
                            .strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<i64>()
                            .map_err(|_| bad())?,
                    };
                    (coef, exp)
                }
            };
            let coef = if neg { -coef } else { coef };
            acc = &acc + &LaurentPolynomial::monomial(coef, exp);
        }
        Ok(acc)
    }
}

/// Dense polynomial helpers on ascending coefficient vectors in `Z[t]`.
pub(crate) mod dense {
    use super::*;

    pub fn trim(v: &mut Vec<BigInt>) {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
    }

    pub fn degree(v: &[BigInt]) -> Option<usize> {
        v.iter().rposition(|c| !c.is_zero())
    }

    pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = alloc::vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(&mut out);
        out
    }

    pub fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        let mut out: Vec<BigInt> = (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_default();
                let y = b.get(i).cloned().unwrap_or_default();
                x + y
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn scale(a: &[BigInt], c: &BigInt) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = a.iter().map(|x| x * c).collect();
        trim(&mut out);
        out
    }

    pub fn shift(a: &[BigInt], k: usize) -> Vec<BigInt> {
        if a.is_empty() {
            return Vec::new();
        }
        let mut out = alloc::vec![BigInt::zero(); k];
        out.extend_from_slice(a);
        out
    }

    pub fn content(a: &[BigInt]) -> BigInt {
        a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Drop factors of `t` (the ring is Laurent, so `t` is a unit).
    pub fn strip_t(a: &[BigInt]) -> Vec<BigInt> {
        let k = a.iter().take_while(|c| c.is_zero()).count();
        let mut v = a[k..].to_vec();
        trim(&mut v);
        v
    }

    /// Exact division in `Z[t]`, `None` when `b` does not divide `a`.
    pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
        let db = degree(b)?;
        let mut r: Vec<BigInt> = a.to_vec();
        trim(&mut r);
        if r.is_empty() {
            return Some(Vec::new());
        }
        let da = r.len() - 1;
        if da < db {
            return None;
        }
        let mut q = alloc::vec![BigInt::zero(); da - db + 1];
        let lb = &b[db];
        for k in (0..=da - db).rev() {
            let c = &r[k + db];
            if c.is_zero() {
                continue;
            }
            let (qc, rem) = c.div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            for (j, bj) in b.iter().enumerate().take(db + 1) {
                r[k + j] -= &qc * bj;
            }
            q[k] = qc;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        trim(&mut q);
        Some(q)
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let db = degree(b).expect("nonzero divisor");
        let mut r: Vec<BigInt> = a.to_vec();
        trim(&mut r);
        let lb = b[db].clone();
        while let Some(dr) = degree(&r) {
            if dr < db {
                break;
            }
            let lr = r[dr].clone();
            let k = dr - db;
            for x in r.iter_mut() {
                *x *= &lb;
            }
            for (j, bj) in b.iter().enumerate().take(db + 1) {
                r[k + j] -= &lr * bj;
            }
            trim(&mut r);
        }
        r
    }

    pub fn primitive(a: &[BigInt]) -> Vec<BigInt> {
        let c = content(a);
        if c.is_zero() {
            return Vec::new();
        }
        let mut v: Vec<BigInt> = a.iter().map(|x| x / &c).collect();
        trim(&mut v);
        v
    }

    /// Primitive gcd in `Q[t, t^-1]` via the primitive remainder sequence over `Z`.
    pub fn primitive_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut x = primitive(&strip_t(a));
        let mut y = primitive(&strip_t(b));
        if degree(&x).unwrap_or(0) < degree(&y).unwrap_or(0) || x.is_empty() {
            core::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            let r = pseudo_rem(&x, &y);
            x = y;
            y = primitive(&strip_t(&r));
        }
        let mut g = primitive(&strip_t(&x));
        if g.last().is_some_and(Signed::is_negative) {
            g = g.iter().map(|c| -c).collect();
        }
        g
    }

    pub fn reduce_mod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = a.iter().map(|c| c.mod_floor(m)).collect();
        trim(&mut v);
        v
    }

    /// Modular inverse when it exists.
    pub fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
        let e = a.mod_floor(m).extended_gcd(m);
        if e.gcd.is_one() {
            Some(e.x.mod_floor(m))
        } else {
            None
        }
    }

    /// Remainder of `a` by `b` over `Z/m`, where `lc(b)` is invertible mod `m`.
    pub fn rem_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
        let db = degree(b).expect("nonzero divisor");
        let inv = inv_mod(&b[db], m).expect("invertible leading coefficient");
        let mut r = reduce_mod(a, m);
        while let Some(dr) = degree(&r) {
            if dr < db {
                break;
            }
            let f = (&r[dr] * &inv).mod_floor(m);
            let k = dr - db;
            for (j, bj) in b.iter().enumerate().take(db + 1) {
                r[k + j] = (&r[k + j] - &f * bj).mod_floor(m);
            }
            trim(&mut r);
        }
        r
    }

    pub fn make_monic(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
        match degree(a) {
            None => Vec::new(),
            Some(d) => {
                let inv = inv_mod(&a[d], m).expect("invertible leading coefficient");
                reduce_mod(&scale(a, &inv), m)
            }
        }
    }

    /// Monic gcd over the prime field `F_p`, with powers of `t` removed.
    pub fn gcd_mod(a: &[BigInt], b: &[BigInt], p: &BigInt) -> Vec<BigInt> {
        let mut x = strip_t(&reduce_mod(a, p));
        let mut y = strip_t(&reduce_mod(b, p));
        while !y.is_empty() {
            let r = rem_mod(&x, &y, p);
            x = y;
            y = strip_t(&r);
        }
        make_monic(&x, p)
    }
}
