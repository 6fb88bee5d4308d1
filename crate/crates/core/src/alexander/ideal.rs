//! Complete decision of whether a finitely generated ideal of `Z[t, t^-1]`
//! is the unit ideal.
//!
//! Outline: a nonconstant rational gcd proves properness. Otherwise the ideal
//! contains a nonzero integer `N`. Any maximal ideal has finite residue field,
//! so a proper ideal containing `N` survives reduction modulo some prime
//! `p | N`. Each prime is checked by a gcd over `F_p`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::laurent::{dense, LaurentPolynomial};

/// Trial division bound used when factoring the integer in the ideal.
const TRIAL_BOUND: u64 = 100_000;
/// Extra generator pairs tried to shrink the integer.
const PAIR_POOL: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("an ideal needs at least one generator")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealDecision {
    Unit(UnitCertificate),
    Proper(ProperWitness),
}

impl IdealDecision {
    pub fn is_unit(&self) -> bool {
        matches!(self, IdealDecision::Unit(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProperWitness {
    /// Every generator is zero.
    AllZero,
    /// The gcd over the rationals has positive degree.
    RationalGcd(LaurentPolynomial),
    /// Modulo `modulus` the ideal is generated by the nonunit `gcd`. The
    /// modulus is prime or has no prime factor below the trial bound; the
    /// gcd is monic and its image is a nonunit modulo every prime factor.
    Modular {
        modulus: BigInt,
        gcd: LaurentPolynomial,
    },
}

/// `Σ coefficients[i] * gens[i] = integer * t^shift` exactly, plus for every
/// prime dividing `integer` a combination equal to 1 modulo that prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitCertificate {
    pub integer: BigInt,
    pub shift: i64,
    pub coefficients: BTreeMap<usize, LaurentPolynomial>,
    pub residues: Vec<ResidueCertificate>,
}

/// `Σ coefficients[i] * gens[i] ≡ 1 (mod modulus)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueCertificate {
    pub modulus: BigInt,
    pub coefficients: BTreeMap<usize, LaurentPolynomial>,
}

fn combination(
    gens: &[LaurentPolynomial],
    coeffs: &BTreeMap<usize, LaurentPolynomial>,
) -> Option<LaurentPolynomial> {
    let mut acc = LaurentPolynomial::zero();
    for (&i, c) in coeffs {
        acc = &acc + &(c * gens.get(i)?);
    }
    Some(acc)
}

impl UnitCertificate {
    /// Independent check of the certificate against the generators.
    pub fn verify(&self, gens: &[LaurentPolynomial]) -> bool {
        let Some(sum) = combination(gens, &self.coefficients) else {
            return false;
        };
        if sum != LaurentPolynomial::monomial(self.integer.clone(), self.shift)
            || self.integer.is_zero()
        {
            return false;
        }
        let mut rest = self.integer.abs();
        for res in &self.residues {
            let Some(sum) = combination(gens, &res.coefficients) else {
                return false;
            };
            if !(&sum - &LaurentPolynomial::one())
                .mod_p(&res.modulus)
                .is_zero()
            {
                return false;
            }
            loop {
                let d = rest.gcd(&res.modulus);
                if d.is_one() {
                    break;
                }
                rest /= d;
            }
        }
        rest.is_one()
    }
}

/// A combination row: `r · t^0 = Σ s[i] gens[i]` with `r` dense in `Z[t]`.
#[derive(Clone, Debug)]
struct Row {
    r: Vec<BigInt>,
    s: BTreeMap<usize, LaurentPolynomial>,
}

impl Row {
    fn generator(i: usize, f: &LaurentPolynomial) -> Row {
        let mut s = BTreeMap::new();
        s.insert(
            i,
            LaurentPolynomial::monomial(BigInt::one(), -f.lowest_exponent()),
        );
        Row {
            r: f.coefficients().to_vec(),
            s,
        }
    }

    fn degree(&self) -> usize {
        self.r.len().saturating_sub(1)
    }

    fn scale(&self, c: &LaurentPolynomial) -> Row {
        let r = dense_of(&(&LaurentPolynomial::new(0, self.r.clone()) * c));
        Row {
            r,
            s: self
                .s
                .iter()
                .map(|(&i, p)| (i, p * c))
                .filter(|(_, p)| !p.is_zero())
                .collect(),
        }
    }

    fn sub(&self, other: &Row) -> Row {
        let r = dense::add(&self.r, &dense::scale(&other.r, &-BigInt::one()));
        let mut s = self.s.clone();
        for (&i, p) in &other.s {
            let e = s.entry(i).or_default();
            *e = &*e - p;
        }
        s.retain(|_, p| !p.is_zero());
        Row { r, s }
    }

    fn reduce_mod(&mut self, m: &BigInt) {
        self.r = dense::reduce_mod(&self.r, m);
        for p in self.s.values_mut() {
            *p = p.mod_p(m);
        }
        self.s.retain(|_, p| !p.is_zero());
    }

    /// Divide out powers of `t` from `r` and the common integer content.
    fn tidy(&mut self) {
        let k = self.r.iter().take_while(|c| c.is_zero()).count();
        if k > 0 {
            self.r.drain(..k);
            for p in self.s.values_mut() {
                *p = p.shift(-(k as i64));
            }
        }
        dense::trim(&mut self.r);
        let mut c = dense::content(&self.r);
        for p in self.s.values() {
            c = c.gcd(&p.content());
        }
        if !c.is_zero() && !c.is_one() {
            self.r = self.r.iter().map(|x| x / &c).collect();
            for p in self.s.values_mut() {
                *p = scale_div(p, &c);
            }
        }
    }
}

fn scale_div(p: &LaurentPolynomial, c: &BigInt) -> LaurentPolynomial {
    LaurentPolynomial::new(
        p.lowest_exponent(),
        p.coefficients().iter().map(|x| x / c).collect(),
    )
}

/// Dense `Z[t]` coefficients of a polynomial with nonnegative exponents.
fn dense_of(p: &LaurentPolynomial) -> Vec<BigInt> {
    if p.is_zero() {
        return Vec::new();
    }
    dense::shift(p.coefficients(), p.lowest_exponent() as usize)
}

fn constant_row(r: &Row) -> bool {
    r.r.len() == 1
}

/// Integer Bezout combination of two constant rows.
fn integer_combine(a: &Row, b: &Row) -> Row {
    let e = a.r[0].extended_gcd(&b.r[0]);
    let x = a.scale(&LaurentPolynomial::constant(e.x));
    let y = b.scale(&LaurentPolynomial::constant(-e.y));
    x.sub(&y)
}

/// Pseudo-remainder sequence over `Z` with cofactors; returns a row whose
/// `r` is an integer multiple of the rational gcd of the inputs.
fn combine_z(a: Row, b: Row) -> Row {
    if a.r.is_empty() {
        return b;
    }
    if b.r.is_empty() {
        return a;
    }
    if constant_row(&a) && constant_row(&b) {
        return integer_combine(&a, &b);
    }
    let (mut a, mut b) = if a.degree() >= b.degree() {
        (a, b)
    } else {
        (b, a)
    };
    while !b.r.is_empty() {
        if constant_row(&a) && constant_row(&b) {
            return integer_combine(&a, &b);
        }
        let db = b.degree();
        let lb = LaurentPolynomial::constant(b.r[db].clone());
        let mut rem = a.clone();
        while !rem.r.is_empty() && rem.degree() >= db {
            let lr = rem.r[rem.degree()].clone();
            let k = (rem.degree() - db) as i64;
            rem = rem
                .scale(&lb)
                .sub(&b.scale(&LaurentPolynomial::monomial(lr, k)));
        }
        rem.tidy();
        a = b;
        b = rem;
    }
    a
}

fn nontrivial_factor(c: &BigInt, m: &BigInt) -> Option<BigInt> {
    let d = c.gcd(m);
    if d.is_one() || d == *m {
        None
    } else {
        Some(d)
    }
}

/// Euclid over `Z/m` with cofactors. `Err(d)` reports a proper factor of `m`
/// found while inverting. The returned row is monic.
fn euclid_mod(gens: &[(usize, LaurentPolynomial)], m: &BigInt) -> Result<Option<Row>, BigInt> {
    let mut acc: Option<Row> = None;
    for (i, f) in gens {
        let fm = f.mod_p(m);
        if fm.is_zero() {
            continue;
        }
        if let Some(d) = nontrivial_factor(&fm.coefficients()[0], m) {
            return Err(d);
        }
        let row = Row::generator(*i, &fm);
        acc = Some(match acc {
            None => row,
            Some(a) => euclid_pair_mod(a, row, m)?,
        });
        if acc.as_ref().is_some_and(constant_row) {
            break;
        }
    }
    let Some(mut row) = acc else {
        return Ok(None);
    };
    let lc = row.r[row.degree()].clone();
    if let Some(d) = nontrivial_factor(&lc, m) {
        return Err(d);
    }
    if let Some(d) = nontrivial_factor(&row.r[0], m) {
        return Err(d);
    }
    let inv = dense::inv_mod(&lc, m).expect("unit leading coefficient");
    row = row.scale(&LaurentPolynomial::constant(inv));
    row.reduce_mod(m);
    Ok(Some(row))
}

fn euclid_pair_mod(a: Row, b: Row, m: &BigInt) -> Result<Row, BigInt> {
    let (mut a, mut b) = if a.degree() >= b.degree() {
        (a, b)
    } else {
        (b, a)
    };
    while !b.r.is_empty() {
        let db = b.degree();
        let lb = b.r[db].clone();
        if let Some(d) = nontrivial_factor(&lb, m) {
            return Err(d);
        }
        let inv = dense::inv_mod(&lb, m).expect("unit leading coefficient");
        let mut rem = a.clone();
        while !rem.r.is_empty() && rem.degree() >= db {
            let f = (&rem.r[rem.degree()] * &inv).mod_floor(m);
            let k = (rem.degree() - db) as i64;
            rem = rem.sub(&b.scale(&LaurentPolynomial::monomial(f, k)));
            rem.reduce_mod(m);
        }
        a = b;
        b = rem;
    }
    Ok(a)
}

fn size_key(f: &LaurentPolynomial) -> (usize, u64) {
    let bits = f.coefficients().iter().map(|c| c.bits()).max().unwrap_or(0);
    (f.span(), bits)
}

/// Prime factors below the trial bound, and the cofactor left when the
/// bound is reached (1 if fully factored).
fn trial_factor(n: &BigInt) -> (Vec<BigInt>, BigInt) {
    let mut rest = n.abs();
    let mut primes = Vec::new();
    let mut p = 2u64;
    loop {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            if rest > BigInt::one() {
                primes.push(rest);
            }
            return (primes, BigInt::one());
        }
        if p > TRIAL_BOUND {
            return (primes, rest);
        }
        if rest.is_multiple_of(&bp) {
            primes.push(bp.clone());
            while rest.is_multiple_of(&bp) {
                rest /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
}

/// Decide whether `(gens)` is the unit ideal of `Z[t, t^-1]`.
pub fn ideal_is_unit(gens: &[LaurentPolynomial]) -> Result<IdealDecision, IdealError> {
    if gens.is_empty() {
        return Err(IdealError::Empty);
    }
    let nonzero: Vec<(usize, LaurentPolynomial)> = gens
        .iter()
        .enumerate()
        .filter(|(_, f)| !f.is_zero())
        .map(|(i, f)| (i, f.clone()))
        .collect();
    if nonzero.is_empty() {
        return Ok(IdealDecision::Proper(ProperWitness::AllZero));
    }
    if let Some((i, f)) = nonzero.iter().find(|(_, f)| f.is_unit()) {
        let mut coefficients = BTreeMap::new();
        coefficients.insert(*i, LaurentPolynomial::monomial(BigInt::one(), 0));
        return Ok(IdealDecision::Unit(UnitCertificate {
            integer: f.coefficients()[0].clone(),
            shift: f.lowest_exponent(),
            coefficients,
            residues: Vec::new(),
        }));
    }

    let mut g = LaurentPolynomial::zero();
    for (_, f) in &nonzero {
        g = g.gcd_over_rationals(f).expect("nonzero input");
        if g.span() == 0 {
            break;
        }
    }
    if g.span() > 0 {
        return Ok(IdealDecision::Proper(ProperWitness::RationalGcd(g)));
    }

    let mut sorted = nonzero.clone();
    sorted.sort_by_key(|(i, f)| (size_key(f), *i));
    let rows: Vec<Row> = sorted.iter().map(|(i, f)| Row::generator(*i, f)).collect();

    let mut acc: Option<Row> = None;
    for row in &rows {
        let next = match acc.take() {
            None => {
                let mut r = row.clone();
                r.tidy();
                r
            }
            Some(a) => combine_z(a, row.clone()),
        };
        let done = constant_row(&next);
        acc = Some(next);
        if done {
            break;
        }
    }
    let mut best = acc.expect("at least one generator");
    debug_assert!(constant_row(&best));
    let pool = rows.len().min(PAIR_POOL);
    'pairs: for i in 0..pool {
        for j in i + 1..pool {
            if best.r[0].abs().is_one() {
                break 'pairs;
            }
            let gi = &sorted[i].1;
            let gj = &sorted[j].1;
            if gi.gcd_over_rationals(gj).expect("nonzero").span() > 0 {
                continue;
            }
            let row = combine_z(rows[i].clone(), rows[j].clone());
            if constant_row(&row) {
                let merged = integer_combine(&best, &row);
                if merged.r[0].abs() < best.r[0].abs() {
                    best = merged;
                }
            }
        }
    }
    if best.r[0].is_negative() {
        best = best.scale(&LaurentPolynomial::constant(-BigInt::one()));
    }
    let integer = best.r[0].clone();
    let certificate_base = (integer.clone(), best.s.clone());

    let (primes, leftover) = trial_factor(&integer);
    let mut queue: Vec<BigInt> = primes;
    if leftover > BigInt::one() {
        queue.push(leftover);
    }
    let mut residues = Vec::new();
    while let Some(m) = queue.first().cloned() {
        queue.remove(0);
        match euclid_mod(&nonzero, &m) {
            Err(d) => {
                let other = &m / &d;
                queue.insert(0, other);
                queue.insert(0, d);
            }
            Ok(None) => {
                return Ok(IdealDecision::Proper(ProperWitness::Modular {
                    modulus: m,
                    gcd: LaurentPolynomial::zero(),
                }))
            }
            Ok(Some(row)) => {
                if row.degree() > 0 {
                    return Ok(IdealDecision::Proper(ProperWitness::Modular {
                        modulus: m,
                        gcd: LaurentPolynomial::new(0, row.r),
                    }));
                }
                residues.push(ResidueCertificate {
                    modulus: m,
                    coefficients: row.s,
                });
            }
        }
    }
    Ok(IdealDecision::Unit(UnitCertificate {
        integer: certificate_base.0,
        shift: 0,
        coefficients: certificate_base.1,
        residues,
    }))
}
