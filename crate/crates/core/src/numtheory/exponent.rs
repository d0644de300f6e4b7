//! Finite-support maps from primes to exponents.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::primes::{factor_natural, is_prime};
use crate::error::{Error, Result};

/// A product `Π p^e` over finitely many primes, stored without zero
/// exponents so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExponentVector<E> {
    entries: BTreeMap<u64, E>,
}

impl<E> ExponentVector<E>
where
    E: Clone + Zero + PartialEq,
{
    pub fn new() -> Self {
        ExponentVector { entries: BTreeMap::new() }
    }

    /// Builds a vector from `(prime, exponent)` pairs; repeated primes are
    /// summed. Fails if a key is not prime.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, E)>) -> Result<Self> {
        let mut v = Self::new();
        for (p, e) in pairs {
            if !is_prime(p) {
                return Err(Error::Invalid(format!("{p} is not prime")));
            }
            let cur = v.get(p);
            v.set(p, cur + e);
        }
        Ok(v)
    }

    pub fn single(p: u64, e: E) -> Self {
        debug_assert!(is_prime(p));
        let mut v = Self::new();
        v.set(p, e);
        v
    }

    pub fn get(&self, p: u64) -> E {
        self.entries.get(&p).cloned().unwrap_or_else(E::zero)
    }

    pub fn set(&mut self, p: u64, e: E) {
        if e.is_zero() {
            self.entries.remove(&p);
        } else {
            self.entries.insert(p, e);
        }
    }

    pub fn is_identity(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> BTreeSet<u64> {
        self.entries.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &E)> {
        self.entries.iter().map(|(p, e)| (*p, e))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Applies `f` to every stored exponent, dropping results that are zero.
    pub fn map<F, G>(&self, mut f: G) -> ExponentVector<F>
    where
        F: Clone + Zero + PartialEq,
        G: FnMut(&E) -> F,
    {
        let mut out = ExponentVector::new();
        for (p, e) in self.iter() {
            out.set(p, f(e));
        }
        out
    }

    pub fn all(&self, pred: impl FnMut(&E) -> bool) -> bool {
        self.entries.values().all(pred)
    }
}

impl<E> ExponentVector<E>
where
    E: Clone + Zero + PartialEq + Add<Output = E>,
{
    /// Coordinatewise sum (the group product of the represented numbers).
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, e) in other.iter() {
            let cur = out.get(p);
            out.set(p, cur + e.clone());
        }
        out
    }
}

impl<E> ExponentVector<E>
where
    E: Clone + Zero + PartialEq + Neg<Output = E>,
{
    pub fn negate(&self) -> Self {
        self.map(|e| -e.clone())
    }
}

impl<E> ExponentVector<E>
where
    E: Clone + Zero + PartialEq + Mul<Output = E>,
{
    pub fn scale(&self, k: &E) -> Self {
        self.map(|e| e.clone() * k.clone())
    }
}

impl ExponentVector<BigInt> {
    /// Exact value `Π p^e` as a positive rational.
    pub fn to_rational(&self) -> BigRational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (p, e) in self.iter() {
            let pe = BigInt::from(p).pow(e.magnitude().try_into().expect("exponent fits u32"));
            if e.is_positive() {
                num *= pe;
            } else {
                den *= pe;
            }
        }
        BigRational::new(num, den)
    }

    /// Number of decimal digits `to_rational` would print, estimated from logs.
    pub fn approx_digits(&self) -> f64 {
        self.iter()
            .map(|(p, e)| {
                let e: f64 = e.abs().to_string().parse().unwrap_or(f64::INFINITY);
                e * (p as f64).log10()
            })
            .sum()
    }

    pub fn to_rational_exponents(&self) -> ExponentVector<BigRational> {
        self.map(|e| BigRational::from_integer(e.clone()))
    }
}

impl<E: fmt::Display> fmt::Display for ExponentVector<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, e) in &self.entries {
            if !first {
                write!(f, "·")?;
            }
            first = false;
            write!(f, "{p}^{e}")?;
        }
        Ok(())
    }
}

impl<E: fmt::Display> fmt::Debug for ExponentVector<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for (p, e) in &self.entries {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{p}↦{e}")?;
        }
        write!(f, "}}")
    }
}

fn natural_exponents(n: &BigInt) -> Result<BTreeMap<u64, u32>> {
    let mag: BigUint = n.magnitude().clone();
    factor_natural(&mag)
}

/// Unique factorization of a nonzero rational: `q = sign · Π p^e`.
pub fn factor_rational(q: &BigRational) -> Result<(i8, ExponentVector<BigInt>)> {
    if q.is_zero() {
        return Err(Error::Invalid("0 has no prime factorization".into()));
    }
    let sign = if q.is_negative() { -1 } else { 1 };
    let mut ev = ExponentVector::new();
    for (p, k) in natural_exponents(q.numer())? {
        ev.set(p, BigInt::from(k));
    }
    for (p, k) in natural_exponents(q.denom())? {
        // the fraction is reduced, so numerator and denominator share no prime
        ev.set(p, -BigInt::from(k));
    }
    Ok((sign, ev))
}

/// Inverse of [`factor_rational`].
pub fn recompose(sign: i8, ev: &ExponentVector<BigInt>) -> BigRational {
    let q = ev.to_rational();
    if sign < 0 {
        -q
    } else {
        q
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn worked_factorization_example() {
        let (s, ev) = factor_rational(&rat(175, 84)).unwrap();
        assert_eq!(s, 1);
        let expect = ExponentVector::from_pairs([
            (2, BigInt::from(-2)),
            (3, BigInt::from(-1)),
            (5, BigInt::from(2)),
        ])
        .unwrap();
        assert_eq!(ev, expect);
    }

    #[test]
    fn one_and_negative() {
        let (s, ev) = factor_rational(&rat(1, 1)).unwrap();
        assert_eq!((s, ev.is_identity()), (1, true));
        let (s, ev) = factor_rational(&rat(-8, 9)).unwrap();
        assert_eq!(s, -1);
        assert_eq!(ev.get(2), BigInt::from(3));
        assert_eq!(ev.get(3), BigInt::from(-2));
        assert_eq!(recompose(s, &ev), rat(-8, 9));
    }

    #[test]
    fn zero_rejected() {
        assert!(factor_rational(&rat(0, 1)).is_err());
    }

    #[test]
    fn non_prime_key_rejected() {
        assert!(ExponentVector::from_pairs([(4, BigInt::from(1))]).is_err());
    }

    #[test]
    fn zero_exponents_are_not_stored() {
        let a = ExponentVector::from_pairs([(2, BigInt::from(1))]).unwrap();
        let b = a.negate();
        assert!(a.add(&b).is_identity());
    }
}
