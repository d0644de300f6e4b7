//! Exact integer and rational arithmetic: Bézout identities, generalized
//! CRT with constructive solutions, factorization and substructure
//! membership.

mod exponent;
mod primes;

pub use exponent::{factor_rational, recompose, ExponentVector};
pub use primes::{factor_natural, fresh_prime, is_prime, next_prime};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a.lcm(b)
}

pub fn lcm_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x))
}

pub fn lcm_u64(xs: impl IntoIterator<Item = u64>) -> u64 {
    xs.into_iter().fold(1u64, |acc, x| acc.lcm(&x))
}

/// Extended Euclid: returns `(g, s, t)` with `g = gcd(|a|, |b|)` and
/// `s·a + t·b = g`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() { (-e.gcd, -e.x, -e.y) } else { (e.gcd, e.x, e.y) }
}

/// Generalized Bézout identity, folded left over [`ext_gcd`]:
/// `Σ cᵢ·aᵢ = gcd(a₀, …)`.
pub fn gen_bezout(values: &[BigInt]) -> Result<(BigInt, Vec<BigInt>)> {
    let (first, rest) = values
        .split_first()
        .ok_or_else(|| Error::Invalid("gen_bezout needs at least one value".into()))?;
    if values.iter().any(|a| !a.is_positive()) {
        return Err(Error::Invalid("gen_bezout expects positive integers".into()));
    }
    let mut g = first.clone();
    let mut cs = vec![BigInt::one()];
    for a in rest {
        let (g2, s, t) = ext_gcd(&g, a);
        for c in cs.iter_mut() {
            *c *= &s;
        }
        cs.push(t);
        g = g2;
    }
    debug_assert_eq!(
        cs.iter().zip(values).map(|(c, a)| c * a).sum::<BigInt>(),
        g
    );
    Ok((g, cs))
}

/// A system `x ≡ rᵢ (mod mᵢ)`; residues are kept reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CongruenceSystem {
    entries: Vec<(BigInt, BigInt)>,
}

impl CongruenceSystem {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a system from `(modulus, residue)` pairs.
    pub fn from_pairs<M, R>(pairs: impl IntoIterator<Item = (M, R)>) -> Result<Self>
    where
        M: Into<BigInt>,
        R: Into<BigInt>,
    {
        let mut sys = Self::new();
        for (m, r) in pairs {
            sys.push(m.into(), r.into())?;
        }
        Ok(sys)
    }

    /// Adds `x ≡ r (mod m)`. Modulus 1 is trivially true and is dropped.
    pub fn push(&mut self, m: BigInt, r: BigInt) -> Result<()> {
        if !m.is_positive() {
            return Err(Error::Invalid(format!("modulus {m} must be positive")));
        }
        if m.is_one() {
            return Ok(());
        }
        let r = r.mod_floor(&m);
        self.entries.push((m, r));
        Ok(())
    }

    pub fn entries(&self) -> &[(BigInt, BigInt)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn modulus_lcm(&self) -> BigInt {
        lcm_all(self.entries.iter().map(|(m, _)| m))
    }

    pub fn satisfied_by(&self, x: &BigInt) -> bool {
        self.entries.iter().all(|(m, r)| &x.mod_floor(m) == r)
    }
}

/// Solution class `x₀ + m·ℤ` together with the Bézout coefficients
/// `Σ cᵢ·(m/mᵢ) = 1` used to build it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrtSolution {
    pub x0: BigInt,
    pub modulus: BigInt,
    pub coefficients: Vec<BigInt>,
}

/// Pairwise compatibility: `rᵢ ≡ rⱼ (mod gcd(mᵢ, mⱼ))` for all `i < j`.
pub fn crt_solvable(sys: &CongruenceSystem) -> bool {
    let e = sys.entries();
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            let d = e[i].0.gcd(&e[j].0);
            if !(&e[i].1 - &e[j].1).is_multiple_of(&d) {
                return false;
            }
        }
    }
    true
}

/// Constructive solution `x₀ = Σ rᵢ·cᵢ·(m/mᵢ) mod m`.
pub fn crt_solve(sys: &CongruenceSystem) -> Option<CrtSolution> {
    if !crt_solvable(sys) {
        return None;
    }
    let m = sys.modulus_lcm();
    if sys.is_empty() {
        return Some(CrtSolution { x0: BigInt::zero(), modulus: m, coefficients: vec![] });
    }
    let cofactors: Vec<BigInt> = sys.entries().iter().map(|(mi, _)| &m / mi).collect();
    let (g, cs) = gen_bezout(&cofactors).expect("cofactors are positive and nonempty");
    debug_assert!(g.is_one(), "cofactors of an lcm are coprime");
    let x0 = sys
        .entries()
        .iter()
        .zip(&cs)
        .zip(&cofactors)
        .map(|(((_, r), c), k)| r * c * k)
        .sum::<BigInt>()
        .mod_floor(&m);
    debug_assert!(sys.satisfied_by(&x0));
    Some(CrtSolution { x0, modulus: m, coefficients: cs })
}

/// Solves the system while avoiding finitely many values. Returns the
/// first admissible `x₀ + m·L` for `L = 0, 1, …`; for an empty system the
/// witness is one more than the largest forbidden value.
pub fn crt_with_inequations(sys: &CongruenceSystem, forbidden: &[BigInt]) -> Option<BigInt> {
    if sys.is_empty() {
        return Some(forbidden.iter().max().map_or_else(BigInt::zero, |m| m + 1));
    }
    let sol = crt_solve(sys)?;
    let mut x = sol.x0;
    while forbidden.contains(&x) {
        x += &sol.modulus;
    }
    Some(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubstructureKind {
    /// `{a/m | a ∈ ℤ}`
    ZOverM,
    /// `{a/mᵏ | a ∈ ℤ, k ∈ ℕ}`
    QOverM,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstructureSpec {
    pub kind: SubstructureKind,
    pub m: BigInt,
}

impl SubstructureSpec {
    pub fn new(kind: SubstructureKind, m: impl Into<BigInt>) -> Result<Self> {
        let m = m.into();
        if !m.is_positive() {
            return Err(Error::Invalid(format!("substructure parameter {m} must be ≥ 1")));
        }
        Ok(SubstructureSpec { kind, m })
    }
}

pub fn member_substructure(q: &BigRational, spec: &SubstructureSpec) -> bool {
    match spec.kind {
        SubstructureKind::ZOverM => (q * BigRational::from_integer(spec.m.clone())).is_integer(),
        SubstructureKind::QOverM => {
            let mut den = q.denom().clone();
            loop {
                let g = den.gcd(&spec.m);
                if g.is_one() {
                    return den.is_one();
                }
                while den.is_multiple_of(&g) {
                    den /= &g;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn ext_gcd_examples() {
        assert_eq!(ext_gcd(&bi(1), &bi(0)), (bi(1), bi(1), bi(0)));
        let (g, s, t) = ext_gcd(&bi(12), &bi(8));
        assert_eq!(g, bi(4));
        assert_eq!(s * 12 + t * 8, bi(4));
        let (g, s, t) = ext_gcd(&bi(7), &bi(4));
        assert_eq!((g, s, t), (bi(1), bi(-1), bi(2)));
        assert_eq!(ext_gcd(&bi(0), &bi(0)).0, bi(0));
        let (g, s, t) = ext_gcd(&bi(-12), &bi(18));
        assert_eq!(g, bi(6));
        assert_eq!(s * -12 + t * 18, bi(6));
    }

    #[test]
    fn gen_bezout_examples() {
        assert_eq!(gen_bezout(&[bi(5)]).unwrap(), (bi(5), vec![bi(1)]));
        for xs in [vec![3, 2], vec![6, 10, 15], vec![4, 6, 8]] {
            let v: Vec<BigInt> = xs.iter().map(|&x| bi(x)).collect();
            let (g, cs) = gen_bezout(&v).unwrap();
            assert_eq!(g, v.iter().fold(bi(0), |a, b| a.gcd(b)));
            assert_eq!(cs.iter().zip(&v).map(|(c, a)| c * a).sum::<BigInt>(), g);
        }
        assert!(gen_bezout(&[]).is_err());
    }

    #[test]
    fn crt_examples() {
        let a = CongruenceSystem::from_pairs([(4, 2), (6, 4)]).unwrap();
        assert!(crt_solvable(&a));
        let s = crt_solve(&a).unwrap();
        assert_eq!((s.x0, s.modulus), (bi(10), bi(12)));
        let b = CongruenceSystem::from_pairs([(2, 1), (4, 0)]).unwrap();
        assert!(!crt_solvable(&b));
        assert!(crt_solve(&b).is_none());
        let c = CongruenceSystem::from_pairs([(5, 3)]).unwrap();
        let s = crt_solve(&c).unwrap();
        assert_eq!((s.x0, s.modulus, s.coefficients), (bi(3), bi(5), vec![bi(1)]));
        assert!(crt_solvable(&CongruenceSystem::from_pairs([(9, 0)]).unwrap()));
    }

    #[test]
    fn crt_with_inequation_examples() {
        let a = CongruenceSystem::from_pairs([(4, 2), (6, 4)]).unwrap();
        assert_eq!(crt_with_inequations(&a, &[bi(10)]), Some(bi(22)));
        let b = CongruenceSystem::from_pairs([(2, 1), (4, 0)]).unwrap();
        assert_eq!(crt_with_inequations(&b, &[]), None);
        let e = CongruenceSystem::new();
        assert_eq!(crt_with_inequations(&e, &[bi(3), bi(9), bi(-4)]), Some(bi(10)));
    }

    #[test]
    fn substructure_examples() {
        let q = |n: i64, d: i64| BigRational::new(bi(n), bi(d));
        let qm = |m: i64| SubstructureSpec::new(SubstructureKind::QOverM, m).unwrap();
        let zm = |m: i64| SubstructureSpec::new(SubstructureKind::ZOverM, m).unwrap();
        assert!(!member_substructure(&q(1, 127), &qm(120)));
        assert!(member_substructure(&q(7, 144), &qm(12)));
        assert!(member_substructure(&q(5, 1), &zm(9)));
        assert!(!member_substructure(&q(1, 4), &zm(2)));
        assert!(member_substructure(&q(1, 8), &qm(2)));
        assert!(SubstructureSpec::new(SubstructureKind::ZOverM, 0).is_err());
    }
}
