//! Deterministic primality for 64-bit integers, factorization, fresh primes.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Numbers wider than this are refused by [`factor_natural`].
pub const MAX_FACTOR_BITS: u64 = 256;

/// Trial-division bound used while a cofactor does not fit in 64 bits.
const WIDE_TRIAL_BOUND: u64 = 1 << 20;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin; the witness set is exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Smallest prime not contained in `avoid`.
pub fn fresh_prime(avoid: &BTreeSet<u64>) -> u64 {
    let mut p = 2;
    while avoid.contains(&p) {
        p = next_prime(p);
    }
    p
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

// Brent's variant of Pollard's rho. `n` must be odd and composite.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_u64_into(n: u64, out: &mut BTreeMap<u64, u32>) {
    if n == 1 {
        return;
    }
    let mut n = n;
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        while n.is_multiple_of(p) {
            *out.entry(p).or_default() += 1;
            n /= p;
        }
    }
    if n == 1 {
        return;
    }
    if is_prime(n) {
        *out.entry(n).or_default() += 1;
        return;
    }
    let d = pollard_rho(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

/// Prime factorization of a positive integer as `prime ↦ multiplicity`.
///
/// Inputs wider than [`MAX_FACTOR_BITS`] are refused, as are wide inputs
/// whose large cofactor does not shrink to 64 bits under trial division.
pub fn factor_natural(n: &BigUint) -> Result<BTreeMap<u64, u32>> {
    if n.is_zero() {
        return Err(Error::Invalid("cannot factor 0".into()));
    }
    if n.bits() > MAX_FACTOR_BITS {
        return Err(Error::ResourceCap(format!(
            "refusing to factor a {}-bit integer",
            n.bits()
        )));
    }
    let mut out = BTreeMap::new();
    let mut rest = n.clone();
    let mut p = 2u64;
    while rest.to_u64().is_none() {
        if p > WIDE_TRIAL_BOUND {
            return Err(Error::ResourceCap(
                "integer has no small factors and exceeds 64 bits".into(),
            ));
        }
        let bp = BigUint::from(p);
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            *out.entry(p).or_default() += 1;
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    factor_u64_into(rest.to_u64().unwrap(), &mut out);
    Ok(out)
}
