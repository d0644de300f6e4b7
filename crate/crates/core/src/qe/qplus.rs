//! `∃x` over the positive rationals with the n-th power predicates, and
//! the ground root systems behind it.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::formula::{Budget, CanonicalLiteral, Formula, Mono, Theory};
use crate::numtheory::{fresh_prime, gen_bezout, lcm_u64, ExponentVector};
use crate::semantics::QPlusElem;

use super::simplify::{all_of, mono_eq, mono_ne, root_lit};

const TH: Theory = Theory::QPosMul;

/// A solution of `⋀ ℜ_(nᵢ)(uᵢ·y)`: exactly the elements `wⁿ·base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemSolution {
    pub base: QPlusElem,
    /// `n = lcm(nᵢ)`.
    pub modulus: u64,
    /// `cᵢ` with `Σ cᵢ·(n/nᵢ) = 1`.
    pub coefficients: Vec<BigInt>,
}

fn bezout_weights(orders: &[u64]) -> Result<(u64, Vec<BigInt>, Vec<BigInt>)> {
    let n = lcm_u64(orders.iter().copied());
    let quotients: Vec<BigInt> = orders.iter().map(|k| BigInt::from(n / k)).collect();
    let (g, coefficients) = gen_bezout(&quotients)?;
    if !g.is_one() {
        return Err(Error::Invariant(format!("quotients of {n} have gcd {g}")));
    }
    // exponent of uᵢ in the base: −cᵢ·n/nᵢ
    let weights = coefficients.iter().zip(&quotients).map(|(c, q)| -(c * q)).collect();
    Ok((n, coefficients, weights))
}

fn divisible(ev: &ExponentVector<BigInt>, d: u64) -> bool {
    ev.all(|e| e.is_multiple_of(&BigInt::from(d)))
}

/// Solves `⋀ ℜ_(nᵢ)(uᵢ·y)` over ℚ⁺. `None` when some pair fails
/// `ℜ_(gcd(nᵢ,nⱼ))(uᵢ·uⱼ⁻¹)`.
pub fn solve_root_system(relations: &[(u64, QPlusElem)]) -> Result<Option<RootSystemSolution>> {
    if relations.iter().any(|(n, _)| *n == 0) {
        return Err(Error::Invalid("root predicate of order 0".into()));
    }
    for (i, (n1, u1)) in relations.iter().enumerate() {
        for (n2, u2) in &relations[i + 1..] {
            if !divisible(&u1.ev.add(&u2.ev.negate()), n1.gcd(n2)) {
                return Ok(None);
            }
        }
    }
    let orders: Vec<u64> = relations.iter().map(|(n, _)| *n).collect();
    let (modulus, coefficients, weights) = bezout_weights(&orders)?;
    let base = relations
        .iter()
        .zip(&weights)
        .fold(ExponentVector::new(), |acc, ((_, u), w)| acc.add(&u.ev.scale(w)));
    Ok(Some(RootSystemSolution { base: QPlusElem { ev: base }, modulus, coefficients }))
}

/// Decides `∃y ⋀ ℜ_(nᵢ)(uᵢ·y) ∧ ⋀ ¬ℜ_(mₖ)(vₖ·y)` and returns the witness
/// `base·pⁿ` for a prime `p` outside every support.
pub fn solve_root_system_with_negations(
    pos: &[(u64, QPlusElem)],
    neg: &[(u64, QPlusElem)],
) -> Result<(bool, Option<QPlusElem>)> {
    if neg.iter().any(|(m, _)| *m == 0) {
        return Err(Error::Invalid("root predicate of order 0".into()));
    }
    let Some(sol) = solve_root_system(pos)? else { return Ok((false, None)) };
    let n = sol.modulus;
    for (m, v) in neg {
        if n % m == 0 && divisible(&sol.base.ev.add(&v.ev), *m) {
            return Ok((false, None));
        }
    }
    let support: BTreeSet<u64> = pos.iter().chain(neg).flat_map(|(_, u)| u.ev.support()).collect();
    let p = fresh_prime(&support);
    let witness = sol.base.ev.add(&ExponentVector::single(p, BigInt::from(n)));
    Ok((true, Some(QPlusElem { ev: witness })))
}

fn small(e: &BigInt) -> Result<i64> {
    e.to_i64().ok_or_else(|| Error::ResourceCap(format!("exponent {e} too large")))
}

pub(crate) fn qplus_core(canon: &[CanonicalLiteral], budget: &mut Budget) -> Result<Formula> {
    budget.charge(canon.len())?;
    let mut exps = Vec::new();
    for c in canon {
        match c {
            CanonicalLiteral::Power { exp, .. } | CanonicalLiteral::Root { exp, .. } => exps.push(*exp as u64),
            other => return Err(Error::NotCanonical(format!("`{other}` is not a literal of {TH}"))),
        }
    }
    // y = x^q; a = b ⟺ a^η = b^η and ℜₗ(a) ⟺ ℜ_(lη)(a^η)
    let q = lcm_u64(exps) as i64;
    let mut eqs = Vec::new();
    let mut neqs = Vec::new();
    let mut roots = vec![(q as u64, Mono::one(), true)];
    for c in canon {
        match c {
            CanonicalLiteral::Power { exp, eq, side, .. } => {
                let t = side.pow(q / exp, TH)?;
                if *eq { eqs.push(t) } else { neqs.push(t) }
            }
            CanonicalLiteral::Root { exp, modulus, holds, side, .. } => {
                let eta = q / exp;
                roots.push((modulus * eta as u64, side.pow(eta, TH)?, *holds));
            }
            _ => unreachable!("checked above"),
        }
    }
    if let Some((t0, rest)) = eqs.split_first() {
        let mut out: Vec<Formula> = rest.iter().map(|t| mono_eq(t0, t)).collect();
        out.extend(neqs.iter().map(|s| mono_ne(t0, s)));
        for (n, u, holds) in &roots {
            out.push(root_lit(*n, &u.mul(t0, TH)?, *holds));
        }
        return Ok(all_of(out));
    }
    let pos: Vec<(u64, Mono)> = roots.iter().filter(|r| r.2).map(|(n, u, _)| (*n, u.clone())).collect();
    let neg: Vec<(u64, Mono)> = roots.iter().filter(|r| !r.2).map(|(n, u, _)| (*n, u.clone())).collect();
    let mut out = Vec::new();
    for (i, (n1, u1)) in pos.iter().enumerate() {
        for (n2, u2) in &pos[i + 1..] {
            out.push(root_lit(n1.gcd(n2), &u1.mul(&u2.inv(TH), TH)?, true));
        }
    }
    let orders: Vec<u64> = pos.iter().map(|(n, _)| *n).collect();
    let (n, _, weights) = bezout_weights(&orders)?;
    let mut a = Mono::one();
    for ((_, u), w) in pos.iter().zip(&weights) {
        a = a.mul(&u.pow(small(w)?, TH)?, TH)?;
    }
    for (m, v) in &neg {
        if n % m == 0 {
            out.push(root_lit(*m, &a.mul(v, TH)?, false));
        }
    }
    Ok(all_of(out))
}
