//! `∃x` over the additive structures: divisible groups and the integers
//! with congruences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::formula::{Budget, CanonicalLiteral, Formula, Linear, Theory};
use crate::numtheory::{crt_with_inequations, lcm, CongruenceSystem};

use super::simplify::{all_of, any_of, cong_lit, lin_eq};

/// The literals rewritten for `y = h∙x`, `h` the lcm of all coefficients.
struct Unified {
    h: BigInt,
    eqs: Vec<Linear>,
    neqs: Vec<Linear>,
    /// `(modulus, residue, holds)` for `y ≡ residue`.
    congs: Vec<(BigInt, Linear, bool)>,
}

fn unify(canon: &[CanonicalLiteral], theory: Theory) -> Result<Unified> {
    let mut h = BigInt::one();
    for c in canon {
        match c {
            CanonicalLiteral::Scaled { coeff, .. } | CanonicalLiteral::Congruent { coeff, .. } => h = lcm(&h, coeff),
            other => return Err(Error::NotCanonical(format!("`{other}` is not a literal of {theory}"))),
        }
    }
    let mut u = Unified { h: h.clone(), eqs: vec![], neqs: vec![], congs: vec![] };
    for c in canon {
        match c {
            CanonicalLiteral::Scaled { coeff, eq, side, .. } => {
                let t = side.scale(&(&h / coeff));
                if *eq { u.eqs.push(t) } else { u.neqs.push(t) }
            }
            CanonicalLiteral::Congruent { coeff, modulus, holds, side, .. } => {
                let f = &h / coeff;
                // k∙x ≡ₙ s  ⟺  h∙x ≡_(n·h/k) (h/k)∙s
                u.congs.push((BigInt::from(*modulus) * &f, side.scale(&f), *holds));
            }
            _ => unreachable!("checked above"),
        }
    }
    Ok(u)
}

fn modulus_u64(m: &BigInt) -> Result<u64> {
    m.to_u64().ok_or_else(|| Error::ResourceCap(format!("modulus {m} too large")))
}

pub(crate) fn divisible_core(canon: &[CanonicalLiteral], budget: &mut Budget) -> Result<Formula> {
    let u = unify(canon, Theory::DivAdd)?;
    budget.charge(canon.len())?;
    let Some((t0, rest)) = u.eqs.split_first() else { return Ok(Formula::True) };
    let mut out: Vec<Formula> = rest.iter().map(|t| lin_eq(t0, t, true)).collect();
    out.extend(u.neqs.iter().map(|s| lin_eq(t0, s, false)));
    Ok(all_of(out))
}

pub(crate) fn integer_core(canon: &[CanonicalLiteral], budget: &mut Budget) -> Result<Formula> {
    let mut u = unify(canon, Theory::ZAdd)?;
    budget.charge(canon.len())?;
    if !u.h.is_one() {
        u.congs.push((u.h.clone(), Linear::zero(), true));
    }
    if let Some((t0, rest)) = u.eqs.split_first() {
        let mut out: Vec<Formula> = rest.iter().map(|t| lin_eq(t0, t, true)).collect();
        out.extend(u.neqs.iter().map(|s| lin_eq(t0, s, false)));
        for (m, r, holds) in &u.congs {
            out.push(cong_lit(modulus_u64(m)?, &t0.sub(r), *holds));
        }
        return Ok(all_of(out));
    }
    let pos: Vec<(BigInt, Linear)> = u.congs.iter().filter(|c| c.2).map(|(m, r, _)| (m.clone(), r.clone())).collect();
    let negs: Vec<(BigInt, Linear)> = u.congs.iter().filter(|c| !c.2).map(|(m, r, _)| (m.clone(), r.clone())).collect();
    if pos.iter().enumerate().any(|(i, c)| pos[..i].iter().any(|d| clash(c, d))) {
        return Ok(Formula::False);
    }
    let mut leaves = Vec::new();
    if expand(&mut pos.clone(), &negs, &u.neqs, budget, &mut leaves)? {
        return Ok(Formula::True);
    }
    Ok(any_of(leaves))
}

/// Two congruences on `y` whose residues differ by a constant that the
/// gcd of the moduli does not divide.
fn clash((m1, r1): &(BigInt, Linear), (m2, r2): &(BigInt, Linear)) -> bool {
    let d = r1.sub(r2);
    d.is_ground() && !d.constant.to_integer().is_multiple_of(&m1.gcd(m2))
}

/// Expands `¬(y ≡_q r)` into `⋁_{0<i<q} y ≡_q r + i` one literal at a time,
/// pruning branches that clash with the congruences chosen so far.
/// Returns `true` as soon as some branch is valid outright.
fn expand(
    pos: &mut Vec<(BigInt, Linear)>,
    negs: &[(BigInt, Linear)],
    neqs: &[Linear],
    budget: &mut Budget,
    leaves: &mut Vec<Formula>,
) -> Result<bool> {
    let Some(((q, r), more)) = negs.split_first() else {
        budget.charge(pos.len().max(1))?;
        let leaf = congruence_criterion(pos, neqs)?;
        if leaf == Formula::True {
            return Ok(true);
        }
        if leaf != Formula::False {
            leaves.push(leaf);
        }
        return Ok(false);
    };
    let mut i = BigInt::one();
    while &i < q {
        let cand = (q.clone(), r.plus_constant(&BigRational::from_integer(i.clone())));
        if !pos.iter().any(|c| clash(&cand, c)) {
            pos.push(cand);
            let done = expand(pos, more, neqs, budget, leaves)?;
            pos.pop();
            if done {
                return Ok(true);
            }
        }
        i += 1;
    }
    Ok(false)
}

/// `∃y ⋀ y ≡_(mᵢ) rᵢ ∧ ⋀ y ≠ sⱼ`: solvable iff residues agree pairwise
/// modulo the gcds; disequations never matter.
fn congruence_criterion(pos: &[(BigInt, Linear)], neqs: &[Linear]) -> Result<Formula> {
    if pos.iter().all(|(_, r)| r.is_ground()) {
        let mut sys = CongruenceSystem::new();
        for (m, r) in pos {
            sys.push(m.clone(), r.constant.to_integer())?;
        }
        let forbidden: Vec<BigInt> = neqs.iter().filter(|s| s.is_ground()).map(|s| s.constant.to_integer()).collect();
        return Ok(if crt_with_inequations(&sys, &forbidden).is_some() { Formula::True } else { Formula::False });
    }
    let mut out = Vec::new();
    for (i, (m1, r1)) in pos.iter().enumerate() {
        for (m2, r2) in &pos[i + 1..] {
            let g = m1.gcd(m2);
            if !g.is_one() {
                out.push(cong_lit(modulus_u64(&g)?, &r1.sub(r2), true));
            }
        }
    }
    Ok(all_of(out))
}
