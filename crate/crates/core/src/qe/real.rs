//! `∃x` over the multiplicative reals: positive, nonnegative and signed.

use crate::error::{Error, Result};
use crate::formula::{minus, positive, Budget, CanonicalLiteral, Formula, Mono, Theory};
use crate::numtheory::lcm_u64;

use super::complex::{at_zero, nonzero_part, split_powers};
use super::simplify::{all_of, any_of, mono_eq, mono_ne};

/// `∃x > 0` with `⋀ xⁿ = t` and `⋀ xᵐ ≠ s` in a torsion-free divisible
/// group: raise everything to the common exponent `L` and substitute the
/// first target. With `signed`, the targets' signs are tested as well.
fn positive_core(eqs: &[(i64, Mono)], neqs: &[(i64, Mono)], theory: Theory, signed: bool) -> Result<Formula> {
    if eqs.is_empty() {
        return Ok(Formula::True);
    }
    let l = lcm_u64(eqs.iter().chain(neqs).map(|(n, _)| *n as u64)) as i64;
    let lift = |(n, t): &(i64, Mono)| t.pow(l / n, theory);
    let t0 = lift(&eqs[0])?;
    let mut out = Vec::new();
    if signed {
        out.extend(eqs.iter().map(|(_, t)| positive(t)));
    }
    for e in &eqs[1..] {
        out.push(mono_eq(&t0, &lift(e)?));
    }
    for e in neqs {
        let differ = mono_ne(&t0, &lift(e)?);
        if signed {
            let s = &e.1;
            out.push(any_of(vec![mono_eq(s, &Mono::zero()), positive(&minus(s, theory)), differ]));
        } else {
            out.push(differ);
        }
    }
    Ok(all_of(out))
}

pub(crate) fn rpos_core(canon: &[CanonicalLiteral], budget: &mut Budget) -> Result<Formula> {
    let (eqs, neqs) = split_powers(canon, Theory::RPosMul)?;
    budget.charge(eqs.len() + neqs.len())?;
    positive_core(&eqs, &neqs, Theory::RPosMul, false)
}

pub(crate) fn rnonneg_core(canon: &[CanonicalLiteral], budget: &mut Budget) -> Result<Formula> {
    let th = Theory::RNonnegMul;
    let (eqs, neqs) = split_powers(canon, th)?;
    budget.charge(eqs.len() + neqs.len())?;
    let zero = at_zero(&eqs, &neqs);
    let Some((mut side, (eqs, neqs))) = nonzero_part(eqs, neqs) else { return Ok(zero) };
    side.push(positive_core(&eqs, &neqs, th, false)?);
    Ok(any_of(vec![zero, all_of(side)]))
}

pub(crate) fn real_core(canon: &[CanonicalLiteral], budget: &mut Budget) -> Result<Formula> {
    let th = Theory::RMul;
    let mut powers = Vec::new();
    let mut signs = Vec::new();
    for c in canon {
        match c {
            CanonicalLiteral::Sign { negated_arg, .. } => signs.push(*negated_arg),
            CanonicalLiteral::Power { .. } => powers.push(c.clone()),
            other => return Err(Error::NotCanonical(format!("`{other}` is not a literal of {th}"))),
        }
    }
    let (eqs, neqs) = split_powers(&powers, th)?;
    budget.charge(canon.len())?;
    let zero = if signs.is_empty() { at_zero(&eqs, &neqs) } else { Formula::False };
    // x > 0
    let pos = if signs.iter().any(|n| *n) {
        Formula::False
    } else {
        positive_core(&eqs, &neqs, th, true)?
    };
    // x = −z with z > 0, so xⁿ = (−1)ⁿ·zⁿ
    let neg = if signs.iter().any(|n| !*n) {
        Formula::False
    } else {
        let flip = |(n, t): &(i64, Mono)| (*n, if n % 2 == 0 { t.clone() } else { minus(t, th) });
        let eqs: Vec<_> = eqs.iter().map(flip).collect();
        let neqs: Vec<_> = neqs.iter().map(flip).collect();
        positive_core(&eqs, &neqs, th, true)?
    };
    Ok(any_of(vec![zero, pos, neg]))
}
