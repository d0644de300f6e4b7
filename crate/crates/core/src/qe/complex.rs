//! `∃x` over the complex multiplicative structure.

use crate::error::{Error, Result};
use crate::formula::{negate, Budget, CanonicalLiteral, Coef, Formula, Mono, Theory};

use super::simplify::{all_of, any_of, mono_eq, mono_ne};

const TH: Theory = Theory::CMul;

/// Power literals `xᵏ ⋈ side` split into equations and disequations.
pub(crate) type Powers = (Vec<(i64, Mono)>, Vec<(i64, Mono)>);

pub(crate) fn split_powers(canon: &[CanonicalLiteral], theory: Theory) -> Result<Powers> {
    let mut eqs = Vec::new();
    let mut neqs = Vec::new();
    for c in canon {
        match c {
            CanonicalLiteral::Power { exp, eq: true, side, .. } => eqs.push((*exp, side.clone())),
            CanonicalLiteral::Power { exp, eq: false, side, .. } => neqs.push((*exp, side.clone())),
            other => return Err(Error::NotCanonical(format!("`{other}` is not a literal of {theory}"))),
        }
    }
    Ok((eqs, neqs))
}

/// The `x = 0` branch: every power of `x` is zero.
pub(crate) fn at_zero(eqs: &[(i64, Mono)], neqs: &[(i64, Mono)]) -> Formula {
    let zero = Mono::zero();
    let mut items: Vec<Formula> = eqs.iter().map(|(_, t)| mono_eq(&zero, t)).collect();
    items.extend(neqs.iter().map(|(_, s)| mono_ne(&zero, s)));
    all_of(items)
}

/// Restricts to `x ≠ 0`: equations need nonzero right sides and
/// disequations against zero hold trivially.
pub(crate) fn nonzero_part(eqs: Vec<(i64, Mono)>, neqs: Vec<(i64, Mono)>) -> Option<(Vec<Formula>, Powers)> {
    let zero = Mono::zero();
    if eqs.iter().any(|(_, t)| t.is_zero()) {
        return None;
    }
    let side: Vec<Formula> = eqs.iter().map(|(_, t)| mono_ne(t, &zero)).collect();
    let neqs = neqs.into_iter().filter(|(_, s)| !s.is_zero()).collect();
    Some((side, (eqs, neqs)))
}

pub(crate) fn complex_core(canon: &[CanonicalLiteral], budget: &mut Budget) -> Result<Formula> {
    let (eqs, neqs) = split_powers(canon, TH)?;
    if eqs.is_empty() {
        // infinitely many elements, finitely many excluded
        return Ok(Formula::True);
    }
    let zero = at_zero(&eqs, &neqs);
    let Some((mut side, (eqs, neqs))) = nonzero_part(eqs, neqs) else { return Ok(zero) };
    side.push(group(eqs, neqs, budget)?);
    Ok(any_of(vec![zero, all_of(side)]))
}

/// `∃x ≠ 0` with `⋀ xⁿ = t` (all `t ≠ 0`) and `⋀ xᵐ ≠ s`.
fn group(mut eqs: Vec<(i64, Mono)>, neqs: Vec<(i64, Mono)>, budget: &mut Budget) -> Result<Formula> {
    budget.charge(eqs.len() + neqs.len())?;
    if eqs.is_empty() {
        return Ok(Formula::True);
    }
    eqs.sort_by_key(|(n, _)| *n);
    let (n, t) = eqs.remove(0);
    let mut free = Vec::new();
    if n == 1 {
        for (k, u) in &eqs {
            free.push(mono_eq(&t.pow(*k, TH)?, u));
        }
        for (k, s) in &neqs {
            free.push(mono_ne(&t.pow(*k, TH)?, s));
        }
        return Ok(all_of(free));
    }
    // xᵏ = (xⁿ)^q·xʳ = t^q·xʳ
    let reduce = |k: i64, u: &Mono| -> Result<(i64, Mono, Mono)> {
        let (q, r) = (k / n, k % n);
        let tq = t.pow(q, TH)?;
        Ok((r, tq.clone(), u.mul(&tq.inv(TH), TH)?))
    };
    let mut lower = Vec::new();
    for (k, u) in &eqs {
        let (r, tq, target) = reduce(*k, u)?;
        if r == 0 { free.push(mono_eq(&tq, u)) } else { lower.push((r, target)) }
    }
    if !lower.is_empty() {
        lower.push((n, t));
        free.push(group(lower, neqs, budget)?);
        return Ok(all_of(free));
    }
    let mut rest = Vec::new();
    for (k, s) in &neqs {
        let (r, tq, target) = reduce(*k, s)?;
        if r == 0 { free.push(mono_ne(&tq, s)) } else { rest.push((r, target)) }
    }
    let Some((m, s)) = rest.pop() else { return Ok(all_of(free)) };
    // xᵐ ≠ s  ⟺  x^(mn) ≠ sⁿ ∨ ⋁_{0<i<n} xᵐ = s·ωₙⁱ, and x^(mn) = tᵐ
    let differ = mono_ne(&t.pow(m, TH)?, &s.pow(n, TH)?);
    let mut branches = Vec::new();
    if differ != Formula::False {
        branches.push(all_of(vec![differ.clone(), group(vec![(n, t.clone())], rest.clone(), budget)?]));
    }
    if differ != Formula::True {
        let s_nonzero = negate(mono_eq(&s, &Mono::zero()));
        for i in 1..n {
            let target = s.scale_coef(&Coef::omega(n as u64).pow(i), TH);
            let sub = group(vec![(n, t.clone()), (m, target)], rest.clone(), budget)?;
            branches.push(all_of(vec![s_nonzero.clone(), sub]));
        }
    }
    free.push(any_of(branches));
    Ok(all_of(free))
}
