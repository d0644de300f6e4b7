//! Constant folding, duplicate removal and a few cheap contradiction and
//! tautology rules.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::formula::{
    minus, negate, normalize_linear, normalize_mono, Atom, Coef, Formula, Linear, Mono, Term, Theory,
};
use crate::semantics::eval_ground;

/// `a = b` for monomials, folded when decidable syntactically.
pub(crate) fn mono_eq(a: &Mono, b: &Mono) -> Formula {
    crate::formula::mono_eq(a, b)
}

pub(crate) fn mono_ne(a: &Mono, b: &Mono) -> Formula {
    crate::formula::mono_ne(a, b)
}

/// `ℜₙ(m)`, folded on ground arguments.
pub(crate) fn root_lit(n: u64, m: &Mono, holds: bool) -> Formula {
    let f = if n == 1 {
        Formula::True
    } else if m.is_ground() {
        let ok = match &m.coef {
            Coef::Unit { ev, .. } => ev.all(|e| e.is_multiple_of(&BigInt::from(n))),
            Coef::Zero => false,
        };
        if ok { Formula::True } else { Formula::False }
    } else {
        Formula::Atom(Atom::Root(n, m.to_term()))
    };
    if holds { f } else { negate(f) }
}

/// `a = b` for linear forms, written as `a - b = 0` unless it folds.
pub(crate) fn lin_eq(a: &Linear, b: &Linear, eq: bool) -> Formula {
    let diff = a.sub(b);
    let f = if diff.is_ground() {
        if diff.constant.is_zero() { Formula::True } else { Formula::False }
    } else if b.is_ground() && a.constant.is_zero() {
        Formula::eq(a.to_term(), b.to_term())
    } else {
        let c = diff.constant.clone();
        let vars = diff.plus_constant(&-&c);
        Formula::eq(vars.to_term(), Term::Num(-c))
    };
    if eq { f } else { negate(f) }
}

/// `l ≡ₙ 0` with the constant moved right and reduced, folded when ground.
pub(crate) fn cong_lit(n: u64, l: &Linear, holds: bool) -> Formula {
    let nb = BigInt::from(n);
    let reduce = |q: &BigRational| -> BigInt { q.to_integer().mod_floor(&nb) };
    let f = if n == 1 || l.coeffs.values().all(|c| c.is_multiple_of(&nb)) {
        if reduce(&l.constant).is_zero() { Formula::True } else { Formula::False }
    } else {
        let vars = Linear { constant: BigRational::zero(), coeffs: l.coeffs.clone() };
        let rhs = reduce(&-&l.constant);
        Formula::Atom(Atom::Cong(n, vars.to_term(), Term::Num(BigRational::from_integer(rhs))))
    };
    if holds { f } else { negate(f) }
}

/// Simplifies a formula without changing its meaning in the theory's model.
pub fn simplify(f: &Formula, theory: Theory) -> Formula {
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom(a) => simplify_atom(a, theory),
        Formula::Not(a) => negate(simplify(a, theory)),
        Formula::And(xs) => conjunction(xs.iter().map(|x| simplify(x, theory)).collect(), theory),
        Formula::Or(xs) => disjunction(xs.iter().map(|x| simplify(x, theory)).collect(), theory),
        Formula::Implies(a, b) => {
            disjunction(vec![negate(simplify(a, theory)), simplify(b, theory)], theory)
        }
        Formula::Iff(a, b) => {
            let (a, b) = (simplify(a, theory), simplify(b, theory));
            match (&a, &b) {
                (Formula::True, _) => b,
                (_, Formula::True) => a,
                (Formula::False, _) => negate(b),
                (_, Formula::False) => negate(a),
                _ if a == b => Formula::True,
                _ => Formula::iff(a, b),
            }
        }
        Formula::Exists(x, b) | Formula::Forall(x, b) => {
            let body = simplify(b, theory);
            if !body.mentions(x) {
                return body;
            }
            if matches!(f, Formula::Exists(..)) { Formula::exists(x.clone(), body) } else { Formula::forall(x.clone(), body) }
        }
    }
}

fn simplify_atom(a: &Atom, theory: Theory) -> Formula {
    let keep = || Formula::Atom(a.clone());
    if a.is_ground() {
        return match eval_ground(&Formula::Atom(a.clone()), theory) {
            Ok(true) => Formula::True,
            Ok(false) => Formula::False,
            Err(_) => keep(),
        };
    }
    match a {
        Atom::Eq(l, r) if theory.is_multiplicative() => match (normalize_mono(l, theory), normalize_mono(r, theory)) {
            (Ok(l), Ok(r)) if l == r => Formula::True,
            _ => oriented(l, r),
        },
        Atom::Eq(l, r) => match (normalize_linear(l), normalize_linear(r)) {
            (Ok(l), Ok(r)) if l == r => Formula::True,
            _ => oriented(l, r),
        },
        Atom::Root(1, _) | Atom::Cong(1, ..) => Formula::True,
        Atom::Cong(n, l, r) => match (normalize_linear(l), normalize_linear(r)) {
            (Ok(l), Ok(r)) => {
                let diff = l.sub(&r);
                let nb = BigInt::from(*n);
                if diff.coeffs.values().all(|c| c.is_multiple_of(&nb)) {
                    cong_lit(*n, &diff, true)
                } else {
                    keep()
                }
            }
            _ => keep(),
        },
        _ => keep(),
    }
}

/// Puts ground sides on the right and otherwise orders sides textually, so
/// that `a = b` and `b = a` coincide.
fn oriented(l: &Term, r: &Term) -> Formula {
    let swap = match (l.is_ground(), r.is_ground()) {
        (true, false) => true,
        (false, true) => false,
        _ => l.to_string() > r.to_string(),
    };
    if swap { Formula::eq(r.clone(), l.clone()) } else { Formula::eq(l.clone(), r.clone()) }
}

fn complement(f: &Formula) -> Formula {
    match f {
        Formula::Not(a) => (**a).clone(),
        other => Formula::not(other.clone()),
    }
}

/// Flattens, drops units and duplicates; `None` when an absorbing element
/// or a complementary pair shows up.
fn collect(items: Vec<Formula>, is_and: bool) -> Option<Vec<Formula>> {
    let (unit, absorbing) = if is_and { (Formula::True, Formula::False) } else { (Formula::False, Formula::True) };
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut stack: Vec<Formula> = items.into_iter().rev().collect();
    while let Some(f) = stack.pop() {
        match f {
            Formula::And(xs) if is_and => stack.extend(xs.into_iter().rev()),
            Formula::Or(xs) if !is_and => stack.extend(xs.into_iter().rev()),
            f if f == unit => {}
            f if f == absorbing => return None,
            f => {
                if seen.contains(&complement(&f)) {
                    return None;
                }
                if seen.insert(f.clone()) {
                    out.push(f);
                }
            }
        }
    }
    Some(out)
}

fn conjunction(items: Vec<Formula>, theory: Theory) -> Formula {
    let Some(items) = collect(items, true) else { return Formula::False };
    if theory == Theory::ZAdd && congruences_clash(&items) {
        return Formula::False;
    }
    Formula::and(items)
}

fn disjunction(items: Vec<Formula>, theory: Theory) -> Formula {
    let Some(items) = collect(items, false) else { return Formula::True };
    if theory == Theory::RMul && sign_trichotomy(&items, theory) {
        return Formula::True;
    }
    Formula::or(items)
}

/// `l ≡ₐ c ∧ l ≡_b d` with `c ≢ d (mod gcd(a, b))`.
fn congruences_clash(items: &[Formula]) -> bool {
    let mut by_part: BTreeMap<BTreeMap<String, BigInt>, Vec<(BigInt, BigRational)>> = BTreeMap::new();
    for f in items {
        let Formula::Atom(Atom::Cong(n, l, r)) = f else { continue };
        let (Ok(l), Ok(r)) = (normalize_linear(l), normalize_linear(r)) else { continue };
        let diff = l.sub(&r);
        by_part.entry(diff.coeffs.clone()).or_default().push((BigInt::from(*n), diff.constant));
    }
    by_part.values().any(|cs| {
        cs.iter().enumerate().any(|(i, (n1, c1))| {
            cs[i + 1..].iter().any(|(n2, c2)| {
                let g = n1.gcd(n2);
                let d = c1 - c2;
                !d.is_integer() || !d.to_integer().is_multiple_of(&g)
            })
        })
    })
}

/// `t = 0 ∨ 𝒫(t) ∨ 𝒫(−t)`.
fn sign_trichotomy(items: &[Formula], theory: Theory) -> bool {
    let mut zeros = Vec::new();
    let mut positives = HashSet::new();
    for f in items {
        match f {
            Formula::Atom(Atom::Eq(l, r)) => {
                let (Ok(l), Ok(r)) = (normalize_mono(l, theory), normalize_mono(r, theory)) else { continue };
                if r.is_zero() {
                    zeros.push(l);
                } else if l.is_zero() {
                    zeros.push(r);
                }
            }
            Formula::Atom(Atom::Pos(t)) => {
                if let Ok(m) = normalize_mono(t, theory) {
                    positives.insert(m);
                }
            }
            _ => {}
        }
    }
    zeros.iter().any(|m| positives.contains(m) && positives.contains(&minus(m, theory)))
}


/// Conjunction with `true`/`false` folded away.
pub(crate) fn all_of(items: impl IntoIterator<Item = Formula>) -> Formula {
    let mut out = Vec::new();
    for f in items {
        match f {
            Formula::True => {}
            Formula::False => return Formula::False,
            f => out.push(f),
        }
    }
    Formula::and(out)
}

/// Disjunction with `true`/`false` folded away.
pub(crate) fn any_of(items: impl IntoIterator<Item = Formula>) -> Formula {
    let mut out = Vec::new();
    for f in items {
        match f {
            Formula::False => {}
            Formula::True => return Formula::True,
            f => out.push(f),
        }
    }
    Formula::or(out)
}
