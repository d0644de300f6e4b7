//! Rewriting literals so that one variable is isolated.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ast::{Atom, Formula, Term};
use super::normal::{normalize_linear, normalize_mono, Coef, Linear, Mono};
use super::theory::Theory;
use super::transform::Budget;
use crate::error::{Error, Result};

/// A literal in which the distinguished variable occurs only in the shape
/// `xⁿ`, `k∙x` or `𝒫(±x)`, never inside `side`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CanonicalLiteral {
    /// `xᵉˣᵖ = side` or `xᵉˣᵖ ≠ side`.
    Power { var: String, exp: i64, eq: bool, side: Mono },
    /// `𝒫(x)`, or `𝒫(−x)` when `negated_arg`.
    Sign { var: String, negated_arg: bool },
    /// `ℜ_modulus(side · xᵉˣᵖ)`, negated when `!holds`.
    Root { var: String, exp: i64, modulus: u64, holds: bool, side: Mono },
    /// `coeff∙x = side` or `≠`.
    Scaled { var: String, coeff: BigInt, eq: bool, side: Linear },
    /// `coeff∙x ≡_modulus side`, negated when `!holds`.
    Congruent { var: String, coeff: BigInt, modulus: u64, holds: bool, side: Linear },
}

impl CanonicalLiteral {
    pub fn var(&self) -> &str {
        match self {
            CanonicalLiteral::Power { var, .. }
            | CanonicalLiteral::Sign { var, .. }
            | CanonicalLiteral::Root { var, .. }
            | CanonicalLiteral::Scaled { var, .. }
            | CanonicalLiteral::Congruent { var, .. } => var,
        }
    }

    pub fn is_zero_test(&self) -> bool {
        matches!(self, CanonicalLiteral::Power { exp: 1, side, .. } if side.is_zero())
    }

    pub fn to_formula(&self) -> Formula {
        let x = Term::var(self.var().to_string());
        let xpow = |e: i64| if e == 1 { x.clone() } else { Term::pow(x.clone(), e) };
        let xscale = |k: &BigInt| if k.is_one() { x.clone() } else { Term::scale(k.clone(), x.clone()) };
        match self {
            CanonicalLiteral::Power { exp, eq, side, .. } => {
                let a = Formula::eq(xpow(*exp), side.to_term());
                if *eq { a } else { Formula::not(a) }
            }
            CanonicalLiteral::Sign { negated_arg, .. } => {
                let arg = if *negated_arg { Term::mul(Term::int(-1), x.clone()) } else { x.clone() };
                Formula::Atom(Atom::Pos(arg))
            }
            CanonicalLiteral::Root { exp, modulus, holds, side, .. } => {
                let arg = if side.is_one() { xpow(*exp) } else { Term::mul(side.to_term(), xpow(*exp)) };
                let a = Formula::Atom(Atom::Root(*modulus, arg));
                if *holds { a } else { Formula::not(a) }
            }
            CanonicalLiteral::Scaled { coeff, eq, side, .. } => {
                let a = Formula::eq(xscale(coeff), side.to_term());
                if *eq { a } else { Formula::not(a) }
            }
            CanonicalLiteral::Congruent { coeff, modulus, holds, side, .. } => {
                let a = Formula::Atom(Atom::Cong(*modulus, xscale(coeff), side.to_term()));
                if *holds { a } else { Formula::not(a) }
            }
        }
    }
}

impl fmt::Display for CanonicalLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

/// A quantifier-free combination of canonical literals in one variable and
/// literals free of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Iso {
    Lit(CanonicalLiteral),
    /// An x-free literal, or `true` / `false`.
    Free(Formula),
    And(Vec<Iso>),
    Or(Vec<Iso>),
}

/// One disjunct of an isolated formula: canonical literals plus x-free ones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IsoConj {
    pub canon: Vec<CanonicalLiteral>,
    pub free: Vec<Formula>,
}

impl IsoConj {
    pub fn to_formula(&self) -> Formula {
        let mut items: Vec<Formula> = self.free.clone();
        items.extend(self.canon.iter().map(CanonicalLiteral::to_formula));
        Formula::and(items)
    }

    fn merge(&self, other: &IsoConj) -> IsoConj {
        let mut out = self.clone();
        for c in &other.canon {
            if !out.canon.contains(c) {
                out.canon.push(c.clone());
            }
        }
        for f in &other.free {
            if !out.free.contains(f) {
                out.free.push(f.clone());
            }
        }
        out
    }

    fn size(&self) -> usize {
        self.canon.len() + self.free.len()
    }
}

impl Iso {
    pub fn tt() -> Iso {
        Iso::Free(Formula::True)
    }

    pub fn ff() -> Iso {
        Iso::Free(Formula::False)
    }

    pub fn and(items: Vec<Iso>) -> Iso {
        let mut out = Vec::new();
        for i in items {
            match i {
                Iso::Free(Formula::True) => {}
                Iso::Free(Formula::False) => return Iso::ff(),
                Iso::And(xs) => out.extend(xs),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Iso::tt(),
            1 => out.pop().unwrap(),
            _ => Iso::And(out),
        }
    }

    pub fn or(items: Vec<Iso>) -> Iso {
        let mut out = Vec::new();
        for i in items {
            match i {
                Iso::Free(Formula::False) => {}
                Iso::Free(Formula::True) => return Iso::tt(),
                Iso::Or(xs) => out.extend(xs),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Iso::ff(),
            1 => out.pop().unwrap(),
            _ => Iso::Or(out),
        }
    }

    pub fn to_formula(&self) -> Formula {
        match self {
            Iso::Lit(c) => c.to_formula(),
            Iso::Free(f) => f.clone(),
            Iso::And(xs) => Formula::and(xs.iter().map(Iso::to_formula).collect()),
            Iso::Or(xs) => Formula::or(xs.iter().map(Iso::to_formula).collect()),
        }
    }

    /// Disjunctive normal form, charging every produced literal to `budget`.
    pub fn dnf(&self, budget: &mut Budget) -> Result<Vec<IsoConj>> {
        match self {
            Iso::Free(Formula::True) => Ok(vec![IsoConj::default()]),
            Iso::Free(Formula::False) => Ok(vec![]),
            Iso::Free(f) => {
                budget.charge(1)?;
                Ok(vec![IsoConj { canon: vec![], free: vec![f.clone()] }])
            }
            Iso::Lit(c) => {
                budget.charge(1)?;
                Ok(vec![IsoConj { canon: vec![c.clone()], free: vec![] }])
            }
            Iso::Or(xs) => {
                let mut out = Vec::new();
                for x in xs {
                    out.extend(x.dnf(budget)?);
                }
                Ok(out)
            }
            Iso::And(xs) => {
                let mut acc = vec![IsoConj::default()];
                for x in xs {
                    let part = x.dnf(budget)?;
                    let mut next = Vec::with_capacity(acc.len() * part.len());
                    for a in &acc {
                        for p in &part {
                            let m = a.merge(p);
                            budget.charge(m.size())?;
                            next.push(m);
                        }
                    }
                    acc = next;
                }
                Ok(acc)
            }
        }
    }
}

// ---- x-free literal builders with trivial folding ----

pub(crate) fn mono_eq(a: &Mono, b: &Mono) -> Formula {
    if a == b {
        Formula::True
    } else if a.is_ground() && b.is_ground() {
        Formula::False
    } else {
        Formula::eq(a.to_term(), b.to_term())
    }
}

pub(crate) fn negate(f: Formula) -> Formula {
    match f {
        Formula::True => Formula::False,
        Formula::False => Formula::True,
        Formula::Not(a) => *a,
        other => Formula::not(other),
    }
}

pub(crate) fn mono_ne(a: &Mono, b: &Mono) -> Formula {
    negate(mono_eq(a, b))
}

pub(crate) fn positive(m: &Mono) -> Formula {
    if m.is_ground() {
        let holds = matches!(&m.coef, Coef::Unit { torsion, .. } if torsion.is_zero());
        return if holds { Formula::True } else { Formula::False };
    }
    Formula::Atom(Atom::Pos(m.to_term()))
}

pub(crate) fn minus(m: &Mono, theory: Theory) -> Mono {
    m.scale_coef(&Coef::minus_one(), theory)
}

fn free(f: Formula) -> Iso {
    Iso::Free(f)
}

fn power(x: &str, exp: i64, eq: bool, side: Mono) -> Iso {
    debug_assert!(exp >= 1);
    Iso::Lit(CanonicalLiteral::Power { var: x.to_string(), exp, eq, side })
}

fn is_zero_lit(x: &str, eq: bool) -> Iso {
    power(x, 1, eq, Mono::zero())
}

// ---- multiplicative isolation ----

/// `x^e · t' ⋈ u` with `u` free of x, for carriers with zero.
fn one_sided_with_zero(x: &str, e: i64, t: &Mono, u: &Mono, eq: bool, th: Theory) -> Result<Iso> {
    if e == 0 {
        return Ok(Iso::or(vec![
            Iso::and(vec![is_zero_lit(x, true), free(if eq { mono_eq(&Mono::zero(), u) } else { mono_ne(&Mono::zero(), u) })]),
            Iso::and(vec![is_zero_lit(x, false), free(if eq { mono_eq(t, u) } else { mono_ne(t, u) })]),
        ]));
    }
    // x^(-j) = s  ⟺  x^j = s⁻¹, since inversion fixes 0
    let (k, target) = if e > 0 { (e, u.mul(&t.inv(th), th)?) } else { (-e, t.mul(&u.inv(th), th)?) };
    let t_zero = mono_eq(t, &Mono::zero());
    let t_nonzero = negate(t_zero.clone());
    let u_side = if eq { mono_eq(u, &Mono::zero()) } else { mono_ne(u, &Mono::zero()) };
    Ok(Iso::or(vec![
        Iso::and(vec![free(t_zero), free(u_side)]),
        Iso::and(vec![free(t_nonzero), power(x, k, eq, target)]),
    ]))
}

/// `x^kt · t' ⋈ x^ku · u'` with x on both sides, for carriers with zero.
fn two_sided_with_zero(x: &str, kt: i64, t: &Mono, ku: i64, u: &Mono, eq: bool, th: Theory) -> Result<Iso> {
    let d = kt - ku;
    let (d, t, u) = if d >= 0 { (d, t, u) } else { (-d, u, t) };
    if d == 0 {
        return Ok(if eq {
            Iso::or(vec![is_zero_lit(x, true), Iso::and(vec![is_zero_lit(x, false), free(mono_eq(t, u))])])
        } else {
            Iso::and(vec![is_zero_lit(x, false), free(mono_ne(t, u))])
        });
    }
    let target = u.mul(&t.inv(th), th)?;
    let t_zero = mono_eq(t, &Mono::zero());
    let u_zero = mono_eq(u, &Mono::zero());
    Ok(if eq {
        Iso::or(vec![
            is_zero_lit(x, true),
            Iso::and(vec![is_zero_lit(x, false), free(t_zero.clone()), free(u_zero)]),
            Iso::and(vec![is_zero_lit(x, false), free(negate(t_zero)), power(x, d, true, target)]),
        ])
    } else {
        Iso::or(vec![
            Iso::and(vec![is_zero_lit(x, false), free(t_zero.clone()), free(negate(u_zero))]),
            Iso::and(vec![is_zero_lit(x, false), free(negate(t_zero)), power(x, d, false, target)]),
        ])
    })
}

/// `x^e ⋈ s` over a group: both exponents collapse into one.
fn group_equation(x: &str, d: i64, t: &Mono, u: &Mono, eq: bool, th: Theory) -> Result<Iso> {
    Ok(if d == 0 {
        free(if eq { mono_eq(t, u) } else { mono_ne(t, u) })
    } else if d > 0 {
        power(x, d, eq, u.mul(&t.inv(th), th)?)
    } else {
        power(x, -d, eq, t.mul(&u.inv(th), th)?)
    })
}

fn isolate_mul_eq(x: &str, a: &Mono, b: &Mono, eq: bool, th: Theory) -> Result<Iso> {
    let (ea, ta) = a.split(x);
    let (eb, tb) = b.split(x);
    if !th.has_zero() {
        let d = ea.unwrap_or(0) - eb.unwrap_or(0);
        return group_equation(x, d, &ta, &tb, eq, th);
    }
    match (ea, eb) {
        (None, None) => Ok(free(if eq { mono_eq(a, b) } else { mono_ne(a, b) })),
        (Some(e), None) => one_sided_with_zero(x, e, &ta, b, eq, th),
        (None, Some(e)) => one_sided_with_zero(x, e, &tb, a, eq, th),
        (Some(kt), Some(ku)) => two_sided_with_zero(x, kt, &ta, ku, &tb, eq, th),
    }
}

fn sign_lit(x: &str, negated_arg: bool) -> Iso {
    Iso::Lit(CanonicalLiteral::Sign { var: x.to_string(), negated_arg })
}

fn isolate_positive(x: &str, m: &Mono, th: Theory) -> Iso {
    let (e, t) = m.split(x);
    match e {
        None => free(positive(m)),
        Some(e) if e % 2 != 0 => Iso::or(vec![
            Iso::and(vec![sign_lit(x, false), free(positive(&t))]),
            Iso::and(vec![sign_lit(x, true), free(positive(&minus(&t, th)))]),
        ]),
        Some(_) => Iso::and(vec![is_zero_lit(x, false), free(positive(&t))]),
    }
}

fn isolate_root(x: &str, n: u64, m: &Mono, holds: bool, th: Theory) -> Iso {
    let (e, t) = m.split(x);
    match e {
        None | Some(0) => {
            let f = Formula::Atom(Atom::Root(n, t.to_term()));
            free(if holds { f } else { Formula::not(f) })
        }
        Some(e) if e > 0 => Iso::Lit(CanonicalLiteral::Root { var: x.to_string(), exp: e, modulus: n, holds, side: t }),
        // ℜₙ(a) ⟺ ℜₙ(a⁻¹)
        Some(e) => Iso::Lit(CanonicalLiteral::Root { var: x.to_string(), exp: -e, modulus: n, holds, side: t.inv(th) }),
    }
}

// ---- additive isolation ----

fn isolate_linear(x: &str, diff: &Linear) -> Option<(BigInt, Linear)> {
    let k = diff.coeff_of(x);
    if k.is_zero() {
        return None;
    }
    let rest = diff.without(x);
    Some(if k.is_positive() { (k, rest.neg()) } else { (-k, rest) })
}

/// Rewrites a literal into canonical literals in `x` plus x-free literals,
/// following the case splits of the theory.
pub fn isolate_variable(lit: &Formula, x: &str, theory: Theory) -> Result<Iso> {
    let (atom, positive_lit) = match lit {
        Formula::Atom(a) => (a, true),
        Formula::Not(inner) => match inner.as_ref() {
            Formula::Atom(a) => (a, false),
            _ => return Err(Error::NotCanonical(format!("`{lit}` is not a literal"))),
        },
        _ => return Err(Error::NotCanonical(format!("`{lit}` is not a literal"))),
    };
    if !atom.mentions(x) {
        return Err(Error::Invalid(format!("`{lit}` does not mention `{x}`")));
    }
    let th = theory;
    match atom {
        Atom::Eq(a, b) if th.is_multiplicative() => {
            isolate_mul_eq(x, &normalize_mono(a, th)?, &normalize_mono(b, th)?, positive_lit, th)
        }
        Atom::Pos(a) if th == Theory::RMul => {
            let m = normalize_mono(a, th)?;
            if positive_lit {
                Ok(isolate_positive(x, &m, th))
            } else {
                Ok(Iso::or(vec![
                    isolate_mul_eq(x, &m, &Mono::zero(), true, th)?,
                    isolate_positive(x, &minus(&m, th), th),
                ]))
            }
        }
        Atom::Root(n, a) if th == Theory::QPosMul => Ok(isolate_root(x, *n, &normalize_mono(a, th)?, positive_lit, th)),
        Atom::Eq(a, b) => {
            let diff = normalize_linear(a)?.sub(&normalize_linear(b)?);
            Ok(match isolate_linear(x, &diff) {
                None => free(fold_linear_eq(&diff, positive_lit)),
                Some((coeff, side)) => {
                    Iso::Lit(CanonicalLiteral::Scaled { var: x.to_string(), coeff, eq: positive_lit, side })
                }
            })
        }
        Atom::Cong(n, a, b) if th == Theory::ZAdd => {
            let diff = normalize_linear(a)?.sub(&normalize_linear(b)?);
            Ok(match isolate_linear(x, &diff) {
                None => {
                    let f = Formula::Atom(Atom::Cong(*n, diff.to_term(), Term::int(0)));
                    free(if positive_lit { f } else { Formula::not(f) })
                }
                Some((coeff, side)) => Iso::Lit(CanonicalLiteral::Congruent {
                    var: x.to_string(),
                    coeff,
                    modulus: *n,
                    holds: positive_lit,
                    side,
                }),
            })
        }
        _ => Err(Error::Signature(format!("`{lit}` is not a literal of {th}"))),
    }
}

fn fold_linear_eq(diff: &Linear, eq: bool) -> Formula {
    if diff.is_ground() {
        return if diff.constant.is_zero() == eq { Formula::True } else { Formula::False };
    }
    let f = Formula::eq(diff.to_term(), Term::int(0));
    if eq { f } else { Formula::not(f) }
}
