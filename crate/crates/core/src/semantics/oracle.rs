//! Brute-force existential oracle for `∃x ⋀ literals` with ground
//! parameters. It works directly on model elements and never calls the
//! eliminators, so it can be used to check them.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::eval::{eval_qf, eval_term, Assignment};
use super::models::{exponent_at, to_i64, ComplexElem, Elem, QPlusElem, RealElem};
use crate::error::{Error, Result};
use crate::formula::{Atom, Formula, Term, Theory};
use crate::numtheory::{fresh_prime, lcm_u64, ExponentVector};

fn literal_atom(f: &Formula) -> Result<(&Atom, bool)> {
    match f {
        Formula::Atom(a) => Ok((a, true)),
        Formula::Not(inner) => match inner.as_ref() {
            Formula::Atom(a) => Ok((a, false)),
            _ => Err(Error::Invalid(format!("`{f}` is not a literal"))),
        },
        _ => Err(Error::Invalid(format!("`{f}` is not a literal"))),
    }
}

struct Probe<'a> {
    x: &'a str,
    theory: Theory,
    conj: Formula,
}

impl Probe<'_> {
    fn at(&self, t: &Term, v: Elem) -> Result<Elem> {
        let mut asg = Assignment::new();
        asg.insert(self.x.to_string(), v);
        eval_term(t, &asg, self.theory)
    }

    fn accepts(&self, v: &Elem) -> Result<bool> {
        let mut asg = Assignment::new();
        asg.insert(self.x.to_string(), v.clone());
        eval_qf(&self.conj, &asg, self.theory)
    }

    fn first_accepted(&self, cands: impl IntoIterator<Item = Elem>) -> Result<Option<Elem>> {
        for c in cands {
            if self.accepts(&c)? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    /// A multiplicative term equals `x^k · c`; `c` is its value at 1 and
    /// `k` the difference of 2-adic exponents between the values at 2 and 1.
    fn monomial(&self, t: &Term) -> Result<(i64, Elem)> {
        let one = Elem::one(self.theory);
        let two = Elem::from_int(2, self.theory)?;
        let c = self.at(t, one)?;
        if c.is_zero() {
            return Ok((0, c));
        }
        let c2 = self.at(t, two)?;
        let k = exponent_at(&c2, 2).zip(exponent_at(&c, 2)).and_then(|(a, b)| to_i64(&(a - b)));
        let k = k.ok_or_else(|| Error::Invariant(format!("cannot read the exponent of `{t}`")))?;
        Ok((k, c))
    }

    /// An additive term equals `k∙x + c`.
    fn linear(&self, t: &Term) -> Result<(BigRational, BigRational)> {
        let as_rat = |e: Elem| match e {
            Elem::Int(n) => BigRational::from_integer(n),
            Elem::Rat(q) => q,
            _ => unreachable!("additive model"),
        };
        let c = as_rat(self.at(t, Elem::from_int(0, self.theory)?)?);
        let k = as_rat(self.at(t, Elem::from_int(1, self.theory)?)?) - &c;
        Ok((k, c))
    }
}

/// All `y` with `yᵈ = v`, `d ≥ 1`, in the model of a multiplicative theory.
fn all_roots(v: &Elem, d: u64, theory: Theory) -> Vec<Elem> {
    match v {
        Elem::Complex(ComplexElem::NonZero { torsion, ev }) => (0..d)
            .map(|i| {
                let inv_d = BigRational::new(1.into(), d.into());
                let t = (torsion + BigRational::from_integer(i.into())) * &inv_d;
                Elem::Complex(ComplexElem::NonZero { torsion: t, ev: ev.scale(&inv_d) })
            })
            .collect(),
        Elem::Real(r @ RealElem::NonZero { negative, .. }) => {
            let Ok(root) = r.root(d) else { return vec![] };
            let mut out = vec![Elem::Real(root.clone())];
            if d.is_multiple_of(2) && !negative && theory == Theory::RMul {
                out.push(Elem::Real(root.negate()));
            }
            out
        }
        Elem::QPlus(q) => q.root(d).map(Elem::QPlus).into_iter().collect(),
        _ => vec![],
    }
}

fn elem_pow_prime(p: u64, e: i64, theory: Theory) -> Elem {
    let base = Elem::from_int(p as i64, theory).expect("primes are in every multiplicative model");
    base.pow(e).expect("multiplicative model")
}

fn multiplicative(probe: &Probe, lits: &[(&Atom, bool)]) -> Result<Option<Elem>> {
    let theory = probe.theory;
    let mut support = BTreeSet::new();
    let mut cands = Vec::new();
    if let Some(z) = Elem::zero(theory) {
        cands.push(z);
    }
    let mut roots = Vec::new();
    for (atom, positive) in lits {
        for t in atom.terms() {
            let (_, c) = probe.monomial(t)?;
            support.extend(c.support());
        }
        if let (Atom::Eq(l, r), true) = (atom, positive) {
            let (kl, cl) = probe.monomial(l)?;
            let (kr, cr) = probe.monomial(r)?;
            if kl == kr || cl.is_zero() || cr.is_zero() {
                continue;
            }
            let mut v = cr.mul(&cl.inv()?)?;
            let mut d = kl - kr;
            if d < 0 {
                v = v.inv()?;
                d = -d;
            }
            roots.extend(all_roots(&v, d as u64, theory));
        }
    }
    cands.extend(roots);
    let q = fresh_prime(&support) as i64;
    cands.push(Elem::from_int(q, theory)?);
    if theory == Theory::RMul {
        cands.push(Elem::from_int(-q, theory)?);
    }
    probe.first_accepted(cands)
}

fn qpos(probe: &Probe, lits: &[(&Atom, bool)]) -> Result<Option<Elem>> {
    let theory = probe.theory;
    let mut support = BTreeSet::new();
    struct RootLit {
        k: i64,
        n: u64,
        c: QPlusElem,
        holds: bool,
    }
    let mut root_lits = Vec::new();
    for (atom, positive) in lits {
        for t in atom.terms() {
            support.extend(probe.monomial(t)?.1.support());
        }
        match atom {
            Atom::Eq(l, r) if *positive => {
                let (kl, cl) = probe.monomial(l)?;
                let (kr, cr) = probe.monomial(r)?;
                if kl != kr {
                    let mut v = cr.mul(&cl.inv()?)?;
                    let mut d = kl - kr;
                    if d < 0 {
                        v = v.inv()?;
                        d = -d;
                    }
                    // an equation pins x down to its only possible value
                    return probe.first_accepted(all_roots(&v, d as u64, theory));
                }
            }
            Atom::Root(n, t) => {
                let (k, c) = probe.monomial(t)?;
                let Elem::QPlus(c) = c else { unreachable!("QPlus model") };
                root_lits.push(RootLit { k, n: *n, c, holds: *positive });
            }
            _ => {}
        }
    }
    let q = fresh_prime(&support);
    let mut primes: Vec<u64> = support.into_iter().collect();
    primes.push(q);
    let modulus = lcm_u64(root_lits.iter().map(|r| r.n)) as i64;
    let negated: Vec<&RootLit> = root_lits.iter().filter(|r| !r.holds).collect();
    let full = (1usize << negated.len()) - 1;
    let residue_ok = |r: &RootLit, p: u64, e: i64| {
        let total = BigInt::from(r.k) * e + r.c.ev.get(p);
        total.is_multiple_of(&BigInt::from(r.n))
    };
    // reachable[mask] = exponent choices (one per processed prime) covering mask
    let mut reachable: Vec<Option<Vec<i64>>> = vec![None; full + 1];
    reachable[0] = Some(vec![]);
    for &p in &primes {
        let allowed: Vec<i64> = (0..modulus)
            .filter(|&e| root_lits.iter().filter(|r| r.holds).all(|r| residue_ok(r, p, e)))
            .collect();
        if allowed.is_empty() {
            return Ok(None);
        }
        let mut next: Vec<Option<Vec<i64>>> = vec![None; full + 1];
        for (mask, choice) in reachable.iter().enumerate() {
            let Some(choice) = choice else { continue };
            for &e in &allowed {
                let cover = negated
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| !residue_ok(r, p, e))
                    .fold(0usize, |m, (i, _)| m | (1 << i));
                let slot = &mut next[mask | cover];
                if slot.is_none() {
                    let mut c = choice.clone();
                    c.push(e);
                    *slot = Some(c);
                }
            }
        }
        reachable = next;
    }
    let Some(exps) = reachable[full].clone() else { return Ok(None) };
    let base = QPlusElem {
        ev: ExponentVector::from_pairs(primes.iter().zip(&exps).map(|(p, e)| (*p, BigInt::from(*e))))?,
    };
    // shifting the fresh prime's exponent by multiples of the modulus keeps
    // every ℜ literal and eventually avoids each excluded value
    let bumps = (0..=lits.len() as i64 + 1).map(|j| {
        let shift = elem_pow_prime(q, j * modulus, theory);
        Elem::QPlus(base.clone()).mul(&shift).expect("QPlus model")
    });
    probe.first_accepted(bumps)
}

fn additive(probe: &Probe, lits: &[(&Atom, bool)]) -> Result<Option<Elem>> {
    let theory = probe.theory;
    let mut moduli = Vec::new();
    for (atom, positive) in lits {
        match atom {
            Atom::Eq(l, r) if *positive => {
                let (kl, cl) = probe.linear(l)?;
                let (kr, cr) = probe.linear(r)?;
                let k = kl - kr;
                if !k.is_zero() {
                    let v = (cr - cl) / k;
                    return match Elem::from_numeral(&v, theory) {
                        Ok(e) => probe.first_accepted([e]),
                        Err(_) => Ok(None),
                    };
                }
            }
            Atom::Cong(n, ..) => moduli.push(*n),
            _ => {}
        }
    }
    let modulus = lcm_u64(moduli.iter().copied()) as i64;
    let congruences = Formula::and(
        lits.iter()
            .filter(|(a, _)| matches!(a, Atom::Cong(..)))
            .map(|(a, p)| if *p { Formula::Atom((*a).clone()) } else { Formula::not(Formula::Atom((*a).clone())) })
            .collect(),
    );
    let cong_probe = Probe { x: probe.x, theory, conj: congruences };
    for r in 0..modulus {
        if !cong_probe.accepts(&Elem::from_int(r, theory)?)? {
            continue;
        }
        let bumps = (0..=lits.len() as i64 + 1).map(|j| Elem::from_int(r + j * modulus, theory).expect("integer"));
        return probe.first_accepted(bumps);
    }
    Ok(None)
}

/// Decides `∃x ⋀ conj` by candidate enumeration in the ground model and
/// returns a witness when one exists. Every parameter must be ground.
pub fn brute_exists_witness(x: &str, conj: &[Formula], theory: Theory) -> Result<Option<Elem>> {
    let mut lits = Vec::with_capacity(conj.len());
    for f in conj {
        let (a, p) = literal_atom(f)?;
        if a.terms().iter().any(|t| t.vars().iter().any(|v| v != x)) {
            return Err(Error::Invalid(format!("`{f}` has a parameter that is not ground")));
        }
        lits.push((a, p));
    }
    let probe = Probe { x, theory, conj: Formula::and(conj.to_vec()) };
    match theory {
        Theory::QPosMul => qpos(&probe, &lits),
        Theory::ZAdd | Theory::DivAdd => additive(&probe, &lits),
        _ => multiplicative(&probe, &lits),
    }
}

pub fn brute_exists(x: &str, conj: &[Formula], theory: Theory) -> Result<bool> {
    Ok(brute_exists_witness(x, conj, theory)?.is_some())
}

