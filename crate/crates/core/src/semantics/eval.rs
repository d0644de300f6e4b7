use std::collections::BTreeMap;

use super::models::{ComplexElem, Elem};
use crate::error::{Error, Result};
use crate::formula::{Atom, Formula, Term, Theory};

pub type Assignment = BTreeMap<String, Elem>;

pub fn eval_term(t: &Term, asg: &Assignment, theory: Theory) -> Result<Elem> {
    match t {
        Term::Var(v) => asg.get(v).cloned().ok_or_else(|| Error::Unassigned(v.clone())),
        Term::Num(q) => Elem::from_numeral(q, theory),
        Term::Omega(n) if theory == Theory::CMul => Ok(Elem::Complex(ComplexElem::omega(*n))),
        Term::Omega(_) => Err(Error::Signature(format!("roots of unity are not in {theory}"))),
        Term::Mul(a, b) => eval_term(a, asg, theory)?.mul(&eval_term(b, asg, theory)?),
        Term::Inv(a) => eval_term(a, asg, theory)?.inv(),
        Term::Pow(a, k) => eval_term(a, asg, theory)?.pow(*k),
        Term::Add(a, b) => eval_term(a, asg, theory)?.add(&eval_term(b, asg, theory)?),
        Term::Neg(a) => eval_term(a, asg, theory)?.neg(),
        Term::Scale(n, a) => eval_term(a, asg, theory)?.scale(n),
    }
}

pub fn eval_atom(a: &Atom, asg: &Assignment, theory: Theory) -> Result<bool> {
    match a {
        Atom::Eq(l, r) => Ok(eval_term(l, asg, theory)? == eval_term(r, asg, theory)?),
        Atom::Pos(t) => eval_term(t, asg, theory)?.is_positive(),
        Atom::Root(n, t) => eval_term(t, asg, theory)?.is_nth_power(*n),
        Atom::Cong(n, l, r) => eval_term(l, asg, theory)?.congruent(&eval_term(r, asg, theory)?, *n),
    }
}

/// Truth value of a quantifier-free formula under `asg` in the model of
/// `theory`.
pub fn eval_qf(f: &Formula, asg: &Assignment, theory: Theory) -> Result<bool> {
    Ok(match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(a) => eval_atom(a, asg, theory)?,
        Formula::Not(a) => !eval_qf(a, asg, theory)?,
        Formula::And(xs) => {
            for x in xs {
                if !eval_qf(x, asg, theory)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Or(xs) => {
            for x in xs {
                if eval_qf(x, asg, theory)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::Implies(a, b) => !eval_qf(a, asg, theory)? || eval_qf(b, asg, theory)?,
        Formula::Iff(a, b) => eval_qf(a, asg, theory)? == eval_qf(b, asg, theory)?,
        Formula::Exists(..) | Formula::Forall(..) => {
            return Err(Error::Invalid("eval_qf needs a quantifier-free formula".into()))
        }
    })
}

/// Evaluates a variable-free formula.
pub fn eval_ground(f: &Formula, theory: Theory) -> Result<bool> {
    eval_qf(f, &Assignment::new(), theory)
}
