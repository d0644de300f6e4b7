//! Formulas and terms: syntax, signatures, parsing and normal forms.

mod ast;
mod isolate;
mod normal;
mod parser;
mod theory;
mod transform;

pub use ast::{Atom, Formula, Term};
pub use isolate::{isolate_variable, CanonicalLiteral, Iso, IsoConj};
pub use normal::{normalize_linear, normalize_mono, Coef, Linear, Mono};
pub use parser::{parse, parse_term};
pub use theory::Theory;
pub use transform::{
    dnf_clauses, dnf_clauses_with, is_literal, rename_bound, to_dnf, to_nnf, to_prenex, Budget,
    DEFAULT_DNF_CAP,
};

pub(crate) use isolate::{minus, mono_eq, mono_ne, negate, positive};

use crate::error::{Error, Result};

/// Checks that every symbol and numeral of `t` belongs to the theory.
pub fn check_term(t: &Term, theory: Theory) -> Result<()> {
    let bad = |what: String| Err(Error::Signature(format!("{what} is not in the signature of {theory}")));
    match t {
        Term::Var(_) => Ok(()),
        Term::Num(q) if !parser::numeral_fits(q, theory) => bad(format!("numeral `{q}`")),
        Term::Num(_) => Ok(()),
        Term::Omega(_) if !theory.allows_omega() => bad("root of unity".into()),
        Term::Omega(_) => Ok(()),
        Term::Mul(..) | Term::Inv(_) | Term::Pow(..) if !theory.is_multiplicative() => {
            bad("multiplicative operator".into())
        }
        Term::Add(..) | Term::Neg(_) | Term::Scale(..) if theory.is_multiplicative() => {
            bad("additive operator".into())
        }
        Term::Mul(a, b) | Term::Add(a, b) => {
            check_term(a, theory)?;
            check_term(b, theory)
        }
        Term::Inv(a) | Term::Pow(a, _) | Term::Neg(a) | Term::Scale(_, a) => check_term(a, theory),
    }
}

pub fn check_atom(a: &Atom, theory: Theory) -> Result<()> {
    let ok = match a {
        Atom::Eq(..) => true,
        Atom::Pos(_) => theory.allows_positivity(),
        Atom::Root(..) => theory.allows_root_predicate(),
        Atom::Cong(..) => theory.allows_congruence(),
    };
    if !ok {
        return Err(Error::Signature(format!("predicate of `{a}` is not in the signature of {theory}")));
    }
    a.terms().into_iter().try_for_each(|t| check_term(t, theory))
}

/// Checks that a formula is well formed over the theory's signature.
pub fn check_signature(f: &Formula, theory: Theory) -> Result<()> {
    f.atoms().into_iter().try_for_each(|a| check_atom(a, theory))
}
