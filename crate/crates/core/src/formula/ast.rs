use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

/// Terms over either signature; which node kinds are legal depends on the
/// theory (see [`super::check_signature`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    /// Rational numeral, used for `0`, `1`, `-1` and ground parameters.
    Num(BigRational),
    /// Primitive `n`-th root of unity `ωₙ`.
    Omega(u64),
    Mul(Box<Term>, Box<Term>),
    Inv(Box<Term>),
    /// `t ^ k` with `k ≠ 0`.
    Pow(Box<Term>, i64),
    Add(Box<Term>, Box<Term>),
    Neg(Box<Term>),
    /// `n . t` with `n ≥ 1`.
    Scale(BigInt, Box<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Eq(Term, Term),
    /// `𝒫(t)`: t is positive.
    Pos(Term),
    /// `ℜₙ(t)`: t is an n-th power.
    Root(u64, Term),
    /// `t ≡ₙ u`.
    Cong(u64, Term, Term),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn int(n: i64) -> Term {
        Term::Num(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn rational(n: i64, d: i64) -> Term {
        Term::Num(BigRational::new(n.into(), d.into()))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn inv(a: Term) -> Term {
        Term::Inv(Box::new(a))
    }

    pub fn pow(a: Term, k: i64) -> Term {
        debug_assert!(k != 0);
        Term::Pow(Box::new(a), k)
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn neg(a: Term) -> Term {
        Term::Neg(Box::new(a))
    }

    pub fn scale(n: impl Into<BigInt>, a: Term) -> Term {
        let n = n.into();
        debug_assert!(n.is_positive());
        Term::Scale(n, Box::new(a))
    }

    /// Left-nested product; the empty product is `1`.
    pub fn product(items: impl IntoIterator<Item = Term>) -> Term {
        items.into_iter().reduce(Term::mul).unwrap_or_else(|| Term::int(1))
    }

    /// Left-nested sum; the empty sum is `0`.
    pub fn sum(items: impl IntoIterator<Item = Term>) -> Term {
        items.into_iter().reduce(Term::add).unwrap_or_else(|| Term::int(0))
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Num(_) | Term::Omega(_) => {}
            Term::Mul(a, b) | Term::Add(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Inv(a) | Term::Pow(a, _) | Term::Neg(a) | Term::Scale(_, a) => a.collect_vars(out),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn mentions(&self, x: &str) -> bool {
        match self {
            Term::Var(v) => v == x,
            Term::Num(_) | Term::Omega(_) => false,
            Term::Mul(a, b) | Term::Add(a, b) => a.mentions(x) || b.mentions(x),
            Term::Inv(a) | Term::Pow(a, _) | Term::Neg(a) | Term::Scale(_, a) => a.mentions(x),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Num(_) | Term::Omega(_) => true,
            Term::Mul(a, b) | Term::Add(a, b) => a.is_ground() && b.is_ground(),
            Term::Inv(a) | Term::Pow(a, _) | Term::Neg(a) | Term::Scale(_, a) => a.is_ground(),
        }
    }

    pub fn substitute(&self, x: &str, by: &Term) -> Term {
        let sub = |t: &Term| Box::new(t.substitute(x, by));
        match self {
            Term::Var(v) if v == x => by.clone(),
            Term::Var(_) | Term::Num(_) | Term::Omega(_) => self.clone(),
            Term::Mul(a, b) => Term::Mul(sub(a), sub(b)),
            Term::Add(a, b) => Term::Add(sub(a), sub(b)),
            Term::Inv(a) => Term::Inv(sub(a)),
            Term::Pow(a, k) => Term::Pow(sub(a), *k),
            Term::Neg(a) => Term::Neg(sub(a)),
            Term::Scale(n, a) => Term::Scale(n.clone(), sub(a)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Num(_) | Term::Omega(_) => 1,
            Term::Mul(a, b) | Term::Add(a, b) => 1 + a.size() + b.size(),
            Term::Inv(a) | Term::Pow(a, _) | Term::Neg(a) | Term::Scale(_, a) => 1 + a.size(),
        }
    }
}

impl Atom {
    pub fn terms(&self) -> Vec<&Term> {
        match self {
            Atom::Eq(a, b) | Atom::Cong(_, a, b) => vec![a, b],
            Atom::Pos(a) | Atom::Root(_, a) => vec![a],
        }
    }

    pub fn mentions(&self, x: &str) -> bool {
        self.terms().iter().any(|t| t.mentions(x))
    }

    pub fn is_ground(&self) -> bool {
        self.terms().iter().all(|t| t.is_ground())
    }

    pub fn map_terms(&self, mut f: impl FnMut(&Term) -> Term) -> Atom {
        match self {
            Atom::Eq(a, b) => Atom::Eq(f(a), f(b)),
            Atom::Pos(a) => Atom::Pos(f(a)),
            Atom::Root(n, a) => Atom::Root(*n, f(a)),
            Atom::Cong(n, a, b) => Atom::Cong(*n, f(a), f(b)),
        }
    }
}

impl Formula {
    pub fn atom(a: Atom) -> Formula {
        Formula::Atom(a)
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Atom(Atom::Eq(a, b))
    }

    pub fn ne(a: Term, b: Term) -> Formula {
        Formula::not(Formula::eq(a, b))
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    /// Conjunction that collapses the empty and singleton cases.
    pub fn and(mut items: Vec<Formula>) -> Formula {
        match items.len() {
            0 => Formula::True,
            1 => items.pop().unwrap(),
            _ => Formula::And(items),
        }
    }

    /// Disjunction that collapses the empty and singleton cases.
    pub fn or(mut items: Vec<Formula>) -> Formula {
        match items.len() {
            0 => Formula::False,
            1 => items.pop().unwrap(),
            _ => Formula::Or(items),
        }
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn exists(x: impl Into<String>, body: Formula) -> Formula {
        Formula::Exists(x.into(), Box::new(body))
    }

    pub fn forall(x: impl Into<String>, body: Formula) -> Formula {
        Formula::Forall(x.into(), Box::new(body))
    }

    /// `∀x₁…∀xₙ φ` for the given names, outermost first.
    pub fn forall_many<S: Into<String>>(xs: impl IntoIterator<Item = S>, body: Formula) -> Formula {
        let xs: Vec<String> = xs.into_iter().map(Into::into).collect();
        xs.into_iter().rev().fold(body, |acc, x| Formula::forall(x, acc))
    }

    pub fn exists_many<S: Into<String>>(xs: impl IntoIterator<Item = S>, body: Formula) -> Formula {
        let xs: Vec<String> = xs.into_iter().map(Into::into).collect();
        xs.into_iter().rev().fold(body, |acc, x| Formula::exists(x, acc))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => {
                for t in a.terms() {
                    for v in t.vars() {
                        if !bound.contains(&v) {
                            out.insert(v);
                        }
                    }
                }
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::And(xs) | Formula::Or(xs) => {
                xs.iter().for_each(|x| x.collect_free(bound, out))
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(x, b) | Formula::Forall(x, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => true,
            Formula::Not(a) => a.is_quantifier_free(),
            Formula::And(xs) | Formula::Or(xs) => xs.iter().all(Formula::is_quantifier_free),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            Formula::Exists(..) | Formula::Forall(..) => false,
        }
    }

    pub fn quantifier_count(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => 0,
            Formula::Not(a) => a.quantifier_count(),
            Formula::And(xs) | Formula::Or(xs) => xs.iter().map(Formula::quantifier_count).sum(),
            Formula::Implies(a, b) | Formula::Iff(a, b) => a.quantifier_count() + b.quantifier_count(),
            Formula::Exists(_, b) | Formula::Forall(_, b) => 1 + b.quantifier_count(),
        }
    }

    /// Number of atom occurrences.
    pub fn atom_count(&self) -> usize {
        match self {
            Formula::True | Formula::False => 0,
            Formula::Atom(_) => 1,
            Formula::Not(a) | Formula::Exists(_, a) | Formula::Forall(_, a) => a.atom_count(),
            Formula::And(xs) | Formula::Or(xs) => xs.iter().map(Formula::atom_count).sum(),
            Formula::Implies(a, b) | Formula::Iff(a, b) => a.atom_count() + b.atom_count(),
        }
    }

    pub fn mentions(&self, x: &str) -> bool {
        match self {
            Formula::True | Formula::False => false,
            Formula::Atom(a) => a.mentions(x),
            Formula::Not(a) => a.mentions(x),
            Formula::And(xs) | Formula::Or(xs) => xs.iter().any(|f| f.mentions(x)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => a.mentions(x) || b.mentions(x),
            Formula::Exists(v, b) | Formula::Forall(v, b) => v != x && b.mentions(x),
        }
    }

    /// Replaces free occurrences of `x`. The caller guarantees `by` is not
    /// captured by a binder of the formula.
    pub fn substitute(&self, x: &str, by: &Term) -> Formula {
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Atom(a) => Formula::Atom(a.map_terms(|t| t.substitute(x, by))),
            Formula::Not(a) => Formula::not(a.substitute(x, by)),
            Formula::And(xs) => Formula::And(xs.iter().map(|f| f.substitute(x, by)).collect()),
            Formula::Or(xs) => Formula::Or(xs.iter().map(|f| f.substitute(x, by)).collect()),
            Formula::Implies(a, b) => Formula::implies(a.substitute(x, by), b.substitute(x, by)),
            Formula::Iff(a, b) => Formula::iff(a.substitute(x, by), b.substitute(x, by)),
            Formula::Exists(v, _) | Formula::Forall(v, _) if v == x => self.clone(),
            Formula::Exists(v, b) => Formula::exists(v.clone(), b.substitute(x, by)),
            Formula::Forall(v, b) => Formula::forall(v.clone(), b.substitute(x, by)),
        }
    }

    /// Applies `f` to every atom, keeping the connective structure.
    pub fn map_atoms(&self, f: &mut impl FnMut(&Atom) -> Formula) -> Formula {
        match self {
            Formula::True | Formula::False => self.clone(),
            Formula::Atom(a) => f(a),
            Formula::Not(a) => Formula::not(a.map_atoms(f)),
            Formula::And(xs) => Formula::And(xs.iter().map(|g| g.map_atoms(f)).collect()),
            Formula::Or(xs) => Formula::Or(xs.iter().map(|g| g.map_atoms(f)).collect()),
            Formula::Implies(a, b) => Formula::implies(a.map_atoms(f), b.map_atoms(f)),
            Formula::Iff(a, b) => Formula::iff(a.map_atoms(f), b.map_atoms(f)),
            Formula::Exists(v, b) => Formula::exists(v.clone(), b.map_atoms(f)),
            Formula::Forall(v, b) => Formula::forall(v.clone(), b.map_atoms(f)),
        }
    }

    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => out.push(a),
            Formula::Not(a) | Formula::Exists(_, a) | Formula::Forall(_, a) => a.collect_atoms(out),
            Formula::And(xs) | Formula::Or(xs) => xs.iter().for_each(|g| g.collect_atoms(out)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }
}

// ---- printing ----

const T_SUM: u8 = 0;
const T_PROD: u8 = 1;
const T_UNARY: u8 = 2;
const T_ATOMIC: u8 = 4;

fn term_level(t: &Term) -> u8 {
    match t {
        Term::Add(..) => T_SUM,
        Term::Mul(..) => T_PROD,
        Term::Neg(_) | Term::Scale(..) => T_UNARY,
        Term::Pow(..) => 3,
        Term::Num(q) if q.is_negative() || !q.is_integer() => T_UNARY,
        _ => T_ATOMIC,
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, t: &Term, min: u8) -> fmt::Result {
    if term_level(t) < min {
        write!(f, "(")?;
        write_term(f, t, T_SUM)?;
        return write!(f, ")");
    }
    match t {
        Term::Var(v) => write!(f, "{v}"),
        Term::Num(q) => write!(f, "{q}"),
        Term::Omega(n) => write!(f, "w[{n}]"),
        Term::Mul(a, b) => {
            write_term(f, a, T_PROD)?;
            write!(f, " * ")?;
            write_term(f, b, T_UNARY)
        }
        Term::Add(a, b) => {
            write_term(f, a, T_SUM)?;
            write!(f, " + ")?;
            write_term(f, b, T_PROD)
        }
        Term::Inv(a) => {
            write!(f, "inv(")?;
            write_term(f, a, T_SUM)?;
            write!(f, ")")
        }
        Term::Pow(a, k) => {
            write_term(f, a, T_ATOMIC)?;
            write!(f, " ^ {k}")
        }
        Term::Neg(a) => {
            write!(f, "- ")?;
            write_term(f, a, T_UNARY)
        }
        Term::Scale(n, a) => {
            write!(f, "{n} . ")?;
            write_term(f, a, T_UNARY)
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self, T_SUM)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Eq(a, b) => write!(f, "{a} = {b}"),
            Atom::Pos(a) => write!(f, "P({a})"),
            Atom::Root(n, a) => write!(f, "R[{n}]({a})"),
            Atom::Cong(n, a, b) => write!(f, "{a} =[{n}] {b}"),
        }
    }
}

const F_IFF: u8 = 0;
const F_IMP: u8 = 1;
const F_OR: u8 = 2;
const F_AND: u8 = 3;
const F_NOT: u8 = 4;

fn formula_level(g: &Formula) -> u8 {
    match g {
        Formula::Iff(..) => F_IFF,
        Formula::Implies(..) => F_IMP,
        Formula::Or(_) => F_OR,
        Formula::And(_) => F_AND,
        Formula::Exists(..) | Formula::Forall(..) => F_IFF,
        _ => F_NOT,
    }
}

fn write_formula(f: &mut fmt::Formatter<'_>, g: &Formula, min: u8) -> fmt::Result {
    let quantified = matches!(g, Formula::Exists(..) | Formula::Forall(..));
    // a quantifier scopes as far right as possible, so it is only left
    // bare where nothing follows it
    if formula_level(g) < min || (quantified && min != F_IFF) {
        write!(f, "(")?;
        write_formula(f, g, F_IFF)?;
        return write!(f, ")");
    }
    match g {
        Formula::True => write!(f, "true"),
        Formula::False => write!(f, "false"),
        Formula::Atom(a) => write!(f, "{a}"),
        Formula::Not(inner) => match inner.as_ref() {
            Formula::Atom(Atom::Eq(a, b)) => write!(f, "{a} != {b}"),
            Formula::Atom(a @ Atom::Cong(..)) => write!(f, "~({a})"),
            _ => {
                write!(f, "~")?;
                write_formula(f, inner, F_NOT)
            }
        },
        Formula::And(xs) | Formula::Or(xs) => {
            let (sep, lvl) = if matches!(g, Formula::And(_)) { (" & ", F_AND) } else { (" | ", F_OR) };
            if xs.is_empty() {
                return write!(f, "{}", if lvl == F_AND { "true" } else { "false" });
            }
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    write!(f, "{sep}")?;
                }
                write_formula(f, x, lvl + 1)?;
            }
            Ok(())
        }
        Formula::Implies(a, b) => {
            write_formula(f, a, F_OR)?;
            write!(f, " -> ")?;
            write_formula(f, b, F_IMP)
        }
        Formula::Iff(a, b) => {
            if matches!(a.as_ref(), Formula::Exists(..) | Formula::Forall(..)) {
                write!(f, "(")?;
                write_formula(f, a, F_IFF)?;
                write!(f, ")")?;
            } else {
                write_formula(f, a, F_IFF)?;
            }
            write!(f, " <-> ")?;
            write_formula(f, b, F_IMP)
        }
        Formula::Exists(x, b) => {
            write!(f, "exists {x}. ")?;
            write_formula(f, b, F_IFF)
        }
        Formula::Forall(x, b) => {
            write!(f, "forall {x}. ")?;
            write_formula(f, b, F_IFF)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self, F_IFF)
    }
}
