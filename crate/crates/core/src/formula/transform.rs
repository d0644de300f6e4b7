//! Connective-level rewrites: negation normal form, prenex form and DNF.

use std::collections::{BTreeMap, BTreeSet};

use super::ast::{Atom, Formula, Term};
use crate::error::{Error, Result};

/// Default bound on literal occurrences produced by one DNF conversion.
pub const DEFAULT_DNF_CAP: usize = 1_000_000;

/// Pushes negations down to atoms and removes `->` and `<->`.
/// Quantifiers are kept, with `¬∃` turned into `∀¬` and vice versa.
pub fn to_nnf(f: &Formula) -> Formula {
    nnf(f, true)
}

fn nnf(f: &Formula, positive: bool) -> Formula {
    match (f, positive) {
        (Formula::True, true) | (Formula::False, false) => Formula::True,
        (Formula::True, false) | (Formula::False, true) => Formula::False,
        (Formula::Atom(_), true) => f.clone(),
        (Formula::Atom(_), false) => Formula::not(f.clone()),
        (Formula::Not(a), p) => nnf(a, !p),
        (Formula::And(xs), true) | (Formula::Or(xs), false) => {
            Formula::and(xs.iter().map(|x| nnf(x, positive)).collect())
        }
        (Formula::Or(xs), true) | (Formula::And(xs), false) => {
            Formula::or(xs.iter().map(|x| nnf(x, positive)).collect())
        }
        (Formula::Implies(a, b), true) => Formula::or(vec![nnf(a, false), nnf(b, true)]),
        (Formula::Implies(a, b), false) => Formula::and(vec![nnf(a, true), nnf(b, false)]),
        (Formula::Iff(a, b), true) => Formula::and(vec![
            Formula::or(vec![nnf(a, false), nnf(b, true)]),
            Formula::or(vec![nnf(a, true), nnf(b, false)]),
        ]),
        (Formula::Iff(a, b), false) => Formula::or(vec![
            Formula::and(vec![nnf(a, true), nnf(b, false)]),
            Formula::and(vec![nnf(a, false), nnf(b, true)]),
        ]),
        (Formula::Exists(x, b), true) | (Formula::Forall(x, b), false) => {
            Formula::exists(x.clone(), nnf(b, positive))
        }
        (Formula::Forall(x, b), true) | (Formula::Exists(x, b), false) => {
            Formula::forall(x.clone(), nnf(b, positive))
        }
    }
}

fn expand_quantified_iff(f: &Formula) -> Formula {
    match f {
        Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
        Formula::Not(a) => Formula::not(expand_quantified_iff(a)),
        Formula::And(xs) => Formula::And(xs.iter().map(expand_quantified_iff).collect()),
        Formula::Or(xs) => Formula::Or(xs.iter().map(expand_quantified_iff).collect()),
        Formula::Implies(a, b) => Formula::implies(expand_quantified_iff(a), expand_quantified_iff(b)),
        Formula::Iff(a, b) => {
            let (a, b) = (expand_quantified_iff(a), expand_quantified_iff(b));
            if a.is_quantifier_free() && b.is_quantifier_free() {
                Formula::iff(a, b)
            } else {
                Formula::And(vec![Formula::implies(a.clone(), b.clone()), Formula::implies(b, a)])
            }
        }
        Formula::Exists(x, b) => Formula::exists(x.clone(), expand_quantified_iff(b)),
        Formula::Forall(x, b) => Formula::forall(x.clone(), expand_quantified_iff(b)),
    }
}

fn all_names(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::True | Formula::False => {}
        Formula::Atom(a) => a.terms().iter().for_each(|t| t.collect_vars(out)),
        Formula::Not(a) => all_names(a, out),
        Formula::And(xs) | Formula::Or(xs) => xs.iter().for_each(|x| all_names(x, out)),
        Formula::Implies(a, b) | Formula::Iff(a, b) => {
            all_names(a, out);
            all_names(b, out);
        }
        Formula::Exists(x, b) | Formula::Forall(x, b) => {
            out.insert(x.clone());
            all_names(b, out);
        }
    }
}

fn count_binders(f: &Formula, out: &mut BTreeMap<String, usize>) {
    match f {
        Formula::True | Formula::False | Formula::Atom(_) => {}
        Formula::Not(a) => count_binders(a, out),
        Formula::And(xs) | Formula::Or(xs) => xs.iter().for_each(|x| count_binders(x, out)),
        Formula::Implies(a, b) | Formula::Iff(a, b) => {
            count_binders(a, out);
            count_binders(b, out);
        }
        Formula::Exists(x, b) | Formula::Forall(x, b) => {
            *out.entry(x.clone()).or_default() += 1;
            count_binders(b, out);
        }
    }
}

struct Renamer {
    clash: BTreeSet<String>,
    taken: BTreeSet<String>,
    counters: BTreeMap<String, usize>,
}

impl Renamer {
    fn fresh(&mut self, base: &str) -> String {
        loop {
            let k = self.counters.entry(base.to_string()).or_insert(0);
            *k += 1;
            let candidate = format!("{base}_{k}");
            if self.taken.insert(candidate.clone()) {
                return candidate;
            }
        }
    }

    fn run(&mut self, f: &Formula, env: &BTreeMap<String, String>) -> Formula {
        let term = |t: &Term| {
            env.iter().fold(t.clone(), |acc, (from, to)| acc.substitute(from, &Term::var(to.clone())))
        };
        match f {
            Formula::True | Formula::False => f.clone(),
            Formula::Atom(a) => Formula::Atom(rename_atom(a, env, &term)),
            Formula::Not(a) => Formula::not(self.run(a, env)),
            Formula::And(xs) => Formula::And(xs.iter().map(|x| self.run(x, env)).collect()),
            Formula::Or(xs) => Formula::Or(xs.iter().map(|x| self.run(x, env)).collect()),
            Formula::Implies(a, b) => Formula::implies(self.run(a, env), self.run(b, env)),
            Formula::Iff(a, b) => Formula::iff(self.run(a, env), self.run(b, env)),
            Formula::Exists(x, b) | Formula::Forall(x, b) => {
                let mut env = env.clone();
                let name = if self.clash.contains(x) {
                    let n = self.fresh(x);
                    env.insert(x.clone(), n.clone());
                    n
                } else {
                    env.remove(x);
                    x.clone()
                };
                let body = self.run(b, &env);
                if matches!(f, Formula::Exists(..)) {
                    Formula::exists(name, body)
                } else {
                    Formula::forall(name, body)
                }
            }
        }
    }
}

fn rename_atom(a: &Atom, env: &BTreeMap<String, String>, term: &dyn Fn(&Term) -> Term) -> Atom {
    if env.is_empty() {
        return a.clone();
    }
    a.map_terms(term)
}

/// Renames bound variables apart: a binder is renamed to `name_k` when its
/// name is bound more than once or also occurs free.
pub fn rename_bound(f: &Formula) -> Formula {
    let mut counts = BTreeMap::new();
    count_binders(f, &mut counts);
    let free = f.free_vars();
    let clash: BTreeSet<String> = counts
        .into_iter()
        .filter(|(x, n)| *n > 1 || free.contains(x))
        .map(|(x, _)| x)
        .collect();
    if clash.is_empty() {
        return f.clone();
    }
    let mut taken = BTreeSet::new();
    all_names(f, &mut taken);
    let mut r = Renamer { clash, taken, counters: BTreeMap::new() };
    r.run(f, &BTreeMap::new())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Quant {
    Exists,
    Forall,
}

impl Quant {
    fn flip(self) -> Quant {
        match self {
            Quant::Exists => Quant::Forall,
            Quant::Forall => Quant::Exists,
        }
    }
}

fn pull(f: &Formula) -> (Vec<(Quant, String)>, Formula) {
    let flip = |p: Vec<(Quant, String)>| p.into_iter().map(|(q, x)| (q.flip(), x)).collect::<Vec<_>>();
    match f {
        Formula::True | Formula::False | Formula::Atom(_) => (vec![], f.clone()),
        Formula::Not(a) => {
            let (p, m) = pull(a);
            (flip(p), Formula::not(m))
        }
        Formula::And(xs) | Formula::Or(xs) => {
            let mut prefix = Vec::new();
            let mut ms = Vec::new();
            for x in xs {
                let (p, m) = pull(x);
                prefix.extend(p);
                ms.push(m);
            }
            let m = if matches!(f, Formula::And(_)) { Formula::And(ms) } else { Formula::Or(ms) };
            (prefix, m)
        }
        Formula::Implies(a, b) => {
            let (pa, ma) = pull(a);
            let (pb, mb) = pull(b);
            let mut prefix = flip(pa);
            prefix.extend(pb);
            (prefix, Formula::implies(ma, mb))
        }
        // only reached with quantifier-free sides
        Formula::Iff(..) => (vec![], f.clone()),
        Formula::Exists(x, b) | Formula::Forall(x, b) => {
            let q = if matches!(f, Formula::Exists(..)) { Quant::Exists } else { Quant::Forall };
            let (p, m) = pull(b);
            let mut prefix = vec![(q, x.clone())];
            prefix.extend(p);
            (prefix, m)
        }
    }
}

/// Prenex normal form `Q₁x₁…Qₙxₙ θ`; quantifier-free input is returned
/// unchanged.
pub fn to_prenex(f: &Formula) -> Formula {
    if f.is_quantifier_free() {
        return f.clone();
    }
    let renamed = rename_bound(&expand_quantified_iff(f));
    let (prefix, matrix) = pull(&renamed);
    prefix.into_iter().rev().fold(matrix, |acc, (q, x)| match q {
        Quant::Exists => Formula::exists(x, acc),
        Quant::Forall => Formula::forall(x, acc),
    })
}

pub fn is_literal(f: &Formula) -> bool {
    match f {
        Formula::Atom(_) => true,
        Formula::Not(a) => matches!(a.as_ref(), Formula::Atom(_)),
        _ => false,
    }
}

/// DNF as a list of conjunctions of literals. Conjunctions containing
/// `false` are dropped; `true` literals are omitted.
pub fn dnf_clauses(qf: &Formula, cap: usize) -> Result<Vec<Vec<Formula>>> {
    dnf_clauses_with(qf, &mut Budget::new(cap))
}

pub fn dnf_clauses_with(qf: &Formula, budget: &mut Budget) -> Result<Vec<Vec<Formula>>> {
    if !qf.is_quantifier_free() {
        return Err(Error::Invalid("DNF of a quantified formula".into()));
    }
    clauses(&to_nnf(qf), budget)
}

/// Running count of literal occurrences against a fixed cap.
#[derive(Clone, Debug)]
pub struct Budget {
    cap: usize,
    used: usize,
}

impl Budget {
    pub fn new(cap: usize) -> Budget {
        Budget { cap, used: 0 }
    }

    pub fn used(&self) -> usize {
        self.used
    }

    pub fn charge(&mut self, n: usize) -> Result<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.cap {
            return Err(Error::ResourceCap(format!(
                "more than {} literal occurrences in normal forms",
                self.cap
            )));
        }
        Ok(())
    }
}

fn clauses(f: &Formula, budget: &mut Budget) -> Result<Vec<Vec<Formula>>> {
    match f {
        Formula::True => Ok(vec![vec![]]),
        Formula::False => Ok(vec![]),
        Formula::Or(xs) => {
            let mut out = Vec::new();
            for x in xs {
                out.extend(clauses(x, budget)?);
            }
            Ok(out)
        }
        Formula::And(xs) => {
            let mut acc: Vec<Vec<Formula>> = vec![vec![]];
            for x in xs {
                let part = clauses(x, budget)?;
                let mut next = Vec::with_capacity(acc.len() * part.len());
                for a in &acc {
                    for p in &part {
                        budget.charge(a.len() + p.len())?;
                        let mut c = a.clone();
                        for lit in p {
                            if !c.contains(lit) {
                                c.push(lit.clone());
                            }
                        }
                        next.push(c);
                    }
                }
                acc = next;
            }
            Ok(acc)
        }
        lit => {
            budget.charge(1)?;
            Ok(vec![vec![lit.clone()]])
        }
    }
}

/// Disjunctive normal form of a quantifier-free formula.
pub fn to_dnf(qf: &Formula, cap: usize) -> Result<Formula> {
    let cs = dnf_clauses(qf, cap)?;
    Ok(Formula::or(cs.into_iter().map(Formula::and).collect()))
}
