//! Quantifier elimination: one existential eliminator per theory, a
//! bottom-up driver with a replayable trace, and the axiom catalogs.

mod additive;
mod axioms;
mod complex;
mod qplus;
mod real;
mod simplify;

use std::fmt;

use crate::error::{Error, Result};
use crate::formula::{
    check_signature, isolate_variable, to_nnf, Budget, CanonicalLiteral, Formula, Iso, IsoConj, Theory,
    DEFAULT_DNF_CAP,
};
use crate::semantics::eval_ground;

pub use axioms::{axiom_instances, AxiomInstance};
pub use qplus::{solve_root_system, solve_root_system_with_negations, RootSystemSolution};
pub use simplify::simplify;

type Core = fn(&[CanonicalLiteral], &mut Budget) -> Result<Formula>;

fn core_for(theory: Theory) -> (Core, &'static str) {
    match theory {
        Theory::CMul => (complex::complex_core, "complex: zero split, exponent alignment, disequations through roots of unity"),
        Theory::RMul => (real::real_core, "real: sign split, positive core by common exponent"),
        Theory::RPosMul => (real::rpos_core, "positive reals: common exponent and substitution"),
        Theory::RNonnegMul => {
            (real::rnonneg_core, "nonnegative reals: zero split plus positive core (reconstructed like the signed case)")
        }
        Theory::QPosMul => (qplus::qplus_core, "positive rationals: common exponent, then substitution or pairwise power criterion"),
        Theory::ZAdd => (additive::integer_core, "integers: common coefficient, then substitution or congruence criterion"),
        Theory::DivAdd => (additive::divisible_core, "divisible group: common coefficient and substitution"),
    }
}

fn eliminate_conj(x: &str, conj: &IsoConj, theory: Theory, budget: &mut Budget) -> Result<Formula> {
    if let Some(c) = conj.canon.iter().find(|c| c.var() != x) {
        return Err(Error::Invalid(format!("`{c}` is isolated for another variable than `{x}`")));
    }
    if let Some(f) = conj.free.iter().find(|f| f.mentions(x)) {
        return Err(Error::Invalid(format!("`{f}` mentions `{x}`")));
    }
    let core = (core_for(theory).0)(&conj.canon, budget)?;
    let mut items = conj.free.clone();
    items.push(core);
    Ok(simplify::all_of(items))
}

fn public_engine(x: &str, conj: &IsoConj, theory: Theory) -> Result<Formula> {
    let out = eliminate_conj(x, conj, theory, &mut Budget::new(DEFAULT_DNF_CAP))?;
    Ok(simplify(&out, theory))
}

/// `∃x conj` over ℂ with `×`, `⁻¹`, `0`, `1` and the roots of unity.
pub fn eliminate_exists_complex(x: &str, conj: &IsoConj) -> Result<Formula> {
    public_engine(x, conj, Theory::CMul)
}

/// `∃x conj` over ℚ, ℝ or ℂ with `+`, `−`, `0`.
pub fn eliminate_exists_additive_divisible(x: &str, conj: &IsoConj) -> Result<Formula> {
    public_engine(x, conj, Theory::DivAdd)
}

/// `∃x conj` over ℝ⁺ with `×`, `⁻¹`, `1`.
pub fn eliminate_exists_real_positive(x: &str, conj: &IsoConj) -> Result<Formula> {
    public_engine(x, conj, Theory::RPosMul)
}

/// `∃x conj` over ℝ with `×`, `⁻¹`, `0`, `1`, `−1` and positivity.
pub fn eliminate_exists_real(x: &str, conj: &IsoConj) -> Result<Formula> {
    public_engine(x, conj, Theory::RMul)
}

/// `∃x conj` over ℝ≥0 with `×`, `⁻¹`, `0`, `1`.
pub fn eliminate_exists_real_nonneg(x: &str, conj: &IsoConj) -> Result<Formula> {
    public_engine(x, conj, Theory::RNonnegMul)
}

/// `∃x conj` over ℤ with `+`, `−`, `0`, `1` and congruences.
pub fn eliminate_exists_int_add(x: &str, conj: &IsoConj) -> Result<Formula> {
    public_engine(x, conj, Theory::ZAdd)
}

/// `∃x conj` over ℚ⁺ with `×`, `⁻¹`, `1` and the power predicates.
pub fn eliminate_exists_qplus(x: &str, conj: &IsoConj) -> Result<Formula> {
    public_engine(x, conj, Theory::QPosMul)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QeOptions {
    /// Cap on literal occurrences produced by normal forms and case splits.
    pub dnf_cap: usize,
    pub trace: bool,
}

impl Default for QeOptions {
    fn default() -> Self {
        QeOptions { dnf_cap: DEFAULT_DNF_CAP, trace: false }
    }
}

/// One rewrite: `input` (a subformula of `before`) became `output`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: String,
    /// Child indices from the root of `before` down to `input`.
    pub path: Vec<usize>,
    pub input: Formula,
    pub output: Formula,
    pub before: Formula,
    pub after: Formula,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationTrace {
    pub start: Formula,
    pub steps: Vec<TraceStep>,
}

impl EliminationTrace {
    pub fn result(&self) -> &Formula {
        self.steps.last().map_or(&self.start, |s| &s.after)
    }

    /// Re-applies every step from the start and checks that it reproduces
    /// the recorded formulas.
    pub fn replay(&self) -> Result<Formula> {
        let mut cur = self.start.clone();
        for (i, s) in self.steps.iter().enumerate() {
            if s.before != cur {
                return Err(Error::Invariant(format!("step {i} does not start where step {} ended", i.saturating_sub(1))));
            }
            if subformula_at(&cur, &s.path) != Some(&s.input) {
                return Err(Error::Invariant(format!("step {i}: input not found at its path")));
            }
            let next = replace_at(&cur, &s.path, &s.output)
                .ok_or_else(|| Error::Invariant(format!("step {i}: path leaves the formula")))?;
            if next != s.after {
                return Err(Error::Invariant(format!("step {i}: replay differs from the record")));
            }
            cur = next;
        }
        Ok(cur)
    }
}

impl fmt::Display for EliminationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "start: {}", self.start)?;
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "[{}] {}", i + 1, s.rule)?;
            writeln!(f, "    in:  {}", s.input)?;
            writeln!(f, "    out: {}", s.output)?;
        }
        write!(f, "result: {}", self.result())
    }
}

/// Outcome of deciding a sentence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub verdict: bool,
    /// The variable-free formula the sentence reduced to.
    pub qf: Formula,
    pub trace: EliminationTrace,
}

fn children(f: &Formula) -> Vec<&Formula> {
    match f {
        Formula::True | Formula::False | Formula::Atom(_) => vec![],
        Formula::Not(a) | Formula::Exists(_, a) | Formula::Forall(_, a) => vec![a],
        Formula::And(xs) | Formula::Or(xs) => xs.iter().collect(),
        Formula::Implies(a, b) | Formula::Iff(a, b) => vec![a, b],
    }
}

fn subformula_at<'a>(f: &'a Formula, path: &[usize]) -> Option<&'a Formula> {
    match path.split_first() {
        None => Some(f),
        Some((&i, rest)) => subformula_at(children(f).get(i)?, rest),
    }
}

/// `f` with the node at `path` replaced by `by`.
fn replace_at(f: &Formula, path: &[usize], by: &Formula) -> Option<Formula> {
    let Some((&i, rest)) = path.split_first() else { return Some(by.clone()) };
    let boxed = |a: &Formula| replace_at(a, rest, by).map(Box::new);
    Some(match f {
        Formula::True | Formula::False | Formula::Atom(_) => return None,
        Formula::Not(a) if i == 0 => Formula::Not(boxed(a)?),
        Formula::Exists(x, a) if i == 0 => Formula::Exists(x.clone(), boxed(a)?),
        Formula::Forall(x, a) if i == 0 => Formula::Forall(x.clone(), boxed(a)?),
        Formula::And(xs) | Formula::Or(xs) => {
            let mut v = xs.clone();
            *v.get_mut(i)? = replace_at(&xs[i], rest, by)?;
            if matches!(f, Formula::And(_)) { Formula::And(v) } else { Formula::Or(v) }
        }
        Formula::Implies(a, b) if i == 0 => Formula::Implies(boxed(a)?, b.clone()),
        Formula::Implies(a, b) if i == 1 => Formula::Implies(a.clone(), boxed(b)?),
        Formula::Iff(a, b) if i == 0 => Formula::Iff(boxed(a)?, b.clone()),
        Formula::Iff(a, b) if i == 1 => Formula::Iff(a.clone(), boxed(b)?),
        _ => return None,
    })
}

/// Path of the first subformula equal to `target` in preorder.
fn locate(f: &Formula, target: &Formula) -> Option<Vec<usize>> {
    if f == target {
        return Some(vec![]);
    }
    children(f).into_iter().enumerate().find_map(|(i, c)| {
        locate(c, target).map(|mut p| {
            p.insert(0, i);
            p
        })
    })
}

/// Path of the first quantifier in preorder whose body is quantifier-free.
fn innermost(f: &Formula) -> Option<Vec<usize>> {
    let found = children(f).into_iter().enumerate().find_map(|(i, c)| {
        innermost(c).map(|mut p| {
            p.insert(0, i);
            p
        })
    });
    match f {
        Formula::Exists(..) | Formula::Forall(..) => found.or(Some(vec![])),
        _ => found,
    }
}

struct Run {
    theory: Theory,
    budget: Budget,
    trace: Option<Vec<TraceStep>>,
    cur: Formula,
}

impl Run {
    fn step(&mut self, rule: &str, path: &[usize], output: Formula) -> Result<()> {
        let input = subformula_at(&self.cur, path)
            .ok_or_else(|| Error::Invariant("rewrite path leaves the formula".into()))?
            .clone();
        if input == output {
            return Ok(());
        }
        let next = replace_at(&self.cur, path, &output).expect("path was just resolved");
        if let Some(steps) = &mut self.trace {
            steps.push(TraceStep {
                rule: rule.to_string(),
                path: path.to_vec(),
                input,
                output,
                before: self.cur.clone(),
                after: next.clone(),
            });
        }
        self.cur = next;
        Ok(())
    }

    /// Rewrites the first occurrence of `input` below `scope`.
    fn step_within(&mut self, rule: &str, scope: &[usize], input: &Formula, output: Formula) -> Result<()> {
        let local = subformula_at(&self.cur, scope)
            .and_then(|node| locate(node, input))
            .ok_or_else(|| Error::Invariant(format!("`{input}` vanished from the formula")))?;
        let path: Vec<usize> = scope.iter().chain(&local).copied().collect();
        self.step(rule, &path, output)
    }

    fn iso_tree(&self, f: &Formula, x: &str) -> Result<Iso> {
        Ok(match f {
            Formula::And(xs) => Iso::and(xs.iter().map(|y| self.iso_tree(y, x)).collect::<Result<_>>()?),
            Formula::Or(xs) => Iso::or(xs.iter().map(|y| self.iso_tree(y, x)).collect::<Result<_>>()?),
            f if f.mentions(x) => isolate_variable(f, x, self.theory)?,
            f => Iso::Free(f.clone()),
        })
    }

    /// Eliminates `∃x body` (body quantifier-free, in negation normal form)
    /// sitting at `at` in the current formula; returns the replacement.
    fn exists(&mut self, at: &[usize], x: &str, body: &Formula) -> Result<Formula> {
        let body = simplify(body, self.theory);
        if !body.mentions(x) {
            self.step("drop a vacuous quantifier", at, body.clone())?;
            return Ok(body);
        }
        let conjuncts = match &body {
            Formula::And(xs) => xs.clone(),
            other => vec![other.clone()],
        };
        let (with_x, without_x): (Vec<Formula>, Vec<Formula>) = conjuncts.into_iter().partition(|c| c.mentions(x));
        let clauses = self.iso_tree(&Formula::and(with_x), x)?.dnf(&mut self.budget)?;
        let staged_clause = |c: &IsoConj| {
            let mut items = c.free.clone();
            if !c.canon.is_empty() {
                let conj = IsoConj { canon: c.canon.clone(), free: vec![] };
                items.push(Formula::exists(x, conj.to_formula()));
            }
            Formula::and(items)
        };
        let mut parts: Vec<Formula> = clauses.iter().map(staged_clause).collect();
        let assemble = |parts: &[Formula]| {
            let mut items = without_x.clone();
            items.push(Formula::or(parts.to_vec()));
            Formula::and(items)
        };
        let mut local = assemble(&parts);
        self.step("isolate the variable, distribute over the disjunctive normal form", at, local.clone())?;
        let rule = core_for(self.theory).1;
        let per_clause = self.trace.is_some() && clauses.len() <= 32;
        let before = local.clone();
        for (i, c) in clauses.iter().enumerate() {
            if c.canon.is_empty() {
                continue;
            }
            let conj = IsoConj { canon: c.canon.clone(), free: vec![] };
            let core = eliminate_conj(x, &conj, self.theory, &mut self.budget)?;
            let quantified = Formula::exists(x, conj.to_formula());
            let staged = locate(&parts[i], &quantified).expect("staged clause holds its quantifier");
            parts[i] = replace_at(&parts[i], &staged, &core).expect("path was just located");
            if per_clause {
                self.step_within(rule, at, &quantified, core)?;
            }
        }
        local = assemble(&parts);
        if !per_clause {
            debug_assert_eq!(subformula_at(&self.cur, at), Some(&before));
            self.step(rule, at, local.clone())?;
        }
        let done = simplify(&local, self.theory);
        self.step("simplify", at, done.clone())?;
        Ok(done)
    }

    fn eliminate(&mut self, at: &[usize]) -> Result<()> {
        let node = subformula_at(&self.cur, at).cloned();
        match node {
            Some(Formula::Exists(x, body)) => {
                self.exists(at, &x, &body)?;
            }
            Some(Formula::Forall(x, body)) => {
                let flipped = to_nnf(&Formula::not((*body).clone()));
                let negated = Formula::not(Formula::exists(x.clone(), flipped.clone()));
                self.step("universal to negated existential", at, negated)?;
                let below: Vec<usize> = at.iter().copied().chain([0]).collect();
                let inner = self.exists(&below, &x, &flipped)?;
                let back = simplify(&to_nnf(&Formula::not(inner)), self.theory);
                self.step("push the negation inward", at, back)?;
            }
            _ => return Err(Error::Invariant("not a quantifier".into())),
        }
        Ok(())
    }
}

/// Eliminates every quantifier of `f`, returning an equivalent
/// quantifier-free formula over the same free variables.
pub fn eliminate_quantifiers(f: &Formula, theory: Theory, opts: &QeOptions) -> Result<(Formula, EliminationTrace)> {
    check_signature(f, theory)?;
    let mut run = Run {
        theory,
        budget: Budget::new(opts.dnf_cap),
        trace: opts.trace.then(Vec::new),
        cur: f.clone(),
    };
    let nnf = to_nnf(f);
    run.step("negation normal form", &[], nnf)?;
    while let Some(at) = innermost(&run.cur) {
        run.eliminate(&at)?;
    }
    let done = simplify(&run.cur, theory);
    run.step("simplify", &[], done)?;
    let trace = EliminationTrace { start: f.clone(), steps: run.trace.unwrap_or_default() };
    if !run.cur.is_quantifier_free() {
        return Err(Error::Invariant("elimination left a quantifier".into()));
    }
    Ok((run.cur, trace))
}

/// Decides a sentence in the intended structure of `theory`.
pub fn decide_sentence(s: &Formula, theory: Theory) -> Result<Decision> {
    decide_sentence_with(s, theory, &QeOptions::default())
}

pub fn decide_sentence_with(s: &Formula, theory: Theory, opts: &QeOptions) -> Result<Decision> {
    if let Some(v) = s.free_vars().into_iter().next() {
        return Err(Error::Invalid(format!("`{v}` is free; only sentences can be decided")));
    }
    let (qf, trace) = eliminate_quantifiers(s, theory, opts)?;
    let verdict = eval_ground(&qf, theory)?;
    Ok(Decision { verdict, qf, trace })
}

/// `∃x body` for a quantifier-free body.
pub fn eliminate_exists(x: &str, body: &Formula, theory: Theory, opts: &QeOptions) -> Result<Formula> {
    if !body.is_quantifier_free() {
        return Err(Error::Invalid("the body must be quantifier-free".into()));
    }
    Ok(eliminate_quantifiers(&Formula::exists(x, body.clone()), theory, opts)?.0)
}
