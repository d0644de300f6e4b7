//! Seeded random generators for formulas and for ground single-variable
//! conjunctions, used by the oracle cross-checks and the property tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::formula::{Atom, Formula, Term, Theory};

/// Primes allowed in the support of generated parameters.
pub const SUPPORT: [u64; 4] = [2, 3, 5, 7];

/// Shape limits for [`random_formula`].
#[derive(Clone, Debug)]
pub struct FormulaShape {
    pub max_quantifiers: usize,
    pub max_depth: usize,
    pub vars: Vec<&'static str>,
}

impl Default for FormulaShape {
    fn default() -> Self {
        FormulaShape { max_quantifiers: 3, max_depth: 4, vars: vec!["x", "y", "z", "u"] }
    }
}

/// Shape limits for [`random_ground_conjunction`].
#[derive(Clone, Debug)]
pub struct ConjShape {
    pub max_literals: usize,
    pub max_exponent: u32,
}

impl Default for ConjShape {
    fn default() -> Self {
        ConjShape { max_literals: 6, max_exponent: 6 }
    }
}

fn q(n: i64) -> Term {
    Term::Num(BigRational::from_integer(BigInt::from(n)))
}

/// A positive rational with support in [`SUPPORT`].
pub fn random_positive<R: Rng>(rng: &mut R) -> BigRational {
    let mut acc = BigRational::one();
    for &p in &SUPPORT {
        if rng.gen_bool(0.5) {
            let e: i32 = rng.gen_range(-2..=2);
            let p = BigRational::from_integer(BigInt::from(p));
            acc *= if e >= 0 { num_traits::pow(p, e as usize) } else { num_traits::pow(p.recip(), (-e) as usize) };
        }
    }
    acc
}

fn random_integer<R: Rng>(rng: &mut R) -> BigInt {
    let mut acc = BigInt::one();
    for &p in &SUPPORT {
        acc *= BigInt::from(p).pow(rng.gen_range(0..=2u32));
    }
    if rng.gen_bool(0.2) {
        acc = BigInt::from(0);
    }
    if rng.gen_bool(0.5) { -acc } else { acc }
}

/// A ground constant term of the theory's carrier.
pub fn random_constant<R: Rng>(theory: Theory, rng: &mut R) -> Term {
    let zero_ok = theory.has_zero() && rng.gen_bool(0.1);
    match theory {
        Theory::ZAdd => Term::Num(BigRational::from_integer(random_integer(rng))),
        Theory::DivAdd => {
            let c = random_positive(rng);
            if zero_ok { q(0) } else if rng.gen_bool(0.5) { Term::Num(-c) } else { Term::Num(c) }
        }
        _ if zero_ok => q(0),
        Theory::RMul => {
            let c = random_positive(rng);
            Term::Num(if rng.gen_bool(0.5) { -c } else { c })
        }
        Theory::CMul => {
            let c = Term::Num(random_positive(rng));
            if rng.gen_bool(0.4) {
                let n = rng.gen_range(2..=6u64);
                let i = rng.gen_range(1..n as i64);
                Term::mul(c, Term::pow(Term::Omega(n), i))
            } else {
                c
            }
        }
        _ => Term::Num(random_positive(rng)),
    }
}

fn power_of(x: &Term, k: i64) -> Term {
    if k == 1 { x.clone() } else { Term::pow(x.clone(), k) }
}

/// `x^k · c` or `k.x + c`, depending on the theory.
fn side<R: Rng>(x: &Term, k: i64, theory: Theory, rng: &mut R) -> Term {
    let c = random_constant(theory, rng);
    if theory.is_multiplicative() {
        if k == 0 { c } else { Term::mul(power_of(x, k), c) }
    } else if k == 0 {
        c
    } else {
        let kx = if k == 1 { x.clone() } else { Term::scale(k, x.clone()) };
        Term::add(kx, c)
    }
}

/// A random conjunction of literals in `x` whose parameters are all ground.
/// About half of the equations are planted so that a hidden witness
/// satisfies them.
pub fn random_ground_conjunction<R: Rng>(theory: Theory, x: &str, shape: &ConjShape, rng: &mut R) -> Vec<Formula> {
    let xv = Term::var(x);
    let witness = random_constant(theory, rng);
    let max_e = shape.max_exponent as i64;
    let len = rng.gen_range(1..=shape.max_literals);
    (0..len)
        .map(|_| {
            let k = rng.gen_range(1..=max_e);
            let lhs = side(&xv, k, theory, rng);
            let kind = rng.gen_range(0..4);
            let special = match theory {
                Theory::RMul => Some(Atom::Pos(lhs.clone())),
                Theory::QPosMul => Some(Atom::Root(rng.gen_range(2..=max_e.max(2)) as u64, lhs.clone())),
                Theory::ZAdd => Some(Atom::Cong(
                    rng.gen_range(2..=max_e.max(2)) as u64,
                    lhs.clone(),
                    random_constant(theory, rng),
                )),
                _ => None,
            };
            if let (Some(a), true) = (special, kind >= 2) {
                let f = Formula::atom(a);
                return if rng.gen_bool(0.5) { f } else { Formula::not(f) };
            }
            let rhs = if rng.gen_bool(0.5) {
                lhs.substitute(x, &witness)
            } else {
                side(&xv, rng.gen_range(0..=max_e), theory, rng)
            };
            if kind == 0 { Formula::ne(lhs, rhs) } else { Formula::eq(lhs, rhs) }
        })
        .collect()
}

struct FormulaGen<'a, R> {
    theory: Theory,
    shape: &'a FormulaShape,
    rng: &'a mut R,
    quantifiers_left: usize,
}

impl<R: Rng> FormulaGen<'_, R> {
    fn var(&mut self) -> Term {
        Term::var(*self.shape.vars.choose(self.rng).expect("nonempty variable pool"))
    }

    fn term(&mut self, depth: usize) -> Term {
        let mult = self.theory.is_multiplicative();
        if depth == 0 || self.rng.gen_bool(0.4) {
            return if self.rng.gen_bool(0.7) { self.var() } else { random_constant(self.theory, self.rng) };
        }
        match (mult, self.rng.gen_range(0..3)) {
            (true, 0) => Term::mul(self.term(depth - 1), self.term(depth - 1)),
            (true, 1) => Term::inv(self.term(depth - 1)),
            (true, _) => {
                let k = *[-3, -2, 2, 3].choose(self.rng).unwrap();
                Term::pow(self.term(depth - 1), k)
            }
            (false, 0) => Term::add(self.term(depth - 1), self.term(depth - 1)),
            (false, 1) => Term::neg(self.term(depth - 1)),
            (false, _) => Term::scale(self.rng.gen_range(2..=4), self.term(depth - 1)),
        }
    }

    fn atom(&mut self) -> Formula {
        let a = self.term(2);
        let roll = self.rng.gen_range(0..4);
        let atom = match self.theory {
            Theory::RMul if roll == 0 => Atom::Pos(a),
            Theory::QPosMul if roll == 0 => Atom::Root(self.rng.gen_range(2..=4), a),
            Theory::ZAdd if roll == 0 => Atom::Cong(self.rng.gen_range(2..=4), a, self.term(1)),
            _ => Atom::Eq(a, self.term(2)),
        };
        if self.rng.gen_bool(0.3) { Formula::not(Formula::atom(atom)) } else { Formula::atom(atom) }
    }

    fn formula(&mut self, depth: usize) -> Formula {
        if depth == 0 {
            return self.atom();
        }
        let roll = self.rng.gen_range(0..10);
        if roll < 3 && self.quantifiers_left > 0 {
            self.quantifiers_left -= 1;
            let x = self.shape.vars.choose(self.rng).expect("nonempty variable pool").to_string();
            let body = self.formula(depth - 1);
            return if self.rng.gen_bool(0.5) { Formula::exists(x, body) } else { Formula::forall(x, body) };
        }
        match roll {
            3 => Formula::not(self.formula(depth - 1)),
            4 | 5 => {
                let n = self.rng.gen_range(2..=3);
                Formula::And((0..n).map(|_| self.formula(depth - 1)).collect())
            }
            6 | 7 => {
                let n = self.rng.gen_range(2..=3);
                Formula::Or((0..n).map(|_| self.formula(depth - 1)).collect())
            }
            8 => Formula::implies(self.formula(depth - 1), self.formula(depth - 1)),
            _ if self.rng.gen_bool(0.5) => Formula::iff(self.formula(depth - 1), self.formula(depth - 1)),
            _ => self.atom(),
        }
    }
}

/// A random well-formed formula of the theory with at most
/// `shape.max_quantifiers` quantifiers.
pub fn random_formula<R: Rng>(theory: Theory, shape: &FormulaShape, rng: &mut R) -> Formula {
    let mut g = FormulaGen { theory, shape, rng, quantifiers_left: shape.max_quantifiers };
    g.formula(shape.max_depth)
}

/// A random sentence: [`random_formula`] with its free variables closed by
/// random quantifiers, innermost first.
pub fn random_sentence<R: Rng>(theory: Theory, shape: &FormulaShape, rng: &mut R) -> Formula {
    let body = random_formula(theory, shape, rng);
    body.free_vars().into_iter().fold(body, |acc, v| {
        if rng.gen_bool(0.5) { Formula::exists(v, acc) } else { Formula::forall(v, acc) }
    })
}
