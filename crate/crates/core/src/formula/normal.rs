//! Normal forms of terms: monomials for the multiplicative signatures and
//! linear forms for the additive ones.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ast::Term;
use super::theory::Theory;
use crate::error::{Error, Result};
use crate::numtheory::{factor_rational, ExponentVector};

/// Numerals whose magnitude needs more digits than this are printed as a
/// product of prime powers.
const NUMERAL_DIGITS: f64 = 40.0;

/// The ground factor of a monomial: zero, or a root of unity times a
/// positive rational kept in factored form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coef {
    Zero,
    Unit {
        /// Angle fraction of the root-of-unity part, in `[0, 1)`.
        torsion: BigRational,
        ev: ExponentVector<BigInt>,
    },
}

fn reduce_torsion(q: BigRational) -> BigRational {
    q.clone() - BigRational::from_integer(q.floor().to_integer())
}

pub(crate) fn checked(a: Option<i64>) -> Result<i64> {
    a.ok_or_else(|| Error::ResourceCap("exponent overflow".into()))
}

impl Coef {
    pub fn one() -> Coef {
        Coef::Unit { torsion: BigRational::zero(), ev: ExponentVector::new() }
    }

    pub fn minus_one() -> Coef {
        Coef::Unit { torsion: BigRational::new(1.into(), 2.into()), ev: ExponentVector::new() }
    }

    pub fn omega(n: u64) -> Coef {
        Coef::Unit { torsion: reduce_torsion(BigRational::new(1.into(), n.into())), ev: ExponentVector::new() }
    }

    pub fn from_rational(q: &BigRational) -> Result<Coef> {
        if q.is_zero() {
            return Ok(Coef::Zero);
        }
        let (sign, ev) = factor_rational(q)?;
        let torsion = if sign < 0 { BigRational::new(1.into(), 2.into()) } else { BigRational::zero() };
        Ok(Coef::Unit { torsion, ev })
    }

    pub fn from_ev(ev: ExponentVector<BigInt>) -> Coef {
        Coef::Unit { torsion: BigRational::zero(), ev }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coef::Zero)
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Coef::Unit { torsion, ev } if torsion.is_zero() && ev.is_identity())
    }

    pub fn torsion(&self) -> Option<&BigRational> {
        match self {
            Coef::Zero => None,
            Coef::Unit { torsion, .. } => Some(torsion),
        }
    }

    pub fn ev(&self) -> Option<&ExponentVector<BigInt>> {
        match self {
            Coef::Zero => None,
            Coef::Unit { ev, .. } => Some(ev),
        }
    }

    pub fn mul(&self, other: &Coef) -> Coef {
        match (self, other) {
            (Coef::Unit { torsion: a, ev: u }, Coef::Unit { torsion: b, ev: v }) => {
                Coef::Unit { torsion: reduce_torsion(a + b), ev: u.add(v) }
            }
            _ => Coef::Zero,
        }
    }

    /// Inverse with the convention `0⁻¹ = 0`.
    pub fn inv(&self) -> Coef {
        match self {
            Coef::Zero => Coef::Zero,
            Coef::Unit { torsion, ev } => {
                Coef::Unit { torsion: reduce_torsion(-torsion.clone()), ev: ev.negate() }
            }
        }
    }

    pub fn pow(&self, k: i64) -> Coef {
        match self {
            Coef::Zero => Coef::Zero,
            Coef::Unit { torsion, ev } => Coef::Unit {
                torsion: reduce_torsion(torsion * BigRational::from_integer(k.into())),
                ev: ev.scale(&BigInt::from(k)),
            },
        }
    }

    /// Exact rational value when the torsion part is `±1`.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Coef::Zero => Some(BigRational::zero()),
            Coef::Unit { torsion, ev } => {
                let mag = ev.to_rational();
                if torsion.is_zero() {
                    Some(mag)
                } else if torsion == &BigRational::new(1.into(), 2.into()) {
                    Some(-mag)
                } else {
                    None
                }
            }
        }
    }

    pub fn to_term(&self) -> Term {
        let (torsion, ev) = match self {
            Coef::Zero => return Term::int(0),
            Coef::Unit { torsion, ev } => (torsion, ev),
        };
        let half = BigRational::new(1.into(), 2.into());
        let negative = torsion == &half;
        let mut factors = Vec::new();
        if !torsion.is_zero() && !negative {
            let b = torsion.denom().to_u64().expect("torsion order fits u64");
            let a = torsion.numer().to_i64().expect("torsion numerator fits i64");
            factors.push(if a == 1 { Term::Omega(b) } else { Term::pow(Term::Omega(b), a) });
        }
        if ev.approx_digits() <= NUMERAL_DIGITS {
            let mag = ev.to_rational();
            let q = if negative { -mag } else { mag };
            if !(q.is_one() && !factors.is_empty()) {
                factors.insert(0, Term::Num(q));
            }
        } else {
            if negative {
                factors.push(Term::int(-1));
            }
            for (p, e) in ev.iter() {
                let base = Term::Num(BigRational::from_integer(p.into()));
                let k = e.abs().to_i64().expect("prime exponent fits i64");
                let pw = if k == 1 { base } else { Term::pow(base, k) };
                factors.push(if e.is_negative() { Term::inv(pw) } else { pw });
            }
        }
        Term::product(factors)
    }
}

/// `coef · Π vᵉ`. A stored exponent of zero means the variable occurs with
/// net exponent zero (as in `x · x⁻¹`), which still matters when the
/// carrier has a zero; such entries are kept only for those theories.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub coef: Coef,
    pub vars: BTreeMap<String, i64>,
}

impl Mono {
    pub fn constant(coef: Coef) -> Mono {
        Mono { coef, vars: BTreeMap::new() }
    }

    pub fn one() -> Mono {
        Mono::constant(Coef::one())
    }

    pub fn zero() -> Mono {
        Mono::constant(Coef::Zero)
    }

    pub fn var(x: &str) -> Mono {
        Mono { coef: Coef::one(), vars: BTreeMap::from([(x.to_string(), 1)]) }
    }

    pub fn var_pow(x: &str, e: i64) -> Mono {
        Mono { coef: Coef::one(), vars: BTreeMap::from([(x.to_string(), e)]) }
    }

    pub fn is_ground(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coef.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.vars.is_empty() && self.coef.is_one()
    }

    fn tidy(mut self, theory: Theory) -> Mono {
        if self.coef.is_zero() {
            self.vars.clear();
        } else if !theory.has_zero() {
            self.vars.retain(|_, e| *e != 0);
        }
        self
    }

    pub fn mul(&self, other: &Mono, theory: Theory) -> Result<Mono> {
        let mut vars = self.vars.clone();
        for (v, e) in &other.vars {
            let slot = vars.entry(v.clone()).or_insert(0);
            *slot = checked(slot.checked_add(*e))?;
        }
        Ok(Mono { coef: self.coef.mul(&other.coef), vars }.tidy(theory))
    }

    pub fn inv(&self, theory: Theory) -> Mono {
        let vars = self.vars.iter().map(|(v, e)| (v.clone(), -e)).collect();
        Mono { coef: self.coef.inv(), vars }.tidy(theory)
    }

    pub fn pow(&self, k: i64, theory: Theory) -> Result<Mono> {
        let mut vars = BTreeMap::new();
        for (v, e) in &self.vars {
            vars.insert(v.clone(), checked(e.checked_mul(k))?);
        }
        Ok(Mono { coef: self.coef.pow(k), vars }.tidy(theory))
    }

    pub fn scale_coef(&self, c: &Coef, theory: Theory) -> Mono {
        Mono { coef: self.coef.mul(c), vars: self.vars.clone() }.tidy(theory)
    }

    /// Exponent of `x`: `None` when absent, possibly `Some(0)` when present
    /// with net exponent zero.
    pub fn exponent_of(&self, x: &str) -> Option<i64> {
        self.vars.get(x).copied()
    }

    pub fn without(&self, x: &str) -> Mono {
        let mut m = self.clone();
        m.vars.remove(x);
        m
    }

    /// Splits off the `x` part: `self = x^e · rest`.
    pub fn split(&self, x: &str) -> (Option<i64>, Mono) {
        (self.exponent_of(x), self.without(x))
    }

    pub fn mentions(&self, x: &str) -> bool {
        self.vars.contains_key(x)
    }

    /// Replaces `x` by a monomial, honouring the zero convention.
    pub fn substitute(&self, x: &str, by: &Mono, theory: Theory) -> Result<Mono> {
        match self.vars.get(x) {
            None => Ok(self.clone()),
            Some(&e) => {
                let rest = self.without(x);
                let mut replacement = by.pow(if e == 0 { 1 } else { e }, theory)?;
                if e == 0 {
                    // by · by⁻¹ : 1, or 0 when by is 0
                    replacement = replacement.mul(&by.inv(theory), theory)?;
                }
                rest.mul(&replacement, theory)
            }
        }
    }

    pub fn to_term(&self) -> Term {
        let mut factors = Vec::new();
        if !self.coef.is_one() || self.vars.is_empty() {
            factors.push(self.coef.to_term());
        }
        for (v, &e) in &self.vars {
            let x = Term::var(v.clone());
            factors.push(match e {
                0 => Term::mul(x.clone(), Term::inv(x)),
                1 => x,
                -1 => Term::inv(x),
                e if e > 0 => Term::pow(x, e),
                e => Term::inv(Term::pow(x, -e)),
            });
        }
        Term::product(factors)
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

pub fn normalize_mono(t: &Term, theory: Theory) -> Result<Mono> {
    Ok(match t {
        Term::Var(v) => Mono::var(v),
        Term::Num(q) => Mono::constant(Coef::from_rational(q)?),
        Term::Omega(n) => Mono::constant(Coef::omega(*n)),
        Term::Mul(a, b) => normalize_mono(a, theory)?.mul(&normalize_mono(b, theory)?, theory)?,
        Term::Inv(a) => normalize_mono(a, theory)?.inv(theory),
        Term::Pow(a, k) => normalize_mono(a, theory)?.pow(*k, theory)?,
        Term::Add(..) | Term::Neg(_) | Term::Scale(..) => {
            return Err(Error::Signature(format!("additive term `{t}` in {theory}")))
        }
    })
}

/// `constant + Σ cᵥ·v` over ℚ (integral in ℤ).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Linear {
    pub constant: BigRational,
    pub coeffs: BTreeMap<String, BigInt>,
}

impl Linear {
    pub fn constant(c: BigRational) -> Linear {
        Linear { constant: c, coeffs: BTreeMap::new() }
    }

    pub fn zero() -> Linear {
        Linear::default()
    }

    pub fn var(x: &str) -> Linear {
        Linear { constant: BigRational::zero(), coeffs: BTreeMap::from([(x.to_string(), BigInt::one())]) }
    }

    pub fn is_ground(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff_of(&self, x: &str) -> BigInt {
        self.coeffs.get(x).cloned().unwrap_or_default()
    }

    pub fn without(&self, x: &str) -> Linear {
        let mut l = self.clone();
        l.coeffs.remove(x);
        l
    }

    pub fn mentions(&self, x: &str) -> bool {
        self.coeffs.contains_key(x)
    }

    pub fn add(&self, other: &Linear) -> Linear {
        let mut out = self.clone();
        out.constant += &other.constant;
        for (v, c) in &other.coeffs {
            let slot = out.coeffs.entry(v.clone()).or_default();
            *slot += c;
            if slot.is_zero() {
                out.coeffs.remove(v);
            }
        }
        out
    }

    pub fn neg(&self) -> Linear {
        self.scale(&BigInt::from(-1))
    }

    pub fn sub(&self, other: &Linear) -> Linear {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Linear {
        if k.is_zero() {
            return Linear::zero();
        }
        Linear {
            constant: &self.constant * BigRational::from_integer(k.clone()),
            coeffs: self.coeffs.iter().map(|(v, c)| (v.clone(), c * k)).collect(),
        }
    }

    pub fn plus_constant(&self, c: &BigRational) -> Linear {
        let mut out = self.clone();
        out.constant += c;
        out
    }

    pub fn substitute(&self, x: &str, by: &Linear) -> Linear {
        match self.coeffs.get(x) {
            None => self.clone(),
            Some(k) => self.without(x).add(&by.scale(k)),
        }
    }

    /// Gcd of the variable coefficients (zero for a constant form).
    pub fn content(&self) -> BigInt {
        self.coeffs.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn to_term(&self) -> Term {
        let mut parts = Vec::new();
        for (v, c) in &self.coeffs {
            let x = Term::var(v.clone());
            let mag = c.abs();
            let body = if mag.is_one() { x } else { Term::scale(mag, x) };
            parts.push(if c.is_negative() { Term::neg(body) } else { body });
        }
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push(Term::Num(self.constant.clone()));
        }
        Term::sum(parts)
    }
}

impl fmt::Display for Linear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

pub fn normalize_linear(t: &Term) -> Result<Linear> {
    Ok(match t {
        Term::Var(v) => Linear::var(v),
        Term::Num(q) => Linear::constant(q.clone()),
        Term::Add(a, b) => normalize_linear(a)?.add(&normalize_linear(b)?),
        Term::Neg(a) => normalize_linear(a)?.neg(),
        Term::Scale(n, a) => normalize_linear(a)?.scale(n),
        Term::Omega(_) | Term::Mul(..) | Term::Inv(_) | Term::Pow(..) => {
            return Err(Error::Signature(format!("multiplicative term `{t}` in an additive theory")))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_term;

    fn mono(s: &str, th: Theory) -> Mono {
        normalize_mono(&parse_term(s, th).unwrap(), th).unwrap()
    }

    #[test]
    fn zero_convention_keeps_present_variables() {
        let m = mono("x * inv(x)", Theory::CMul);
        assert_eq!(m.exponent_of("x"), Some(0));
        assert_eq!(mono("x * inv(x)", Theory::QPosMul), Mono::one());
        assert_eq!(mono("0 * x ^ 3", Theory::CMul), Mono::zero());
        assert_eq!(mono("inv(0)", Theory::RMul), Mono::zero());
    }

    #[test]
    fn torsion_arithmetic() {
        assert_eq!(mono("w[3] * w[3] * w[3]", Theory::CMul), Mono::one());
        assert_eq!(mono("w[4] ^ 2", Theory::CMul), mono("-1", Theory::CMul));
        assert_eq!(mono("-1 * -1", Theory::RMul), Mono::one());
        assert_eq!(mono("inv(w[6])", Theory::CMul), mono("w[6] ^ 5", Theory::CMul));
    }

    #[test]
    fn monomials_print_back_to_equal_terms() {
        for s in ["x ^ 2 * inv(y) * 3/4", "w[5] ^ 2 * -7 * x", "x * inv(x) * y ^ -3", "2 ^ 300 * inv(3 ^ 200)"] {
            let m = mono(s, Theory::CMul);
            let back = normalize_mono(&m.to_term(), Theory::CMul).unwrap();
            assert_eq!(m, back, "{s} printed as {}", m.to_term());
        }
    }

    #[test]
    fn substitution_respects_zero() {
        let m = mono("x * inv(x) * y", Theory::CMul);
        let z = m.substitute("x", &Mono::zero(), Theory::CMul).unwrap();
        assert!(z.is_zero());
        let two = Mono::constant(Coef::from_rational(&BigRational::from_integer(2.into())).unwrap());
        assert_eq!(m.substitute("x", &two, Theory::CMul).unwrap(), Mono::var("y"));
    }

    #[test]
    fn linear_forms() {
        let l = normalize_linear(&parse_term("3 . x + - (2 . y) + x + 5", Theory::ZAdd).unwrap()).unwrap();
        assert_eq!(l.coeff_of("x"), BigInt::from(4));
        assert_eq!(l.coeff_of("y"), BigInt::from(-2));
        assert_eq!(normalize_linear(&l.to_term()).unwrap(), l);
        assert_eq!(l.to_term().to_string(), "4 . x + - 2 . y + 5");
    }
}
