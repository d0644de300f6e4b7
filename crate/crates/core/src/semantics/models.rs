//! Exact ground models. Each is elementarily equivalent to the intended
//! structure of its theory, so sentence truth can be read off them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::formula::Theory;
use crate::numtheory::{factor_rational, ExponentVector};

pub type RationalExponents = ExponentVector<BigRational>;

fn frac(q: BigRational) -> BigRational {
    q.clone() - BigRational::from_integer(q.floor().to_integer())
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn factor_exact(q: &BigRational) -> Result<(i8, RationalExponents)> {
    let (sign, ev) = factor_rational(q)?;
    Ok((sign, ev.to_rational_exponents()))
}

/// Divisible abelian group with full torsion, plus zero: a model of the
/// complex multiplicative theory.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ComplexElem {
    Zero,
    NonZero {
        /// Angle fraction in `[0, 1)`.
        torsion: BigRational,
        ev: RationalExponents,
    },
}

impl ComplexElem {
    pub fn one() -> Self {
        ComplexElem::NonZero { torsion: BigRational::zero(), ev: RationalExponents::new() }
    }

    pub fn omega(n: u64) -> Self {
        ComplexElem::NonZero { torsion: frac(BigRational::new(1.into(), n.into())), ev: RationalExponents::new() }
    }

    pub fn from_rational(q: &BigRational) -> Result<Self> {
        if q.is_zero() {
            return Ok(ComplexElem::Zero);
        }
        let (sign, ev) = factor_exact(q)?;
        let torsion = if sign < 0 { BigRational::new(1.into(), 2.into()) } else { BigRational::zero() };
        Ok(ComplexElem::NonZero { torsion, ev })
    }

    pub fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (ComplexElem::NonZero { torsion: a, ev: u }, ComplexElem::NonZero { torsion: b, ev: v }) => {
                ComplexElem::NonZero { torsion: frac(a + b), ev: u.add(v) }
            }
            _ => ComplexElem::Zero,
        }
    }

    pub fn inv(&self) -> Self {
        match self {
            ComplexElem::Zero => ComplexElem::Zero,
            ComplexElem::NonZero { torsion, ev } => {
                ComplexElem::NonZero { torsion: frac(-torsion.clone()), ev: ev.negate() }
            }
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        match self {
            ComplexElem::Zero => ComplexElem::Zero,
            ComplexElem::NonZero { torsion, ev } => {
                ComplexElem::NonZero { torsion: frac(torsion * rat(k)), ev: ev.scale(&rat(k)) }
            }
        }
    }

    /// Principal root: torsion and exponents divided by `n`.
    pub fn root(&self, n: u64) -> Self {
        match self {
            ComplexElem::Zero => ComplexElem::Zero,
            ComplexElem::NonZero { torsion, ev } => {
                let inv_n = BigRational::new(1.into(), n.into());
                ComplexElem::NonZero { torsion: torsion * &inv_n, ev: ev.scale(&inv_n) }
            }
        }
    }
}

/// Divisible torsion-free group with a sign, plus zero: a model of the
/// real multiplicative theory. Also serves ℝ⁺ (never negative, never
/// zero) and ℝ≥0 (never negative).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RealElem {
    Zero,
    NonZero { negative: bool, ev: RationalExponents },
}

impl RealElem {
    pub fn one() -> Self {
        RealElem::NonZero { negative: false, ev: RationalExponents::new() }
    }

    pub fn from_rational(q: &BigRational) -> Result<Self> {
        if q.is_zero() {
            return Ok(RealElem::Zero);
        }
        let (sign, ev) = factor_exact(q)?;
        Ok(RealElem::NonZero { negative: sign < 0, ev })
    }

    pub fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (RealElem::NonZero { negative: a, ev: u }, RealElem::NonZero { negative: b, ev: v }) => {
                RealElem::NonZero { negative: a != b, ev: u.add(v) }
            }
            _ => RealElem::Zero,
        }
    }

    pub fn inv(&self) -> Self {
        match self {
            RealElem::Zero => RealElem::Zero,
            RealElem::NonZero { negative, ev } => RealElem::NonZero { negative: *negative, ev: ev.negate() },
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        match self {
            RealElem::Zero => RealElem::Zero,
            RealElem::NonZero { negative, ev } => {
                RealElem::NonZero { negative: *negative && k % 2 != 0, ev: ev.scale(&rat(k)) }
            }
        }
    }

    pub fn negate(&self) -> Self {
        match self {
            RealElem::Zero => RealElem::Zero,
            RealElem::NonZero { negative, ev } => RealElem::NonZero { negative: !negative, ev: ev.clone() },
        }
    }

    pub fn is_positive(&self) -> bool {
        matches!(self, RealElem::NonZero { negative: false, .. })
    }

    /// Odd roots keep the sign; even roots need a nonnegative argument and
    /// return the nonnegative root.
    pub fn root(&self, n: u64) -> Result<Self> {
        match self {
            RealElem::Zero => Ok(RealElem::Zero),
            RealElem::NonZero { negative: true, .. } if n.is_multiple_of(2) => {
                Err(Error::Domain(format!("even root of a negative real ({n})")))
            }
            RealElem::NonZero { negative, ev } => Ok(RealElem::NonZero {
                negative: *negative,
                ev: ev.scale(&BigRational::new(1.into(), n.into())),
            }),
        }
    }
}

/// A positive rational in factored form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPlusElem {
    pub ev: ExponentVector<BigInt>,
}

impl QPlusElem {
    pub fn one() -> Self {
        QPlusElem::default()
    }

    pub fn from_rational(q: &BigRational) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::Domain(format!("{q} is not a positive rational")));
        }
        Ok(QPlusElem { ev: factor_rational(q)?.1 })
    }

    pub fn mul(&self, o: &Self) -> Self {
        QPlusElem { ev: self.ev.add(&o.ev) }
    }

    pub fn inv(&self) -> Self {
        QPlusElem { ev: self.ev.negate() }
    }

    pub fn pow(&self, k: i64) -> Self {
        QPlusElem { ev: self.ev.scale(&BigInt::from(k)) }
    }

    /// `ℜₙ`: every exponent is divisible by `n`.
    pub fn is_nth_power(&self, n: u64) -> bool {
        let n = BigInt::from(n);
        self.ev.all(|e| e.is_multiple_of(&n))
    }

    pub fn root(&self, n: u64) -> Result<Self> {
        if !self.is_nth_power(n) {
            return Err(Error::Domain(format!("{self} has no rational {n}-th root")));
        }
        let n = BigInt::from(n);
        Ok(QPlusElem { ev: self.ev.map(|e| e / &n) })
    }

    pub fn to_rational(&self) -> BigRational {
        self.ev.to_rational()
    }
}

/// An element of one of the ground models.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Complex(ComplexElem),
    Real(RealElem),
    QPlus(QPlusElem),
    Int(BigInt),
    Rat(BigRational),
}

fn mismatch(op: &str) -> Error {
    Error::Invariant(format!("`{op}` applied to elements of different models"))
}

impl Elem {
    /// Embeds a numeral into the model of `theory`.
    pub fn from_numeral(q: &BigRational, theory: Theory) -> Result<Elem> {
        let outside = || Error::Domain(format!("{q} is not an element of the {theory} model"));
        Ok(match theory {
            Theory::CMul => Elem::Complex(ComplexElem::from_rational(q)?),
            Theory::RMul => Elem::Real(RealElem::from_rational(q)?),
            Theory::RPosMul if q.is_positive() => Elem::Real(RealElem::from_rational(q)?),
            Theory::RNonnegMul if !q.is_negative() => Elem::Real(RealElem::from_rational(q)?),
            Theory::QPosMul => Elem::QPlus(QPlusElem::from_rational(q)?),
            Theory::ZAdd if q.is_integer() => Elem::Int(q.to_integer()),
            Theory::DivAdd => Elem::Rat(q.clone()),
            _ => return Err(outside()),
        })
    }

    pub fn from_int(n: i64, theory: Theory) -> Result<Elem> {
        Elem::from_numeral(&rat(n), theory)
    }

    pub fn one(theory: Theory) -> Elem {
        Elem::from_int(1, theory).expect("1 belongs to every multiplicative model")
    }

    pub fn zero(theory: Theory) -> Option<Elem> {
        Elem::from_int(0, theory).ok()
    }

    pub fn mul(&self, o: &Elem) -> Result<Elem> {
        Ok(match (self, o) {
            (Elem::Complex(a), Elem::Complex(b)) => Elem::Complex(a.mul(b)),
            (Elem::Real(a), Elem::Real(b)) => Elem::Real(a.mul(b)),
            (Elem::QPlus(a), Elem::QPlus(b)) => Elem::QPlus(a.mul(b)),
            _ => return Err(mismatch("*")),
        })
    }

    pub fn inv(&self) -> Result<Elem> {
        Ok(match self {
            Elem::Complex(a) => Elem::Complex(a.inv()),
            Elem::Real(a) => Elem::Real(a.inv()),
            Elem::QPlus(a) => Elem::QPlus(a.inv()),
            _ => return Err(mismatch("inv")),
        })
    }

    pub fn pow(&self, k: i64) -> Result<Elem> {
        Ok(match self {
            Elem::Complex(a) => Elem::Complex(a.pow(k)),
            Elem::Real(a) => Elem::Real(a.pow(k)),
            Elem::QPlus(a) => Elem::QPlus(a.pow(k)),
            _ => return Err(mismatch("^")),
        })
    }

    pub fn add(&self, o: &Elem) -> Result<Elem> {
        Ok(match (self, o) {
            (Elem::Int(a), Elem::Int(b)) => Elem::Int(a + b),
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a + b),
            _ => return Err(mismatch("+")),
        })
    }

    pub fn neg(&self) -> Result<Elem> {
        Ok(match self {
            Elem::Int(a) => Elem::Int(-a),
            Elem::Rat(a) => Elem::Rat(-a),
            _ => return Err(mismatch("-")),
        })
    }

    pub fn scale(&self, n: &BigInt) -> Result<Elem> {
        Ok(match self {
            Elem::Int(a) => Elem::Int(a * n),
            Elem::Rat(a) => Elem::Rat(a * BigRational::from_integer(n.clone())),
            _ => return Err(mismatch(".")),
        })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Complex(a) => *a == ComplexElem::Zero,
            Elem::Real(a) => *a == RealElem::Zero,
            Elem::QPlus(_) => false,
            Elem::Int(a) => a.is_zero(),
            Elem::Rat(a) => a.is_zero(),
        }
    }

    /// `𝒫`
    pub fn is_positive(&self) -> Result<bool> {
        match self {
            Elem::Real(a) => Ok(a.is_positive()),
            _ => Err(mismatch("P")),
        }
    }

    /// `ℜₙ`
    pub fn is_nth_power(&self, n: u64) -> Result<bool> {
        match self {
            Elem::QPlus(a) => Ok(a.is_nth_power(n)),
            _ => Err(mismatch("R")),
        }
    }

    /// `≡ₙ`
    pub fn congruent(&self, o: &Elem, n: u64) -> Result<bool> {
        match (self, o) {
            (Elem::Int(a), Elem::Int(b)) => Ok((a - b).is_multiple_of(&BigInt::from(n))),
            _ => Err(mismatch("=[n]")),
        }
    }

    /// Support primes of the factored part (empty for additive models).
    pub fn support(&self) -> Vec<u64> {
        match self {
            Elem::Complex(ComplexElem::NonZero { ev, .. }) | Elem::Real(RealElem::NonZero { ev, .. }) => {
                ev.support().into_iter().collect()
            }
            Elem::QPlus(a) => a.ev.support().into_iter().collect(),
            _ => vec![],
        }
    }
}

/// A `y` with `yⁿ = e` (or `n∙y = e` additively), chosen deterministically.
pub fn nth_root(e: &Elem, n: u64, theory: Theory) -> Result<Elem> {
    if n == 0 {
        return Err(Error::Invalid("root of order 0".into()));
    }
    let r = match e {
        Elem::Complex(a) => Elem::Complex(a.root(n)),
        Elem::Real(a) => {
            let r = a.root(n)?;
            if theory == Theory::RPosMul && !r.is_positive() {
                return Err(Error::Domain("root outside ℝ⁺".into()));
            }
            Elem::Real(r)
        }
        Elem::QPlus(a) => Elem::QPlus(a.root(n)?),
        Elem::Int(a) => {
            let (q, r) = a.div_rem(&BigInt::from(n));
            if !r.is_zero() {
                return Err(Error::Domain(format!("{a} is not divisible by {n} in ℤ")));
            }
            Elem::Int(q)
        }
        Elem::Rat(a) => Elem::Rat(a / BigRational::from_integer(n.into())),
    };
    Ok(r)
}

fn write_ev<E: fmt::Display + Zero + PartialEq + Clone>(f: &mut fmt::Formatter<'_>, ev: &ExponentVector<E>, lead: bool) -> fmt::Result {
    let mut first = !lead;
    for (p, e) in ev.iter() {
        if !first {
            write!(f, "·")?;
        }
        first = false;
        let s = e.to_string();
        if s == "1" {
            write!(f, "{p}")?;
        } else if s.contains('/') || s.starts_with('-') {
            write!(f, "{p}^({s})")?;
        } else {
            write!(f, "{p}^{s}")?;
        }
    }
    Ok(())
}

impl fmt::Display for QPlusElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ev.is_empty() {
            return write!(f, "1");
        }
        write_ev(f, &self.ev, false)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Complex(ComplexElem::Zero) | Elem::Real(RealElem::Zero) => write!(f, "0"),
            Elem::Complex(ComplexElem::NonZero { torsion, ev }) => {
                let mut lead = false;
                if !torsion.is_zero() {
                    let (a, b) = (torsion.numer(), torsion.denom());
                    if a.is_one() { write!(f, "w[{b}]")? } else { write!(f, "w[{b}]^{a}")? }
                    lead = true;
                }
                if ev.is_empty() && !lead {
                    return write!(f, "1");
                }
                write_ev(f, ev, lead)
            }
            Elem::Real(RealElem::NonZero { negative, ev }) => {
                if *negative {
                    write!(f, "-")?;
                }
                if ev.is_empty() {
                    return write!(f, "1");
                }
                write_ev(f, ev, false)
            }
            Elem::QPlus(a) => write!(f, "{a}"),
            Elem::Int(a) => write!(f, "{a}"),
            Elem::Rat(a) => write!(f, "{a}"),
        }
    }
}

/// Small integer exponent of prime `p`, if it fits.
pub(crate) fn exponent_at(e: &Elem, p: u64) -> Option<BigRational> {
    match e {
        Elem::Complex(ComplexElem::NonZero { ev, .. }) | Elem::Real(RealElem::NonZero { ev, .. }) => Some(ev.get(p)),
        Elem::QPlus(a) => Some(BigRational::from_integer(a.ev.get(p))),
        _ => None,
    }
}

pub(crate) fn to_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() { q.to_integer().to_i64() } else { None }
}
