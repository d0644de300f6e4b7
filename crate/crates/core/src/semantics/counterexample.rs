//! Substructures that satisfy finitely many axiom instances of a theory
//! but fail another one, checked by exact arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::models::{ComplexElem, RealElem};
use crate::error::{Error, Result};
use crate::numtheory::{
    ext_gcd, is_prime, member_substructure, next_prime, ExponentVector, SubstructureKind, SubstructureSpec,
};

/// Bound on sampled numerators.
const SAMPLE_BOUND: i64 = 1_000_000;
const SAMPLE_PRIMES: [u64; 5] = [2, 3, 5, 7, 11];
pub const DEFAULT_SAMPLES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CounterexampleKind {
    /// `ℤ/𝔭` under addition.
    ZOverP,
    /// `ℚ/M` under addition, `M = N!`.
    QOverM,
    /// Products of roots of unity and primes with exponents in `ℚ/M`.
    COverM,
    /// Signed products of primes with exponents in `ℚ/M`, `M = (2N+1)!`.
    ROverM,
    /// Products of primes with exponents in `ℚ/M`.
    RPosOverM,
    /// `{r·ω_𝔭ᵏ | r ∈ ℚ⁺}`.
    QPosOmegaP,
}

impl CounterexampleKind {
    pub const ALL: [CounterexampleKind; 6] = [
        CounterexampleKind::ZOverP,
        CounterexampleKind::QOverM,
        CounterexampleKind::COverM,
        CounterexampleKind::ROverM,
        CounterexampleKind::RPosOverM,
        CounterexampleKind::QPosOmegaP,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CounterexampleKind::ZOverP => "Z_OVER_P",
            CounterexampleKind::QOverM => "Q_OVER_M",
            CounterexampleKind::COverM => "C_OVER_M",
            CounterexampleKind::ROverM => "R_OVER_M",
            CounterexampleKind::RPosOverM => "RPOS_OVER_M",
            CounterexampleKind::QPosOmegaP => "QPOS_OMEGA_P",
        }
    }

    /// Whether the parameter is a prime rather than the factorial base `N`.
    pub fn takes_prime(self) -> bool {
        matches!(self, CounterexampleKind::ZOverP | CounterexampleKind::QPosOmegaP)
    }

    pub fn default_param(self) -> u64 {
        match self {
            CounterexampleKind::ZOverP => 7,
            CounterexampleKind::QPosOmegaP => 127,
            CounterexampleKind::ROverM => 2,
            _ => 5,
        }
    }
}

impl fmt::Display for CounterexampleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for CounterexampleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_uppercase().replace('-', "_");
        CounterexampleKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| Error::Invalid(format!("unknown counterexample `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CounterexampleSpec {
    pub kind: CounterexampleKind,
    /// `N` for the factorial families, the prime otherwise.
    pub param: u64,
}

impl CounterexampleSpec {
    pub fn new(kind: CounterexampleKind, param: u64) -> Result<Self> {
        if kind.takes_prime() {
            if !is_prime(param) {
                return Err(Error::Invalid(format!("{kind} needs a prime, got {param}")));
            }
        } else if param < 2 {
            return Err(Error::Invalid(format!("{kind} needs N ≥ 2, got {param}")));
        } else if param > 12 {
            return Err(Error::ResourceCap(format!("{kind} with N = {param} makes M too large")));
        }
        Ok(CounterexampleSpec { kind, param })
    }

    pub fn with_default(kind: CounterexampleKind) -> Self {
        CounterexampleSpec { kind, param: kind.default_param() }
    }

    /// The modulus `M` of the factorial families.
    pub fn modulus(&self) -> Option<u64> {
        let n = match self.kind {
            CounterexampleKind::ROverM => 2 * self.param + 1,
            k if k.takes_prime() => return None,
            _ => self.param,
        };
        Some((2..=n).product())
    }

    /// The prime at which the substructure breaks.
    pub fn failing_prime(&self) -> u64 {
        match self.modulus() {
            Some(m) => next_prime(m),
            None => self.param,
        }
    }
}

impl fmt::Display for CounterexampleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus() {
            Some(m) => write!(f, "{} N={} M={} p={}", self.kind, self.param, m, self.failing_prime()),
            None => write!(f, "{} p={}", self.kind, self.param),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
}

impl Verdict {
    fn of(b: bool) -> Self {
        if b { Verdict::Holds } else { Verdict::Fails }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "HOLDS",
            Verdict::Fails => "FAILS",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub check: String,
    pub expected: Verdict,
    pub observed: Verdict,
    pub witness: String,
}

impl Finding {
    pub fn reproduced(&self) -> bool {
        self.expected == self.observed
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub spec: CounterexampleSpec,
    pub seed: u64,
    pub samples: usize,
    pub findings: Vec<Finding>,
}

impl Report {
    /// Every finding came out as expected.
    pub fn reproduced(&self) -> bool {
        self.findings.iter().all(Finding::reproduced)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "REPORT {} seed={} samples={}", self.spec, self.seed, self.samples)?;
        let carrier = match self.spec.kind {
            CounterexampleKind::ZOverP | CounterexampleKind::QOverM => "exact rationals",
            _ => "exact prime-exponent vectors",
        };
        writeln!(
            f,
            "NOTE carrier elements are {carrier}; the ground models satisfy the full axiom lists, so truth transfers to the intended structures"
        )?;
        for x in &self.findings {
            write!(f, "CHECK {} {}", x.check, x.observed)?;
            if !x.reproduced() {
                write!(f, " (expected {})", x.expected)?;
            }
            writeln!(f, " {}", x.witness)?;
        }
        write!(f, "RESULT {}", if self.reproduced() { "REPRODUCED" } else { "MISMATCH" })
    }
}

struct Collector {
    findings: Vec<Finding>,
}

impl Collector {
    fn push(&mut self, check: impl Into<String>, expected: Verdict, holds: bool, witness: impl Into<String>) {
        self.findings.push(Finding { check: check.into(), expected, observed: Verdict::of(holds), witness: witness.into() });
    }

    /// Runs `test` over the samples and records the first failure.
    fn sampled<T: fmt::Display>(&mut self, check: impl Into<String>, items: &[T], test: impl Fn(&T) -> bool) {
        let bad = items.iter().find(|x| !test(x));
        let witness = match bad {
            Some(x) => format!("counterexample {x}"),
            None => format!("verified at {} samples", items.len()),
        };
        self.push(check, Verdict::Holds, bad.is_none(), witness);
    }
}

fn rat(a: impl Into<BigInt>, b: impl Into<BigInt>) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// `a / mᵏ` with `|a| ≤ 10⁶` and `k ≤ 2`.
fn sample_q_over_m(rng: &mut ChaCha8Rng, m: u64) -> BigRational {
    let a = rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND);
    let k = rng.gen_range(0..=2u32);
    rat(a, BigInt::from(m).pow(k))
}

fn sample_ev(rng: &mut ChaCha8Rng, m: u64) -> ExponentVector<BigRational> {
    let count = rng.gen_range(0..=3);
    let mut ev = ExponentVector::new();
    for _ in 0..count {
        let p = SAMPLE_PRIMES[rng.gen_range(0..SAMPLE_PRIMES.len())];
        let e = ev.get(p) + sample_q_over_m(rng, m);
        ev.set(p, e);
    }
    ev
}

fn ev_in(ev: &ExponentVector<BigRational>, spec: &SubstructureSpec) -> bool {
    ev.all(|e| member_substructure(e, spec))
}

fn q_over(m: u64) -> SubstructureSpec {
    SubstructureSpec::new(SubstructureKind::QOverM, m).expect("positive modulus")
}

struct Shown<T>(T);

impl fmt::Display for Shown<(BigRational, BigRational)> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0 .0, self.0 .1)
    }
}

/// Runs the checks for `spec` with the given sampling seed.
pub fn check_counterexample(spec: &CounterexampleSpec, seed: u64) -> Report {
    check_counterexample_with(spec, seed, DEFAULT_SAMPLES)
}

pub fn check_counterexample_with(spec: &CounterexampleSpec, seed: u64, samples: usize) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Collector { findings: Vec::new() };
    match spec.kind {
        CounterexampleKind::QOverM => q_over_m(spec, &mut rng, samples, &mut out),
        CounterexampleKind::ZOverP => z_over_p(spec, &mut rng, samples, &mut out),
        CounterexampleKind::COverM => c_over_m(spec, &mut rng, samples, &mut out),
        CounterexampleKind::ROverM | CounterexampleKind::RPosOverM => r_over_m(spec, &mut rng, samples, &mut out),
        CounterexampleKind::QPosOmegaP => qpos_omega_p(spec, &mut rng, samples, &mut out),
    }
    Report { spec: *spec, seed, samples, findings: out.findings }
}

fn q_over_m(spec: &CounterexampleSpec, rng: &mut ChaCha8Rng, samples: usize, out: &mut Collector) {
    let m = spec.modulus().expect("factorial family");
    let sub = q_over(m);
    let xs: Vec<BigRational> = (0..samples).map(|_| sample_q_over_m(rng, m)).collect();
    let pairs: Vec<_> = xs.iter().zip(xs.iter().rev()).map(|(a, b)| Shown((a.clone(), b.clone()))).collect();
    out.sampled("closure(+,-,0)", &pairs, |Shown((a, b))| {
        member_substructure(&(a + b), &sub) && member_substructure(&-a, &sub) && member_substructure(&BigRational::zero(), &sub)
    });
    for n in 2..=spec.param {
        out.sampled(format!("A7[{n}] forall x exists y. x = {n} . y"), &xs, |x| {
            let y = x / BigRational::from_integer(n.into());
            member_substructure(&y, &sub) && &y * BigRational::from_integer(n.into()) == *x
        });
    }
    let p = spec.failing_prime();
    let y = rat(1, p);
    out.push(
        format!("A7[{p}] forall x exists y. x = {p} . y"),
        Verdict::Fails,
        member_substructure(&y, &sub),
        format!("x = 1 needs y = 1/{p}, which is not in Q/{m}"),
    );
}

fn z_over_p(spec: &CounterexampleSpec, rng: &mut ChaCha8Rng, samples: usize, out: &mut Collector) {
    let p = spec.param;
    let pb = BigInt::from(p);
    let sub = SubstructureSpec::new(SubstructureKind::ZOverM, pb.clone()).expect("prime");
    let zs: Vec<BigInt> = (0..samples).map(|_| BigInt::from(rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND))).collect();
    let xs: Vec<BigRational> = zs.iter().map(|z| BigRational::new(z.clone(), pb.clone())).collect();
    let pairs: Vec<_> = xs.iter().zip(xs.iter().rev()).map(|(a, b)| Shown((a.clone(), b.clone()))).collect();
    out.sampled("closure(+,-,0)", &pairs, |Shown((a, b))| {
        member_substructure(&(a + b), &sub) && member_substructure(&-a, &sub)
    });
    for n in 2..p.min(64) {
        let nb = BigInt::from(n);
        let (g, a, b) = ext_gcd(&nb, &pb);
        debug_assert!(g.is_one());
        // x = z/p = n∙y + i with y = (a z + p q)/p where b z = n q + i
        let witness = |z: &BigInt| -> Option<(BigRational, BigInt)> {
            let (q, i) = (&b * z).div_mod_floor(&nb);
            let y = BigRational::new(&a * z + &pb * &q, pb.clone());
            let x = BigRational::new(z.clone(), pb.clone());
            let ok = member_substructure(&y, &sub)
                && &y * BigRational::from_integer(nb.clone()) + BigRational::from_integer(i.clone()) == x;
            ok.then_some((y, i))
        };
        // any other (y', j) has p(j - i) = n(α - β), so j = i and y' = y
        let unique = |z: &BigInt, i: &BigInt| {
            let fits: Vec<i64> = (0..n as i64).filter(|j| (z - &pb * j).is_multiple_of(&nb)).collect();
            fits == [i.clone().try_into().unwrap_or(-1)]
        };
        let check = format!("A7o[{n}] forall x exists! y. exists i < {n}. x = {n} . y + i");
        let bad = zs.iter().find(|z| !witness(z).is_some_and(|(_, i)| unique(z, &i)));
        let text = match (bad, witness(&BigInt::one())) {
            (None, Some((y, i))) => format!(
                "bezout {a}*{n} + {b}*{p} = 1; x = 1/{p} gives y = {y}, i = {i}; unique at {} samples",
                zs.len()
            ),
            (Some(z), _) => format!("counterexample x = {z}/{p}"),
            (None, None) => "no witness for x = 1/p".to_string(),
        };
        out.push(check, Verdict::Holds, bad.is_none() && witness(&BigInt::one()).is_some(), text);
    }
    let x = rat(1, p);
    let any = (0..p as i64).any(|i| {
        let y = (&x - BigRational::from_integer(i.into())) / BigRational::from_integer(pb.clone());
        member_substructure(&y, &sub)
    });
    out.push(
        format!("A7o[{p}] forall x exists y. exists i < {p}. x = {p} . y + i"),
        Verdict::Fails,
        any,
        format!("x = 1/{p}: each candidate y = (1/{p} - i)/{p} has denominator {}", pb.pow(2)),
    );
}

fn sample_complex(rng: &mut ChaCha8Rng, m: u64) -> ComplexElem {
    if rng.gen_ratio(1, 20) {
        return ComplexElem::Zero;
    }
    let n: u64 = rng.gen_range(1..=20);
    let k: u64 = rng.gen_range(0..n);
    ComplexElem::omega(n).pow(k as i64).mul(&ComplexElem::NonZero { torsion: BigRational::zero(), ev: sample_ev(rng, m) })
}

fn complex_in(e: &ComplexElem, sub: &SubstructureSpec) -> bool {
    match e {
        ComplexElem::Zero => true,
        ComplexElem::NonZero { ev, .. } => ev_in(ev, sub),
    }
}

fn c_over_m(spec: &CounterexampleSpec, rng: &mut ChaCha8Rng, samples: usize, out: &mut Collector) {
    let m = spec.modulus().expect("factorial family");
    let sub = q_over(m);
    let xs: Vec<ComplexElem> = (0..samples).map(|_| sample_complex(rng, m)).collect();
    let shown: Vec<Shown<ComplexElem>> = xs.iter().cloned().map(Shown).collect();
    let pairs: Vec<_> = xs.iter().zip(xs.iter().rev()).map(|(a, b)| Shown((a.clone(), b.clone()))).collect();
    out.sampled("closure(*,inv,0,1,w[n])", &pairs, |Shown((a, b))| {
        complex_in(&a.mul(b), &sub) && complex_in(&a.inv(), &sub) && complex_in(&ComplexElem::omega(20), &sub)
    });
    for n in 2..=spec.param {
        out.sampled(format!("M8[{n}] forall x exists y. y ^ {n} = x"), &shown, |Shown(x)| {
            let y = x.root(n);
            complex_in(&y, &sub) && y.pow(n as i64) == *x
        });
    }
    let p = spec.failing_prime();
    let two = ComplexElem::from_rational(&rat(2, 1)).expect("nonzero");
    // every p-th root of 2 is ω_pⁱ·2^(1/p), and they share the exponent 1/p
    let root = two.root(p);
    let has_root = complex_in(&root, &sub) && root.pow(p as i64) == two;
    out.push(
        format!("M8[{p}] forall x exists y. y ^ {p} = x"),
        Verdict::Fails,
        has_root,
        format!("x = 2: every root has 2-exponent 1/{p}, not in Q/{m}"),
    );
}

impl fmt::Display for Shown<ComplexElem> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::Elem::Complex(self.0.clone()))
    }
}

impl fmt::Display for Shown<(ComplexElem, ComplexElem)> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", Shown(self.0 .0.clone()), Shown(self.0 .1.clone()))
    }
}

impl fmt::Display for Shown<RealElem> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::Elem::Real(self.0.clone()))
    }
}

impl fmt::Display for Shown<(RealElem, RealElem)> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", Shown(self.0 .0.clone()), Shown(self.0 .1.clone()))
    }
}

fn real_in(e: &RealElem, sub: &SubstructureSpec, positive_only: bool) -> bool {
    match e {
        RealElem::Zero => !positive_only,
        RealElem::NonZero { negative, ev } => !(positive_only && *negative) && ev_in(ev, sub),
    }
}

fn r_over_m(spec: &CounterexampleSpec, rng: &mut ChaCha8Rng, samples: usize, out: &mut Collector) {
    let m = spec.modulus().expect("factorial family");
    let sub = q_over(m);
    let positive_only = spec.kind == CounterexampleKind::RPosOverM;
    let xs: Vec<RealElem> = (0..samples)
        .map(|_| {
            if !positive_only && rng.gen_ratio(1, 20) {
                return RealElem::Zero;
            }
            let e = RealElem::NonZero { negative: false, ev: sample_ev(rng, m) };
            if !positive_only && rng.gen() { e.negate() } else { e }
        })
        .collect();
    let shown: Vec<Shown<RealElem>> = xs.iter().cloned().map(Shown).collect();
    let pairs: Vec<_> = xs.iter().zip(xs.iter().rev()).map(|(a, b)| Shown((a.clone(), b.clone()))).collect();
    let ops = if positive_only { "closure(*,inv,1)" } else { "closure(*,inv,0,1,-1)" };
    out.sampled(ops, &pairs, |Shown((a, b))| {
        real_in(&a.mul(b), &sub, positive_only)
            && real_in(&a.inv(), &sub, positive_only)
            && (positive_only || real_in(&a.negate(), &sub, false))
    });
    let orders: Vec<u64> =
        if positive_only { (2..=spec.param).collect() } else { (1..=spec.param).map(|n| 2 * n + 1).collect() };
    for n in orders {
        let label = if positive_only { "M8" } else { "M12" };
        out.sampled(format!("{label}[{n}] forall x exists y. x = y ^ {n}"), &shown, |Shown(x)| {
            x.root(n).is_ok_and(|y| real_in(&y, &sub, positive_only) && y.pow(n as i64) == *x)
        });
    }
    if !positive_only {
        out.sampled("M13 forall x. (P(x) <-> exists y. y != 0 & x = y ^ 2)", &shown, |Shown(x)| {
            let square = match x {
                RealElem::Zero => false,
                _ => x.root(2).is_ok_and(|y| y != RealElem::Zero && real_in(&y, &sub, false) && y.pow(2) == *x),
            };
            x.is_positive() == square
        });
        out.sampled("M14 forall x. (x != 0 -> (~P(x) <-> P(-1 * x)))", &shown, |Shown(x)| {
            *x == RealElem::Zero || (!x.is_positive() == x.negate().is_positive())
        });
        out.sampled("M15 forall x y. (x != 0 & y != 0 -> (P(x * y) <-> (P(x) <-> P(y))))", &pairs, |Shown((a, b))| {
            *a == RealElem::Zero
                || *b == RealElem::Zero
                || a.mul(b).is_positive() == (a.is_positive() == b.is_positive())
        });
    }
    let p = spec.failing_prime();
    let two = RealElem::from_rational(&rat(2, 1)).expect("nonzero");
    // odd roots are unique in the reals
    let has_root = two.root(p).is_ok_and(|y| real_in(&y, &sub, positive_only));
    let label = if positive_only { "M8" } else { "M12" };
    out.push(
        format!("{label}[{p}] forall x exists y. x = y ^ {p}"),
        Verdict::Fails,
        has_root,
        format!("x = 2: the only root 2^(1/{p}) has exponent 1/{p}, not in Q/{m}"),
    );
}

fn omega_carrier(e: &ComplexElem, p: u64) -> bool {
    match e {
        ComplexElem::Zero => false,
        ComplexElem::NonZero { torsion, ev } => {
            (torsion * BigRational::from_integer(p.into())).is_integer() && ev.all(|e| e.is_integer())
        }
    }
}

fn qpos_omega_p(spec: &CounterexampleSpec, rng: &mut ChaCha8Rng, samples: usize, out: &mut Collector) {
    let p = spec.param;
    let xs: Vec<ComplexElem> = (0..samples)
        .map(|_| {
            let k = rng.gen_range(0..p);
            let mut ev = ExponentVector::new();
            for _ in 0..rng.gen_range(0..=3) {
                let q = SAMPLE_PRIMES[rng.gen_range(0..SAMPLE_PRIMES.len())];
                ev.set(q, ev.get(q) + rat(rng.gen_range(-20..=20), 1));
            }
            ComplexElem::omega(p).pow(k as i64).mul(&ComplexElem::NonZero { torsion: BigRational::zero(), ev })
        })
        .collect();
    let shown: Vec<Shown<ComplexElem>> = xs.iter().cloned().map(Shown).collect();
    let pairs: Vec<_> = xs.iter().zip(xs.iter().rev()).map(|(a, b)| Shown((a.clone(), b.clone()))).collect();
    out.sampled("closure(*,inv,1)", &pairs, |Shown((a, b))| omega_carrier(&a.mul(b), p) && omega_carrier(&a.inv(), p));
    let one = ComplexElem::one();
    let torsion: Vec<ComplexElem> = (0..p).map(|k| ComplexElem::omega(p).pow(k as i64)).collect();
    let ns: Vec<u64> = (2..p).filter(|n| n % 7 == 2 || *n < 8).collect();
    for n in ns {
        // the torsion part is finite, so check all of it along with the samples
        let cands: Vec<Shown<ComplexElem>> = torsion.iter().cloned().chain(xs.iter().cloned()).map(Shown).collect();
        out.sampled(format!("M7o[{n}] forall x. (x ^ {n} = 1 -> x = 1)"), &cands, |Shown(x)| {
            x.pow(n as i64) != one || *x == one
        });
    }
    out.sampled("M16 fresh prime x makes x ^ n * v not an m-th power for m not dividing n", &shown, |Shown(v)| {
        let x = ComplexElem::from_rational(&rat(13, 1)).expect("nonzero");
        let ComplexElem::NonZero { ev, .. } = v.mul(&x.pow(6)) else { return false };
        // 13 is absent from every sample, so its exponent in x⁶·v is 6
        [4u64, 5, 7, 9].iter().all(|m| !(ev.get(13) / BigRational::from_integer((*m).into())).is_integer())
    });
    let w = ComplexElem::omega(p);
    let fails = w.pow(p as i64) == one && w != one;
    out.push(
        format!("M7o[{p}] forall x. (x ^ {p} = 1 -> x = 1)"),
        Verdict::Fails,
        !fails,
        format!("x = w[{p}]: w[{p}] ^ {p} = 1 and w[{p}] != 1"),
    );
}
