use num_bigint::BigInt;
use num_rational::BigRational;
use numqe::semantics::{brute_exists, brute_exists_witness, eval_ground, eval_qf, nth_root, Assignment, ComplexElem, Elem};
use numqe::{parse, Error, Formula, Theory};
use proptest::prelude::*;

fn p(s: &str, th: Theory) -> Formula {
    parse(s, th).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn literals(f: Formula) -> Vec<Formula> {
    match f {
        Formula::And(xs) => xs,
        other => vec![other],
    }
}

fn oracle(s: &str, th: Theory) -> bool {
    let lits = literals(p(s, th));
    let w = brute_exists_witness("x", &lits, th).unwrap();
    if let Some(w) = &w {
        let mut asg = Assignment::new();
        asg.insert("x".into(), w.clone());
        assert!(eval_qf(&Formula::and(lits.clone()), &asg, th).unwrap(), "{s}: witness {w} rejected");
    }
    assert_eq!(brute_exists("x", &lits, th).unwrap(), w.is_some());
    w.is_some()
}

#[test]
fn ground_evaluation() {
    assert!(eval_ground(&p("w[3] * w[3] * w[3] = 1", Theory::CMul), Theory::CMul).unwrap());
    assert!(!eval_ground(&p("w[3] * w[3] = 1", Theory::CMul), Theory::CMul).unwrap());
    assert!(eval_ground(&p("P(-1 * -1)", Theory::RMul), Theory::RMul).unwrap());
    assert!(!eval_ground(&p("P(-1)", Theory::RMul), Theory::RMul).unwrap());
    assert!(!eval_ground(&p("P(0)", Theory::RMul), Theory::RMul).unwrap());
    assert!(eval_ground(&p("R[2](4)", Theory::QPosMul), Theory::QPosMul).unwrap());
    assert!(!eval_ground(&p("R[2](8)", Theory::QPosMul), Theory::QPosMul).unwrap());
    assert!(eval_ground(&p("inv(0) = 0", Theory::CMul), Theory::CMul).unwrap());
    assert!(eval_ground(&p("7 =[3] 1", Theory::ZAdd), Theory::ZAdd).unwrap());
    assert!(eval_ground(&p("w[2] = -1", Theory::CMul), Theory::CMul).unwrap());
}

#[test]
fn unassigned_variables_are_reported() {
    let f = p("x = 1", Theory::CMul);
    assert!(matches!(eval_qf(&f, &Assignment::new(), Theory::CMul), Err(Error::Unassigned(v)) if v == "x"));
}

#[test]
fn roots_in_each_model() {
    let four = Elem::from_int(4, Theory::QPosMul).unwrap();
    assert_eq!(nth_root(&four, 2, Theory::QPosMul).unwrap(), Elem::from_int(2, Theory::QPosMul).unwrap());
    let w2 = Elem::Complex(ComplexElem::omega(2));
    let r = nth_root(&w2, 2, Theory::CMul).unwrap();
    assert_eq!(r, Elem::Complex(ComplexElem::omega(4)));
    assert_eq!(r.pow(2).unwrap(), w2);
    let m8 = Elem::from_int(-8, Theory::RMul).unwrap();
    assert_eq!(nth_root(&m8, 3, Theory::RMul).unwrap(), Elem::from_int(-2, Theory::RMul).unwrap());
    assert!(matches!(nth_root(&m8, 2, Theory::RMul), Err(Error::Domain(_))));
    assert!(nth_root(&Elem::from_int(2, Theory::QPosMul).unwrap(), 2, Theory::QPosMul).is_err());
}

#[test]
fn root_of_unity_laws() {
    for n in 1..=20u64 {
        let w = Elem::Complex(ComplexElem::omega(n));
        assert_eq!(w.pow(n as i64).unwrap(), Elem::one(Theory::CMul));
        for k in 1..n as i64 {
            assert_ne!(w.pow(k).unwrap(), Elem::one(Theory::CMul), "w[{n}]^{k}");
        }
    }
}

#[test]
fn oracle_examples() {
    assert!(oracle("R[2](2 * x) & R[3](4 * x)", Theory::QPosMul));
    assert!(!oracle("x ^ 2 = 2", Theory::QPosMul));
    assert!(!oracle("x =[2] 1 & x =[4] 0", Theory::ZAdd));
    assert!(oracle("x =[2] 1 & x =[3] 0 & x != 3 & x != 9", Theory::ZAdd));
    assert!(oracle("x * x = w[2]", Theory::CMul));
    assert!(oracle("x ^ 3 = 2 & x != 2 ^ 1 * inv(1)", Theory::CMul));
    assert!(!oracle("x * x = -1", Theory::RMul));
    assert!(oracle("x * x = 4 & P(-1 * x)", Theory::RMul));
    assert!(!oracle("x * x = 4 & P(-1 * x) & x != -2", Theory::RMul));
    assert!(oracle("x != 0 & x != 1 & P(x)", Theory::RMul));
    assert!(!oracle("x * x = 0 & x != 0", Theory::RNonnegMul));
    assert!(oracle("x ^ 4 = 16", Theory::RPosMul));
    assert!(oracle("R[2](x) & ~R[4](x) & R[4](4 * x)", Theory::QPosMul));
    assert!(!oracle("R[4](x) & ~R[2](x)", Theory::QPosMul));
    assert!(oracle("~R[2](x) & ~R[3](x) & ~R[5](2 * x)", Theory::QPosMul));
    assert!(oracle("2 . x = 3 & x != 1", Theory::DivAdd));
    assert!(!oracle("2 . x = 3", Theory::ZAdd));
}

#[test]
fn oracle_rejects_open_parameters() {
    let lits = literals(p("x = y", Theory::CMul));
    assert!(matches!(brute_exists("x", &lits, Theory::CMul), Err(Error::Invalid(_))));
}

fn qplus() -> impl Strategy<Value = Elem> {
    prop::collection::vec((0usize..4, -6i64..=6), 0..4).prop_map(|es| {
        let primes = [2i64, 3, 5, 7];
        es.into_iter().fold(Elem::one(Theory::QPosMul), |acc, (i, e)| {
            acc.mul(&Elem::from_int(primes[i], Theory::QPosMul).unwrap().pow(e).unwrap()).unwrap()
        })
    })
}

fn complex() -> impl Strategy<Value = Elem> {
    (qplus(), 1u64..12, 0i64..12, 1u64..5, any::<bool>()).prop_map(|(q, n, k, r, zero)| {
        if zero {
            return Elem::zero(Theory::CMul).unwrap();
        }
        let Elem::QPlus(q) = q else { unreachable!() };
        let base = Elem::from_numeral(&q.to_rational(), Theory::CMul).unwrap();
        let w = Elem::Complex(ComplexElem::omega(n)).pow(k).unwrap();
        nth_root(&base, r, Theory::CMul).unwrap().mul(&w).unwrap()
    })
}

fn real() -> impl Strategy<Value = Elem> {
    (qplus(), 1u64..6, any::<bool>(), 0u8..8).prop_map(|(q, r, neg, z)| {
        if z == 0 {
            return Elem::zero(Theory::RMul).unwrap();
        }
        let Elem::QPlus(q) = q else { unreachable!() };
        let base = Elem::from_numeral(&q.to_rational(), Theory::RMul).unwrap();
        let e = nth_root(&base, r, Theory::RMul).unwrap();
        if neg { e.neg_sign() } else { e }
    })
}

trait NegSign {
    fn neg_sign(&self) -> Elem;
}

impl NegSign for Elem {
    fn neg_sign(&self) -> Elem {
        self.mul(&Elem::from_int(-1, Theory::RMul).unwrap()).unwrap()
    }
}

fn group_laws(a: &Elem, b: &Elem, c: &Elem, th: Theory) {
    let one = Elem::one(th);
    assert_eq!(a.mul(b).unwrap().mul(c).unwrap(), a.mul(&b.mul(c).unwrap()).unwrap());
    assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
    assert_eq!(a.mul(&one).unwrap(), *a);
    if a.is_zero() {
        assert_eq!(a.inv().unwrap(), *a);
    } else {
        assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), one);
    }
    if let Some(z) = Elem::zero(th) {
        assert_eq!(a.mul(&z).unwrap(), z);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn qplus_laws(a in qplus(), b in qplus(), c in qplus(), n in 1u64..7) {
        group_laws(&a, &b, &c, Theory::QPosMul);
        let sq = a.pow(n as i64).unwrap();
        prop_assert!(sq.is_nth_power(n).unwrap());
        prop_assert_eq!(nth_root(&sq, n, Theory::QPosMul).unwrap().pow(n as i64).unwrap(), sq);
    }

    #[test]
    fn complex_laws(a in complex(), b in complex(), c in complex(), n in 1u64..9) {
        group_laws(&a, &b, &c, Theory::CMul);
        prop_assert_eq!(nth_root(&a, n, Theory::CMul).unwrap().pow(n as i64).unwrap(), a);
    }

    #[test]
    fn real_laws(a in real(), b in real(), c in real(), n in 1u64..9) {
        group_laws(&a, &b, &c, Theory::RMul);
        let pa = a.is_positive().unwrap();
        let pna = a.neg_sign().is_positive().unwrap();
        // trichotomy, closure of positives, squares are exactly the positives or zero
        prop_assert_eq!(u8::from(pa) + u8::from(pna) + u8::from(a.is_zero()), 1);
        if pa && b.is_positive().unwrap() {
            prop_assert!(a.mul(&b).unwrap().is_positive().unwrap());
        }
        if !a.is_zero() {
            prop_assert!(a.mul(&a).unwrap().is_positive().unwrap());
        }
        if pa || a.is_zero() || n % 2 == 1 {
            prop_assert_eq!(nth_root(&a, n, Theory::RMul).unwrap().pow(n as i64).unwrap(), a);
        }
    }

    #[test]
    fn additive_models(a in -1000i64..1000, b in -1000i64..1000, n in 1u64..12) {
        let (x, y) = (Elem::from_int(a, Theory::ZAdd).unwrap(), Elem::from_int(b, Theory::ZAdd).unwrap());
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        prop_assert_eq!(x.congruent(&y, n).unwrap(), (a - b).rem_euclid(n as i64) == 0);
        let q = Elem::from_numeral(&BigRational::new(BigInt::from(a), BigInt::from(7)), Theory::DivAdd).unwrap();
        prop_assert_eq!(nth_root(&q, n, Theory::DivAdd).unwrap().scale(&BigInt::from(n)).unwrap(), q);
    }
}
