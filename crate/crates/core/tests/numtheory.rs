use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use numqe::numtheory::{
    crt_solvable, crt_solve, crt_with_inequations, factor_rational, fresh_prime, gen_bezout, is_prime, lcm_u64,
    recompose, CongruenceSystem, ExponentVector,
};
use numqe::qe::solve_root_system;
use numqe::semantics::QPlusElem;
use proptest::prelude::*;

fn brute_crt(pairs: &[(u64, u64)]) -> Option<u64> {
    let m = lcm_u64(pairs.iter().map(|p| p.0));
    (0..m).find(|x| pairs.iter().all(|(mi, r)| x % mi == r % mi))
}

#[test]
fn factorization_worked_example() {
    let (sign, ev) = factor_rational(&BigRational::new(175.into(), 84.into())).unwrap();
    assert_eq!(sign, 1);
    let want = ExponentVector::from_pairs([(2, BigInt::from(-2)), (3, BigInt::from(-1)), (5, BigInt::from(2))]).unwrap();
    assert_eq!(ev, want);
}

#[test]
fn crt_with_inequations_skips_forbidden_values() {
    let sys = CongruenceSystem::from_pairs([(4, 1), (6, 3)]).unwrap();
    let sol = crt_solve(&sys).unwrap();
    assert_eq!(sol.modulus, BigInt::from(12));
    assert_eq!(sol.x0, BigInt::from(9));
    let forbidden = [BigInt::from(9), BigInt::from(21)];
    assert_eq!(crt_with_inequations(&sys, &forbidden), Some(BigInt::from(33)));
    let bad = CongruenceSystem::from_pairs([(4, 1), (6, 2)]).unwrap();
    assert!(!crt_solvable(&bad) && crt_with_inequations(&bad, &[]).is_none());
}

#[test]
fn fresh_primes_avoid_their_input() {
    let avoid = [2u64, 3, 5, 7, 11].into_iter().collect();
    let p = fresh_prime(&avoid);
    assert!(is_prime(p) && !avoid.contains(&p));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn crt_matches_exhaustive_search(pairs in prop::collection::vec((1u64..=30, 0u64..30), 0..=4)) {
        let sys = CongruenceSystem::from_pairs(pairs.iter().map(|&(m, r)| (m, r))).unwrap();
        let expected = brute_crt(&pairs);
        match crt_solve(&sys) {
            Some(sol) => {
                prop_assert_eq!(Some(sol.x0.clone()), expected.map(BigInt::from));
                prop_assert_eq!(sol.modulus, BigInt::from(lcm_u64(pairs.iter().map(|p| p.0))));
            }
            None => prop_assert!(expected.is_none()),
        }
    }

    #[test]
    fn gen_bezout_combines_to_gcd(values in prop::collection::vec(1i64..500, 1..6)) {
        let vs: Vec<BigInt> = values.iter().map(|&v| BigInt::from(v)).collect();
        let (g, cs) = gen_bezout(&vs).unwrap();
        let combo: BigInt = vs.iter().zip(&cs).map(|(v, c)| v * c).sum();
        prop_assert_eq!(&combo, &g);
        prop_assert!(vs.iter().all(|v| v.is_multiple_of(&g)));
    }

    #[test]
    fn factor_then_recompose(n in -5000i64..5000, d in 1i64..5000) {
        prop_assume!(n != 0);
        let q = BigRational::new(n.into(), d.into());
        let (sign, ev) = factor_rational(&q).unwrap();
        prop_assert_eq!(recompose(sign, &ev), q);
    }

    #[test]
    fn root_system_witness_and_completeness(
        rels in prop::collection::vec((2u64..=4, prop::collection::vec(-3i64..=3, 2)), 1..=3)
    ) {
        let primes = [2u64, 3];
        let elem = |es: &[i64]| QPlusElem {
            ev: ExponentVector::from_pairs(primes.iter().zip(es).map(|(&p, &e)| (p, BigInt::from(e)))).unwrap(),
        };
        let system: Vec<(u64, QPlusElem)> = rels.iter().map(|(n, es)| (*n, elem(es))).collect();
        let n = lcm_u64(rels.iter().map(|r| r.0));
        let mut found = Vec::new();
        for a in 0..n as i64 {
            for b in 0..n as i64 {
                let x = elem(&[a, b]);
                if system.iter().all(|(k, u)| u.mul(&x).is_nth_power(*k)) {
                    found.push(x);
                }
            }
        }
        match solve_root_system(&system).unwrap() {
            Some(sol) => {
                prop_assert_eq!(sol.modulus, n);
                prop_assert!(system.iter().all(|(k, u)| u.mul(&sol.base).is_nth_power(*k)));
                prop_assert!(!found.is_empty());
                for x in &found {
                    prop_assert!(x.mul(&sol.base.inv()).is_nth_power(n));
                }
            }
            None => prop_assert!(found.is_empty()),
        }
    }
}

#[test]
fn zero_and_one_edge_cases() {
    assert!(factor_rational(&BigRational::zero()).is_err());
    let (sign, ev) = factor_rational(&BigRational::one()).unwrap();
    assert_eq!((sign, ev.is_identity()), (1, true));
}
